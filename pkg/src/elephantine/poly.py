"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to nonzero Fraction
coefficients, together with an ordered tuple of variable names.  Names are
display metadata only: arithmetic and equality are positional, so chart
substitutions may permute or reuse names freely.  All coefficients are
arbitrary-precision rationals; nothing here ever touches a float.

The zero polynomial has empty support; its order and weight are the
distinguished INFINITY value rather than an error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class Infinity:
    """Order/weight of the zero polynomial: compares above every number."""

    __slots__ = ()

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash(("elephantine", "infinity"))

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "inf"


INFINITY = Infinity()


class PolyError(ValueError):
    """Invalid polynomial input or operation."""


class PolyParseError(PolyError):
    """Syntax or vocabulary error while parsing polynomial text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def grlex_key(m: Monomial):
    """Graded lexicographic sort key in the ambient variable order."""
    return (sum(m), tuple(-e for e in m))


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, Fraction] | None = None):
        vs = tuple(vars)
        if not vs:
            raise PolyError("polynomial context needs at least one variable")
        clean: dict[Monomial, Fraction] = {}
        if terms:
            n = len(vs)
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                mono = tuple(mono)
                if len(mono) != n:
                    raise PolyError(f"exponent tuple {mono} does not match arity {n}")
                if any(e < 0 for e in mono):
                    raise PolyError(f"negative exponent in {mono}")
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if clean[mono] == 0:
                    del clean[mono]
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Monomial, Fraction]) -> "Poly":
        # internal fast path: exponent tuples already valid, only strip zeros
        obj = object.__new__(cls)
        object.__setattr__(obj, "vars", vars)
        object.__setattr__(obj, "terms", {m: c for m, c in terms.items() if c})
        return obj

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars, {})

    @classmethod
    def constant(cls, vars: Sequence[str], value) -> "Poly":
        return cls(vars, {(0,) * len(tuple(vars)): Fraction(value)})

    @classmethod
    def variable(cls, vars: Sequence[str], index: int) -> "Poly":
        vs = tuple(vars)
        expo = [0] * len(vs)
        expo[index] = 1
        return cls(vs, {tuple(expo): Fraction(1)})

    # -- basic structure ----------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.arity, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    def __eq__(self, other) -> bool:
        # positional equality: names are metadata
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly({render(self)!r})"

    # -- arithmetic ---------------------------------------------------

    def _check_arity(self, other: "Poly") -> None:
        if other.arity != self.arity:
            raise PolyError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.vars, other)
        self._check_arity(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return Poly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly._raw(self.vars, {m: c * v for m, v in self.terms.items()})
        self._check_arity(other)
        out: dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                key = monomial_mul(ma, mb)
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return Poly._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power of a polynomial")
        result = Poly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result


# -- operations --------------------------------------------------------


def order(f: Poly):
    """Minimum total degree of a term, INFINITY for the zero polynomial."""
    if not f.terms:
        return INFINITY
    return min(monomial_degree(m) for m in f.terms)


def degree(f: Poly):
    """Maximum total degree of a term, INFINITY (vacuous) for zero."""
    if not f.terms:
        return INFINITY
    return max(monomial_degree(m) for m in f.terms)


def jet(f: Poly, k: int) -> Poly:
    """Sum of the terms of total degree at most k."""
    if k < 0:
        raise PolyError("jet degree must be non-negative")
    return Poly._raw(f.vars, {m: c for m, c in f.terms.items() if monomial_degree(m) <= k})


def partials(f: Poly) -> list[Poly]:
    """Formal partial derivatives, one per variable in variable order."""
    out = []
    for i in range(f.arity):
        terms: dict[Monomial, Fraction] = {}
        for m, c in f.terms.items():
            e = m[i]
            if e == 0:
                continue
            key = m[:i] + (e - 1,) + m[i + 1:]
            terms[key] = terms.get(key, Fraction(0)) + c * e
        out.append(Poly._raw(f.vars, terms))
    return out


def weight(f: Poly, numerators: Sequence[int], denominator: int = 1):
    """Weighted order min(sum(b_j i_j)/r) over the support; INFINITY for zero."""
    nums = tuple(numerators)
    if len(nums) != f.arity:
        raise PolyError("weight vector arity mismatch")
    if denominator <= 0:
        raise PolyError("weight denominator must be positive")
    if not f.terms:
        return INFINITY
    best = min(sum(b * e for b, e in zip(nums, m)) for m in f.terms)
    return Fraction(best, denominator)


def weighted_degrees(f: Poly, weights: Sequence[int]) -> set[int]:
    """Set of weighted degrees occurring in the support (integer weights)."""
    ws = tuple(weights)
    if len(ws) != f.arity:
        raise PolyError("weight arity mismatch")
    return {sum(w * e for w, e in zip(ws, m)) for m in f.terms}


def substitute(f: Poly, images: Sequence[Poly], cap: int | None = None) -> Poly:
    """Ring-homomorphism image of f under x_i -> images[i].

    All images must live in one common variable context.  With ``cap`` set,
    every intermediate product is truncated to total degree <= cap, which
    keeps iterated shears tame.
    """
    images = list(images)
    if len(images) != f.arity:
        raise PolyError(f"need {f.arity} images, got {len(images)}")
    target = images[0].vars
    for g in images[1:]:
        if g.arity != len(target):
            raise PolyError("images live in inconsistent contexts")

    def trunc(p: Poly) -> Poly:
        return jet(p, cap) if cap is not None else p

    # memoized powers per image
    pow_cache: list[dict[int, Poly]] = [dict() for _ in images]

    def image_power(i: int, e: int) -> Poly:
        cache = pow_cache[i]
        if e not in cache:
            if e == 0:
                cache[e] = Poly.constant(target, 1)
            else:
                cache[e] = trunc(image_power(i, e - 1) * images[i])
        return cache[e]

    accumulated: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        term = Poly.constant(target, coeff)
        for i, e in enumerate(mono):
            if e:
                term = trunc(term * image_power(i, e))
        for key, value in term.terms.items():
            accumulated[key] = accumulated.get(key, Fraction(0)) + value
    return trunc(Poly._raw(tuple(target), accumulated))


def assign(f: Poly, values: Mapping[int, int | Fraction]) -> Poly:
    """Set the given variable positions to constants and drop them.

    The result lives in the context of the remaining variables (which must
    be non-empty).
    """
    keep = [i for i in range(f.arity) if i not in values]
    if not keep:
        raise PolyError("cannot assign every variable")
    new_vars = tuple(f.vars[i] for i in keep)
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        c = coeff
        dead = False
        for i, val in values.items():
            e = mono[i]
            if e:
                v = Fraction(val)
                if v == 0:
                    dead = True
                    break
                c *= v ** e
        if dead:
            continue
        key = tuple(mono[i] for i in keep)
        out[key] = out.get(key, Fraction(0)) + c
    return Poly(new_vars, out)


def restrict_support(f: Poly, keep_positions: Iterable[int]) -> Poly:
    """Keep only terms whose support lies inside the given positions."""
    keep = set(keep_positions)
    out = {}
    for mono, coeff in f.terms.items():
        if all(e == 0 or i in keep for i, e in enumerate(mono)):
            out[mono] = coeff
    return Poly(f.vars, out)


# -- rendering ---------------------------------------------------------


def render(f: Poly) -> str:
    """Canonical text form: graded-lex descending, explicit '*' and '^'."""
    if not f.terms:
        return "0"
    parts: list[str] = []
    for mono, coeff in sorted(f.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
        factors = []
        for name, e in zip(f.vars, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        sign = "-" if coeff < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    text = (first_sign if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += sign + body
    return text


# -- parser ------------------------------------------------------------
#
# expr     := ('+'|'-')? term (('+'|'-') term)*
# term     := factor ('*'? factor)*
# factor   := base ('^' nat)?
# base     := rational | ident | '(' expr ')'
# rational := nat ('/' nat)?
#
# Whitespace is insignificant; juxtaposed factors multiply implicitly.


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.text = text
        self.pos = 0
        self.vars = tuple(vars)
        self.index = {name: i for i, name in enumerate(self.vars)}

    def error(self, message: str) -> PolyParseError:
        return PolyParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start:self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
                self.pos += 1
        if self.pos == start:
            raise self.error("expected an identifier")
        return self.text[start:self.pos]

    def starts_base(self) -> bool:
        ch = self.peek()
        return bool(ch) and (ch.isdigit() or ch.isalpha() or ch in "(_")

    def parse_expr(self) -> Poly:
        sign = 1
        if self.take("+"):
            pass
        elif self.take("-"):
            sign = -1
        result = self.parse_term() * sign
        while True:
            if self.take("+"):
                result = result + self.parse_term()
            elif self.take("-"):
                result = result - self.parse_term()
            else:
                return result

    def parse_term(self) -> Poly:
        result = self.parse_factor()
        while True:
            if self.take("*"):
                result = result * self.parse_factor()
            elif self.starts_base():
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> Poly:
        base = self.parse_base()
        if self.take("^"):
            return base ** self.nat()
        return base

    def parse_base(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            if not self.take(")"):
                raise self.error("expected ')'")
            return inner
        sign = 1
        if ch == "-":
            # signed integer literal, reachable only where a base is required
            # (after '*' or inside parentheses), never via juxtaposition
            self.pos += 1
            sign = -1
            ch = self.peek()
            if not ch.isdigit():
                raise self.error("expected a number after '-'")
        if ch.isdigit():
            num = self.nat()
            if self.take("/"):
                den = self.nat()
                if den == 0:
                    raise self.error("zero denominator")
                return Poly.constant(self.vars, Fraction(sign * num, den))
            return Poly.constant(self.vars, sign * num)
        if ch.isalpha() or ch == "_":
            name = self.ident()
            if name not in self.index:
                raise PolyParseError(f"unknown variable {name!r}", self.pos - len(name))
            return Poly.variable(self.vars, self.index[name])
        raise self.error("expected a number, variable, or '('")


def parse_poly(text: str, vars: Sequence[str]) -> Poly:
    """Parse polynomial text over the given variables into canonical form."""
    parser = _Parser(text, vars)
    result = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return result


def identifiers_in(text: str) -> list[str]:
    """Identifiers in order of first appearance (for CLI variable inference)."""
    seen: list[str] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isalpha() or ch == "_":
            start = i
            i += 1
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            name = text[start:i]
            if name not in seen:
                seen.append(name)
        else:
            i += 1
    return seen
