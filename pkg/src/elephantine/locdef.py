"""Truncated local-algebra computations via exact linear algebra.

Everything is a statement about O/(I + m^N) for an ideal I generated by the
partials of a germ (and optionally the germ itself): the span of
{monomial * generator} truncated below degree N is row-reduced against the
monomials of degree < N, with the lowest monomial of each row as pivot.
Degree truncation replaces local standard bases: exact, simple, and enough
for germs with small Milnor number.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from . import poly as P
from .cyclo import QuotientType, monomial_character, semi_invariant_character
from .poly import Monomial, Poly, grlex_key

DEFAULT_TRUNCATION = 12
DEFAULT_CAP = 24
_ENV_TRUNCATION = "ELEPHANTINE_TRUNCATION"


def default_truncation() -> int:
    """Jet truncation degree, overridable via ELEPHANTINE_TRUNCATION."""
    raw = os.environ.get(_ENV_TRUNCATION)
    if raw is None:
        return DEFAULT_TRUNCATION
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_ENV_TRUNCATION} must be an integer, got {raw!r}") from exc
    if value < 2:
        raise ValueError(f"{_ENV_TRUNCATION} must be at least 2")
    return value


def default_cap() -> int:
    return max(2 * default_truncation(), DEFAULT_CAP)


class LocdefError(ValueError):
    """Invalid local-algebra request."""


def monomials_below(nvars: int, bound: int) -> list[Monomial]:
    """All exponent tuples of total degree < bound, in graded-lex order."""
    out: list[Monomial] = []
    for d in range(bound):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            expo = [0] * nvars
            for i in combo:
                expo[i] += 1
            out.append(tuple(expo))
    return sorted(out, key=grlex_key)


class _RowSpace:
    """Sparse row echelon over Q, pivoting on the grlex-least monomial."""

    def __init__(self):
        self.pivots: dict[Monomial, dict[Monomial, Fraction]] = {}

    def _reduce(self, row: dict[Monomial, Fraction]) -> dict[Monomial, Fraction]:
        while row:
            lead = min(row, key=grlex_key)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return row
            factor = row[lead]
            for mono, coeff in pivot.items():
                value = row.get(mono, Fraction(0)) - factor * coeff
                if value:
                    row[mono] = value
                else:
                    row.pop(mono, None)
        return row

    def insert(self, row: dict[Monomial, Fraction]) -> bool:
        row = self._reduce(dict(row))
        if not row:
            return False
        lead = min(row, key=grlex_key)
        inv = Fraction(1) / row[lead]
        self.pivots[lead] = {m: c * inv for m, c in row.items()}
        return True

    def contains(self, row: dict[Monomial, Fraction]) -> bool:
        return not self._reduce(dict(row))


@dataclass(frozen=True)
class TruncatedQuotient:
    germ: Poly
    truncation: int
    ideal_tag: str
    dimension: int
    basis: tuple[Monomial, ...]


def _ideal_generators(f: Poly, ideal_tag: str) -> list[Poly]:
    if ideal_tag == "jacobian":
        gens = P.partials(f)
    elif ideal_tag == "tjurina":
        gens = P.partials(f) + [f]
    else:
        raise LocdefError(f"unknown ideal tag {ideal_tag!r}")
    return [g for g in gens if not g.is_zero()]


def _ideal_rows(f: Poly, ideal_tag: str, bound: int) -> _RowSpace:
    space = _RowSpace()
    n = f.arity
    for gen in _ideal_generators(f, ideal_tag):
        base_order = P.order(gen)
        for mono in monomials_below(n, bound - base_order):
            row = {}
            for gm, gc in gen.terms.items():
                key = P.monomial_mul(mono, gm)
                if sum(key) < bound:
                    row[key] = row.get(key, Fraction(0)) + gc
            if row:
                space.insert(row)
    return space


def quotient_dim(f: Poly, ideal_tag: str = "jacobian", truncation: int | None = None) -> TruncatedQuotient:
    """Dimension and monomial basis of O/(I + m^N) for N = truncation."""
    n_trunc = default_truncation() if truncation is None else truncation
    if n_trunc < 1:
        raise LocdefError("truncation degree must be >= 1")
    space = _ideal_rows(f, ideal_tag, n_trunc)
    basis = tuple(
        m for m in monomials_below(f.arity, n_trunc) if m not in space.pivots
    )
    return TruncatedQuotient(
        germ=f,
        truncation=n_trunc,
        ideal_tag=ideal_tag,
        dimension=len(basis),
        basis=basis,
    )


def milnor_number(f: Poly, cap: int | None = None) -> int | None:
    """Stable dimension of O/(J_f + m^N), or None when it never stabilizes.

    The dimension is computed for increasing N until two consecutive values
    agree; failure to stabilize by the cap (a genuinely non-isolated critical
    point, or a cap set too small) yields None.
    """
    if f.constant_term() != 0:
        raise LocdefError("germ must vanish at the origin")
    limit = default_cap() if cap is None else cap
    previous = None
    for n_trunc in range(2, limit + 1):
        dim = quotient_dim(f, "jacobian", n_trunc).dimension
        if previous is not None and dim == previous:
            return dim
        previous = dim
    return None


def is_isolated(f: Poly, cap: int | None = None) -> bool:
    return milnor_number(f, cap) is not None


def tjurina_number(f: Poly, cap: int | None = None) -> int | None:
    """Stable dimension of O/((f) + J_f + m^N), or None without stabilization."""
    if f.constant_term() != 0:
        raise LocdefError("germ must vanish at the origin")
    limit = default_cap() if cap is None else cap
    previous = None
    for n_trunc in range(2, limit + 1):
        dim = quotient_dim(f, "tjurina", n_trunc).dimension
        if previous is not None and dim == previous:
            return dim
        previous = dim
    return None


@dataclass(frozen=True)
class T1EigenReport:
    character: int
    basis: tuple[Monomial, ...]
    dimension: int
    quotient: TruncatedQuotient


def t1_eigenpart(
    f: Poly,
    q: QuotientType,
    truncation: int | None = None,
    ideal_tag: str = "jacobian",
) -> T1EigenReport:
    """Character-chi_f eigenspace of O/(J_f + m^N) for the group action.

    First-order deformations of the divisor germ (f = 0) that stay compatible
    with the quotient come from functions sharing the character of f, so the
    eigenpart is the span of the basis monomials with that character.
    """
    chi = semi_invariant_character(f, q)
    if chi is None:
        raise LocdefError("germ is not semi-invariant for the quotient type")
    quotient = quotient_dim(f, ideal_tag, truncation)
    basis = tuple(m for m in quotient.basis if monomial_character(m, q) == chi)
    return T1EigenReport(character=chi, basis=basis, dimension=len(basis), quotient=quotient)


def in_m2_image(f: Poly, g: Poly, truncation: int | None = None) -> bool:
    """Whether the class of g in O/(J_f + m^N) lies in the image of m^2.

    Decided by linear algebra: g reduces to zero against the row space
    spanned by the truncated Jacobian ideal together with every monomial of
    degree in [2, N).
    """
    n_trunc = default_truncation() if truncation is None else truncation
    if g.arity != f.arity:
        raise LocdefError("germ and deformation arity mismatch")
    space = _ideal_rows(f, "jacobian", n_trunc)
    for mono in monomials_below(f.arity, n_trunc):
        if sum(mono) >= 2:
            space.insert({mono: Fraction(1)})
    reduced = P.jet(g, n_trunc - 1)
    return space.contains(dict(reduced.terms))
