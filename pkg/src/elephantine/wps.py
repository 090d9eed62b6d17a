"""Singularity inventories of weighted-projective hypersurfaces.

The analyzer inspects the loci where a well-formed weighted projective space
is allowed to be singular and where quasi-smoothness can fail in a way that
is decidable by exact univariate algebra: the coordinate points and the
one-dimensional coordinate strata.  Points found there are reported with
their stabilizer data and, at quasi-smooth points, the normalized transverse
quotient type.  Deeper strata are not searched; that limitation is part of
the report.

Anticanonical data (degree, monomial basis of sections, and the elephant
equation when the unique section is a coordinate) also lives here, including
the codimension-2 complete-intersection variant of the degree formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import poly as P
from .cyclo import QuotientType, normalize_type, render_type
from .poly import Monomial, Poly


class WpsError(ValueError):
    """Invalid weighted-hypersurface input."""


@dataclass(frozen=True)
class WpsHypersurface:
    """A hypersurface of the given degree in P(w_0, ..., w_n)."""

    weights: tuple[int, ...]
    degree: int
    equation: Poly

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) < 3:
            raise WpsError("need at least 3 weights")
        if any(w < 1 for w in self.weights):
            raise WpsError("weights must be positive")
        if self.degree < 1:
            raise WpsError("degree must be positive")
        if self.equation.arity != len(self.weights):
            raise WpsError("equation arity does not match the weight count")
        if self.equation.is_zero():
            raise WpsError("equation must be nonzero")
        degs = P.weighted_degrees(self.equation, self.weights)
        if degs != {self.degree}:
            raise WpsError(
                f"equation is not weighted-homogeneous of degree {self.degree}: "
                f"term degrees {sorted(degs)}"
            )

    @property
    def vars(self) -> tuple[str, ...]:
        return self.equation.vars


def wellformed(weights: tuple[int, ...]) -> bool:
    """gcd of every n-of-(n+1) subset of the weights is 1."""
    if any(w < 1 for w in weights):
        raise WpsError("weights must be positive")
    n = len(weights)
    for skip in range(n):
        g = 0
        for i, w in enumerate(weights):
            if i != skip:
                g = gcd(g, w)
        if g != 1:
            return False
    return True


# -- univariate helpers (dense Fraction coefficient lists) --------------


def _uni_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _uni_deg(p: list[Fraction]) -> int:
    return len(p) - 1


def _uni_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = _uni_deg(b), b[-1]
    while a and _uni_deg(a) >= db:
        shift = _uni_deg(a) - db
        factor = a[-1] / lb
        for k in range(db + 1):
            a[shift + k] -= factor * b[k]
        _uni_trim(a)
    return a


def _uni_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db, lb = _uni_deg(b), b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 1)
    while a and _uni_deg(a) >= db:
        shift = _uni_deg(a) - db
        factor = a[-1] / lb
        quot[shift] = factor
        for k in range(db + 1):
            a[shift + k] -= factor * b[k]
        _uni_trim(a)
    return _uni_trim(quot), a


def _uni_monic(p: list[Fraction]) -> list[Fraction]:
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def _uni_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = list(a), list(b)
    while b:
        a, b = b, _uni_rem(a, b)
    return _uni_monic(a)


def _uni_derivative(p: list[Fraction]) -> list[Fraction]:
    return _uni_trim([p[k] * k for k in range(1, len(p))])


def _uni_squarefree(p: list[Fraction]) -> list[Fraction]:
    """Monic squarefree part; its degree counts the distinct complex roots."""
    if not p or _uni_deg(p) == 0:
        return _uni_monic(p)
    g = _uni_gcd(p, _uni_derivative(p))
    quot, rem = _uni_divmod(p, g)
    assert not rem
    return _uni_monic(quot)


def _uni_strip_origin(p: list[Fraction]) -> tuple[int, list[Fraction]]:
    """Split off the t^k factor: returns (valuation, cofactor)."""
    val = 0
    while p and p[0] == 0:
        p = p[1:]
        val += 1
    return val, p


def _uni_exact_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    quot, rem = _uni_divmod(a, b)
    assert not rem
    return quot


def _uni_render(p: list[Fraction], name: str) -> str:
    terms = {(k,): c for k, c in enumerate(p) if c != 0}
    return P.render(Poly((name,), terms))


def _dehomogenize(form: Poly, i: int, j: int) -> list[Fraction]:
    """Binary form supported on positions i, j as a univariate in x_j at x_i = 1."""
    coeffs: dict[int, Fraction] = {}
    for mono, coeff in form.terms.items():
        coeffs[mono[j]] = coeffs.get(mono[j], Fraction(0)) + coeff
    if not coeffs:
        return []
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return _uni_trim(out)


def _value_at_vertex(form: Poly, j: int) -> Fraction:
    """Value of a stratum-supported form at the x_j coordinate point."""
    total = Fraction(0)
    for mono, coeff in form.terms.items():
        if all(e == 0 for k, e in enumerate(mono) if k != j):
            total += coeff
    return total


# -- vertex reports ------------------------------------------------------


@dataclass(frozen=True)
class LocalModel:
    """Chart equation with the residual cyclic action on the chart variables."""

    variables: tuple[str, ...]
    equation: Poly
    action: QuotientType


@dataclass(frozen=True)
class VertexReport:
    index: int
    variable: str
    weight: int
    on_hypersurface: bool
    quasi_smooth: bool | None = None
    eliminated: str | None = None
    quotient: QuotientType | None = None
    normalized: QuotientType | None = None
    local_model: LocalModel | None = None


def vertex_report(surface: WpsHypersurface, i: int) -> VertexReport:
    """Inventory entry for the i-th coordinate point.

    The point lies on the hypersurface iff no pure power of x_i occurs.  On
    it, quasi-smoothness holds iff some term x_i^m x_j appears; the variable
    x_j of least index is then eliminated and the transverse quotient type is
    1/w_i of the remaining weights.  Otherwise the chart equation at x_i = 1
    and the residual action are reported verbatim.
    """
    f = surface.equation
    n = f.arity
    w = surface.weights[i]
    pure = any(
        all(e == 0 for k, e in enumerate(mono) if k != i) for mono in f.terms
    )
    if pure:
        return VertexReport(
            index=i, variable=f.vars[i], weight=w, on_hypersurface=False
        )
    eliminated = None
    for j in range(n):
        if j == i:
            continue
        if any(
            mono[j] == 1 and all(e == 0 for k, e in enumerate(mono) if k not in (i, j))
            for mono in f.terms
        ):
            eliminated = j
            break
    if eliminated is None:
        chart_vars = tuple(f.vars[k] for k in range(n) if k != i)
        chart_eq = P.assign(f, {i: 1})
        action = QuotientType(w, tuple(surface.weights[k] for k in range(n) if k != i))
        return VertexReport(
            index=i,
            variable=f.vars[i],
            weight=w,
            on_hypersurface=True,
            quasi_smooth=False,
            local_model=LocalModel(variables=chart_vars, equation=chart_eq, action=action),
        )
    transverse = tuple(
        surface.weights[k] for k in range(n) if k not in (i, eliminated)
    )
    quotient = QuotientType(w, transverse)
    return VertexReport(
        index=i,
        variable=f.vars[i],
        weight=w,
        on_hypersurface=True,
        quasi_smooth=True,
        eliminated=f.vars[eliminated],
        quotient=quotient,
        normalized=normalize_type(quotient),
    )


# -- stratum reports -----------------------------------------------------


@dataclass(frozen=True)
class StratumPointBatch:
    """An orbit-class family of stratum points sharing one description."""

    count: int
    point_poly: str
    quasi_smooth: bool
    stabilizer: int
    eliminated: str | None = None
    chart_variable: str | None = None
    quotient: QuotientType | None = None
    normalized: QuotientType | None = None


@dataclass(frozen=True)
class StratumReport:
    pair: tuple[int, int]
    variables: tuple[str, str]
    stabilizer: int
    contained: bool
    entirely_singular: bool
    quotient_curve: bool
    batches: tuple[StratumPointBatch, ...]
    vertex_flags: tuple[str, ...]


def stratum_report(surface: WpsHypersurface, i: int, j: int) -> StratumReport:
    """Inventory for the one-dimensional stratum {x_k = 0 for k not in {i, j}}.

    The equation and all partials restrict to binary forms; their common
    zeros off the vertices are counted exactly (squarefree degree) and then
    identified under the residual mu_{w_i} action on the chart x_i = 1, whose
    effective order is w_i / gcd(w_i, w_j).  Points where every partial
    vanishes are non-quasi-smooth; the rest, when the stabilizer is
    nontrivial, are quotient points whose transverse type eliminates the
    first variable with generically nonvanishing restricted partial.
    """
    if i == j:
        raise WpsError("stratum needs two distinct coordinates")
    if i > j:
        i, j = j, i
    f = surface.equation
    n = f.arity
    wi, wj = surface.weights[i], surface.weights[j]
    stab = gcd(wi, wj)
    residual_order = wi // stab

    f_str = P.restrict_support(f, (i, j))
    partial_strs = [P.restrict_support(p, (i, j)) for p in P.partials(f)]
    contained = f_str.is_zero()
    system = [f_str] if not contained else []
    system += partial_strs
    system = [p for p in system if not p.is_zero()]
    if not system:
        return StratumReport(
            pair=(i, j),
            variables=(f.vars[i], f.vars[j]),
            stabilizer=stab,
            contained=True,
            entirely_singular=True,
            quotient_curve=stab > 1,
            batches=(),
            vertex_flags=(f.vars[i], f.vars[j]),
        )

    # distinct nonzero common zeros of the singular system, in the x_i = 1 chart
    dehoms = [_dehomogenize(p, i, j) for p in system]
    sing = dehoms[0]
    for d in dehoms[1:]:
        sing = _uni_gcd(sing, d)
    _, sing = _uni_strip_origin(sing)
    sing = _uni_squarefree(sing) if sing else sing

    vertex_flags = []
    if all(d[0] == 0 for d in dehoms):
        vertex_flags.append(f.vars[i])
    if all(_value_at_vertex(p, j) == 0 for p in system):
        vertex_flags.append(f.vars[j])

    batches: list[StratumPointBatch] = []
    if sing and _uni_deg(sing) >= 1:
        count = _orbit_count(_uni_deg(sing), residual_order)
        batches.append(
            StratumPointBatch(
                count=count,
                point_poly=_uni_render(sing, f.vars[j]),
                quasi_smooth=False,
                stabilizer=stab,
            )
        )

    quotient_curve = contained and stab > 1
    if not contained and stab > 1:
        roots = _dehomogenize(f_str, i, j)
        _, roots = _uni_strip_origin(roots)
        roots = _uni_squarefree(roots) if roots else roots
        if sing and _uni_deg(sing) >= 1:
            roots = _uni_exact_div(roots, _uni_gcd(roots, sing)) if roots else roots
        batches.extend(
            _quotient_batches(surface, i, j, roots, partial_strs, stab, residual_order)
        )

    return StratumReport(
        pair=(i, j),
        variables=(f.vars[i], f.vars[j]),
        stabilizer=stab,
        contained=contained,
        entirely_singular=False,
        quotient_curve=quotient_curve,
        batches=tuple(batches),
        vertex_flags=tuple(vertex_flags),
    )


def _orbit_count(distinct_roots: int, residual_order: int) -> int:
    # the residual cyclic identification acts freely on nonzero chart points
    if distinct_roots % residual_order != 0:
        raise WpsError(
            f"root count {distinct_roots} not divisible by the residual order {residual_order}"
        )
    return distinct_roots // residual_order


def _quotient_batches(
    surface: WpsHypersurface,
    i: int,
    j: int,
    roots: list[Fraction],
    partial_strs: list[Poly],
    stab: int,
    residual_order: int,
):
    """Split quasi-smooth stratum points by their eliminated variable."""
    f = surface.equation
    n = f.arity
    remaining = roots
    for k in range(n):
        if not remaining or _uni_deg(remaining) < 1:
            break
        pk = _dehomogenize(partial_strs[k], i, j) if not partial_strs[k].is_zero() else []
        if not pk:
            continue
        shared = _uni_gcd(remaining, pk)
        batch_poly = _uni_exact_div(remaining, shared)
        remaining = shared
        if _uni_deg(batch_poly) < 1:
            continue
        chart = i if k != i else j
        transverse = tuple(
            surface.weights[m] for m in range(n) if m not in (chart, k)
        )
        quotient = QuotientType(stab, transverse)
        yield StratumPointBatch(
            count=_orbit_count(_uni_deg(batch_poly), residual_order),
            point_poly=_uni_render(batch_poly, f.vars[j]),
            quasi_smooth=True,
            stabilizer=stab,
            eliminated=f.vars[k],
            chart_variable=f.vars[chart],
            quotient=quotient,
            normalized=normalize_type(quotient),
        )
    assert not remaining or _uni_deg(remaining) < 1, "quasi-smooth points left unassigned"


# -- anticanonical data --------------------------------------------------


def monomials_of_weighted_degree(weights: tuple[int, ...], target: int) -> list[Monomial]:
    """All exponent tuples with sum(w_i e_i) = target, graded-lex sorted."""
    out: list[Monomial] = []

    def recurse(pos: int, left: int, prefix: tuple[int, ...]):
        if pos == len(weights) - 1:
            if left % weights[pos] == 0:
                out.append(prefix + (left // weights[pos],))
            return
        w = weights[pos]
        for e in range(left // w + 1):
            recurse(pos + 1, left - e * w, prefix + (e,))

    if target >= 0:
        recurse(0, target, ())
    return sorted(out, key=P.grlex_key)


def anticanonical_data(weights: tuple[int, ...], degrees: tuple[int, ...]) -> tuple[int, list[Monomial]]:
    """Anticanonical degree sum(w) - sum(d) and the section monomial basis.

    The degree tuple has one entry per defining equation, so codimension-2
    complete intersections are covered by the same formula.
    """
    amp = sum(weights) - sum(degrees)
    return amp, monomials_of_weighted_degree(tuple(weights), amp)


def anticanonical(surface: WpsHypersurface) -> tuple[int, list[Monomial]]:
    return anticanonical_data(surface.weights, (surface.degree,))


@dataclass(frozen=True)
class ElephantReport:
    status: str  # "extracted" | "unsupported"
    reason: str | None = None
    section_variable: str | None = None
    equation: Poly | None = None
    weights: tuple[int, ...] | None = None


def elephant_equation(surface: WpsHypersurface) -> ElephantReport:
    """Restrict to (x_i = 0) when the unique anticanonical section is x_i."""
    amp, basis = anticanonical_data(surface.weights, (surface.degree,))
    if len(basis) != 1:
        return ElephantReport(
            status="unsupported",
            reason=f"anticanonical system has {len(basis)} monomial sections, need exactly 1",
        )
    section = basis[0]
    if sum(section) != 1:
        return ElephantReport(
            status="unsupported",
            reason="the unique anticanonical section is not a single coordinate",
        )
    i = section.index(1)
    residual_weights = tuple(w for k, w in enumerate(surface.weights) if k != i)
    restricted = P.assign(surface.equation, {i: 0})
    assert P.weighted_degrees(restricted, residual_weights) <= {surface.degree}
    return ElephantReport(
        status="extracted",
        section_variable=surface.vars[i],
        equation=restricted,
        weights=residual_weights,
    )


# -- full analysis -------------------------------------------------------


@dataclass(frozen=True)
class InventoryEntry:
    """One line of the singularity inventory, normalized for comparison."""

    location: str
    count: int
    kind: str  # "quotient" | "non_quasi_smooth" | "quotient_curve" | "singular_curve"
    type: str | None = None


@dataclass(frozen=True)
class WpsAnalysis:
    weights: tuple[int, ...]
    degree: int
    wellformed: bool
    vertices: tuple[VertexReport, ...]
    strata: tuple[StratumReport, ...]
    anticanonical_degree: int
    sections: tuple[Monomial, ...]
    h0: int
    elephant: ElephantReport
    inventory: tuple[InventoryEntry, ...]


def analyze(surface: WpsHypersurface) -> WpsAnalysis:
    """Vertex and stratum inventories plus anticanonical data.

    Only coordinate points and one-dimensional coordinate strata are
    searched; quasi-smoothness failures elsewhere are out of reach of these
    exact methods and are not reported.
    """
    n = surface.equation.arity
    vertices = tuple(vertex_report(surface, i) for i in range(n))
    strata = tuple(
        stratum_report(surface, i, j) for i in range(n) for j in range(i + 1, n)
    )
    amp, basis = anticanonical_data(surface.weights, (surface.degree,))
    inventory: list[InventoryEntry] = []
    for v in vertices:
        if not v.on_hypersurface:
            continue
        if v.quasi_smooth and v.weight > 1:
            inventory.append(
                InventoryEntry(
                    location=f"vertex {v.variable}",
                    count=1,
                    kind="quotient",
                    type=render_type(v.normalized),
                )
            )
        elif not v.quasi_smooth:
            inventory.append(
                InventoryEntry(
                    location=f"vertex {v.variable}",
                    count=1,
                    kind="non_quasi_smooth",
                )
            )
    for s in strata:
        loc = f"stratum ({s.variables[0]},{s.variables[1]})"
        if s.entirely_singular:
            inventory.append(InventoryEntry(location=loc, count=1, kind="singular_curve"))
        if s.quotient_curve:
            inventory.append(InventoryEntry(location=loc, count=1, kind="quotient_curve"))
        for batch in s.batches:
            if batch.quasi_smooth:
                inventory.append(
                    InventoryEntry(
                        location=loc,
                        count=batch.count,
                        kind="quotient",
                        type=render_type(batch.normalized),
                    )
                )
            else:
                inventory.append(
                    InventoryEntry(location=loc, count=batch.count, kind="non_quasi_smooth")
                )
    return WpsAnalysis(
        weights=surface.weights,
        degree=surface.degree,
        wellformed=wellformed(surface.weights),
        vertices=vertices,
        strata=strata,
        anticanonical_degree=amp,
        sections=tuple(basis),
        h0=len(basis),
        elephant=elephant_equation(surface),
        inventory=tuple(inventory),
    )
