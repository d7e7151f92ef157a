"""
Plane models with two Galois points for the projective line.

For groups G1, G2 of Moebius maps and points P1, P2 satisfying the criterion,
build G_i-invariant generators f, g whose pole divisors are D - P1 and
D - P2, assemble phi = (f : g : 1), eliminate t to get the plane curve and
certify that the projections from (0:1:0) and (1:0:0) are Galois with groups
G1 and G2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import criterion
from .errors import (
    BasePointFound,
    DegreeMismatch,
    NoGeneratorFound,
    NonFreeOrbit,
    PoleMismatch,
)
from .fields import Field
from .poly import BiPoly, Poly, RatFunc, compose, map_degree, poly_gcd, resultant
from .projective import (
    Divisor,
    FiniteMoebiusGroup,
    ProjPoint,
    evaluate,
    orbit,
    orbit_sum,
    projective_line,
)


# invariant generators -----------------------------------------------------------

def is_invariant(h: RatFunc, G: FiniteMoebiusGroup) -> bool:
    return all(compose(h, g.pullback()) == h for g in G)


def _generator_candidates(G: FiniteMoebiusGroup):
    pulls = [g.pullback() for g in G]
    F = G.field
    yield "sum", sum(pulls[1:], pulls[0])
    yield "sum of squares", sum((p * p for p in pulls[1:]), pulls[0] * pulls[0])
    prod = pulls[0]
    for p in pulls[1:]:
        prod = prod * p
    yield "product", prod
    # shifted products have simple zeros along the orbit of c, so one of them
    # always works once c has a free orbit away from the poles
    values = F.elements() if F.is_finite else (F(i) for i in range(1, 64))
    for c in values:
        shifted = pulls[0] - c
        for p in pulls[1:]:
            shifted = shifted * (p - c)
        yield f"product shifted by {c}", shifted


def invariant_generator(G: FiniteMoebiusGroup, with_strategy: bool = False):
    """A G-invariant rational function h of map degree |G|, i.e. k(t)^G = k(h).

    Tries the sum of the pullbacks g*(t), then the sum of their squares, then
    their product, then products of (g*(t) - c); every candidate is checked
    for invariance and degree before it is accepted.
    """
    n = len(G)
    if n < 2:
        raise ValueError("group must be nontrivial")
    for name, h in _generator_candidates(G):
        if h.is_constant() or h.degree != n:
            continue
        if is_invariant(h, G):
            return (h, name) if with_strategy else h
    raise NoGeneratorFound(f"no symmetric candidate generates the invariants of a group of order {n}")


# pole divisors ------------------------------------------------------------------

def pole_divisor_matches(f: RatFunc, D: Divisor) -> bool:
    """Exact test that the pole divisor of f is D (effective, on P^1)."""
    F = f.field
    inf = ProjPoint.infinity(F)
    expected_den = Poly(F, [1])
    for P, m in D.mult.items():
        if P == inf:
            continue
        expected_den = expected_den * Poly(F, [-P.t(), 1]) ** m
    inf_mult = max(f.num.degree - f.den.degree, 0)
    return f.den == expected_den and inf_mult == D[inf]


def pole_align(h: RatFunc, G: FiniteMoebiusGroup, P: ProjPoint) -> RatFunc:
    """An invariant with pole divisor exactly the (free) G-orbit of P."""
    pts = orbit(G, P)
    if len(pts) != len(G):
        raise NonFreeOrbit(f"orbit of {P} has {len(pts)} points, group order {len(G)}")
    v = evaluate(h, P)
    if v.is_infinity():
        f = h
    else:
        f = 1 / (h - v.t())
    if not pole_divisor_matches(f, orbit_sum(G, P)):
        raise PoleMismatch(f"pole divisor of {f} differs from the orbit of {P}")
    return f


# parametrization and implicit equation -----------------------------------------

def build_map(f: RatFunc, g: RatFunc, D: Divisor | None = None) -> tuple[Poly, Poly, Poly]:
    """Coprime polynomial triple (F0 : F1 : F2) representing (f : g : 1).

    The triple is base-point-free (no common zero, including t = infinity);
    when D is given its degree must equal the degree of the triple.
    """
    L = (f.den * g.den) // poly_gcd(f.den, g.den)
    F0 = f.num * (L // f.den)
    F1 = g.num * (L // g.den)
    F2 = L
    common = poly_gcd(poly_gcd(F0, F1), F2)
    if common.degree > 0:
        raise BasePointFound(f"common factor {common} of the coordinate polynomials")
    n = max(F0.degree, F1.degree, F2.degree)
    # at t = infinity the triple is the vector of t^n coefficients, nonzero by choice of n
    if D is not None and n != D.degree:
        raise DegreeMismatch(f"parametrization degree {n} != deg D = {D.degree}")
    return F0, F1, F2


def _eliminant(f: RatFunc, g: RatFunc) -> BiPoly:
    F = f.field
    X, Y = BiPoly.X(F), BiPoly.Y(F)
    a = [BiPoly.const(F, f.num[i]) - X * f.den[i] for i in range(max(f.num.degree, f.den.degree) + 1)]
    b = [BiPoly.const(F, g.num[i]) - Y * g.den[i] for i in range(max(g.num.degree, g.den.degree) + 1)]
    return resultant(a, b, F)


def _kronecker_root(R: BiPoly, k: int) -> BiPoly | None:
    """P with P^k = c*R, if one exists, else None.

    Uses the substitution Y -> s^N, X -> s (N > deg_X R), which is injective on
    the relevant monomials, and extracts a univariate k-th root.
    """
    F = R.field
    if F.characteristic and k % F.characteristic == 0:
        return None
    N = R.degree_in(0) + 1
    deg = max(i + N * j for i, j in R.terms)
    if deg % k:
        return None
    u = [F.zero] * (deg + 1)
    for (i, j), c in R.terms.items():
        u[i + N * j] = c
    inv = u[-1].inv()
    u = Poly(F, [c * inv for c in u])
    m = deg // k
    r = [F.zero] * m + [F.one]
    for j in range(1, m + 1):
        rk = Poly(F, r) ** k
        r[m - j] = (u[deg - j] - rk[deg - j]) / k
    root = Poly(F, r)
    if root ** k != u:
        return None
    terms = {}
    for e, c in enumerate(root.coeffs):
        if not c.is_zero():
            terms[(e % N, e // N)] = c
    P = BiPoly(F, terms)
    if (P ** k).normalized() != R.normalized():
        return None
    return P


def vanishes_on(P: BiPoly, f: RatFunc, g: RatFunc) -> bool:
    """True iff P(f(t), g(t)) is the zero rational function."""
    F = f.field
    dx, dy = P.degree_in(0), P.degree_in(1)

    def powers(p: Poly, n):
        out = [Poly(F, [1])]
        for _ in range(n):
            out.append(out[-1] * p)
        return out

    A, B = powers(f.num, dx), powers(f.den, dx)
    C, E = powers(g.num, dy), powers(g.den, dy)
    acc = Poly(F)
    for (i, j), c in P.terms.items():
        acc = acc + A[i] * B[dx - i] * C[j] * E[dy - j] * c
    return acc.is_zero()


def implicitize(f: RatFunc, g: RatFunc, expected_degree: int | None = None) -> BiPoly:
    """Normalized implicit equation of the image of t -> (f(t), g(t)).

    The eliminant Res_t(num_f - X den_f, num_g - Y den_g) is a power of the
    curve equation when the parametrization is not birational; such powers
    are removed before normalizing.
    """
    R = _eliminant(f, g)
    if R.is_zero():
        raise DegreeMismatch("eliminant vanishes identically")
    d = math.gcd(R.degree_in(0), R.degree_in(1))
    if expected_degree is None or R.total_degree != expected_degree:
        for k in range(d, 1, -1):
            if d % k == 0:
                P = _kronecker_root(R, k)
                if P is not None:
                    R = P
                    break
    R = R.normalized()
    if not vanishes_on(R, f, g):
        raise DegreeMismatch("implicit equation does not vanish on the parametrization")
    if expected_degree is not None and R.total_degree != expected_degree:
        raise DegreeMismatch(f"implicit curve has degree {R.total_degree}, expected {expected_degree}")
    return R


# Galois certificates ---------------------------------------------------------------

@dataclass
class GaloisCertificate:
    holds: bool
    group_order: int
    map_degree: int
    structure: str = ""
    invariant: bool = True
    offending_element: str = ""
    offending_point: str = ""
    fibers_checked: int = 0

    def to_json(self):
        return {
            "holds": self.holds,
            "group_order": self.group_order,
            "map_degree": self.map_degree,
            "structure": self.structure,
            "invariant": self.invariant,
            "offending_element": self.offending_element,
            "offending_point": self.offending_point,
            "fibers_checked": self.fibers_checked,
        }


def fiber_is_orbit(h: RatFunc, G: FiniteMoebiusGroup, P: ProjPoint) -> bool:
    """Whether the full fiber of h through P (over the algebraic closure,
    with multiplicities) is the G-orbit of P, each point repeated |Stab(P)| times.
    """
    F = h.field
    n = h.degree
    pts = orbit(G, P)
    if len(G) % len(pts):
        return False
    e = len(G) // len(pts)
    v = evaluate(h, P)
    # homogeneous fiber polynomial v1*num - v0*den, read off at y = 1
    H = h.num * v.y - h.den * v.x
    inf_mult = n - H.degree
    expected_inf = 0
    for Q in pts:
        if Q.is_infinity():
            expected_inf = e
            continue
        lin = Poly(F, [-Q.t(), 1]) ** e
        H, r = divmod(H, lin)
        if not r.is_zero():
            return False
    return H.degree == 0 and inf_mult == expected_inf


def _sample_points(F: Field, count: int = 3):
    if F.is_finite:
        yield from projective_line(F)
        return
    i = 0
    while True:
        yield ProjPoint.affine(F, F(i))
        i += 1


def verify_galois_projection(coordinate: RatFunc, G: FiniteMoebiusGroup, samples: int = 3) -> GaloisCertificate:
    """Certificate that coordinate: P^1 -> P^1 is the quotient map by G.

    Holds iff the coordinate is G-invariant and has map degree |G|; in
    addition fibers are compared with orbits on sample points (all of P^1
    over a finite field).
    """
    n = len(G)
    deg = coordinate.degree if not coordinate.is_constant() else 0
    cert = GaloisCertificate(False, n, deg, G.structure())
    for g in G:
        if compose(coordinate, g.pullback()) != coordinate:
            cert.invariant = False
            cert.offending_element = str(g)
            return cert
    if deg != n:
        return cert
    checked = 0
    for P in _sample_points(G.field):
        if not G.field.is_finite and checked >= samples:
            break
        if not fiber_is_orbit(coordinate, G, P):
            cert.offending_point = str(P)
            cert.fibers_checked = checked
            return cert
        checked += 1
    cert.fibers_checked = checked
    cert.holds = True
    return cert


# full pipeline -----------------------------------------------------------------------

@dataclass
class PlaneModel:
    f: RatFunc
    g: RatFunc
    D: Divisor
    P1: ProjPoint
    P2: ProjPoint
    parametrization: tuple
    implicit: BiPoly
    certificates: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.implicit.total_degree

    def to_json(self):
        return {
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "D": self.D.to_json(),
            "P1": self.P1.to_json(),
            "P2": self.P2.to_json(),
            "parametrization": [p.to_json() for p in self.parametrization],
            "implicit": self.implicit.to_json(),
            "degree": self.degree,
            "certificates": {k: v.to_json() for k, v in sorted(self.certificates.items())},
        }

    def render(self) -> str:
        F0, F1, F2 = self.parametrization
        return f"({F0} : {F1} : {F2})"


@dataclass
class Construction:
    report: criterion.CriterionReport
    model: PlaneModel | None = None
    error: str = ""

    @property
    def ok(self) -> bool:
        return self.model is not None and all(c.holds for c in self.model.certificates.values())


def construct_model(G1, G2, P1, P2, D: Divisor) -> PlaneModel:
    h1 = invariant_generator(G1)
    h2 = invariant_generator(G2)
    f = pole_align(h1, G1, P2)
    g = pole_align(h2, G2, P1)
    triple = build_map(f, g, D)
    implicit = implicitize(f, g, expected_degree=D.degree)
    certs = {
        "P1": verify_galois_projection(f, G1),
        "P2": verify_galois_projection(g, G2),
    }
    return PlaneModel(f, g, D, P1, P2, triple, implicit, certs)


def run_construction(G1: FiniteMoebiusGroup, G2: FiniteMoebiusGroup, P1: ProjPoint, P2: ProjPoint) -> Construction:
    """Check the criterion on P^1, then build and certify phi = (f : g : 1).

    Stops at the first failed condition and returns the report without a model.
    """
    report = criterion.evaluate(0, G1, G2, P1, P2)
    if not report.holds:
        return Construction(report, None, "criterion failed")
    return Construction(report, construct_model(G1, G2, P1, P2, report.cond_c.divisor))
