"""
The Fermat cubic X^3 + Y^3 + Z^3 = 0 over a prime field F_p, p = 1 mod 3.

Automorphisms are stored as permutation tables of E(F_p). The group law uses
the flex O = (1:-1:0) as origin, so three points sum to O exactly when they
are collinear. With that origin the involution

    eta(P) = (Q + sigma(Q)) - P

is the one with P + eta(P) linearly equivalent to Q + sigma(Q), and it swaps
Q and sigma(Q).

Over F_p we only see finitely many points, so everything here is a pointwise
verification of statements made over the algebraic closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import criterion
from .errors import (
    BadCharacteristic,
    DegenerateQ,
    FitFailed,
    HypothesisViolated,
    InconsistentRamification,
    PoleVerificationFailed,
)
from .fields import FieldElem, PrimeField, solve_quadratic
from .linalg import kernel
from .poly import BiPoly
from .projective import Divisor, ProjPoint, orbit_sum


class CubicPoint:
    """A point (X:Y:Z) of the plane, first nonzero coordinate scaled to 1."""

    __slots__ = ("X", "Y", "Z")

    def __init__(self, F, X, Y, Z):
        coords = [F(X), F(Y), F(Z)]
        lead = next((c for c in coords if not c.is_zero()), None)
        if lead is None:
            raise ValueError("(0:0:0) is not a projective point")
        inv = lead.inv()
        self.X, self.Y, self.Z = (c * inv for c in coords)

    @property
    def field(self):
        return self.X.field

    def coords(self):
        return (self.X, self.Y, self.Z)

    def on_curve(self) -> bool:
        return (self.X ** 3 + self.Y ** 3 + self.Z ** 3).is_zero()

    def __eq__(self, other):
        return isinstance(other, CubicPoint) and self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords())

    def to_json(self):
        return [c.to_json() for c in self.coords()]

    def __str__(self):
        return "({}:{}:{})".format(*self.coords())

    def __repr__(self):
        return f"CubicPoint{self}"


def _check_p(p: int):
    if p == 3 or p % 3 != 1:
        raise BadCharacteristic(f"need p = 1 mod 3 for a cube root of unity, got p = {p}")


def enumerate_curve(p: int) -> list[CubicPoint]:
    """All F_p-points of the Fermat cubic: (1:y:z) in lexicographic order, then (0:1:z)."""
    _check_p(p)
    F = PrimeField(p)
    cube_roots: dict[int, list[int]] = {}
    for v in range(p):
        cube_roots.setdefault(v ** 3 % p, []).append(v)
    pts = []
    for y in range(p):
        for z in range(p):
            if (1 + y ** 3 + z ** 3) % p == 0:
                pts.append(CubicPoint(F, 1, y, z))
    for z in range(p):
        if (1 + z ** 3) % p == 0:
            pts.append(CubicPoint(F, 0, 1, z))
    return pts


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def third_point(P: CubicPoint, Q: CubicPoint) -> CubicPoint:
    """Third intersection of the line PQ (the tangent if P = Q) with the cubic.

    On the line s*P + u*Q the cubic restricts to s*u*(c1*s + c2*u) with
    c1 = sum 3 P_i^2 Q_i and c2 = sum 3 P_i Q_i^2, so the third point is
    c2*P - c1*Q. For P = Q the same formula is applied to P and a second
    point V of the tangent line, where c1 vanishes.
    """
    F = P.field
    p, q = P.coords(), Q.coords()
    if P == Q:
        grad = tuple(3 * c * c for c in p)
        # a vector on the tangent line, independent of P
        for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
            v = _cross(grad, tuple(F(x) for x in e))
            if any(not c.is_zero() for c in v) and any(not c.is_zero() for c in _cross(v, p)):
                break
        q = v
        c2 = sum((3 * a * b * b for a, b in zip(p, q)), F.zero)
        fv = sum((b ** 3 for b in q), F.zero)
        return CubicPoint(F, *(fv * a - c2 * b for a, b in zip(p, q)))
    c1 = sum((3 * a * a * b for a, b in zip(p, q)), F.zero)
    c2 = sum((3 * a * b * b for a, b in zip(p, q)), F.zero)
    return CubicPoint(F, *(c2 * a - c1 * b for a, b in zip(p, q)))


def origin(F) -> CubicPoint:
    return CubicPoint(F, 1, -1, 0)


def group_neg(P: CubicPoint) -> CubicPoint:
    return third_point(origin(P.field), P)


def group_add(P: CubicPoint, Q: CubicPoint) -> CubicPoint:
    """Chord-tangent addition with the flex (1:-1:0) as origin."""
    return third_point(origin(P.field), third_point(P, Q))


def omega(F: PrimeField) -> FieldElem:
    """The smaller primitive cube root of unity in F_p."""
    roots = solve_quadratic(F, 1, 1)
    if not roots:
        raise BadCharacteristic(f"{F} has no primitive cube root of unity")
    return min(roots, key=lambda r: r.value)


def sigma(P: CubicPoint, power: int = 1, w: FieldElem | None = None) -> CubicPoint:
    """(X:Y:Z) -> (w^power X : Y : Z)."""
    w = w if w is not None else omega(P.field)
    return CubicPoint(P.field, w ** power * P.X, P.Y, P.Z)


def eta(P: CubicPoint, Q: CubicPoint, w: FieldElem | None = None) -> CubicPoint:
    """The involution with eta(Q) = sigma(Q): P -> (Q + sigma(Q)) - P."""
    S = group_add(Q, sigma(Q, 1, w))
    return group_add(S, group_neg(P))


def quotient_genus(order: int, fixed_count: int) -> int:
    """Genus of E/<g> for an automorphism g of prime order with the given fixed points.

    Riemann-Hurwitz on a genus-1 curve: 0 = n(2g' - 2) + r(n - 1).
    """
    if order < 2 or any(order % d == 0 for d in range(2, int(order ** 0.5) + 1)):
        raise InconsistentRamification(f"order {order} is not prime")
    g = 1 - Fraction(fixed_count * (order - 1), 2 * order)
    if g.denominator != 1 or g < 0:
        raise InconsistentRamification(f"order {order} with {fixed_count} fixed points gives genus {g}")
    return int(g)


class FermatCubic:
    """E(F_p) together with lookup tables for automorphisms."""

    def __init__(self, p: int):
        _check_p(p)
        self.p = p
        self.field = PrimeField(p)
        self.omega = omega(self.field)
        self.points = enumerate_curve(p)
        self.index = {P: i for i, P in enumerate(self.points)}
        self.O = origin(self.field)

    def __len__(self):
        return len(self.points)

    def aut(self, word: tuple, fn) -> "EllAut":
        return EllAut(self, tuple(word), tuple(self.index[fn(P)] for P in self.points))

    def identity(self) -> "EllAut":
        return EllAut(self, (), tuple(range(len(self.points))))

    def sigma(self, power: int = 1) -> "EllAut":
        word = ("sigma",) if power % 3 == 1 else ("sigma2",)
        return self.aut(word, lambda P: sigma(P, power, self.omega))

    def eta(self, Q: CubicPoint) -> "EllAut":
        S = group_add(Q, sigma(Q, 1, self.omega))
        return self.aut(("eta",), lambda P: group_add(S, group_neg(P)))

    def translation(self, T: CubicPoint) -> "EllAut":
        return self.aut(("translate",), lambda P: group_add(P, T))

    def coordinate_scaling(self, i: int) -> "EllAut":
        """Multiply the i-th coordinate by omega."""
        def fn(P):
            c = list(P.coords())
            c[i] = c[i] * self.omega
            return CubicPoint(self.field, *c)
        return self.aut((f"scale{i}",), fn)


class EllAut:
    """An automorphism of E(F_p): a word for display and a permutation table."""

    __slots__ = ("curve", "word", "table")

    def __init__(self, curve: FermatCubic, word: tuple, table: tuple):
        self.curve = curve
        self.word = word
        self.table = table

    def __call__(self, P: CubicPoint) -> CubicPoint:
        return self.curve.points[self.table[self.curve.index[P]]]

    def __matmul__(self, other: "EllAut") -> "EllAut":
        """Composition: (self @ other)(P) = self(other(P))."""
        return EllAut(self.curve, self.word + other.word, tuple(self.table[i] for i in other.table))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.table))

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity():
            g, n = g @ self, n + 1
        return n

    def fixed_points(self) -> list[CubicPoint]:
        return [self.curve.points[i] for i, j in enumerate(self.table) if i == j]

    def is_bijection(self) -> bool:
        return sorted(self.table) == list(range(len(self.table)))

    def __eq__(self, other):
        return isinstance(other, EllAut) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def sort_key(self):
        return self.table

    def __str__(self):
        return "*".join(self.word) or "id"

    def __repr__(self):
        return f"EllAut({self})"


class EllAutGroup:
    """A cyclic group <g> of automorphisms of E(F_p)."""

    def __init__(self, gen: EllAut):
        self.generator = gen
        elems = [gen.curve.identity()]
        g = gen
        while not g.is_identity():
            elems.append(g)
            g = g @ gen
        self.members = elems
        self.elements = frozenset(elems)

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def fixed_point_count(self) -> int:
        return len(self.generator.fixed_points())


# verification of the elliptic construction --------------------------------------

@dataclass
class EllipticCertificate:
    p: int
    omega: FieldElem
    Q: CubicPoint
    P1: CubicPoint
    P2: CubicPoint
    sigma_table: tuple
    eta_table: tuple
    tau_table: tuple
    tau_order: int
    tau_Q_is_sigma_Q: bool
    eta_is_involution: bool
    fixed_sigma: int
    fixed_tau: int
    report: criterion.CriterionReport
    checks: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values()) and self.report.holds

    def to_json(self):
        return {
            "p": self.p,
            "omega": self.omega.to_json(),
            "Q": self.Q.to_json(),
            "P1": self.P1.to_json(),
            "P2": self.P2.to_json(),
            "sigma": list(self.sigma_table),
            "eta": list(self.eta_table),
            "tau": list(self.tau_table),
            "tau_order": self.tau_order,
            "fixed_points": {"sigma": self.fixed_sigma, "tau": self.fixed_tau},
            "criterion": self.report.to_json(),
            "checks": dict(sorted(self.checks.items())),
            "holds": self.holds,
        }


def _groups(curve: FermatCubic, Q: CubicPoint):
    s = curve.sigma(1)
    s2 = curve.sigma(2)
    e = curve.eta(Q)
    tau = e @ s2 @ e
    return s, s2, e, tau


def verify_theorem4(p: int, Q: CubicPoint, curve: FermatCubic | None = None) -> EllipticCertificate:
    """Check the two-inner-Galois-point criterion for <sigma>, <tau = eta sigma^2 eta>.

    P1 = tau^2(Q), P2 = sigma^2(Q). Raises HypothesisViolated if Q lies on YZ = 0
    or is sigma-fixed, and DegenerateQ when sigma^2(Q) = tau^2(Q) for this Q.
    """
    curve = curve or FermatCubic(p)
    if not Q.on_curve():
        raise HypothesisViolated(f"{Q} is not on the curve")
    if Q.Y.is_zero() or Q.Z.is_zero():
        raise HypothesisViolated(f"{Q} lies on YZ = 0")
    s, s2, e, tau = _groups(curve, Q)
    if s(Q) == Q or s2(Q) == Q:
        raise HypothesisViolated(f"{Q} is fixed by sigma")
    tau2 = tau @ tau
    if s2(Q) == tau2(Q):
        raise DegenerateQ(f"sigma^2(Q) = tau^2(Q) for Q = {Q}")
    G1, G2 = EllAutGroup(s), EllAutGroup(tau)
    P1, P2 = tau2(Q), s2(Q)
    report = criterion.evaluate(1, G1, G2, P1, P2)
    checks = {
        "sigma_order_3": s.order() == 3,
        "tau_order_3": tau.order() == 3,
        "tau_Q_is_sigma_Q": tau(Q) == s(Q),
        "eta_Q_is_sigma_Q": e(Q) == s(Q),
        "eta_involution": (e @ e).is_identity(),
        "sigma2_Q_ne_tau2_Q": P1 != P2,
        "fixed_sigma_3": len(s.fixed_points()) == 3,
        "fixed_tau_3": len(tau.fixed_points()) == 3,
        "degree_D_4": report.degree_D == 4,
    }
    return EllipticCertificate(
        p, curve.omega, Q, P1, P2, s.table, e.table, tau.table, tau.order(),
        checks["tau_Q_is_sigma_Q"], checks["eta_involution"],
        len(s.fixed_points()), len(tau.fixed_points()), report, checks,
    )


def admissible_points(curve: FermatCubic) -> list[CubicPoint]:
    return [P for P in curve.points if not (P.X.is_zero() or P.Y.is_zero() or P.Z.is_zero())]


def find_elliptic_witness(p: int) -> tuple[EllipticCertificate, list]:
    """First admissible Q (enumeration order) that passes; also the skipped ones."""
    curve = FermatCubic(p)
    skipped = []
    for Q in admissible_points(curve):
        try:
            cert = verify_theorem4(p, Q, curve)
        except (DegenerateQ, HypothesisViolated) as exc:
            skipped.append((Q, str(exc)))
            continue
        if cert.holds:
            return cert, skipped
        skipped.append((Q, "checks failed"))
    raise DegenerateQ(f"no admissible point of E(F_{p}) passes")


# the quartic plane model ------------------------------------------------------

def _y(P: CubicPoint) -> ProjPoint:
    return ProjPoint(P.field, P.Y, P.Z)


def _inverted_shift(v: ProjPoint, c: ProjPoint) -> ProjPoint:
    """1/(v - c) as a point of P^1, or v itself when c is infinity."""
    if c.is_infinity():
        return v
    return ProjPoint(v.field, v.y, v.x - c.t() * v.y)


@dataclass
class QuarticModel:
    p: int
    Q: CubicPoint
    poles_f: Divisor
    poles_g: Divisor
    D: Divisor
    image: list
    quartic: BiPoly
    kernel_dim: int

    def to_json(self):
        return {
            "p": self.p,
            "Q": self.Q.to_json(),
            "poles_f": self.poles_f.to_json(),
            "poles_g": self.poles_g.to_json(),
            "D": self.D.to_json(),
            "image_points": [[a.to_json(), b.to_json()] for a, b in self.image],
            "quartic": self.quartic.to_json(),
            "kernel_dim": self.kernel_dim,
        }


QUARTIC_MONOMIALS = [(i, d - i) for d in range(5) for i in range(d, -1, -1)]


def build_quartic_model(p: int, Q: CubicPoint, curve: FermatCubic | None = None) -> QuarticModel:
    """Evaluate phi = (f : g : 1) on E(F_p) and interpolate its degree-4 image.

    f = 1/(y - y(P2)) with y = Y/Z is <sigma>-invariant; g = 1/(y o eta - y(eta(P1)))
    is <tau>-invariant. Their pole divisors are checked against the orbit sums.
    """
    curve = curve or FermatCubic(p)
    cert = verify_theorem4(p, Q, curve)
    if not cert.holds:
        raise HypothesisViolated(f"criterion does not hold for Q = {Q}")
    s, _, e, tau = _groups(curve, Q)
    P1, P2 = cert.P1, cert.P2
    c_f, c_g = _y(P2), _y(e(P1))

    def f(P):
        return _inverted_shift(_y(P), c_f)

    def g(P):
        return _inverted_shift(_y(e(P)), c_g)

    for P in curve.points:
        if f(s(P)) != f(P) or g(tau(P)) != g(P):
            raise PoleVerificationFailed(f"invariance fails at {P}")
    poles_f = Divisor.from_points(P for P in curve.points if f(P).is_infinity())
    poles_g = Divisor.from_points(P for P in curve.points if g(P).is_infinity())
    G1, G2 = EllAutGroup(s), EllAutGroup(tau)
    D = cert.report.cond_c.divisor
    if poles_f != orbit_sum(G1, P2) or poles_g != orbit_sum(G2, P1):
        raise PoleVerificationFailed("pole divisors differ from D - P1, D - P2")
    if poles_f + P1 != D or poles_g + P2 != D:
        raise PoleVerificationFailed("pole divisors differ from D - P1, D - P2")

    F = curve.field
    image = []
    for P in curve.points:
        a, b = f(P), g(P)
        if a.is_infinity() or b.is_infinity():
            continue
        image.append((a.t(), b.t()))
    rows = [[x ** i * y ** j for i, j in QUARTIC_MONOMIALS] for x, y in image]
    ker = kernel(rows, F)
    if len(ker) != 1:
        raise FitFailed(f"kernel of the quartic fit has dimension {len(ker)} over F_{p}")
    quartic = BiPoly(F, dict(zip(QUARTIC_MONOMIALS, ker[0]))).normalized()
    if quartic.total_degree != 4:
        raise FitFailed("fitted curve has no degree-4 part")
    return QuarticModel(p, Q, poles_f, poles_g, D, image, quartic, len(ker))


# outer Galois points of E ------------------------------------------------------------

def _projection_from(center: CubicPoint):
    """P -> line through center and P, as a canonical point of the dual plane."""
    F = center.field

    def proj(P):
        if P == center:
            return None
        return CubicPoint(F, *_cross(center.coords(), P.coords()))
    return proj


def projection_fibers_match(curve: FermatCubic, center: CubicPoint, G: EllAutGroup) -> bool:
    """Whether projection from center is G-invariant with fibers equal to G-orbits on E(F_p)."""
    proj = _projection_from(center)
    fibers: dict = {}
    for P in curve.points:
        line = proj(P)
        if line is None:
            return False
        fibers.setdefault(line, set()).add(P)
    for P in curve.points:
        if proj(P) is None or any(proj(g(P)) != proj(P) for g in G):
            return False
        if fibers[proj(P)] != {g(P) for g in G}:
            return False
    return True


@dataclass
class OuterCertificate:
    p: int
    results: dict

    @property
    def holds(self) -> bool:
        return all(self.results.values())

    def to_json(self):
        return {"p": self.p, "results": dict(self.results), "holds": self.holds}


def outer_delta_check(p: int, curve: FermatCubic | None = None) -> OuterCertificate:
    """Witness that (1:0:0), (0:1:0), (0:0:1) are outer Galois points of E.

    Projection from R_i forgets the i-th coordinate; its fibers over F_p must be
    the orbits of the omega-scaling of that coordinate. Completeness of the
    list is not checked.
    """
    curve = curve or FermatCubic(p)
    F = curve.field
    results = {}
    for i, name in enumerate(("R1", "R2", "R3")):
        center = CubicPoint(F, *(1 if j == i else 0 for j in range(3)))
        G = EllAutGroup(curve.coordinate_scaling(i))
        results[name] = projection_fibers_match(curve, center, G)
    return OuterCertificate(p, results)
