"""
Points of the projective line, Moebius transformations and their finite groups,
and divisors.

Action convention: a matrix [[a, b], [c, d]] sends the column vector (x:y) to
(a*x + b*y : c*x + d*y). In the affine coordinate t = x/y this is
t -> (a*t + b)/(c*t + d), which is also the pullback of the coordinate
function t along the map.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import CapExceeded, DescriptorMismatch
from .fields import Field, FieldElem, Rationals
from .poly import RatFunc

DEFAULT_CAP = 120


class ProjPoint:
    """A point (x:y) of P^1, stored with its first nonzero coordinate equal to 1."""

    __slots__ = ("x", "y")

    def __init__(self, field: Field, x, y=1):
        x, y = field(x), field(y)
        if x.is_zero() and y.is_zero():
            raise ValueError("(0:0) is not a projective point")
        if x.is_zero():
            y = field.one
        else:
            y = y / x
            x = field.one
        self.x, self.y = x, y

    @classmethod
    def affine(cls, field: Field, t) -> "ProjPoint":
        return cls(field, t, 1)

    @classmethod
    def infinity(cls, field: Field) -> "ProjPoint":
        return cls(field, 1, 0)

    @property
    def field(self) -> Field:
        return self.x.field

    def is_infinity(self) -> bool:
        return self.y.is_zero()

    def t(self) -> FieldElem | None:
        """Affine coordinate x/y, or None at infinity."""
        if self.y.is_zero():
            return None
        return self.x / self.y

    def __eq__(self, other):
        return isinstance(other, ProjPoint) and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def sort_key(self):
        return (self.x.sort_key(), self.y.sort_key())

    def to_json(self):
        return [self.x.to_json(), self.y.to_json()]

    def __str__(self):
        x, y = self.x, self.y
        if isinstance(self.field, Rationals):
            # primitive integer representative, as points are usually written
            fx, fy = x.value, y.value
            den = math.lcm(fx.denominator, fy.denominator)
            ix, iy = int(fx * den), int(fy * den)
            g = math.gcd(ix, iy)
            if iy < 0 or (iy == 0 and ix < 0):
                g = -g
            return f"({ix // g}:{iy // g})"
        return f"({x}:{y})"

    def __repr__(self):
        return f"ProjPoint{self}"


def projective_line(field: Field) -> list[ProjPoint]:
    """All points of P^1 over a finite field: (1:y) for every y, then (0:1)."""
    pts = [ProjPoint(field, 1, y) for y in field.elements()]
    pts.append(ProjPoint(field, 0, 1))
    return pts


class Moebius:
    """An invertible 2x2 matrix up to scalar, first nonzero entry scaled to 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, field: Field, a, b, c, d):
        entries = [field(v) for v in (a, b, c, d)]
        if (entries[0] * entries[3] - entries[1] * entries[2]).is_zero():
            raise ValueError("singular matrix does not define a Moebius map")
        lead = next(e for e in entries if not e.is_zero())
        inv = lead.inv()
        self.a, self.b, self.c, self.d = (e * inv for e in entries)

    @classmethod
    def identity(cls, field: Field) -> "Moebius":
        return cls(field, 1, 0, 0, 1)

    @property
    def field(self) -> Field:
        return self.a.field

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return Moebius(self.field, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __mul__ = __matmul__

    def inverse(self) -> "Moebius":
        return Moebius(self.field, self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> "Moebius":
        if n < 0:
            return self.inverse() ** (-n)
        out = Moebius.identity(self.field)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def is_identity(self) -> bool:
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def __call__(self, P: ProjPoint) -> ProjPoint:
        return apply(self, P)

    def pullback(self) -> RatFunc:
        """The rational function t o M = (a t + b)/(c t + d)."""
        return RatFunc.moebius(self.field, *self.entries())

    def __eq__(self, other):
        return isinstance(other, Moebius) and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def sort_key(self):
        return tuple(e.sort_key() for e in self.entries())

    def to_json(self):
        return [e.to_json() for e in self.entries()]

    def __str__(self):
        return "[[{}, {}], [{}, {}]]".format(*self.entries())

    def __repr__(self):
        return f"Moebius{self}"


def evaluate(f: RatFunc, P: ProjPoint) -> ProjPoint:
    """Value of a rational function at a point of P^1, as a point of P^1."""
    d = max(f.degree, 0)
    return ProjPoint(f.field, f.num.homogeneous_eval(P.x, P.y, d), f.den.homogeneous_eval(P.x, P.y, d))


def apply(M: Moebius, P: ProjPoint) -> ProjPoint:
    if M.field != P.field:
        raise DescriptorMismatch(f"{M.field} vs {P.field}")
    return ProjPoint(M.field, M.a * P.x + M.b * P.y, M.c * P.x + M.d * P.y)


class FiniteMoebiusGroup:
    """A finite subgroup of PGL(2, k) given by its full element set."""

    def __init__(self, elements: Iterable[Moebius], generators: Iterable[Moebius] = (), field: Field | None = None):
        self.elements = frozenset(elements)
        self.generators = tuple(generators)
        self.field = field or next(iter(self.elements)).field

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Moebius]:
        return iter(sorted(self.elements, key=Moebius.sort_key))

    def __contains__(self, M):
        return M in self.elements

    def __eq__(self, other):
        return isinstance(other, FiniteMoebiusGroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def nontrivial(self) -> list[Moebius]:
        return [g for g in self if not g.is_identity()]

    def structure(self) -> str:
        return group_structure(self)

    def __repr__(self):
        return f"FiniteMoebiusGroup(order={self.order}, structure={self.structure()})"


def generate(gens: Iterable[Moebius], cap: int = DEFAULT_CAP, field: Field | None = None) -> FiniteMoebiusGroup:
    """Closure of ``gens`` under composition; raises CapExceeded past ``cap`` elements."""
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = list(gens)
    if field is None:
        if not gens:
            raise ValueError("need a generator or an explicit field")
        field = gens[0].field
    ident = Moebius.identity(field)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g @ s
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise CapExceeded(f"group generated by {gens} has more than {cap} elements")
                queue.append(h)
    return FiniteMoebiusGroup(seen, gens, field)


def element_order(M: Moebius, cap: int = DEFAULT_CAP) -> int:
    """Least n >= 1 with M^n scalar."""
    P = M
    for n in range(1, cap + 1):
        if P.is_identity():
            return n
        P = P @ M
    raise CapExceeded(f"{M} has order larger than {cap}")


def intersect(G1: FiniteMoebiusGroup, G2: FiniteMoebiusGroup) -> FiniteMoebiusGroup:
    if G1.field != G2.field:
        raise DescriptorMismatch(f"{G1.field} vs {G2.field}")
    return FiniteMoebiusGroup(G1.elements & G2.elements, (), G1.field)


def group_structure(G) -> str:
    """'Z/n' for cyclic groups, 'Z/2xZ/2' for the Klein four group, else 'order n'."""
    n = len(G)
    orders = [element_order(g, cap=n) for g in G]
    if n in orders:
        return f"Z/{n}"
    if n == 4 and all(o <= 2 for o in orders):
        return "Z/2xZ/2"
    return f"order {n}"


class Divisor:
    """A finite formal sum of points with nonzero integer multiplicities.

    Points only need to be hashable and provide ``sort_key``; the class is
    shared between P^1 and the Fermat cubic.
    """

    __slots__ = ("mult",)

    def __init__(self, mult: dict | None = None):
        self.mult = {P: m for P, m in (mult or {}).items() if m != 0}

    @classmethod
    def from_points(cls, points: Iterable) -> "Divisor":
        d: dict = {}
        for P in points:
            d[P] = d.get(P, 0) + 1
        return cls(d)

    @property
    def degree(self) -> int:
        return sum(self.mult.values())

    def support(self) -> list:
        return sorted(self.mult, key=lambda P: P.sort_key())

    def __getitem__(self, P) -> int:
        return self.mult.get(P, 0)

    def __add__(self, other):
        if not isinstance(other, Divisor):
            other = Divisor({other: 1})
        d = dict(self.mult)
        for P, m in other.mult.items():
            d[P] = d.get(P, 0) + m
        return Divisor(d)

    __radd__ = __add__

    def __neg__(self):
        return Divisor({P: -m for P, m in self.mult.items()})

    def __sub__(self, other):
        if not isinstance(other, Divisor):
            other = Divisor({other: 1})
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.mult == other.mult

    def __hash__(self):
        return hash(frozenset(self.mult.items()))

    def is_effective(self) -> bool:
        return all(m > 0 for m in self.mult.values())

    def to_json(self):
        return [{"point": P.to_json(), "multiplicity": self.mult[P]} for P in self.support()]

    def __str__(self):
        if not self.mult:
            return "0"
        parts = []
        for P in self.support():
            m = self.mult[P]
            parts.append(f"{P}" if m == 1 else f"{m}*{P}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Divisor({self})"


def orbit(G, P) -> list:
    """Distinct points of the G-orbit of P, sorted."""
    return sorted({g(P) for g in G.elements}, key=lambda Q: Q.sort_key())


def orbit_sum(G, P) -> Divisor:
    """sum over g in G of g(P), counted with multiplicity; degree |G|.

    Works for any group whose elements are callables on points.
    """
    return Divisor.from_points(g(P) for g in G.elements)


def point_from_json(field: Field, data) -> ProjPoint:
    x, y = data
    return ProjPoint(field, _parse(field, x), _parse(field, y))


def moebius_from_json(field: Field, data) -> Moebius:
    if len(data) == 2 and all(isinstance(r, (list, tuple)) and len(r) == 2 for r in data):
        data = [*data[0], *data[1]]
    return Moebius(field, *(_parse(field, v) for v in data))


def _parse(field: Field, v):
    if isinstance(v, str):
        return field(Fraction(v.replace("−", "-").strip()))
    return field(v)
