"""Univariate and bivariate polynomials, reduced rational functions, resultants."""

from __future__ import annotations

from typing import Iterable

from .errors import ConstantFunction, ZeroDenominator
from .fields import Field, FieldElem


class Poly:
    """Dense univariate polynomial, coefficients low-to-high.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: Field, roots) -> "Poly":
        out = cls(field, [1])
        for r in roots:
            out = out * cls(field, [-field(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> FieldElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            return Poly(self.field, [c * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly(self.field)
        f = self.field
        out = [f._zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = f._add(out[i + j], f._mul(a.value, b.value))
        return Poly(f, [FieldElem(f, v) for v in out])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly(self.field, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        q = [f.zero] * max(len(rem) - len(other.coeffs) + 1, 0)
        inv_lc = other.lc().inv()
        while len(rem) >= len(other.coeffs) and rem:
            c = rem[-1] * inv_lc
            k = len(rem) - len(other.coeffs)
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly(f, q), Poly(f, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElem)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = self.field.zero if not isinstance(x, Poly) else Poly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * self.lc().inv()

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def homogeneous_eval(self, a: FieldElem, b: FieldElem, d: int) -> FieldElem:
        """Value of b^d * p(a/b) computed without division."""
        acc = self.field.zero
        apow = self.field.one
        bpows = [self.field.one]
        for _ in range(d):
            bpows.append(bpows[-1] * b)
        for i, c in enumerate(self.coeffs):
            acc = acc + c * apow * bpows[d - i]
            apow = apow * a
        return acc

    def roots(self) -> list[FieldElem]:
        """Distinct roots in a finite field, by exhaustive evaluation."""
        return [x for x in self.field.elements() if self(x).is_zero()]

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    def __str__(self):
        return format_poly(self, "t")

    def __repr__(self):
        return f"Poly({self})"


def format_poly(p: Poly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c.is_zero():
            continue
        s = str(c)
        if "+" in s or ("-" in s[1:]):
            s = f"({s})"
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(s)
        elif s == "1":
            terms.append(mono)
        elif s == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{s}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b // poly_gcd(a, b)).monic()


class RatFunc:
    """A reduced quotient num/den of polynomials with den monic.

    Doubles as a self-map of the projective line; the affine coordinate of a
    point (a:b) is t = a/b.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _reduced=False):
        if den is None:
            den = Poly(num.field, [1])
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if not _reduced:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lc()
            if lc != 1:
                inv = lc.inv()
                num, den = num * inv, den * inv
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    @classmethod
    def t(cls, field: Field) -> "RatFunc":
        return cls(Poly.x(field))

    @classmethod
    def const(cls, field: Field, c) -> "RatFunc":
        return cls(Poly(field, [c]))

    @classmethod
    def moebius(cls, field: Field, a, b, c, d) -> "RatFunc":
        """(a t + b) / (c t + d)."""
        return cls(Poly(field, [b, a]), Poly(field, [d, c]))

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc.const(self.field, other)

    def __add__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, FieldElem, Poly)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def compose(self, inner: "RatFunc") -> "RatFunc":
        return compose(self, inner)

    def __call__(self, x):
        """Evaluate at a field element; returns None at a pole."""
        d = self.den(x)
        if d.is_zero():
            return None
        return self.num(x) / d

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __str__(self):
        if self.den.degree == 0:
            return format_poly(self.num)
        num, den = format_poly(self.num), format_poly(self.den)
        if len(self.num.coeffs) - sum(c.is_zero() for c in self.num.coeffs) > 1:
            num = f"({num})"
        if len(self.den.coeffs) - sum(c.is_zero() for c in self.den.coeffs) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc({self})"


def ratfunc_reduce(num: Poly, den: Poly) -> RatFunc:
    return RatFunc(num, den)


def compose(f: RatFunc, g: RatFunc) -> RatFunc:
    """f o g, i.e. substitute g for t in f.

    Homogenized: with n = deg f, f(g) = (sum a_i G^i H^(n-i)) / (sum b_i G^i H^(n-i))
    where g = G/H, so no intermediate rational arithmetic is needed.
    """
    n = max(f.num.degree, f.den.degree, 0)
    G, H = g.num, g.den
    gpow = [Poly(f.field, [1])]
    hpow = [Poly(f.field, [1])]
    for _ in range(n):
        gpow.append(gpow[-1] * G)
        hpow.append(hpow[-1] * H)

    def hom(p: Poly) -> Poly:
        acc = Poly(f.field)
        for i, c in enumerate(p.coeffs):
            if not c.is_zero():
                acc = acc + gpow[i] * hpow[n - i] * c
        return acc

    return RatFunc(hom(f.num), hom(f.den))


def map_degree(f: RatFunc) -> int:
    """Degree of f as a map P^1 -> P^1, i.e. [k(t) : k(f)]."""
    if f.is_constant():
        raise ConstantFunction(f"{f} is constant")
    return f.degree


class BiPoly:
    """Sparse bivariate polynomial {(i, j): c} for monomials X^i Y^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None):
        self.field = field
        self.terms = {k: field(v) for k, v in (terms or {}).items() if not field(v).is_zero()}

    @classmethod
    def X(cls, field):
        return cls(field, {(1, 0): 1})

    @classmethod
    def Y(cls, field):
        return cls(field, {(0, 1): 1})

    @classmethod
    def const(cls, field, c):
        return cls(field, {(0, 0): c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((k[var] for k in self.terms), default=-1)

    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(self.field, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return BiPoly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = self.field(other)
            return BiPoly(self.field, {k: v * c for k, v in self.terms.items()})
        f = self.field
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                p = f._mul(a.value, b.value)
                out[k] = f._add(out[k], p) if k in out else p
        return BiPoly(f, {k: FieldElem(f, v) for k, v in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BiPoly.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, FieldElem)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _leading(self):
        return max(self.terms)

    def exact_div(self, other: "BiPoly") -> "BiPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if other.is_zero():
            raise ZeroDenominator("division by zero polynomial")
        lt = other._leading()
        inv = other.terms[lt].inv()
        rem = self
        q: dict = {}
        while not rem.is_zero():
            k = rem._leading()
            di, dj = k[0] - lt[0], k[1] - lt[1]
            if di < 0 or dj < 0:
                raise ArithmeticError("division is not exact")
            c = rem.terms[k] * inv
            q[(di, dj)] = c
            rem = rem - other * BiPoly(self.field, {(di, dj): c})
        return BiPoly(self.field, q)

    def __call__(self, x, y):
        acc = None
        for (i, j), c in self.terms.items():
            term = c * x ** i * y ** j
            acc = term if acc is None else acc + term
        return acc if acc is not None else self.field.zero

    def sorted_terms(self):
        """Terms in (i+j, i) ascending order."""
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))

    def normalized(self) -> "BiPoly":
        """Scale so the first nonzero coefficient in (i+j, i) order is 1."""
        if self.is_zero():
            return self
        first = self.sorted_terms()[0][1]
        return self * first.inv()

    def to_json(self):
        return [[i, j, c.to_json()] for (i, j), c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "*".join(
                s for s in (
                    "" if i == 0 else "X" if i == 1 else f"X^{i}",
                    "" if j == 0 else "Y" if j == 1 else f"Y^{j}",
                ) if s
            )
            s = str(c)
            if "+" in s or "-" in s[1:]:
                s = f"({s})"
            if not mono:
                parts.append(s)
            elif s == "1":
                parts.append(mono)
            elif s == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{s}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"BiPoly({self})"


def bareiss_det(matrix: list[list[BiPoly]]) -> BiPoly:
    """Fraction-free determinant over the domain k[X, Y]."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    field = matrix[0][0].field
    M = [list(row) for row in matrix]
    sign = 1
    prev = BiPoly.const(field, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for r in range(k + 1, n):
                if not M[r][k].is_zero():
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return BiPoly(field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(a: list, b: list, field: Field | None = None) -> BiPoly:
    """Resultant with respect to t of two polynomials with k[X, Y] coefficients.

    ``a`` and ``b`` are coefficient lists (low-to-high in t) whose entries are
    BiPoly or field constants. Convention: Res(a, b) = lc(b)^deg(a) * prod a(beta)
    over the roots beta of b, so Res(t - x, t - y) = y - x. This is the Sylvester
    determinant with the rows of b placed first.
    """
    if field is None:
        field = next(c.field for c in list(a) + list(b) if isinstance(c, (BiPoly, FieldElem)))
    a = [c if isinstance(c, BiPoly) else BiPoly.const(field, c) for c in a]
    b = [c if isinstance(c, BiPoly) else BiPoly.const(field, c) for c in b]
    while a and a[-1].is_zero():
        a.pop()
    while b and b[-1].is_zero():
        b.pop()
    if not a or not b:
        raise ValueError("resultant of a zero polynomial")
    m, n = len(a) - 1, len(b) - 1
    if m == 0 and n == 0:
        return BiPoly.const(field, 1)
    if m == 0:
        return a[0] ** n
    if n == 0:
        return b[0] ** m
    size = m + n
    zero = BiPoly(field)
    rows = []
    for shift in range(m):
        row = [zero] * size
        for i, c in enumerate(reversed(b)):
            row[shift + i] = c
        rows.append(row)
    for shift in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(a)):
            row[shift + i] = c
        rows.append(row)
    return bareiss_det(rows)
