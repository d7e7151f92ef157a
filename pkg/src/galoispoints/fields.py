"""
Exact fields: the rationals, prime fields F_p and simple extensions K[x]/(m).

Every field object is a descriptor; its elements are ``FieldElem`` instances
holding a canonical payload:

    Rationals       fractions.Fraction
    PrimeField(p)   int in [0, p)
    ExtensionField  tuple of base payloads, length deg(m), low-to-high

Field objects compare equal iff their descriptors agree, so two independently
constructed ``PrimeField(19)`` instances are interchangeable.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator

from .errors import DescriptorMismatch, DivisionByZero, InfiniteField


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


class Field:
    """Abstract exact field. Subclasses implement the payload-level operations."""

    characteristic: int = 0
    is_finite: bool = False

    # payload level -------------------------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _coerce(self, x):
        raise NotImplementedError

    _zero = None
    _one = None

    # element level -------------------------------------------------------
    def __call__(self, x=0) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.field == self:
                return x
            return FieldElem(self, self._embed(x))
        return FieldElem(self, self._coerce(x))

    def _embed(self, x: "FieldElem"):
        raise DescriptorMismatch(f"cannot coerce element of {x.field} into {self}")

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, self._zero)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, self._one)

    def elements(self) -> Iterator["FieldElem"]:
        raise InfiniteField(f"{self} is infinite")

    def order(self) -> int:
        raise InfiniteField(f"{self} is infinite")

    # serialization -------------------------------------------------------
    def descriptor(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        raise NotImplementedError


class Rationals(Field):
    characteristic = 0
    _zero = Fraction(0)
    _one = Fraction(1)

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def _coerce(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.replace("−", "-").strip())
        raise DescriptorMismatch(f"cannot coerce {x!r} into QQ")

    def _key(self):
        return ("rationals",)

    def descriptor(self) -> dict:
        return {"kind": "rationals"}

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    is_finite = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self._zero = 0
        self._one = 1 % p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def _coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            x = Fraction(x.replace("−", "-").strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise DescriptorMismatch(f"cannot coerce {x!r} into GF({self.p})")

    def elements(self):
        for v in range(self.p):
            yield FieldElem(self, v)

    def order(self):
        return self.p

    def _key(self):
        return ("prime", self.p)

    def descriptor(self):
        return {"kind": "prime", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"


# helpers on payload lists over a base field, used by ExtensionField -----------

def _trim(base: Field, c: list) -> list:
    while c and c[-1] == base._zero:
        c.pop()
    return c


def _pmul(base, a, b):
    if not a or not b:
        return []
    out = [base._zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == base._zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = base._add(out[i + j], base._mul(x, y))
    return _trim(base, out)


def _pdivmod(base, a, b):
    a = list(a)
    q = [base._zero] * max(len(a) - len(b) + 1, 0)
    inv_lc = base._inv(b[-1])
    while len(a) >= len(b) and a:
        c = base._mul(a[-1], inv_lc)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] = base._sub(a[k + i], base._mul(c, y))
        a.pop()
        _trim(base, a)
    return _trim(base, q), a


def _psub(base, a, b):
    n = max(len(a), len(b))
    out = [
        base._sub(a[i] if i < len(a) else base._zero, b[i] if i < len(b) else base._zero)
        for i in range(n)
    ]
    return _trim(base, out)


class ExtensionField(Field):
    """K[a]/(m(a)) for a monic polynomial m over the base field K.

    Irreducibility of ``minpoly`` is verified by root search when its degree
    is 2 or 3 and the base is QQ or finite; otherwise the field is built
    with ``trusted=True`` and the caller vouches for it.
    """

    def __init__(self, base: Field, minpoly, name: str = "a"):
        coeffs = [base(c)._payload() for c in minpoly]
        _trim(base, coeffs)
        if len(coeffs) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if coeffs[-1] != base._one:
            raise ValueError("minimal polynomial must be monic")
        self.base = base
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.name = name
        self.characteristic = base.characteristic
        self.is_finite = base.is_finite
        self._zero = (base._zero,) * self.degree
        self._one = (base._one,) + (base._zero,) * (self.degree - 1)
        self.trusted = not self._check_irreducible()

    def _check_irreducible(self) -> bool:
        """Return True if irreducibility was proven, False if it is only trusted."""
        if self.degree > 3:
            return False
        base = self.base
        if base.is_finite:
            candidates = (e._payload() for e in base.elements())
        elif isinstance(base, Rationals):
            candidates = _rational_root_candidates(self.minpoly)
        else:
            return False
        for r in candidates:
            acc = base._zero
            for c in reversed(self.minpoly):
                acc = base._add(base._mul(acc, r), c)
            if acc == base._zero:
                raise ValueError(f"minimal polynomial has a root {r} in {base}")
        return True

    def _reduce(self, c: list) -> tuple:
        base = self.base
        _trim(base, c)
        n = self.degree
        m = self.minpoly
        while len(c) > n:
            top = c.pop()
            k = len(c) - n
            for i in range(n):
                c[k + i] = base._sub(c[k + i], base._mul(top, m[i]))
        c.extend([base._zero] * (n - len(c)))
        return tuple(c)

    def _add(self, a, b):
        return tuple(self.base._add(x, y) for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(self.base._sub(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, a, b):
        return self._reduce(_pmul(self.base, list(a), list(b)) or [])

    def _inv(self, a):
        base = self.base
        r0, r1 = list(self.minpoly), _trim(base, list(a))
        if not r1:
            raise DivisionByZero("inverse of zero")
        s0, s1 = [], [base._one]
        while len(r1) > 1:
            q, r = _pdivmod(base, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(base, s0, _pmul(base, q, s1))
        # r1 is a nonzero constant: s1 * a == r1 mod m
        c = base._inv(r1[0])
        return self._reduce([base._mul(c, x) for x in s1])

    def _coerce(self, x):
        if isinstance(x, (list, tuple)):
            if len(x) > self.degree:
                return self._reduce([self.base(v)._payload() for v in x])
            vals = [self.base(v)._payload() for v in x]
            return tuple(vals + [self.base._zero] * (self.degree - len(vals)))
        return (self.base(x)._payload(),) + (self.base._zero,) * (self.degree - 1)

    def _embed(self, x):
        return (self.base(x)._payload(),) + (self.base._zero,) * (self.degree - 1)

    @property
    def generator(self) -> "FieldElem":
        """The class of the indeterminate, a root of ``minpoly``."""
        return FieldElem(self, self._reduce([self.base._zero, self.base._one]))

    def elements(self):
        if not self.base.is_finite:
            raise InfiniteField(f"{self} is infinite")
        pool = [e._payload() for e in self.base.elements()]
        for combo in itertools.product(pool, repeat=self.degree):
            yield FieldElem(self, tuple(reversed(combo)))

    def order(self):
        return self.base.order() ** self.degree

    def _key(self):
        return ("extension", self.base._key(), self.minpoly)

    def descriptor(self):
        return {
            "kind": "extension",
            "base": self.base.descriptor(),
            "minpoly": [str(FieldElem(self.base, c)) for c in self.minpoly],
        }

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({_fmt_poly(self.base, self.minpoly, self.name)})"


def _rational_root_candidates(coeffs):
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    if ints[0] == 0:
        yield Fraction(0)
        return
    a0, an = abs(ints[0]), abs(ints[-1])
    nums = [d for d in range(1, a0 + 1) if a0 % d == 0]
    dens = [d for d in range(1, an + 1) if an % d == 0]
    for n in nums:
        for d in dens:
            yield Fraction(n, d)
            yield Fraction(-n, d)


def _fmt_poly(base, coeffs, var):
    terms = []
    for i, c in enumerate(coeffs):
        if c == base._zero:
            continue
        s = str(FieldElem(base, c))
        if i == 0:
            terms.append(s)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if s == "1":
                terms.append(mono)
            elif s == "-1":
                terms.append(f"-{mono}")
            elif "+" in s or "-" in s[1:]:
                terms.append(f"({s})*{mono}")
            else:
                terms.append(f"{s}*{mono}")
    return "+".join(terms).replace("+-", "-") or "0"


class FieldElem:
    """An immutable element of an exact field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _payload(self):
        return self.value

    def _other(self, b):
        if isinstance(b, FieldElem):
            if b.field is not self.field and b.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {b.field}")
            return b.value
        if isinstance(b, (int, Fraction)):
            return self.field._coerce(b)
        return None

    def __add__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElem(self.field, self.field._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElem(self.field, self.field._sub(self.value, v))

    def __rsub__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElem(self.field, self.field._sub(v, self.value))

    def __mul__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(self.value, self.field._inv(v)))

    def __rtruediv__(self, b):
        v = self._other(b)
        if v is None:
            return NotImplemented
        return FieldElem(self.field, self.field._mul(v, self.field._inv(self.value)))

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.value))

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field._one
        base = self.value
        while n:
            if n & 1:
                result = self.field._mul(result, base)
            base = self.field._mul(base, base)
            n >>= 1
        return FieldElem(self.field, result)

    def inv(self) -> "FieldElem":
        return FieldElem(self.field, self.field._inv(self.value))

    def is_zero(self) -> bool:
        return self.value == self.field._zero

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, b):
        if isinstance(b, FieldElem):
            return self.field == b.field and self.value == b.value
        if isinstance(b, (int, Fraction)):
            try:
                return self.value == self.field._coerce(b)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field._key(), self.value))

    def sort_key(self):
        """Deterministic total order used for canonical serialization."""
        v = self.value
        if isinstance(self.field, ExtensionField):
            return tuple(FieldElem(self.field.base, c).sort_key() for c in v)
        return v

    def to_json(self):
        if isinstance(self.field, ExtensionField):
            return [FieldElem(self.field.base, c).to_json() for c in self.value]
        return str(self)

    def __str__(self):
        f = self.field
        if isinstance(f, ExtensionField):
            return _fmt_poly(f.base, self.value, f.name)
        return str(self.value)

    def __repr__(self):
        return f"{self}@{self.field!r}"


# module-level API -------------------------------------------------------------

QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def arith(op: str, a: FieldElem, b: FieldElem | None = None) -> FieldElem:
    """Apply one of add, sub, mul, div, neg, inv to field elements."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if isinstance(b, FieldElem) and a.field != b.field:
        raise DescriptorMismatch(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def solve_quadratic(field: Field, c1, c0) -> list[FieldElem]:
    """All roots of x^2 + c1*x + c0 lying in ``field`` (possibly none)."""
    c1, c0 = field(c1), field(c0)
    if field.is_finite:
        return [x for x in field.elements() if (x * x + c1 * x + c0).is_zero()]
    if not isinstance(field, Rationals):
        raise InfiniteField("root search needs QQ or a finite field")
    disc = c1.value * c1.value - 4 * c0.value
    if disc < 0:
        return []
    rn, rd = math.isqrt(disc.numerator), math.isqrt(disc.denominator)
    if rn * rn != disc.numerator or rd * rd != disc.denominator:
        return []
    s = Fraction(rn, rd)
    roots = {(-c1.value + s) / 2, (-c1.value - s) / 2}
    return [field(r) for r in sorted(roots)]


def enumerate_field(field: Field) -> Iterator[FieldElem]:
    """Every element of a finite field exactly once, in a fixed order."""
    return field.elements()


def field_from_json(d: dict) -> Field:
    kind = d.get("kind")
    if kind == "rationals":
        return QQ
    if kind == "prime":
        return PrimeField(int(d["p"]))
    if kind == "extension":
        base = field_from_json(d.get("base", {"kind": "rationals"}))
        return ExtensionField(base, d["minpoly"], name=d.get("name", "a"))
    raise ValueError(f"unknown field kind {kind!r}")


def field_to_json(field: Field) -> dict:
    return field.descriptor()
