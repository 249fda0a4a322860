"""Exact arithmetic in Q[delta]/(p(delta)) and two-color quantum numbers.

A ``Realm`` fixes the order m of st (2..6 or infinity) and hence the
coefficient field.  For finite m the field is Q(2cos(pi/m)); for m = infinity
delta is an explicit rational (default 3), so the field is Q itself.

Field elements are stored as ``a + b*delta`` with rational a, b (b is always
zero when the field has degree one).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from flint import fmpq

Rational = Union[int, Fraction, fmpq]

# p(x) = x^2 - v*x - u, stored as (u, v) so that delta^2 = u + v*delta.
# Degree one cases store the rational root instead.
_MINPOLY = {
    2: ("linear", fmpq(0)),
    3: ("linear", fmpq(1)),
    4: ("quadratic", (fmpq(2), fmpq(0))),
    5: ("quadratic", (fmpq(1), fmpq(1))),
    6: ("quadratic", (fmpq(3), fmpq(0))),
}


def to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, int):
        return fmpq(x)
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return fmpq(int(num), int(den) if den else 1)
    raise TypeError(f"cannot convert {x!r} to a rational")


def minimal_poly(m: int) -> list[Fraction]:
    """Coefficients (constant term first) of the monic minimal polynomial of 2cos(pi/m)."""
    if m not in _MINPOLY:
        raise ValueError(f"unsupported m={m}; finite m must be in 2..6")
    kind, data = _MINPOLY[m]
    if kind == "linear":
        return [Fraction(-int(data.p), int(data.q)), Fraction(1)]
    u, v = data
    return [Fraction(-int(u.p), int(u.q)), Fraction(-int(v.p), int(v.q)), Fraction(1)]


class Realm:
    """Coefficient field for the dihedral group of order 2m.

    ``m=None`` means m = infinity; then ``delta`` must be a rational with all
    quantum numbers nonzero (checked up to ``faithful_bound``).
    """

    __slots__ = ("m", "delta_value", "_u", "_v", "degree", "one", "zero", "delta", "_qcache")

    def __init__(self, m: Optional[int] = None, delta: Optional[Rational] = None, faithful_bound: int = 40):
        self.m = m
        self._qcache: list[FieldElem] = []
        if m is None:
            self.delta_value = to_fmpq(3 if delta is None else delta)
            self.degree = 1
            self._u = self._v = fmpq(0)
        else:
            if delta is not None:
                raise ValueError("an explicit delta is only allowed for m = infinity")
            kind, data = _MINPOLY.get(m, (None, None))
            if kind is None:
                raise ValueError(f"unsupported m={m}; finite m must be in 2..6")
            if kind == "linear":
                self.delta_value = data
                self.degree = 1
                self._u = self._v = fmpq(0)
            else:
                self.delta_value = None
                self.degree = 2
                self._u, self._v = data
        self.zero = FieldElem(self, fmpq(0), fmpq(0))
        self.one = FieldElem(self, fmpq(1), fmpq(0))
        if self.degree == 1:
            self.delta = FieldElem(self, self.delta_value, fmpq(0))
        else:
            self.delta = FieldElem(self, fmpq(0), fmpq(1))
        if m is None:
            for k in range(1, faithful_bound + 1):
                if qnum(k, self).is_zero():
                    raise ValueError(f"delta={self.delta_value} makes [{k}] vanish; not faithful for m=inf")
        else:
            if not qnum(m, self).is_zero():
                raise AssertionError("minimal polynomial table is inconsistent")
            for k in range(1, m):
                if qnum(k, self).is_zero():
                    raise AssertionError(f"[{k}] vanishes below m={m}")

    # equality of realms is by parameters, so independently built realms interoperate
    def key(self):
        return (self.m, None if self.delta_value is None else str(self.delta_value))

    def __eq__(self, other):
        return isinstance(other, Realm) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.m is None:
            return f"Realm(m=inf, delta={self.delta_value})"
        return f"Realm(m={self.m})"

    @property
    def label(self) -> str:
        return "inf" if self.m is None else str(self.m)

    def __call__(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        return FieldElem(self, to_fmpq(x), fmpq(0))

    def elem(self, a, b=0) -> "FieldElem":
        """The element a + b*delta."""
        a, b = to_fmpq(a), to_fmpq(b)
        if self.degree == 1:
            return FieldElem(self, a + b * self.delta_value, fmpq(0))
        return FieldElem(self, a, b)


class FieldElem:
    __slots__ = ("realm", "a", "b")

    def __init__(self, realm: Realm, a: fmpq, b: fmpq):
        self.realm = realm
        self.a = a
        self.b = b

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            return other
        return FieldElem(self.realm, to_fmpq(other), fmpq(0))

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.realm, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.realm, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElem(self.realm, -self.a, -self.b)

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            c = to_fmpq(other)
            return FieldElem(self.realm, self.a * c, self.b * c)
        a, b, c, d = self.a, self.b, other.a, other.b
        if not b or not d:
            return FieldElem(self.realm, a * c, a * d + b * c)
        bd = b * d
        r = self.realm
        return FieldElem(r, a * c + bd * r._u, a * d + b * c + bd * r._v)

    __rmul__ = __mul__

    def inv(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the coefficient field")
        a, b = self.a, self.b
        if not b:
            return FieldElem(self.realm, 1 / a, fmpq(0))
        # conjugate of a + b*d is (a + b*v) - b*d; norm = a^2 + a*b*v - u*b^2
        r = self.realm
        norm = a * a + a * b * r._v - r._u * b * b
        return FieldElem(r, (a + b * r._v) / norm, -b / norm)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.a == other.a and self.b == other.b
        try:
            o = to_fmpq(other)
        except TypeError:
            return NotImplemented
        return not self.b and self.a == o

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return not self.b

    def coeffs(self) -> tuple[fmpq, fmpq]:
        return (self.a, self.b)

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*d"
        return f"({self.a}+{self.b}*d)"

    __repr__ = __str__


def qnum(k: int, realm: Realm) -> FieldElem:
    """The quantum number [k] in delta = [2]."""
    if k < 0:
        raise ValueError("qnum needs k >= 0")
    cache = realm._qcache
    if not cache:
        cache.extend([realm.zero, realm.one])
    while len(cache) <= k:
        cache.append(realm.delta * cache[-1] - cache[-2])
    return cache[k]
