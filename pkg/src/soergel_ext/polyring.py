"""The graded polynomial ring R = Q(delta)[alpha_s, alpha_t] with its dihedral action.

Each alpha has internal degree 2.  Rank 1 rings only have alpha_s (used for
two-strand braids).  Colors are the strings ``"s"`` and ``"t"``.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Optional

from .scalars import FieldElem, Realm

COLORS = ("s", "t")


def other(c: str) -> str:
    return "t" if c == "s" else "s"


class PolyRing:
    """Realization of rank 1 or 2 with symmetric Cartan entries a_st = a_ts = -delta."""

    def __init__(self, realm: Realm, rank: int = 2):
        if rank not in (1, 2):
            raise ValueError("rank must be 1 or 2")
        self.realm = realm
        self.rank = rank
        self.zero_vec = (0,) * rank
        if rank == 2:
            self.a_st = -realm.delta
            four_minus = 4 - self.a_st * self.a_st
            if four_minus.is_zero():
                raise ValueError("4 - a_st*a_ts must be invertible")
            self._inv_det = four_minus.inv()
        else:
            self.a_st = None
        self._refl_cache: dict = {}
        self._rho = {}
        self._gamma = {}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.rank == other.rank and self.realm == other.realm

    def __hash__(self):
        return hash((self.realm, self.rank))

    def __repr__(self):
        return f"PolyRing({self.realm!r}, rank={self.rank})"

    def colors(self) -> tuple[str, ...]:
        return COLORS[: self.rank]

    def index(self, c: str) -> int:
        i = COLORS.index(c)
        if i >= self.rank:
            raise ValueError(f"color {c} not available in rank {self.rank}")
        return i

    # -- constructors ----------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, x) -> "Poly":
        x = self.realm(x)
        return Poly(self, {self.zero_vec: x} if x else {})

    def one(self) -> "Poly":
        return self.const(1)

    def monomial(self, exps, coeff=1) -> "Poly":
        coeff = self.realm(coeff)
        return Poly(self, {tuple(exps): coeff} if coeff else {})

    def alpha(self, c: str) -> "Poly":
        e = [0] * self.rank
        e[self.index(c)] = 1
        return self.monomial(e)

    def linear(self, cs, ct=0) -> "Poly":
        """cs*alpha_s + ct*alpha_t."""
        p = self.alpha("s") * self.realm(cs)
        if self.rank == 2:
            p = p + self.alpha("t") * self.realm(ct)
        elif self.realm(ct):
            raise ValueError("rank 1 ring has no alpha_t")
        return p

    def rho(self, c: str) -> "Poly":
        """Fundamental weight rho_c with d_c(rho_c) = 1 and d_other(rho_c) = 0."""
        if c not in self._rho:
            if self.rank == 1:
                self._rho[c] = self.alpha("s") * self.realm(1) / 2
            else:
                a = self.a_st
                self._rho[c] = (self.alpha(c) * 2 - self.alpha(other(c)) * a) * self._inv_det
        return self._rho[c]

    def gamma(self, c: str) -> "Poly":
        """gamma_c = rho_c * c(rho_c), a degree 4 element of R^c."""
        if c not in self._gamma:
            r = self.rho(c)
            self._gamma[c] = r * self.reflect(c, r)
        return self._gamma[c]

    def coroot_pairing(self, c: str, f: "Poly") -> FieldElem:
        """<alpha_c^vee, f> for a linear form f."""
        if f.degree() not in (None, 2):
            raise ValueError("coroot pairing needs a linear form")
        return self.demazure(c, f).constant_term()

    # -- dihedral action -------------------------------------------------
    def _reflect_monomial(self, c: str, exps: tuple) -> dict:
        key = (c, exps)
        hit = self._refl_cache.get(key)
        if hit is not None:
            return hit
        R = self.realm
        if self.rank == 1:
            (a,) = exps
            res = {exps: R(-1 if a % 2 else 1)}
        else:
            i = self.index(c)
            j = 1 - i
            # c(alpha_c) = -alpha_c, c(alpha_o) = alpha_o - a_st * alpha_c
            ai, aj = exps[i], exps[j]
            res = {}
            neg_a = -self.a_st
            sign = -1 if ai % 2 else 1
            pw = R.one
            for k in range(aj + 1):
                # choose k factors of (-a_st*alpha_c) from (alpha_o - a_st alpha_c)^aj
                coeff = pw * (comb(aj, k) * sign)
                if coeff:
                    e = [0, 0]
                    e[i] = ai + k
                    e[j] = aj - k
                    res[tuple(e)] = coeff
                pw = pw * neg_a
        self._refl_cache[key] = res
        return res

    def reflect(self, c: str, f: "Poly") -> "Poly":
        out: dict = {}
        for e, x in f.terms.items():
            for e2, y in self._reflect_monomial(c, e).items():
                v = out.get(e2)
                out[e2] = x * y if v is None else v + x * y
        return Poly(self, {k: v for k, v in out.items() if v})

    def demazure(self, c: str, f: "Poly") -> "Poly":
        """(f - c(f)) / alpha_c; the division is exact."""
        diff = f - self.reflect(c, f)
        i = self.index(c)
        out = {}
        for e, x in diff.terms.items():
            if e[i] == 0:
                raise ArithmeticError("Demazure quotient is not exact")
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = x
        return Poly(self, out)

    def even_odd_split(self, c: str, f: "Poly") -> tuple["Poly", "Poly"]:
        """f = e + alpha_c * o with e, o both c-invariant."""
        cf = self.reflect(c, f)
        half = self.realm(1) / 2
        e = (f + cf) * half
        o = self.demazure(c, f) * half
        return e, o

    def monomials_of_degree(self, d: int) -> list[tuple]:
        """Exponent vectors of internal degree d, in a fixed order."""
        return _monomials(self.rank, d)


@lru_cache(maxsize=None)
def _monomials(rank: int, d: int) -> list[tuple]:
    if d < 0 or d % 2:
        return []
    n = d // 2
    if rank == 1:
        return [(n,)]
    return [(n - b, b) for b in range(n + 1)]


class Poly:
    """Sparse polynomial; ``terms`` maps exponent tuples to nonzero FieldElems."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, x in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = x
            else:
                s = v + x
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -x for e, x in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.realm(other)
            if not c:
                return Poly(self.ring, {})
            return Poly(self.ring, {e: x * c for e, x in self.terms.items()})
        out: dict = {}
        for e1, x1 in self.terms.items():
            for e2, x2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = x1 * x2 if v is None else v + x1 * x2
        return Poly(self.ring, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self.ring.realm(other).inv()
        return self * c

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def shift(self, exps: tuple) -> "Poly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exps)): x for e, x in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self) -> Optional[int]:
        """Internal degree if homogeneous (None for zero); raises if inhomogeneous."""
        degs = {2 * sum(e) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> FieldElem:
        return self.terms.get(self.ring.zero_vec, self.ring.realm.zero)

    def coeff(self, exps) -> FieldElem:
        return self.terms.get(tuple(exps), self.ring.realm.zero)

    def items(self) -> Iterator:
        return iter(sorted(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        names = ("as", "at")
        parts = []
        for e, x in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), tuple(-a for a in kv[0]))):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"{x}*{mono}" if mono else str(x))
        return " + ".join(parts)

    __repr__ = __str__


def poly_sum(ring: PolyRing, polys: Iterable[Poly]) -> Poly:
    out = ring.zero()
    for p in polys:
        out = out + p
    return out
