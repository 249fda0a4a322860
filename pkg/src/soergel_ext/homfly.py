"""Reduced triply graded homology of 2- and 3-strand braid closures.

The Rouquier complex of a braid is a cube of Bott-Samelson bimodules; its
Hochschild cohomology HH^a is taken termwise and the homology of the induced
Rouquier differential is computed per internal degree.  The result is a
TriSeries: Hilbert data in Q for each Hochschild degree a (the A-grading)
and homological degree j (the T-grading).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Optional, Sequence

from flint import fmpq_mat

from . import bimod
from .ext import koszul_hom_maps, linear_basis
from .gradedlin import (
    DEFAULT_CUTOFF,
    GradedComplex,
    GradedFree,
    GradedMap,
    HilbertData,
    block_map,
    hstack,
    nullspace,
    rank,
)
from .polyring import PolyRing
from .scalars import Realm

# Global Q-shift applied to Hochschild degree a; fixed by matching the Hopf link.
A_SHIFT = 0


# -- braids -----------------------------------------------------------------------

@dataclass(frozen=True)
class Braid:
    strands: int
    word: tuple

    def __post_init__(self):
        if self.strands not in (2, 3):
            raise ValueError("only 2- and 3-strand braids are supported")
        for g in self.word:
            if not isinstance(g, int) or g == 0 or abs(g) >= self.strands:
                raise ValueError(f"invalid generator {g!r} for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int) -> "Braid":
        """Space or comma separated signed generator indices, e.g. "1 1 -2"."""
        toks = text.replace(",", " ").split()
        try:
            return cls(strands, tuple(int(t) for t in toks))
        except ValueError as e:
            raise ValueError(f"cannot parse braid {text!r}: {e}") from None

    def __str__(self):
        return " ".join(str(g) for g in self.word) or "id"


def braid_ring(b: Braid) -> PolyRing:
    """Rank 1 for two strands; the geometric rank 2 realization (m = 3) for three."""
    if b.strands == 2:
        return PolyRing(Realm(None), 1)
    return PolyRing(Realm(3), 2)


def _color(g: int) -> str:
    return "s" if abs(g) == 1 else "t"


# -- Rouquier complexes -------------------------------------------------------------

@dataclass
class Term:
    bits: tuple
    word: tuple
    shift: int
    j: int
    module: GradedFree


@dataclass
class RouquierComplex:
    braid: Braid
    ring: PolyRing
    terms: list
    maps: dict  # (source index, target index) -> degree 0 GradedMap

    def degrees(self) -> list:
        return sorted({t.j for t in self.terms})

    def at(self, j: int) -> list:
        return [i for i, t in enumerate(self.terms) if t.j == j]

    def check(self) -> bool:
        """d o d = 0 as matrices over R."""
        for i, t in enumerate(self.terms):
            two: dict = {}
            for (a, b), f in self.maps.items():
                if a != i:
                    continue
                for (b2, c), g in self.maps.items():
                    if b2 != b:
                        continue
                    h = g.compose(f)
                    two[c] = two[c] + h if c in two else h
            if any(not h.is_zero() for h in two.values()):
                raise ValueError("Rouquier differential does not square to zero")
        return True


def rouquier(b: Braid) -> RouquierComplex:
    """Tensor product of [B_s -> R(1)] (positive) and [R(-1) -> B_s] (negative) over R."""
    ring = braid_ring(b)
    n = len(b.word)
    terms = []
    index = {}
    for bits in product((0, 1), repeat=n):
        word, shift, j = [], 0, 0
        for g, e in zip(b.word, bits):
            if g > 0:
                if e == 0:
                    word.append(_color(g))
                else:
                    shift += 1
                j += e
            else:
                if e == 1:
                    word.append(_color(g))
                else:
                    shift -= 1
                j += e - 1
        word = tuple(word)
        index[bits] = len(terms)
        terms.append(Term(bits, word, shift, j, bimod.bs_module(ring, word).shift(shift)))
    maps = {}
    for bits, i in index.items():
        src = terms[i]
        for k in range(n):
            if bits[k]:
                continue
            tgt_bits = bits[:k] + (1,) + bits[k + 1:]
            tgt = terms[index[tgt_bits]]
            g = b.word[k]
            pos = sum(1 for kk in range(k) if (b.word[kk] > 0) != bool(bits[kk]))
            if g > 0:
                f = bimod.counit_map(ring, src.word, pos)
            else:
                f = bimod.unit_map(ring, src.word, pos, _color(g))
            before = sum(bits[kk] if b.word[kk] > 0 else bits[kk] - 1 for kk in range(k))
            f = f.retarget(src.module, tgt.module, 0)
            if before % 2:
                f = -f
            maps[(i, index[tgt_bits])] = f
    return RouquierComplex(b, ring, terms, maps)


# -- triply graded series -----------------------------------------------------------

@dataclass
class TriSeries:
    """Hilbert data in Q for each (a, j): a the Hochschild degree, j the homological degree."""

    cutoff: int
    top: int
    rank: int
    terms: dict = field(default_factory=dict)  # (a, j) -> {internal degree: dim}

    def dim(self, a: int, j: int, d: int) -> int:
        return self.terms.get((a, j), {}).get(d, 0)

    def window(self) -> range:
        return range(-self.cutoff, self.top + 1)

    def lowest(self) -> int:
        degs = [d for h in self.terms.values() for d, v in h.items() if v]
        return min(degs) if degs else 0

    def normalized(self) -> dict:
        return {k: {d: v for d, v in sorted(h.items()) if v} for k, h in sorted(self.terms.items())
                if any(h.values())}

    def __eq__(self, other):
        if not isinstance(other, TriSeries):
            return NotImplemented
        lo = -min(self.cutoff, other.cutoff)
        hi = min(self.top, other.top)
        keys = set(self.terms) | set(other.terms)
        return all(self.dim(a, j, d) == other.dim(a, j, d) for a, j in keys for d in range(lo, hi + 1))

    def __mul__(self, other: "TriSeries") -> "TriSeries":
        """Product of series, truncated to the degrees both factors determine."""
        lo = -min(self.cutoff, other.cutoff)
        hi = min(self.top + other.lowest(), other.top + self.lowest())
        out: dict = {}
        for (a1, j1), h1 in self.terms.items():
            for (a2, j2), h2 in other.terms.items():
                acc = out.setdefault((a1 + a2, j1 + j2), {})
                for d1, v1 in h1.items():
                    if not v1:
                        continue
                    for d2, v2 in h2.items():
                        d = d1 + d2
                        if v2 and lo <= d <= hi:
                            acc[d] = acc.get(d, 0) + v1 * v2
        return TriSeries(-lo, hi, self.rank + other.rank, out)

    def numerators(self) -> dict:
        """(a, j) -> (k, numerator) with h = numerator / (1 - Q^2)^k and k minimal.

        The numerator is exact in the whole window; it is accepted when it
        vanishes in the top six degrees.
        """
        out = {}
        for key, h in self.normalized().items():
            for k in range(self.rank + 1):
                num: dict = {}
                for d in self.window():
                    c = sum((-1) ** i * comb(k, i) * h.get(d - 2 * i, 0) for i in range(k + 1))
                    if c:
                        num[d] = c
                if not any(d > self.top - 6 for d in num):
                    break
            out[key] = (k, num)
        return out

    def pretty(self) -> str:
        """E.g. (Q^2/(1-Q^2) + Q^-2 T^2) + A(Q^-2/(1-Q^2))."""
        by_a: dict = {}
        for (a, j), (k, num) in self.numerators().items():
            by_a.setdefault(a, []).append(_fmt_term(num, j, k))
        parts = []
        for a in sorted(by_a):
            body = " + ".join(p for p in by_a[a] if p)
            if a == 0:
                parts.append(f"({body})")
            elif a == 1:
                parts.append(f"A({body})")
            else:
                parts.append(f"A^{a}({body})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        terms = []
        for (a, j), h in self.normalized().items():
            terms.append({"a": a, "j": j, "dims": {str(d): v for d, v in h.items()}})
        return {"cutoff": self.cutoff, "top": self.top, "rank": self.rank, "a_shift": A_SHIFT,
                "terms": terms, "pretty": self.pretty()}


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _fmt_monomial(c: int, d: int) -> str:
    q = _mono("Q", d)
    mag = abs(c)
    body = q if mag == 1 and q else f"{mag}{q}"
    return body if c > 0 else f"-{body}"


def _fmt_term(num: dict, j: int, k: int) -> str:
    if not num:
        return ""
    poly = " + ".join(_fmt_monomial(c, d) for d, c in sorted(num.items())).replace("+ -", "- ")
    den = "" if k == 0 else ("/(1-Q^2)" if k == 1 else f"/(1-Q^2)^{k}")
    if len(num) > 1 and den:
        poly = f"({poly})"
    t = _mono("T", j)
    return f"{poly}{den}" + (f" {t}" if t else "")


# -- the bicomplex ----------------------------------------------------------------------

class _Bicomplex:
    def __init__(self, C: RouquierComplex):
        self.C = C
        ring = C.ring
        self.ring = ring
        self.r = ring.rank
        self.koszul = []
        xs = linear_basis(ring)
        for t in C.terms:
            ops = [bimod.difference_matrix(ring, t.word, x, ("rho", i)) for i, x in enumerate(xs)]
            ops = [op.retarget(t.module, t.module, 2) for op in ops]
            self.koszul.append(koszul_hom_maps(ring, t.module, ops))
        self.nsum = [len(list(combinations(range(self.r), a))) for a in range(self.r + 1)]
        self._ind: dict = {}

    def induced(self, edge, a: int) -> GradedMap:
        """The Rouquier component on position a of the Koszul complexes."""
        key = (edge, a)
        hit = self._ind.get(key)
        if hit is None:
            i, k = edge
            f = self.C.maps[edge]
            src = self.koszul[i].modules[a]
            tgt = self.koszul[k].modules[a]
            Ms = self.C.terms[i].module.shift(2 * a)
            Mt = self.C.terms[k].module.shift(2 * a)
            n = self.nsum[a]
            blocks = {(x, x): f.retarget(Ms, Mt, 0) for x in range(n)}
            hit = block_map(blocks, [Ms] * n, [Mt] * n)
            hit = GradedMap(src, tgt, hit.entries, 0)
            self._ind[key] = hit
        return hit

    def _dims(self, idx: list, a: int, d: int) -> list:
        return [len(self.koszul[i].modules[a].slice_basis(d)[0]) if 0 <= a <= self.r else 0 for i in idx]

    def koszul_matrix(self, idx: list, a: int, d: int) -> fmpq_mat:
        """Koszul differential position a -> a+1 on the sum of the given terms, degree d."""
        rows = self._dims(idx, a + 1, d)
        cols = self._dims(idx, a, d)
        M = fmpq_mat(sum(rows), sum(cols))
        if not (0 <= a < self.r):
            return M
        ro = co = 0
        for t, i in enumerate(idx):
            S = self.koszul[i].maps[a].slice(d)
            _paste(M, S, ro, co)
            ro += rows[t]
            co += cols[t]
        return M

    def rouquier_matrix(self, src: list, tgt: list, a: int, d: int) -> fmpq_mat:
        rows = self._dims(tgt, a, d)
        cols = self._dims(src, a, d)
        M = fmpq_mat(sum(rows), sum(cols))
        co = 0
        for cs, i in enumerate(src):
            ro = 0
            for rs, k in enumerate(tgt):
                if (i, k) in self.C.maps:
                    _paste(M, self.induced((i, k), a).slice(d), ro, co)
                ro += rows[rs]
            co += cols[cs]
        return M

    def hh_dim(self, j: int, a: int, d: int) -> int:
        idx = self.C.at(j)
        n = sum(self._dims(idx, a, d))
        return n - rank(self.koszul_matrix(idx, a, d)) - rank(self.koszul_matrix(idx, a - 1, d))

    def homology_dim(self, j: int, a: int, d: int) -> int:
        """dim H^j(HH^a) in internal degree d."""
        idx = self.C.at(j)
        nxt = self.C.at(j + 1)
        prv = self.C.at(j - 1)
        n = sum(self._dims(idx, a, d))
        if n == 0:
            return 0
        Z = self._cycles(idx, a, d)
        nz = Z.ncols()
        if nz == 0:
            return 0
        B_next = self.koszul_matrix(nxt, a - 1, d)
        f = self.rouquier_matrix(idx, nxt, a, d)
        fz = f * Z if f.nrows() else fmpq_mat(0, nz)
        keep = nz - rank(hstack([fz, B_next], fz.nrows())) + rank(B_next)
        B = self.koszul_matrix(idx, a - 1, d)
        Zp = self._cycles(prv, a, d)
        g = self.rouquier_matrix(prv, idx, a, d)
        gz = g * Zp if Zp.ncols() and g.ncols() else fmpq_mat(n, 0)
        kill = rank(hstack([B, gz], n))
        return keep - kill

    def _cycles(self, idx: list, a: int, d: int) -> fmpq_mat:
        n = sum(self._dims(idx, a, d))
        D = self.koszul_matrix(idx, a, d)
        if D.nrows() == 0:
            basis = [[1 if r == c else 0 for r in range(n)] for c in range(n)]
        else:
            basis = nullspace(D)
        Z = fmpq_mat(n, len(basis))
        for c, v in enumerate(basis):
            for r, x in enumerate(v):
                if x:
                    Z[r, c] = x
        return Z


def _paste(M: fmpq_mat, S: fmpq_mat, ro: int, co: int) -> None:
    for r in range(S.nrows()):
        for c in range(S.ncols()):
            v = S[r, c]
            if v != 0:
                M[ro + r, co + c] = v


def hhh_series(b: Braid, cutoff: int = DEFAULT_CUTOFF, top: Optional[int] = None,
               check: bool = True) -> TriSeries:
    """H^j(HH^a(Rouquier complex)) in internal degrees [-cutoff, top] (default top = cutoff - 4)."""
    top = cutoff - 4 if top is None else top
    C = rouquier(b)
    if check:
        C.check()
    bi = _Bicomplex(C)
    r = C.ring.rank
    terms: dict = {}
    for a in range(r + 1):
        for j in C.degrees():
            h = {}
            for d in range(-cutoff, top + 1):
                v = bi.homology_dim(j, a, d)
                if v:
                    h[d + A_SHIFT * a] = v
            terms[(a, j)] = h
    return TriSeries(cutoff, top, r, terms)


def euler_check(b: Braid, cutoff: int = 12) -> bool:
    """sum_j (-1)^j dim H^j(HH^a) equals sum_j (-1)^j dim HH^a(C_j) in every degree."""
    C = rouquier(b)
    bi = _Bicomplex(C)
    s = hhh_series(b, cutoff)
    for a in range(C.ring.rank + 1):
        for d in range(-cutoff, cutoff - 3):
            lhs = sum((-1) ** j * s.dim(a, j, d - A_SHIFT * a) for j in C.degrees())
            rhs = sum((-1) ** j * bi.hh_dim(j, a, d) for j in C.degrees())
            if lhs != rhs:
                return False
    return True


def connect_sum_check(b1: Braid, b2: Braid, composite: Braid, cutoff: int = DEFAULT_CUTOFF) -> bool:
    """The series of a connect sum is the product of the series of its pieces."""
    s = hhh_series(composite, cutoff)
    return s == hhh_series(b1, cutoff) * hhh_series(b2, cutoff)


# -- HOMFLY-PT specialization -------------------------------------------------------

def homfly_substitute(s: TriSeries) -> dict:
    """A = alpha^2 Q^2 / T, T = -1, alpha = 1/a, Q = q.

    Returns {(a exponent, q exponent): coefficient} for the truncated series.
    """
    out: dict = {}
    for (A, j), h in s.terms.items():
        for d, v in h.items():
            if not v:
                continue
            # A^A Q^d T^j -> a^{-2A} q^{2A + d} (-1)^{j - A}
            key = (-2 * A, 2 * A + d)
            c = v * (-1) ** ((j - A) % 2)
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in sorted(out.items()) if v}


def expand_rational(num: dict, den: dict, lo: int, hi: int) -> dict:
    """Power series in q of num/den for Laurent polynomials in (a, q) with den a polynomial in q alone.

    num: {(a exp, q exp): coeff}; den: {q exp: coeff} with nonzero constant term.
    Coefficients are kept for q exponents in [lo, hi].
    """
    c0 = Fraction(den[0])
    inv = {0: 1 / c0}
    span = hi - lo + max(abs(e) for _, e in num) + 2 if num else 0
    for k in range(1, span + 1):
        acc = sum(Fraction(den.get(i, 0)) * inv.get(k - i, 0) for i in range(1, k + 1))
        inv[k] = -acc / c0
    out: dict = {}
    for (ae, qe), c in num.items():
        for k, x in inv.items():
            e = qe + k
            if lo <= e <= hi and x:
                out[(ae, e)] = out.get((ae, e), 0) + c * x
    return {k: v for k, v in sorted(out.items()) if v}
