"""Degreewise exact linear algebra for right-R-linear maps between graded free modules.

A graded free module is recorded by the internal degrees of its generators.
Convention: R(k) has its generator in degree -k, so M(k)_d = M_{d+k}.

Maps are matrices of homogeneous polynomials.  Everything is reduced to
finite matrices over Q in a single internal degree; elements of a quadratic
coefficient field are expanded in the basis (1, delta), so ranks over the
field are half the rational ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

from flint import fmpq, fmpq_mat

from .polyring import Poly, PolyRing
from .scalars import FieldElem

DEFAULT_CUTOFF = 24


class CutoffError(ValueError):
    pass


class GradedFree:
    """Free right R-module with generators in the given internal degrees."""

    __slots__ = ("ring", "degrees", "_slices")

    def __init__(self, ring: PolyRing, degrees: Sequence[int]):
        self.ring = ring
        self.degrees = tuple(degrees)
        self._slices: dict = {}

    def __len__(self):
        return len(self.degrees)

    def __repr__(self):
        return f"GradedFree({list(self.degrees)})"

    def shift(self, k: int) -> "GradedFree":
        """M(k): generators move down by k."""
        return GradedFree(self.ring, [d - k for d in self.degrees])

    def __add__(self, other: "GradedFree") -> "GradedFree":
        return GradedFree(self.ring, self.degrees + other.degrees)

    def slice_basis(self, d: int) -> tuple[list, dict]:
        """Basis of the degree-d part as (generator, exponent) pairs, with an index lookup."""
        hit = self._slices.get(d)
        if hit is None:
            basis = []
            for i, g in enumerate(self.degrees):
                for mono in self.ring.monomials_of_degree(d - g):
                    basis.append((i, mono))
            hit = (basis, {b: k for k, b in enumerate(basis)})
            self._slices[d] = hit
        return hit

    def slice_dim(self, d: int) -> int:
        return len(self.slice_basis(d)[0]) * self.ring.realm.degree

    def hilbert(self, cutoff: int = DEFAULT_CUTOFF) -> "HilbertData":
        return HilbertData(cutoff, {d: self.slice_dim(d) // self.ring.realm.degree for d in range(-cutoff, cutoff + 1)})


class GradedMap:
    """Right-R-linear map; ``entries[(i, j)]`` is the coefficient of target generator i in the image of source generator j."""

    __slots__ = ("source", "target", "entries", "degree", "_slices")

    def __init__(self, source: GradedFree, target: GradedFree, entries: dict, degree: int = 0, check: bool = False):
        self._slices: dict = {}
        self.source = source
        self.target = target
        self.entries = {k: v for k, v in entries.items() if v}
        self.degree = degree
        if check:
            self.check_homogeneous()

    def check_homogeneous(self):
        for (i, j), p in self.entries.items():
            want = self.degree + self.source.degrees[j] - self.target.degrees[i]
            if not p.is_homogeneous() or p.degree() != want:
                raise ValueError(f"entry ({i},{j}) has degree {p.degree()}, expected {want}")

    @classmethod
    def zero(cls, source: GradedFree, target: GradedFree, degree: int = 0) -> "GradedMap":
        return cls(source, target, {}, degree)

    @classmethod
    def identity(cls, M: GradedFree) -> "GradedMap":
        one = M.ring.one()
        return cls(M, M, {(i, i): one for i in range(len(M))}, 0)

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "GradedMap") -> "GradedMap":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return GradedMap(self.source, self.target, out, self.degree)

    def __neg__(self):
        return GradedMap(self.source, self.target, {k: -v for k, v in self.entries.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.source, self.target, {k: v * c for k, v in self.entries.items()}, self.degree)

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """self o inner."""
        cols: dict = {}
        for (k, j), p in inner.entries.items():
            cols.setdefault(k, []).append((j, p))
        out: dict = {}
        for (i, k), q in self.entries.items():
            for j, p in cols.get(k, ()):
                v = q * p
                key = (i, j)
                out[key] = out[key] + v if key in out else v
        return GradedMap(inner.source, self.target, out, self.degree + inner.degree)

    def retarget(self, source: GradedFree, target: GradedFree, degree: Optional[int] = None) -> "GradedMap":
        """Same matrix viewed between shifted modules."""
        return GradedMap(source, target, self.entries, self.degree if degree is None else degree)

    def apply(self, vec: dict) -> dict:
        """Apply to a vector given as {source generator: Poly}."""
        out: dict = {}
        for (i, j), p in self.entries.items():
            x = vec.get(j)
            if x is not None and x:
                v = p * x
                out[i] = out[i] + v if i in out else v
        return {k: v for k, v in out.items() if v}

    def slice(self, d: int) -> fmpq_mat:
        """Rational matrix of the map from the degree-d part of the source (cached; do not mutate)."""
        M = self._slices.get(d)
        if M is None:
            M = slice_matrix(self.source, self.target, self.entries, self.degree, d)
            self._slices[d] = M
        return M


def block_map(blocks: dict, sources: Sequence[GradedFree], targets: Sequence[GradedFree], degree: int = 0) -> GradedMap:
    """Assemble a map between direct sums from blocks[(row, col)] : sources[col] -> targets[row]."""
    src = GradedFree(sources[0].ring, [d for M in sources for d in M.degrees])
    tgt = GradedFree(sources[0].ring, [d for M in targets for d in M.degrees])
    soff = [0]
    for M in sources:
        soff.append(soff[-1] + len(M))
    toff = [0]
    for M in targets:
        toff.append(toff[-1] + len(M))
    entries: dict = {}
    for (r, c), f in blocks.items():
        if f is None:
            continue
        for (i, j), p in f.entries.items():
            entries[(toff[r] + i, soff[c] + j)] = p
    return GradedMap(src, tgt, entries, degree)


def _field_block(x: FieldElem):
    """Matrix of multiplication by x on the basis (1, delta)."""
    a, b = x.a, x.b
    r = x.realm
    return a, b * r._u, b, a + b * r._v


def slice_matrix(source: GradedFree, target: GradedFree, entries: dict, degree: int, d: int) -> fmpq_mat:
    sbasis, _ = source.slice_basis(d)
    tbasis, _ = target.slice_basis(d + degree)
    q = source.ring.realm.degree
    rank_ = source.ring.rank
    nrows, ncols = len(tbasis) * q, len(sbasis) * q
    M = fmpq_mat(nrows, ncols)
    if nrows == 0 or ncols == 0:
        return M
    # row offset of target generator i in this slice; monomials are ordered by alpha_t exponent
    toff = {}
    off = 0
    td = d + degree
    for i, g in enumerate(target.degrees):
        n = len(source.ring.monomials_of_degree(td - g))
        if n:
            toff[i] = off
        off += n
    bycol: dict = {}
    for (i, j), p in entries.items():
        if i in toff:
            bycol.setdefault(j, []).append((toff[i], p.terms))
    for col, (j, mono) in enumerate(sbasis):
        mb = mono[-1] if rank_ == 2 else 0
        for base, terms in bycol.get(j, ()):
            for e, x in terms.items():
                row = base + (e[-1] + mb if rank_ == 2 else 0)
                if q == 1:
                    M[row, col] = M[row, col] + x.a
                else:
                    a, b, c, dd = _field_block(x)
                    r0, c0 = 2 * row, 2 * col
                    M[r0, c0] = M[r0, c0] + a
                    M[r0, c0 + 1] = M[r0, c0 + 1] + b
                    M[r0 + 1, c0] = M[r0 + 1, c0] + c
                    M[r0 + 1, c0 + 1] = M[r0 + 1, c0 + 1] + dd
    return M


# -- exact rational linear algebra -----------------------------------------

def is_zero_matrix(M) -> bool:
    return M == type(M)(M.nrows(), M.ncols())


def rank(M: fmpq_mat) -> int:
    if M.nrows() == 0 or M.ncols() == 0:
        return 0
    num, _ = M.numer_denom()
    # fraction-free elimination is markedly faster on tall matrices
    if num.nrows() < num.ncols():
        num = num.transpose()
    return num.rank()


def nullspace(M: fmpq_mat) -> list[list[fmpq]]:
    """Basis of {x : M x = 0} over Q."""
    n = M.ncols()
    if M.nrows() == 0:
        return [[fmpq(int(i == j)) for i in range(n)] for j in range(n)]
    R, r = M.rref()
    pivots = []
    row = 0
    for col in range(n):
        if row < r and R[row, col] != 0:
            pivots.append(col)
            row += 1
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [fmpq(0)] * n
        v[free] = fmpq(1)
        for k, pc in enumerate(pivots):
            v[pc] = -R[k, free]
        basis.append(v)
    return basis


def solve(A: fmpq_mat, b: Sequence[fmpq]) -> Optional[list[fmpq]]:
    """Some x with A x = b, or None."""
    n = A.ncols()
    m = A.nrows()
    if m == 0:
        return [fmpq(0)] * n
    aug = fmpq_mat(m, n + 1)
    for i in range(m):
        for j in range(n):
            aug[i, j] = A[i, j]
        aug[i, n] = b[i]
    R, r = aug.rref()
    x = [fmpq(0)] * n
    row = 0
    for col in range(n + 1):
        if row < r and R[row, col] != 0:
            if col == n:
                return None
            x[col] = R[row, n]
            row += 1
    return x


def hstack(mats: Sequence[fmpq_mat], nrows: int) -> fmpq_mat:
    ncols = sum(M.ncols() for M in mats)
    out = fmpq_mat(nrows, ncols)
    off = 0
    for M in mats:
        for i in range(M.nrows()):
            for j in range(M.ncols()):
                v = M[i, j]
                if v != 0:
                    out[i, off + j] = v
        off += M.ncols()
    return out


def vstack(mats: Sequence[fmpq_mat], ncols: int) -> fmpq_mat:
    nrows = sum(M.nrows() for M in mats)
    out = fmpq_mat(nrows, ncols)
    off = 0
    for M in mats:
        for i in range(M.nrows()):
            for j in range(M.ncols()):
                v = M[i, j]
                if v != 0:
                    out[off + i, j] = v
        off += M.nrows()
    return out


# -- Hilbert data ------------------------------------------------------------

@dataclass
class HilbertData:
    """Dimensions (over the coefficient field) per internal degree in [-cutoff, cutoff]."""

    cutoff: int
    dims: dict = field(default_factory=dict)
    top: Optional[int] = None

    def __post_init__(self):
        if self.top is None:
            self.top = self.cutoff

    def __getitem__(self, d: int) -> int:
        if d < -self.cutoff or d > self.top:
            raise CutoffError(f"degree {d} outside cutoff {self.cutoff}")
        return self.dims.get(d, 0)

    def window(self, lo: Optional[int] = None, hi: Optional[int] = None) -> dict:
        lo = -self.cutoff if lo is None else lo
        hi = self.top if hi is None else hi
        return {d: self.dims.get(d, 0) for d in range(lo, hi + 1)}

    def agrees(self, other: "HilbertData", lo: Optional[int] = None, hi: Optional[int] = None) -> bool:
        lo = -min(self.cutoff, other.cutoff) if lo is None else lo
        hi = min(self.top, other.top) if hi is None else hi
        return all(self.dims.get(d, 0) == other.dims.get(d, 0) for d in range(lo, hi + 1))

    def __add__(self, other: "HilbertData") -> "HilbertData":
        c = min(self.cutoff, other.cutoff)
        top = min(self.top, other.top)
        return HilbertData(c, {d: self.dims.get(d, 0) + other.dims.get(d, 0) for d in range(-c, top + 1)}, top)

    def scaled(self, k: int) -> "HilbertData":
        return HilbertData(self.cutoff, {d: k * v for d, v in self.dims.items()}, self.top)

    def to_json(self, rank: Optional[int] = None) -> dict:
        gens = free_generators(self, rank) if rank is not None else None
        return {
            "cutoff": self.cutoff,
            "top": self.top,
            "dims": {str(d): v for d, v in sorted(self.dims.items()) if v},
            "free_generators": gens if isinstance(gens, list) else None,
        }


def free_hilbert(ring_rank: int, generators: Iterable[int], cutoff: int = DEFAULT_CUTOFF,
                 top: Optional[int] = None) -> HilbertData:
    """Hilbert data of the free module with the given generator degrees."""
    top = cutoff if top is None else top
    dims: dict = {}
    for g in generators:
        for d in range(g, top + 1, 2):
            if d < -cutoff:
                continue
            k = (d - g) // 2
            n = 1 if ring_rank == 1 else k + 1
            dims[d] = dims.get(d, 0) + n
    return HilbertData(cutoff, dims, top)


class FreenessFailure(str):
    """Returned by free_generators when the data is not that of a free module or is inconclusive."""


def free_generators(h: HilbertData, rank: int):
    """Generator degrees if h looks free over a polynomial ring of the given rank, else a FreenessFailure.

    Multiplies by (1 - v^2)^rank.  Degrees below the window are taken to be
    empty, which is only accepted if the two lowest window degrees are empty.
    Generators are required to lie at least 4 below the top of the window so
    that the top can confirm that no new generators appear.
    """
    D = h.cutoff
    top = h.top
    if h[-D] or h[-D + 1]:
        return FreenessFailure("inconclusive: data reaches the lower edge of the window")
    gens = []
    for d in range(-D, top + 1):
        g = 0
        for k in range(rank + 1):
            dd = d - 2 * k
            if dd >= -D:
                g += (-1) ** k * comb(rank, k) * h.dims.get(dd, 0)
        if g < 0:
            return FreenessFailure(f"not free: coefficient {g} at degree {d}")
        if g and d > top - 4:
            return FreenessFailure(f"inconclusive: generator at degree {d} near the top of the window")
        gens += [d] * g
    return gens


# -- complexes -----------------------------------------------------------------

class GradedComplex:
    """Cochain complex C^0 -> C^1 -> ... of graded free modules with degree-0 differentials."""

    def __init__(self, modules: Sequence[GradedFree], maps: Sequence[GradedMap]):
        if len(maps) != len(modules) - 1:
            raise ValueError("need one differential between consecutive modules")
        self.modules = list(modules)
        self.maps = list(maps)
        self._ranks: dict = {}
        self._checked: set = set()

    def check(self):
        """d o d = 0 as matrices over R."""
        for f, g in zip(self.maps, self.maps[1:]):
            if not g.compose(f).is_zero():
                raise ValueError("d o d != 0")
        return True

    def check_slice(self, d: int):
        """d o d = 0 in internal degree d (exact rational matrices)."""
        if d in self._checked:
            return
        self._checked.add(d)
        for k in range(len(self.maps) - 1):
            A = self.maps[k].slice(d)
            B = self.maps[k + 1].slice(d)
            if A.nrows() and A.ncols() and B.nrows() and not is_zero_matrix(B * A):
                raise ValueError(f"d o d != 0 in degree {d}")

    def rank_at(self, k: int, d: int) -> int:
        """Rank (over the field) of the differential out of position k in degree d."""
        if k < 0 or k >= len(self.maps):
            return 0
        key = (k, d)
        if key not in self._ranks:
            self._ranks[key] = rank(self.maps[k].slice(d)) // self.modules[0].ring.realm.degree
        return self._ranks[key]

    def cohomology_dim(self, i: int, d: int) -> int:
        M = self.modules[i]
        dim = M.slice_dim(d) // M.ring.realm.degree
        return dim - self.rank_at(i, d) - self.rank_at(i - 1, d)


def cohomology_hs(C: GradedComplex, i: int, cutoff: int = DEFAULT_CUTOFF, check: bool = True,
                  top: Optional[int] = None) -> HilbertData:
    """Cohomology at position i in degrees [-cutoff, top]; ``check`` verifies d o d = 0 slice by slice."""
    top = cutoff if top is None else top
    dims = {}
    for d in range(-cutoff, top + 1):
        if check:
            C.check_slice(d)
        dims[d] = C.cohomology_dim(i, d)
    return HilbertData(cutoff, dims, top)


def kernel_hs(f: GradedMap, cutoff: int = DEFAULT_CUTOFF, top: Optional[int] = None) -> HilbertData:
    q = f.source.ring.realm.degree
    top = cutoff if top is None else top
    return HilbertData(
        cutoff,
        {d: (f.source.slice_dim(d) - rank(f.slice(d))) // q for d in range(-cutoff, top + 1)},
        top,
    )
