"""Koszul resolutions of Bott-Samelson bimodules and chain maps between them.

K_c = Lambda(gamma_c, rho_o) (x) R^e (1) resolves B_c (o the other color) and
K_e = Lambda(rho_s, rho_t) (x) R^e resolves R.  A tensor product of factors
from {"e", "s", "t"} resolves the corresponding Bott-Samelson bimodule.

An element is a dict ``{(J, monos): coeff}``: J is a sorted tuple of global
exterior generator indices (factor-major; on a colored factor gamma comes
before rho, on an empty factor rho_s before rho_t) and monos holds one
exponent tuple per tensor slot.  A chain map of cohomological degree p sends
exterior degree k to k - p and is R-bilinear, so it is determined by its
values on J (x) 1 (x) mids (x) 1.  Components that are not written down are
found by an exact solve against the target differential.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Callable, Optional, Sequence

from flint import fmpq, fmpq_mat

from . import bimod
from .bimod import BimodElem, as_word
from .ext import GEN_GAMMA, GEN_RHO, ExtClass
from .gradedlin import _field_block, solve
from .polyring import Poly, PolyRing, other
from .scalars import FieldElem

Key = tuple  # (J, monos)


# -- small helpers ----------------------------------------------------------------

def _madd(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _acc(out: dict, key, c) -> None:
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _sort_sign(seq: Sequence[int]) -> tuple[int, Optional[tuple]]:
    """Sign of the sorting permutation of seq, or (0, None) on a repeat."""
    if len(set(seq)) != len(seq):
        return 0, None
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(len(s) - 1 - i):
            if s[j] > s[j + 1]:
                s[j], s[j + 1] = s[j + 1], s[j]
                sign = -sign
    return sign, tuple(s)


def add(*elems: dict) -> dict:
    out: dict = {}
    for e in elems:
        for k, c in e.items():
            _acc(out, k, c)
    return out


def scale(elem: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in elem.items()}


# -- complexes ---------------------------------------------------------------------

_KCACHE: dict = {}


def kcomplex(ring: PolyRing, factors) -> "KComplex":
    factors = tuple(factors)
    key = (ring, factors)
    hit = _KCACHE.get(key)
    if hit is None:
        hit = KComplex(ring, factors)
        _KCACHE[key] = hit
    return hit


class KComplex:
    """Tensor product over R of the factors K_e, K_s, K_t."""

    def __init__(self, ring: PolyRing, factors):
        if ring.rank != 2:
            raise ValueError("Koszul complexes are built for rank 2 realizations")
        factors = tuple(factors)
        if not factors or any(f not in ("e", "s", "t") for f in factors):
            raise ValueError("factors must be a nonempty sequence over 'e', 's', 't'")
        self.ring = ring
        self.factors = factors
        self.nslots = len(factors) + 1
        self.shift = sum(1 for f in factors if f != "e")
        self.word = tuple(f for f in factors if f != "e")
        self.gens = []  # (factor index, kind, internal degree, polynomial)
        for i, f in enumerate(factors):
            if f == "e":
                self.gens.append((i, "x0", 2, ring.rho("s")))
                self.gens.append((i, "x1", 2, ring.rho("t")))
            else:
                self.gens.append((i, "g", 4, ring.gamma(f)))
                self.gens.append((i, "p", 2, ring.rho(other(f))))
        self.zero_mono = (0, 0)
        self._q_cache: dict = {}

    def __repr__(self):
        return f"K({''.join(self.factors)})"

    def base(self, i: int) -> int:
        """Global index of the first generator of factor i."""
        return 2 * i

    def one(self, J: tuple = ()) -> Key:
        return (J, (self.zero_mono,) * self.nslots)

    def key_degree(self, key: Key) -> int:
        J, monos = key
        return sum(self.gens[j][2] for j in J) + 2 * sum(sum(m) for m in monos) - self.shift

    def degree(self, elem: dict) -> Optional[int]:
        degs = {self.key_degree(k) for k in elem}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop()

    # -- building elements
    def linear(self, i: int, f: Poly) -> dict:
        """A linear form f as a combination of the exterior generators of factor i."""
        ring = self.ring
        b = self.base(i)
        if self.factors[i] == "e":
            out = {b: ring.coroot_pairing("s", f), b + 1: ring.coroot_pairing("t", f)}
        else:
            c = self.factors[i]
            if ring.coroot_pairing(c, f):
                raise ValueError("linear form is not invariant for this factor")
            out = {b + 1: ring.coroot_pairing(other(c), f)}
        return {k: v for k, v in out.items() if v}

    def pure(self, gens: Sequence[dict], polys: Sequence[Poly], coeff=1) -> dict:
        """(g_1 ^ ... ^ g_k) (x) p_0 (x) ... (x) p_n with each g_i a combination of generators."""
        if len(polys) != self.nslots:
            raise ValueError("wrong number of tensor slots")
        ring = self.ring
        coeff = ring.realm(coeff)
        wedges = {(): coeff}
        for g in gens:
            new: dict = {}
            for seq, c in wedges.items():
                for j, x in g.items():
                    _acc(new, seq + (j,), c * x)
            wedges = new
        exts: dict = {}
        for seq, c in wedges.items():
            sign, J = _sort_sign(seq)
            if sign:
                _acc(exts, J, c * sign)
        tensors = {(): ring.realm.one}
        for p in polys:
            new = {}
            for monos, c in tensors.items():
                for e, x in p.terms.items():
                    _acc(new, monos + (e,), c * x)
            tensors = new
        out: dict = {}
        for J, c in exts.items():
            for monos, x in tensors.items():
                _acc(out, (J, monos), c * x)
        return out

    def gen(self, j: int) -> dict:
        return {j: self.ring.realm.one}

    def lift(self, x: BimodElem) -> dict:
        """A tensor lift of an element of BS(word) to exterior degree 0 (only colored factors)."""
        if self.word != x.word or "e" in self.factors:
            raise ValueError("lift needs a complex without empty factors matching the word")
        out: dict = {}
        for fs in bimod.elem_tensors(x):
            out = add(out, self.pure([], fs))
        return out

    # -- structure maps
    def d(self, elem: dict) -> dict:
        out: dict = {}
        for (J, monos), c in elem.items():
            for pos, j in enumerate(J):
                i, _, _, f = self.gens[j]
                J2 = J[:pos] + J[pos + 1:]
                cc = c if pos % 2 == 0 else -c
                for e, x in f.terms.items():
                    left = monos[:i] + (_madd(monos[i], e),) + monos[i + 1:]
                    right = monos[: i + 1] + (_madd(monos[i + 1], e),) + monos[i + 2:]
                    _acc(out, (J2, left), cc * x)
                    _acc(out, (J2, right), -cc * x)
        return out

    def q(self, elem: dict) -> BimodElem:
        """Augmentation to BS(word): kill exterior terms, multiply across empty factors."""
        ring = self.ring
        out = BimodElem(ring, self.word)
        merged: dict = {}
        for (J, monos), c in elem.items():
            if J:
                continue
            slots = [monos[0]]
            for i, f in enumerate(self.factors):
                if f == "e":
                    slots[-1] = _madd(slots[-1], monos[i + 1])
                else:
                    slots.append(monos[i + 1])
            _acc(merged, tuple(slots), c)
        for slots, c in merged.items():
            hit = self._q_cache.get(slots)
            if hit is None:
                hit = bimod.from_tensor(ring, self.word, [ring.monomial(e) for e in slots])
                self._q_cache[slots] = hit
            out = out + hit.scale(c)
        return out

    def basis(self, k: int, D: int) -> list:
        """Basis of exterior degree k, internal degree D."""
        out = []
        nvars = self.nslots * 2
        for J in combinations(range(len(self.gens)), k):
            P = D + self.shift - sum(self.gens[j][2] for j in J)
            if P < 0 or P % 2:
                continue
            h = P // 2
            for combo in combinations_with_replacement(range(nvars), h):
                ex = [0] * nvars
                for v in combo:
                    ex[v] += 1
                monos = tuple((ex[2 * i], ex[2 * i + 1]) for i in range(self.nslots))
                out.append((J, monos))
        return out

    def d_matrix(self, k: int, D: int):
        """Realified matrix of d from exterior degree k to k - 1 in internal degree D."""
        cols = self.basis(k, D)
        rows = self.basis(k - 1, D)
        return _realify([self.d({b: self.ring.realm.one}) for b in cols], rows, self.ring), cols, rows

    def homology_dims(self, D: int, kmax: Optional[int] = None) -> dict:
        """dim H^{-k} in internal degree D, with H^0 replaced by the cokernel into BS(word)."""
        from .gradedlin import rank

        q = self.ring.realm.degree
        kmax = len(self.gens) if kmax is None else kmax
        ranks = {}
        dims = {}
        for k in range(0, kmax + 2):
            dims[k] = len(self.basis(k, D))
            if k >= 1:
                M, _, _ = self.d_matrix(k, D)
                ranks[k] = rank(M) // q if M.nrows() and M.ncols() else 0
        out = {}
        for k in range(1, kmax + 1):
            out[-k] = dims[k] - ranks[k] - ranks.get(k + 1, 0)
        out[0] = dims[0] - ranks.get(1, 0)
        return out


def _realify(columns: Sequence[dict], rows: Sequence, ring: PolyRing) -> fmpq_mat:
    """Matrix whose columns are the given elements in the row basis, over Q."""
    q = ring.realm.degree
    idx = {r: i for i, r in enumerate(rows)}
    M = fmpq_mat(len(rows) * q, len(columns) * q)
    for j, col in enumerate(columns):
        for key, x in col.items():
            i = idx[key]
            if q == 1:
                M[i, j] = x.a
            else:
                a, b, c, d = _field_block(x)
                M[2 * i, 2 * j], M[2 * i, 2 * j + 1] = a, b
                M[2 * i + 1, 2 * j], M[2 * i + 1, 2 * j + 1] = c, d
    return M


def _vector(elem: dict, rows: Sequence, ring: PolyRing) -> list:
    q = ring.realm.degree
    idx = {r: i for i, r in enumerate(rows)}
    v = [fmpq(0)] * (len(rows) * q)
    for key, x in elem.items():
        if key not in idx:
            raise ValueError("element outside the expected slice")
        i = idx[key]
        if q == 1:
            v[i] = x.a
        else:
            v[2 * i], v[2 * i + 1] = x.a, x.b
    return v


def _unvector(vec: Sequence, cols: Sequence, ring: PolyRing) -> dict:
    q = ring.realm.degree
    out = {}
    for i, key in enumerate(cols):
        a = vec[q * i]
        b = vec[q * i + 1] if q == 2 else 0
        if a or b:
            out[key] = ring.realm.elem(a, b)
    return out


# -- chain maps ----------------------------------------------------------------------

class ChainMap:
    """An R-bilinear map of bidegree (p, degree) between Koszul complexes."""

    def __init__(self, src: KComplex, tgt: KComplex, p: int, degree: int, name: str = ""):
        if src.ring != tgt.ring:
            raise ValueError("ring mismatch")
        self.src, self.tgt, self.p, self.degree = src, tgt, p, degree
        self.ring = src.ring
        self.name = name
        self._cache: dict = {}

    def __repr__(self):
        return f"<{self.name or type(self).__name__}: {self.src} -> {self.tgt} ({self.p},{self.degree})>"

    def on_gen(self, J: tuple, mids: tuple) -> dict:
        key = (J, mids)
        hit = self._cache.get(key)
        if hit is None:
            if len(J) < self.p:
                hit = {}
            else:
                hit = self._compute(J, mids)
            self._cache[key] = hit
        return hit

    def _compute(self, J: tuple, mids: tuple) -> dict:
        raise NotImplementedError

    def apply(self, elem: dict) -> dict:
        out: dict = {}
        for (J, monos), c in elem.items():
            img = self.on_gen(J, monos[1:-1])
            if not img:
                continue
            left, right = monos[0], monos[-1]
            for (J2, m2), x in img.items():
                if len(m2) == 1:
                    m3 = (_madd(_madd(m2[0], left), right),)
                else:
                    m3 = (_madd(m2[0], left),) + m2[1:-1] + (_madd(m2[-1], right),)
                _acc(out, (J2, m3), c * x)
        return out

    # -- convenience
    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return compose(self, other)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return lincomb([(1, self), (1, other)])

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return lincomb([(1, self), (-1, other)])

    def __neg__(self):
        return lincomb([(-1, self)])

    def scaled(self, c) -> "ChainMap":
        return lincomb([(c, self)])

    def check(self, kmax: int = 2, mid_units: int = 1) -> bool:
        """d f = (-1)^p f d on generators up to exterior degree kmax.

        Where the target exterior degree is 0 this is the augmented condition
        q f d = 0.  Middle slots run over monomials with at most ``mid_units``
        factors of alpha.
        """
        src = self.src
        mids_list = _mid_monomials(src.nslots - 2, mid_units)
        sign = -1 if self.p % 2 else 1
        for k in range(0, kmax + 1):
            for J in combinations(range(len(src.gens)), k):
                for mids in mids_list:
                    if k - self.p < 0:
                        continue
                    x = {(J, (src.zero_mono,) + mids + (src.zero_mono,)): self.ring.realm.one}
                    fdx = self.apply(src.d(x))
                    if k - self.p == 0:
                        if k >= 1 and not self.tgt.q(fdx).is_zero():
                            return False
                        continue
                    dfx = self.tgt.d(self.on_gen(J, mids))
                    if add(dfx, scale(fdx, -sign)):
                        return False
        return True


def _mid_monomials(n: int, units: int) -> list:
    out = []
    for h in range(units + 1):
        for combo in combinations_with_replacement(range(2 * n), h):
            ex = [0] * (2 * n)
            for v in combo:
                ex[v] += 1
            out.append(tuple((ex[2 * i], ex[2 * i + 1]) for i in range(n)))
    return out


class Lift(ChainMap):
    """A chain map given explicitly in low exterior degrees and solved above.

    ``rule(J, mids)`` returns the value on J (x) 1 (x) mids (x) 1, or None
    when the component should be found by solving d X = (-1)^p f(d x).
    """

    def __init__(self, src, tgt, p, degree, rule: Callable, name: str = ""):
        super().__init__(src, tgt, p, degree, name)
        self.rule = rule

    def _compute(self, J, mids):
        val = self.rule(J, mids)
        if val is None:
            val = self._solve(J, mids)
        return val

    def _solve(self, J, mids):
        src, tgt = self.src, self.tgt
        k = len(J) - self.p
        if k <= 0:
            raise ValueError(f"{self.name}: component into exterior degree {k} must be given explicitly")
        x = {(J, (src.zero_mono,) + mids + (src.zero_mono,)): self.ring.realm.one}
        rhs = self.apply(src.d(x))
        if self.p % 2:
            rhs = scale(rhs, -1)
        if not rhs:
            return {}
        D = src.key_degree(next(iter(x))) + self.degree
        M, cols, rows = tgt.d_matrix(k, D)
        sol = solve(M, _vector(rhs, rows, self.ring))
        if sol is None:
            raise ArithmeticError(f"{self.name}: no lift of the component on {J}")
        return _unvector(sol, cols, self.ring)


class Composite(ChainMap):
    def __init__(self, outer: ChainMap, inner: ChainMap):
        if inner.tgt is not outer.src:
            raise ValueError(f"cannot compose {outer} after {inner}")
        super().__init__(inner.src, outer.tgt, inner.p + outer.p, inner.degree + outer.degree,
                         f"{outer.name}*{inner.name}")
        self.outer, self.inner = outer, inner

    def _compute(self, J, mids):
        return self.outer.apply(self.inner.on_gen(J, mids))


def compose(*maps: ChainMap) -> ChainMap:
    """compose(f, g, h) = f o g o h."""
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = Composite(f, out)
    return out


class LinComb(ChainMap):
    def __init__(self, terms: Sequence[tuple]):
        f0 = terms[0][1]
        for _, f in terms:
            if (f.src, f.tgt, f.p, f.degree) != (f0.src, f0.tgt, f0.p, f0.degree):
                raise ValueError("linear combination of maps with different bidegrees or ends")
        super().__init__(f0.src, f0.tgt, f0.p, f0.degree, "+".join(f.name for _, f in terms))
        self.terms = [(self.ring.realm(c), f) for c, f in terms]

    def _compute(self, J, mids):
        out: dict = {}
        for c, f in self.terms:
            for k, v in f.on_gen(J, mids).items():
                _acc(out, k, c * v)
        return out


def lincomb(terms: Sequence[tuple]) -> ChainMap:
    return LinComb(terms)


class Padded(ChainMap):
    """id_A (x) f (x) id_C with the Koszul sign (-1)^{p |x_A|}."""

    def __init__(self, f: ChainMap, left: tuple, right: tuple):
        ring = f.ring
        left, right = tuple(left), tuple(right)
        src = kcomplex(ring, left + f.src.factors + right)
        tgt = kcomplex(ring, left + f.tgt.factors + right)
        super().__init__(src, tgt, f.p, f.degree, f"({''.join(left)}|{f.name}|{''.join(right)})")
        self.f, self.a = f, len(left)
        self.b, self.b2 = len(f.src.factors), len(f.tgt.factors)

    def _compute(self, J, mids):
        a, b, b2 = self.a, self.b, self.b2
        lo, hi = 2 * a, 2 * (a + b)
        JA = tuple(j for j in J if j < lo)
        JB = tuple(j - lo for j in J if lo <= j < hi)
        JC = tuple(j for j in J if j >= hi)
        shiftC = 2 * (b2 - b)
        monos = (self.src.zero_mono,) + mids + (self.src.zero_mono,)
        inner = monos[a + 1: a + b]
        img = self.f.on_gen(JB, inner)
        sign = -1 if (self.p * len(JA)) % 2 else 1
        out: dict = {}
        for (J2, m2), x in img.items():
            if len(m2) == 1:
                mid = (_madd(_madd(m2[0], monos[a]), monos[a + b]),)
            else:
                mid = (_madd(m2[0], monos[a]),) + m2[1:-1] + (_madd(m2[-1], monos[a + b]),)
            m3 = monos[:a] + mid + monos[a + b + 1:]
            J3 = JA + tuple(j + lo for j in J2) + tuple(j + shiftC for j in JC)
            _acc(out, (J3, m3), x * sign)
        return out


def pad(f: ChainMap, left="", right="") -> ChainMap:
    if not left and not right:
        return f
    return Padded(f, tuple(left), tuple(right))


def identity(ring: PolyRing, factors) -> ChainMap:
    K = kcomplex(ring, factors)
    return Lift(K, K, 0, 0, lambda J, mids: {(J, (K.zero_mono,) + mids + (K.zero_mono,)): ring.realm.one},
                "id")


class Contraction(ChainMap):
    """The odd derivation extending a functional on the exterior generators."""

    def __init__(self, K: KComplex, functional: dict, degree: int, name: str = "contract"):
        super().__init__(K, K, 1, degree, name)
        self.functional = {j: K.ring.realm(v) for j, v in functional.items() if v}

    def _compute(self, J, mids):
        K = self.src
        monos = (K.zero_mono,) + mids + (K.zero_mono,)
        out: dict = {}
        for pos, j in enumerate(J):
            v = self.functional.get(j)
            if v:
                _acc(out, (J[:pos] + J[pos + 1:], monos), v if pos % 2 == 0 else -v)
        return out


class LeftMul(ChainMap):
    """Multiplication by a polynomial on the far left."""

    def __init__(self, K: KComplex, f: Poly):
        super().__init__(K, K, 0, f.degree() or 0, f"mul({f})")
        self.f = f

    def _compute(self, J, mids):
        K = self.src
        return K.pure([K.gen(j) for j in J], [self.f] + [K.ring.monomial(m) for m in mids] + [K.ring.one()])


class Unitor(ChainMap):
    """Drop an empty factor: q_e on it, then multiply its two slots together."""

    def __init__(self, ring: PolyRing, factors, index: int):
        factors = tuple(factors)
        if factors[index] != "e" or len(factors) < 2:
            raise ValueError("unitor needs an empty factor next to another factor")
        src = kcomplex(ring, factors)
        tgt = kcomplex(ring, factors[:index] + factors[index + 1:])
        super().__init__(src, tgt, 0, 0, f"unit{index}")
        self.index = index

    def _compute(self, J, mids):
        i = self.index
        lo = 2 * i
        if any(lo <= j < lo + 2 for j in J):
            return {}
        K = self.src
        monos = (K.zero_mono,) + mids + (K.zero_mono,)
        m2 = monos[:i] + (_madd(monos[i], monos[i + 1]),) + monos[i + 2:]
        J2 = tuple(j if j < lo else j - 2 for j in J)
        return {(J2, m2): self.ring.realm.one}


# -- the chain lifts of the generating bimodule maps --------------------------------------

def unit_lift(ring: PolyRing, c: str) -> ChainMap:
    """Startdot K_e -> K_c, degree +1."""
    src, tgt = kcomplex(ring, "e"), kcomplex(ring, c)
    rho = ring.rho(c)
    srho = ring.reflect(c, rho)
    one = ring.one()
    g = tgt.gen(0)
    inv = rho + srho  # lies in (V*)^c

    def base(gens):
        return add(tgt.pure(gens, [rho, one]), tgt.pure(gens, [one, srho], -1))

    def rule(J, mids):
        if len(J) == 0:
            return base([])
        if len(J) == 1:
            x = src.gens[J[0]][3]
            a = ring.coroot_pairing(c, x)
            y = x - rho * a  # invariant part
            out = base([tgt.linear(0, y)]) if y else {}
            if a:
                extra = add(tgt.pure([tgt.linear(0, inv)], [rho, one]), tgt.pure([g], [one, one], -1))
                out = add(out, scale(extra, a))
            return out
        return None

    return Lift(src, tgt, 0, 1, rule, f"eta_{c}")


def counit_lift(ring: PolyRing, c: str) -> ChainMap:
    """Enddot K_c -> K_e, degree +1."""
    src, tgt = kcomplex(ring, c), kcomplex(ring, "e")
    rho = ring.rho(c)
    srho = ring.reflect(c, rho)
    one = ring.one()

    def rule(J, mids):
        if len(J) == 0:
            return tgt.pure([], [one, one])
        if len(J) == 1:
            if J[0] == 1:
                return tgt.pure([tgt.linear(0, src.gens[1][3])], [one, one])
            return add(tgt.pure([tgt.linear(0, rho)], [srho, one]), tgt.pure([tgt.linear(0, srho)], [one, rho]))
        return None

    return Lift(src, tgt, 0, 1, rule, f"eps_{c}")


def comult_lift(ring: PolyRing, c: str) -> ChainMap:
    """Split K_c -> K_c K_c, degree -1."""
    src, tgt = kcomplex(ring, c), kcomplex(ring, c + c)
    one = ring.one()

    def rule(J, mids):
        if len(J) == 0:
            return tgt.pure([], [one, one, one])
        if len(J) == 1:
            j = J[0]
            return add(tgt.pure([tgt.gen(j)], [one, one, one]), tgt.pure([tgt.gen(j + 2)], [one, one, one]))
        return None

    return Lift(src, tgt, 0, -1, rule, f"delta_{c}")


def mult_lift(ring: PolyRing, c: str) -> ChainMap:
    """Merge K_c K_c -> K_c, degree -1."""
    src, tgt = kcomplex(ring, c + c), kcomplex(ring, c)
    one = ring.one()

    def rule(J, mids):
        (h,) = mids
        dh = ring.demazure(c, ring.monomial(h))
        if len(J) == 0:
            return tgt.pure([], [dh, one])
        if len(J) == 1:
            j = J[0]
            if j < 2:
                return {}
            return tgt.pure([tgt.gen(j - 2)], [dh, one])
        return None

    return Lift(src, tgt, 0, -1, rule, f"mu_{c}")


def left_unitor_inv(ring: PolyRing, c: str) -> ChainMap:
    """K_c -> K_e K_c lifting f (x) g -> f (x) 1 (x) g."""
    src, tgt = kcomplex(ring, c), kcomplex(ring, "e" + c)
    rho = ring.rho(c)
    srho = ring.reflect(c, rho)
    one = ring.one()

    def rule(J, mids):
        if len(J) == 0:
            return tgt.pure([], [one, one, one])
        if len(J) == 1:
            if J[0] == 1:
                r = src.gens[1][3]
                return add(tgt.pure([tgt.linear(0, r)], [one, one, one]), tgt.pure([tgt.gen(3)], [one, one, one]))
            return add(tgt.pure([tgt.linear(0, rho)], [srho, one, one]),
                       tgt.pure([tgt.linear(0, srho)], [one, rho, one]),
                       tgt.pure([tgt.gen(2)], [one, one, one]))
        return None

    return Lift(src, tgt, 0, 0, rule, f"tau_{c}")


def right_unitor_inv(ring: PolyRing, c: str) -> ChainMap:
    """K_c -> K_c K_e lifting f (x) g -> f (x) 1 (x) g."""
    src, tgt = kcomplex(ring, c), kcomplex(ring, c + "e")
    rho = ring.rho(c)
    srho = ring.reflect(c, rho)
    one = ring.one()

    def rule(J, mids):
        if len(J) == 0:
            return tgt.pure([], [one, one, one])
        if len(J) == 1:
            if J[0] == 1:
                r = src.gens[1][3]
                return add(tgt.pure([tgt.gen(1)], [one, one, one]), tgt.pure([tgt.linear(1, r)], [one, one, one]))
            return add(tgt.pure([tgt.gen(0)], [one, one, one]),
                       tgt.pure([tgt.linear(1, srho)], [one, rho, one]),
                       tgt.pure([tgt.linear(1, rho)], [one, one, srho]))
        return None

    return Lift(src, tgt, 0, 0, rule, f"sigma_{c}")


def left_unitor(ring: PolyRing, c: str) -> ChainMap:
    return Unitor(ring, "e" + c, 0)


def right_unitor(ring: PolyRing, c: str) -> ChainMap:
    return Unitor(ring, c + "e", 1)


CHAIN_LIFTS = {
    "unit": unit_lift,
    "counit": counit_lift,
    "mult": mult_lift,
    "comult": comult_lift,
    "left_unitor_inv": left_unitor_inv,
    "right_unitor_inv": right_unitor_inv,
}


def chain_lift(ring: PolyRing, kind: str, color: str, check: bool = True) -> ChainMap:
    """The chain lift of a generating bimodule map, with the chain map property asserted."""
    try:
        f = CHAIN_LIFTS[kind](ring, color)
    except KeyError:
        raise ValueError(f"unknown chain lift {kind!r}") from None
    if check and not f.check(kmax=2, mid_units=1):
        raise AssertionError(f"{f.name} is not a chain map")
    return f


def bimodule_lift(ring: PolyRing, F, src_factors, tgt_factors, degree: int, name: str) -> ChainMap:
    """Lift of a bimodule map between Bott-Samelson bimodules given as a GradedMap.

    Degree 0 is F applied to q(1 (x) mids (x) 1) and lifted back to tensors;
    higher components are solved.
    """
    src, tgt = kcomplex(ring, src_factors), kcomplex(ring, tgt_factors)

    def rule(J, mids):
        if J:
            return None
        x = src.q({((), (src.zero_mono,) + mids + (src.zero_mono,)): ring.realm.one})
        y = bimod.apply_map(F, x, tgt.word)
        return tgt.lift(y)

    return Lift(src, tgt, 0, degree, rule, name)


def swap_lift(ring: PolyRing, a: str = "s") -> ChainMap:
    """m = 2: the lift of B_a B_b -> B_b B_a sending 1 (x) 1 (x) 1 to 1 (x) 1 (x) 1."""
    b = other(a)
    F = bimod.swap_m2_map(ring, (a, b), 0)
    return bimodule_lift(ring, F, a + b, b + a, 0, f"swap_{a}{b}")


# -- distinguished odd maps --------------------------------------------------------

def phi(ring: PolyRing, c: str) -> ChainMap:
    """The Hochschild dot: minus contraction with the dual of gamma_c on K_c."""
    return Contraction(kcomplex(ring, c), {0: -1}, -4, f"phi_{c}")


def eta_ext(ring: PolyRing, c: str) -> ChainMap:
    """Contraction with the coroot of c, K_e -> K_c, bidegree (1, -3)."""
    src, tgt = kcomplex(ring, "e"), kcomplex(ring, c)
    one = ring.one()
    pair = [ring.coroot_pairing(c, src.gens[j][3]) for j in (0, 1)]

    def rule(J, mids):
        if len(J) == 1:
            return scale(tgt.pure([], [one, one]), pair[J[0]])
        if len(J) == 2:
            y = src.gens[1][3] * pair[0] - src.gens[0][3] * pair[1]
            return tgt.pure([tgt.linear(0, y)], [one, one]) if y else {}
        return {}

    return Lift(src, tgt, 1, -3, rule, f"etaExt_{c}")


# Elements of Lambda(V) are dicts {sorted tuple of coroot indices: coefficient};
# index 0 is alpha_s^vee and 1 is alpha_t^vee.

def coroot(ring: PolyRing, c: str) -> dict:
    return {(ring.index(c),): ring.realm.one}


def wedge(x: dict, y: dict) -> dict:
    out: dict = {}
    for I, a in x.items():
        for K, b in y.items():
            sign, L = _sort_sign(I + K)
            if sign:
                _acc(out, L, a * b * sign)
    return out


def _cartan(ring: PolyRing, c: str, j: int) -> FieldElem:
    """<alpha_c, alpha_j^vee>."""
    return ring.realm(2) if ring.index(c) == j else ring.a_st


def reflect_ext(ring: PolyRing, c: str, x: dict) -> dict:
    """s_c acting on Lambda(V): v -> v - <alpha_c, v> alpha_c^vee on generators."""
    ci = ring.index(c)
    out: dict = {}
    for I, a in x.items():
        terms = {(): a}
        for j in I:
            img = {(j,): ring.realm.one}
            k = _cartan(ring, c, j)
            if k:
                _acc(img, (ci,), -k)
            terms = wedge(terms, img)
        for L, b in terms.items():
            _acc(out, L, b)
    return out


def ext_demazure(ring: PolyRing, c: str, x: dict) -> dict:
    """alpha_c contracted into x, modulo alpha_c^vee (terms containing it are dropped)."""
    ci = ring.index(c)
    out: dict = {}
    for I, a in x.items():
        for pos, j in enumerate(I):
            v = _cartan(ring, c, j) * a
            if pos % 2:
                v = -v
            rest = I[:pos] + I[pos + 1:]
            if ci in rest:
                continue
            _acc(out, rest, v)
    return out


def iota(ring: PolyRing, x: dict, factors="e", index: int = 0) -> ChainMap:
    """Exterior box: contraction by x in Lambda(V) on an empty factor.

    iota_{u ^ v} = iota_u o iota_v.  x must be homogeneous.
    """
    K = kcomplex(ring, factors)
    if K.factors[index] != "e":
        raise ValueError("exterior boxes act on empty factors")
    degs = {len(I) for I in x}
    if len(degs) != 1:
        raise ValueError("exterior box needs a homogeneous element")
    (k,) = degs
    b = K.base(index)
    terms = []
    for I, a in x.items():
        if not I:
            terms.append((a, identity(ring, factors)))
            continue
        maps = []
        for j in I:
            # contraction by alpha_j^vee: rho_c -> delta_{cj}
            maps.append(Contraction(K, {b + j: 1}, -2, f"iota{j}"))
        terms.append((a, compose(*maps)))
    return lincomb(terms)


def box_left(ring: PolyRing, c: str, x: dict) -> ChainMap:
    """Exterior box in the region left of a c-strand: K_c -> K_c."""
    return compose(left_unitor(ring, c), pad(iota(ring, x), "", c), chain_lift(ring, "left_unitor_inv", c))


def box_right(ring: PolyRing, c: str, x: dict) -> ChainMap:
    """Exterior box in the region right of a c-strand: K_c -> K_c."""
    return compose(right_unitor(ring, c), pad(iota(ring, x), c, ""), chain_lift(ring, "right_unitor_inv", c))


def phi_lift(cls: ExtClass, check: bool = True) -> ChainMap:
    """A chain lift K_c -> K(word) of a degree 1 class with source c."""
    ring = cls.ring
    if cls.source not in ("s", "t") or cls.k != 1:
        raise ValueError("phi_lift needs a degree 1 class out of K_s or K_t")
    src, tgt = kcomplex(ring, cls.source), kcomplex(ring, cls.word)
    vals = {0: tgt.lift(cls.value(GEN_GAMMA)), 1: tgt.lift(cls.value(GEN_RHO))}

    def rule(J, mids):
        if len(J) == 1:
            return vals[J[0]]
        return None

    f = Lift(src, tgt, 1, cls.degree, rule, f"Phi_{cls.source}^{''.join(cls.word)}")
    if check and not f.check(kmax=2, mid_units=0):
        raise AssertionError("class does not lift to a chain map")
    return f


def Phi(ring: PolyRing, c: str, w) -> ChainMap:
    from .ext import solve_phi

    return phi_lift(solve_phi(ring, w, c))


# -- reading off classes ---------------------------------------------------------------

_GEN_NAMES = {"g": GEN_GAMMA, "p": GEN_RHO}


def push(f: ChainMap) -> ExtClass:
    """q o f as an Ext class; the source must be a single factor."""
    src = f.src
    if len(src.factors) != 1:
        raise ValueError("push needs a single-factor source; pull back multi-strand sources first")
    c = src.factors[0]
    values = {}
    for J in combinations(range(len(src.gens)), f.p):
        if J:
            names = [src.gens[j][1] if c == "e" else _GEN_NAMES[src.gens[j][1]] for j in J]
            name = "^".join(names)
        else:
            name = "1"
        val = f.tgt.q(f.on_gen(J, ()))
        if not val.is_zero():
            values[name] = val
    return ExtClass(f.ring, c, f.tgt.word, f.p, f.degree, values)


def pullback(f: ChainMap) -> ChainMap:
    """Move the last bottom strand of a two-strand source to the top.

    For f: K_a K_b -> N this is (f (x) id_b) o (id_a (x) cup_b) o sigma_a : K_a -> N K_b,
    the image of f under the biadjunction isomorphism.
    """
    ring = f.ring
    if len(f.src.factors) != 2:
        raise ValueError("pullback needs a two-factor source")
    a, b = f.src.factors
    cup = compose(chain_lift(ring, "comult", b), chain_lift(ring, "unit", b))
    return compose(pad(f, "", b), pad(cup, a, ""), chain_lift(ring, "right_unitor_inv", a))


# -- aliases ----------------------------------------------------------------------------

def special_cocycle(ring: PolyRing, kind: str, arg) -> ChainMap:
    """phi (color), eta_ext (color) or iota (an element of Lambda(V))."""
    if kind == "phi":
        return phi(ring, arg)
    if kind == "eta_ext":
        return eta_ext(ring, arg)
    if kind == "iota":
        return iota(ring, arg)
    raise ValueError(f"unknown special cocycle {kind!r}")


push_to_bimodule = push


def tensor(f: ChainMap, g: ChainMap) -> ChainMap:
    """f (x) g = (f (x) id) o (id (x) g), with the Koszul sign carried by the padding."""
    return compose(pad(f, "", g.tgt.factors), pad(g, f.src.factors, ""))


def strip_empty(K: KComplex) -> ChainMap:
    """Unitors removing every empty factor of K (one is kept if nothing else is left)."""
    ring = K.ring
    maps = []
    factors = K.factors
    while "e" in factors and len(factors) > 1:
        i = factors.index("e")
        u = Unitor(ring, factors, i)
        maps.append(u)
        factors = u.tgt.factors
    if not maps:
        return identity(ring, K.factors)
    return compose(*reversed(maps))


def cleaned(f: ChainMap) -> ChainMap:
    if "e" not in f.tgt.factors or len(f.tgt.factors) == 1:
        return f
    return compose(strip_empty(f.tgt), f)


def to_class(f: ChainMap) -> ExtClass:
    """The Ext class of f, pulling back a two-strand source first."""
    f = cleaned(f)
    if len(f.src.factors) == 2:
        f = pullback(f)
    return push(f)


def verify_quasi_iso(ring: PolyRing, w, degrees) -> dict:
    """Check H^{<0}(K(w)) = 0 and dim H^0 = dim BS(w) in each internal degree."""
    w = as_word(w)
    K = kcomplex(ring, w)
    M = bimod.bs_module(ring, w)
    rows = []
    ok = True
    for D in degrees:
        h = K.homology_dims(D)
        bs = len(M.slice_basis(D)[0])
        good = all(v == 0 for k, v in h.items() if k < 0) and h[0] == bs
        ok = ok and good
        rows.append({"degree": D, "H0": h[0], "BS": bs, "negative": {k: v for k, v in h.items() if k < 0 and v}})
    return {"word": "".join(w), "pass": ok, "slices": rows}
