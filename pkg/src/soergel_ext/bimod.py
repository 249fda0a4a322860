"""Bott-Samelson bimodules BS(w) as free right R-modules.

Elements are stored in the monomial 01-basis: for a mask e (bit i = slot i),
b_e = f_0 (x) f_1 (x) ... (x) f_{n-1} (x) 1 with f_i = alpha_{w_i} if bit i
is set and 1 otherwise.  The coordinate of b_e is a right coefficient in R.
deg b_e = sum_i (2 e_i - 1).

The second basis used in the literature replaces alpha by c_s = rho_s (x) 1 -
1 (x) s(rho_s) = (alpha_s (x) 1 + 1 (x) alpha_s) / 2 in each slot; see
``convert_basis``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from . import dihedral
from .gradedlin import GradedFree, GradedMap
from .polyring import Poly, PolyRing, other

Word = tuple


def as_word(w) -> Word:
    if isinstance(w, str):
        for c in w:
            if c not in "st":
                raise ValueError(f"invalid color {c!r} in word {w!r}")
        return tuple(w)
    return tuple(w)


def word_str(w: Word) -> str:
    return "".join(w)


def popcount(x: int) -> int:
    return bin(x).count("1")


def basis_degree(n: int, mask: int) -> int:
    return 2 * popcount(mask) - n


def bs_module(ring: PolyRing, w) -> GradedFree:
    """BS(w) as a graded free right R-module; generator order is by mask."""
    w = as_word(w)
    n = len(w)
    return _bs_module(ring, n)


@lru_cache(maxsize=None)
def _bs_module(ring: PolyRing, n: int) -> GradedFree:
    return GradedFree(ring, [basis_degree(n, e) for e in range(1 << n)])


class BimodElem:
    """Element of BS(w): ``coords[mask]`` is the right coefficient of b_mask."""

    __slots__ = ("ring", "word", "coords")

    def __init__(self, ring: PolyRing, word, coords: Optional[dict] = None):
        self.ring = ring
        self.word = as_word(word)
        self.coords = {k: v for k, v in (coords or {}).items() if v}

    @classmethod
    def basis(cls, ring: PolyRing, word, mask: int, coeff: Optional[Poly] = None) -> "BimodElem":
        return cls(ring, word, {mask: ring.one() if coeff is None else coeff})

    @classmethod
    def bottom(cls, ring: PolyRing, word) -> "BimodElem":
        """1(w) = 1 (x) ... (x) 1, dual to c_top under the trace pairing."""
        return cls.basis(ring, word, 0)

    @classmethod
    def top(cls, ring: PolyRing, word) -> "BimodElem":
        """c_top = c_s (x) ... (x) c_s (x) 1."""
        w = as_word(word)
        return sym_basis_element(ring, w, (1 << len(w)) - 1)

    def _check(self, other: "BimodElem"):
        if self.word != other.word:
            raise ValueError(f"word mismatch {self.word} vs {other.word}")

    def __add__(self, other: "BimodElem") -> "BimodElem":
        self._check(other)
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out[k] + v if k in out else v
        return BimodElem(self.ring, self.word, out)

    def __neg__(self):
        return BimodElem(self.ring, self.word, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BimodElem":
        return BimodElem(self.ring, self.word, {k: v * c for k, v in self.coords.items()})

    def right_mul(self, f: Poly) -> "BimodElem":
        return BimodElem(self.ring, self.word, {k: v * f for k, v in self.coords.items()})

    def left_mul(self, f: Poly) -> "BimodElem":
        return left_mul(f, self)

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other):
        return isinstance(other, BimodElem) and self.word == other.word and self.coords == other.coords

    def __hash__(self):
        return hash((self.word, frozenset(self.coords.items())))

    def degree(self) -> Optional[int]:
        n = len(self.word)
        degs = set()
        for k, p in self.coords.items():
            degs.add(basis_degree(n, k) + p.degree())
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def as_vector(self) -> dict:
        return dict(self.coords)

    def __str__(self):
        if not self.coords:
            return "0"
        n = len(self.word)
        parts = []
        for k in sorted(self.coords):
            bits = "".join(str((k >> i) & 1) for i in range(n))
            parts.append(f"b[{bits}]*({self.coords[k]})")
        return " + ".join(parts)

    __repr__ = __str__


# -- polynomial forcing -------------------------------------------------------

def force(ring: PolyRing, word: Word, f: Poly, mask: int) -> dict:
    """Coordinates of f * b_mask, i.e. f pushed through every slot to the right."""
    states = {0: f}
    for i, c in enumerate(word):
        alpha2 = ring.alpha(c) * ring.alpha(c)
        bit = (mask >> i) & 1
        new: dict = {}
        for prefix, g in states.items():
            E, O = ring.even_odd_split(c, g)
            if bit:
                pieces = ((prefix, alpha2 * O), (prefix | (1 << i), E))
            else:
                pieces = ((prefix, E), (prefix | (1 << i), O))
            for k, p in pieces:
                if p:
                    new[k] = new[k] + p if k in new else p
        states = {k: v for k, v in new.items() if v}
    return states


def left_mul(f: Poly, x: BimodElem) -> BimodElem:
    out: dict = {}
    for mask, p in x.coords.items():
        for k, q in force(x.ring, x.word, f, mask).items():
            v = q * p
            out[k] = out[k] + v if k in out else v
    return BimodElem(x.ring, x.word, out)


def left_action_map(ring: PolyRing, word, f: Poly, right: bool = True) -> GradedMap:
    """Right-R matrix of b -> f*b - b*f (or b -> f*b if ``right`` is False) on BS(word)."""
    word = as_word(word)
    M = bs_module(ring, word)
    entries = {}
    for mask in range(1 << len(word)):
        col = force(ring, word, f, mask)
        if right:
            col[mask] = col[mask] - f if mask in col else -f
        for k, p in col.items():
            if p:
                entries[(k, mask)] = p
    return GradedMap(M, M, entries, f.degree() or 0)


_EMAT_CACHE: dict = {}


def difference_matrix(ring: PolyRing, word, f: Poly, key=None) -> GradedMap:
    """f^e = f (x) 1 - 1 (x) f acting on BS(word)."""
    word = as_word(word)
    if key is not None:
        ck = (ring, word, key)
        hit = _EMAT_CACHE.get(ck)
        if hit is None:
            hit = left_action_map(ring, word, f)
            _EMAT_CACHE[ck] = hit
        return hit
    return left_action_map(ring, word, f)


def rho_e_matrix(ring: PolyRing, c: str, word) -> GradedMap:
    return difference_matrix(ring, word, ring.rho(c), ("rho", c))


def gamma_e_matrix(ring: PolyRing, c: str, word) -> GradedMap:
    return difference_matrix(ring, word, ring.gamma(c), ("gamma", c))


def alpha_e_matrix(ring: PolyRing, c: str, word) -> GradedMap:
    return difference_matrix(ring, word, ring.alpha(c), ("alpha", c))


# -- tensors ------------------------------------------------------------------

def from_tensor(ring: PolyRing, word, factors: Sequence[Poly]) -> BimodElem:
    """The pure tensor f_0 (x) f_1 (x) ... (x) f_n in BS(word), n = |word|."""
    word = as_word(word)
    n = len(word)
    if len(factors) != n + 1:
        raise ValueError("need |word|+1 tensor factors")
    elem = {0: factors[n]}
    for i in range(n - 1, -1, -1):
        sub = word[i:]
        shifted = {k << 1: v for k, v in elem.items()}
        x = BimodElem(ring, sub, shifted)
        elem = left_mul(factors[i], x).coords
    return BimodElem(ring, word, elem)


def basis_tensor(ring: PolyRing, word: Word, mask: int) -> list:
    """Tensor factors of b_mask."""
    one = ring.one()
    fs = [ring.alpha(c) if (mask >> i) & 1 else one for i, c in enumerate(word)]
    fs.append(one)
    return fs


def elem_tensors(x: BimodElem) -> list:
    """x as a sum of pure tensors: list of factor lists."""
    out = []
    for mask, p in sorted(x.coords.items()):
        fs = basis_tensor(x.ring, x.word, mask)
        fs[-1] = p
        out.append(fs)
    return out


def tensor_map(ring: PolyRing, src, tgt, fn: Callable, degree: int) -> GradedMap:
    """Bimodule map BS(src) -> BS(tgt) given on pure tensors.

    ``fn`` takes a list of factors and returns a list of (scalar, factors)
    pairs; it must be well defined on the balanced tensor product.
    """
    src, tgt = as_word(src), as_word(tgt)
    S, T = bs_module(ring, src), bs_module(ring, tgt)
    entries = {}
    for mask in range(1 << len(src)):
        col = BimodElem(ring, tgt)
        for coeff, fs in fn(basis_tensor(ring, src, mask)):
            col = col + from_tensor(ring, tgt, fs).scale(coeff)
        for k, p in col.coords.items():
            entries[(k, mask)] = p
    return GradedMap(S, T, entries, degree)


def apply_map(f: GradedMap, x: BimodElem, target_word) -> BimodElem:
    return BimodElem(x.ring, target_word, f.apply(x.coords))


def counit_map(ring: PolyRing, word, j: int) -> GradedMap:
    """Enddot on slot j: B_s -> R(1), f (x) g -> fg.  Degree +1."""
    word = as_word(word)
    tgt = word[:j] + word[j + 1:]

    def fn(fs):
        return [(1, fs[:j] + [fs[j] * fs[j + 1]] + fs[j + 2:])]

    return tensor_map(ring, word, tgt, fn, 1)


def unit_map(ring: PolyRing, word, j: int, c: str) -> GradedMap:
    """Startdot inserting a c-slot at position j: R -> B_c(1), 1 -> c_c.  Degree +1."""
    word = as_word(word)
    tgt = word[:j] + (c,) + word[j:]
    rho = ring.rho(c)
    srho = ring.reflect(c, rho)
    one = ring.one()

    def fn(fs):
        return [
            (1, fs[:j] + [fs[j] * rho, one] + fs[j + 1:]),
            (-1, fs[:j] + [fs[j], srho] + fs[j + 1:]),
        ]

    return tensor_map(ring, word, tgt, fn, 1)


def mult_map(ring: PolyRing, word, j: int) -> GradedMap:
    """Trivalent merge of slots j, j+1 (same color): f (x) g (x) h -> f d(g) (x) h.  Degree -1."""
    word = as_word(word)
    c = word[j]
    if word[j + 1] != c:
        raise ValueError("merge needs two slots of the same color")
    tgt = word[: j + 1] + word[j + 2:]

    def fn(fs):
        return [(1, fs[:j] + [fs[j] * ring.demazure(c, fs[j + 1])] + fs[j + 2:])]

    return tensor_map(ring, word, tgt, fn, -1)


def comult_map(ring: PolyRing, word, j: int) -> GradedMap:
    """Trivalent split of slot j: f (x) g -> f (x) 1 (x) g.  Degree -1."""
    word = as_word(word)
    tgt = word[: j + 1] + (word[j],) + word[j + 1:]
    one = ring.one()

    def fn(fs):
        return [(1, fs[: j + 1] + [one] + fs[j + 1:])]

    return tensor_map(ring, word, tgt, fn, -1)


def swap_m2_map(ring: PolyRing, word, j: int) -> GradedMap:
    """For m = 2: the isomorphism B_s B_t -> B_t B_s at slots j, j+1 sending 1(st) to 1(ts).

    The rule f (x) g (x) h -> fg (x) 1 (x) h is only applied to basis tensors:
    b_e maps to alpha_s^{e_s} alpha_t^{e_t} * 1(ts), which is well defined since
    alpha_s and alpha_t slide past the other color when m = 2.
    """
    word = as_word(word)
    a, b = word[j], word[j + 1]
    if a == b:
        raise ValueError("swap needs two different colors")
    if ring.realm.m != 2:
        raise ValueError("the 4-valent isomorphism is only implemented for m = 2")
    tgt = word[:j] + (b, a) + word[j + 2:]
    one = ring.one()

    def fn(fs):
        return [(1, fs[:j] + [fs[j] * fs[j + 1], one] + fs[j + 2:])]

    return tensor_map(ring, word, tgt, fn, 0)


# -- ring structure, trace, bases ------------------------------------------

def mul(x: BimodElem, y: BimodElem) -> BimodElem:
    """Slotwise product in R (x) ... (x) R."""
    x._check(y)
    out = BimodElem(x.ring, x.word)
    for fx in elem_tensors(x):
        for fy in elem_tensors(y):
            out = out + from_tensor(x.ring, x.word, [a * b for a, b in zip(fx, fy)])
    return out


def tr(x: BimodElem) -> Poly:
    """Coordinate of c_top.  Only b_top contributes, with factor 2^n."""
    n = len(x.word)
    top = (1 << n) - 1
    return x.coords.get(top, x.ring.zero()) * (1 << n)


def pairing(x: BimodElem, y: BimodElem) -> Poly:
    return tr(mul(x, y))


def sym_basis_element(ring: PolyRing, word, mask: int) -> BimodElem:
    """c_e: tensor of c_id = 1 (x) 1 and c_s = (alpha_s (x) 1 + 1 (x) alpha_s)/2 per slot."""
    word = as_word(word)
    n = len(word)
    half = ring.realm(1) / 2
    one = ring.one()
    terms = [(ring.realm.one, [one] * (n + 1))]
    for i, c in enumerate(word):
        if not (mask >> i) & 1:
            continue
        new = []
        for coeff, fs in terms:
            left = list(fs)
            left[i] = left[i] * ring.alpha(c)
            right = list(fs)
            right[i + 1] = right[i + 1] * ring.alpha(c)
            new += [(coeff * half, left), (coeff * half, right)]
        terms = new
    out = BimodElem(ring, word)
    for coeff, fs in terms:
        out = out + from_tensor(ring, word, fs).scale(coeff)
    return out


def _sym_order(n: int, mask: int):
    # forcing only deletes set bits or moves them to the right
    return (popcount(mask), -sum(i for i in range(n) if (mask >> i) & 1))


def convert_basis(x: BimodElem, to: str) -> BimodElem:
    """Convert coordinates between the monomial basis and the (c_id, c_s) basis.

    ``to="sym01"``: input is in monomial coordinates, output coordinates are
    with respect to c_e.  ``to="monomial"``: the reverse.
    """
    ring, word = x.ring, x.word
    n = len(word)
    if to == "monomial":
        out = BimodElem(ring, word)
        for mask, p in x.coords.items():
            out = out + sym_basis_element(ring, word, mask).right_mul(p)
        return out
    if to != "sym01":
        raise ValueError("to must be 'monomial' or 'sym01'")
    rest = BimodElem(ring, word, dict(x.coords))
    out: dict = {}
    for mask in sorted(range(1 << n), key=lambda e: _sym_order(n, e), reverse=True):
        p = rest.coords.get(mask)
        if not p:
            continue
        c = sym_basis_element(ring, word, mask)
        lead = c.coords[mask].constant_term()
        coeff = p * lead.inv()
        out[mask] = coeff
        rest = rest - c.right_mul(coeff)
    if not rest.is_zero():
        raise ArithmeticError("basis conversion did not terminate")
    return BimodElem(ring, word, out)


# -- subexpressions ---------------------------------------------------------

def subexpr_stats(word, m: Optional[int]) -> list[tuple[int, str]]:
    """All (mask, r(mask)) with r the reduced evaluation in W_m."""
    word = as_word(word)
    out = []
    for mask in range(1 << len(word)):
        letters = [c for i, c in enumerate(word) if (mask >> i) & 1]
        out.append((mask, dihedral.evaluate(letters, m)))
    return out


def kernel_count(word, m: Optional[int], c: str = "s") -> int:
    """#{e : r(e) in {id, other(c)}}, the predicted rank of ker rho_c^e on BS(word)."""
    o = other(c)
    return sum(1 for _, r in subexpr_stats(word, m) if r in ("", o))


def m_stat(c: str, word) -> int:
    """Length of a longest non-repeating subexpression of c*word (= number of color runs)."""
    full = (c,) + as_word(word)
    runs = 1
    for a, b in zip(full, full[1:]):
        if a != b:
            runs += 1
    return runs
