"""Diagrammatic relations checked as identities of Ext classes.

Each relation builds its two sides as chain maps between Koszul complexes,
reads off Ext classes and compares them with ``class_equal``.  A relation
whose sides differ exactly by an overall sign is reported as
"sign-flip pass", which does not count as a pass.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import koszul as K
from .ext import ExtClass, class_equal, is_coboundary, is_cocycle
from .polyring import PolyRing
from .scalars import Realm, qnum


@dataclass
class RelationReport:
    name: str
    group: str
    realm: str
    words: list
    bidegree: tuple
    passed: Optional[bool]
    status: str
    seconds: float = 0.0
    residual: Optional[dict] = None
    lhs_nonzero: Optional[bool] = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "group": self.group,
            "realm": self.realm,
            "words": ["".join(w) for w in self.words],
            "bidegree": list(self.bidegree),
            "pass": self.passed,
            "status": self.status,
            "residual": self.residual,
            "lhs_nonzero": self.lhs_nonzero,
        }


@dataclass
class Relation:
    name: str
    group: str
    m: Optional[int]
    build: Callable  # ring -> (lhs, rhs or None, words)
    sign: int = 1  # lhs = sign * rhs
    doc: str = ""


CATALOG: dict[str, Relation] = {}


def relation(name: str, group: str, m: Optional[int] = None, sign: int = 1):
    def deco(fn):
        CATALOG[name] = Relation(name, group, m, fn, sign, (fn.__doc__ or "").strip())
        return fn
    return deco


class _Maps:
    """Shorthand for the generating chain maps over one ring."""

    def __init__(self, ring: PolyRing):
        self.R = ring

    def eta(self, c):
        return K.chain_lift(self.R, "unit", c)

    def eps(self, c):
        return K.chain_lift(self.R, "counit", c)

    def mu(self, c):
        return K.chain_lift(self.R, "mult", c)

    def dl(self, c):
        return K.chain_lift(self.R, "comult", c)

    def tau(self, c):
        return K.chain_lift(self.R, "left_unitor_inv", c)

    def sig(self, c):
        return K.chain_lift(self.R, "right_unitor_inv", c)

    def lam(self, c):
        return K.left_unitor(self.R, c)

    def theta(self, c):
        return K.right_unitor(self.R, c)

    def phi(self, c):
        return K.phi(self.R, c)

    def ext(self, c):
        return K.eta_ext(self.R, c)

    def Phi(self, c, w):
        return K.Phi(self.R, c, w)

    def co(self, c):
        return K.coroot(self.R, c)


# -- one color -------------------------------------------------------------------------

@relation("barbell", "one-color")
def _barbell(R):
    """eps_s o phi_s o eta_s equals the box alpha_s^vee on the empty region."""
    M = _Maps(R)
    return K.compose(M.eps("s"), M.phi("s"), M.eta("s")), K.iota(R, M.co("s")), ["", "s"]


@relation("hdot-annihilation", "one-color")
def _hdot_square(R):
    """phi_s o phi_s = 0."""
    M = _Maps(R)
    return K.compose(M.phi("s"), M.phi("s")), None, ["s"]


def _forcing(R, x):
    M = _Maps(R)
    lhs = K.box_right(R, "s", x)
    sx = K.reflect_ext(R, "s", x)
    rhs = K.box_left(R, "s", sx)
    dx = K.ext_demazure(R, "s", x)
    if dx:
        corr = K.compose(M.ext("s"), K.iota(R, dx), M.eps("s"))
        rhs = rhs + corr
    return lhs, rhs, ["s"]


@relation("exterior-forcing-s", "one-color")
def _forcing_s(R):
    """Box alpha_s^vee right of an s-strand moves to the left, with a correction term."""
    return _forcing(R, K.coroot(R, "s"))


@relation("exterior-forcing-t", "one-color")
def _forcing_t(R):
    """Box alpha_t^vee right of an s-strand moves to the left, with a correction term."""
    return _forcing(R, K.coroot(R, "t"))


@relation("exterior-forcing-st", "one-color")
def _forcing_st(R):
    """Box alpha_s^vee ^ alpha_t^vee right of an s-strand moves to the left."""
    return _forcing(R, K.wedge(K.coroot(R, "s"), K.coroot(R, "t")))


@relation("hochschild-jumping", "one-color")
def _jumping(R):
    """phi_s (x) id_s = id_s (x) phi_s on B_s B_s."""
    M = _Maps(R)
    return K.pad(M.phi("s"), "", "s"), K.pad(M.phi("s"), "s", ""), ["ss"]


@relation("one-color-cohomology", "one-color")
def _one_color(R):
    """iota_{alpha_s^vee} o eps_s = alpha_s (eps_s o phi_s)."""
    M = _Maps(R)
    lhs = K.compose(K.iota(R, M.co("s")), M.eps("s"))
    rhs = K.compose(K.LeftMul(K.kcomplex(R, "e"), R.alpha("s")), M.eps("s"), M.phi("s"))
    return lhs, rhs, ["s"]


@relation("coroot-annihilation-left", "one-color")
def _coroot_left(R):
    """Box alpha_s^vee left of an s-strand kills phi_s."""
    M = _Maps(R)
    return K.compose(K.box_left(R, "s", M.co("s")), M.phi("s")), None, ["s"]


@relation("coroot-annihilation-right", "one-color")
def _coroot_right(R):
    """Box alpha_s^vee right of an s-strand kills phi_s."""
    M = _Maps(R)
    return K.compose(K.box_right(R, "s", M.co("s")), M.phi("s")), None, ["s"]


# -- two colors ------------------------------------------------------------------------

@relation("4ext-reduction", "two-color")
def _red(R):
    """An enddot on the last strand of Phi_t^{sts}."""
    M = _Maps(R)
    P = M.Phi("t", "sts")
    lhs = K.compose(K.pad(M.eps("s"), "st", ""), P)
    r1 = K.compose(K.pad(M.ext("s"), "", "t"), M.tau("t"))
    r2 = K.compose(K.pad(M.eta("s"), "", "t"), K.pad(M.phi("t"), "e", ""), M.tau("t"))
    return lhs, r1 - r2, ["sts", "st"]


@relation("4ext-reduction-cor1", "two-color")
def _red1(R):
    """An enddot on the first strand of Phi_t^{sts}."""
    M = _Maps(R)
    P = M.Phi("t", "sts")
    lhs = K.compose(K.pad(M.eps("s"), "", "ts"), P)
    r1 = K.compose(K.pad(M.ext("s"), "t", ""), M.sig("t"))
    r2 = K.compose(K.pad(M.eta("s"), "t", ""), K.pad(M.phi("t"), "", "e"), M.sig("t"))
    return lhs, r1 - r2, ["sts", "ts"]


@relation("4ext-reduction-cor2", "two-color")
def _red2(R):
    """An enddot on the middle strand of Phi_t^{sts}."""
    M = _Maps(R)
    P = M.Phi("t", "sts")
    lhs = K.compose(K.pad(M.eps("t"), "s", "s"), P)
    r1 = K.compose(M.dl("s"), M.eta("s"), M.eps("t"), M.phi("t"))
    r2 = K.compose(M.dl("s"), M.ext("s"), M.eps("t"))
    return lhs, r2 - r1, ["sts", "ss"]


@relation("4ext-reduction-cor3", "two-color")
def _red3(R):
    """A startdot on the input of Phi_t^{sts}."""
    M = _Maps(R)
    lhs = K.compose(M.Phi("t", "sts"), M.eta("t"))
    cup = K.compose(K.pad(M.sig("s"), "", "s"), M.dl("s"))
    r1 = K.compose(K.pad(M.ext("t"), "s", "s"), cup, M.eta("s"))
    r2 = K.compose(K.pad(M.eta("t"), "s", "s"), cup, M.ext("s"))
    return lhs, r2 - r1, ["sts"]


def _rotate(R, w, mirror: bool = False):
    """Rotate the last (or first) output strand of Phi_t^w to the input."""
    M = _Maps(R)
    w = tuple(w)
    if not mirror:
        last = w[-1]
        f = K.compose(
            K.pad(M.eps(last), "t" + "".join(w[:-1]), ""),
            K.pad(M.mu(last), "t" + "".join(w[:-1]), ""),
            K.pad(M.Phi("t", w), "t", last),
            K.pad(M.dl("t"), "", last),
            K.pad(M.eta("t"), "", last),
            M.tau(last),
        )
        target = ("t",) + w[:-1]
        return f, M.Phi(last, target), target, last
    first = w[0]
    f = K.compose(
        K.pad(M.eps(first), "", "".join(w[1:]) + "t"),
        K.pad(M.mu(first), "", "".join(w[1:]) + "t"),
        K.pad(M.Phi("t", w), first, "t"),
        K.pad(M.dl("t"), first, ""),
        K.pad(M.eta("t"), first, ""),
        M.sig(first),
    )
    target = w[1:] + ("t",)
    return f, M.Phi(first, target), target, first


@relation("4ext-rotation", "two-color", sign=-1)
def _rot(R):
    """Rotating the last strand of Phi_t^{sts} gives -Phi_s^{tst}."""
    f, g, target, _ = _rotate(R, "sts")
    return f, g, ["sts", target]


@relation("4ext-rotation-mirror", "two-color", sign=-1)
def _rot_m(R):
    """Rotating the first strand of Phi_t^{sts} gives -Phi_s^{tst}."""
    f, g, target, _ = _rotate(R, "sts", mirror=True)
    return f, g, ["sts", target]


@relation("newgen-rotation-stst", "two-color", sign=1)
def _rot_stst(R):
    """Rotating the last strand of Phi_t^{stst} gives +Phi_t^{tsts}."""
    f, g, target, _ = _rotate(R, "stst")
    return f, g, ["stst", target]


@relation("newgen-rotation-ststs", "two-color", sign=-1)
def _rot_ststs(R):
    """Rotating the last strand of Phi_t^{ststs} gives -Phi_s^{tstst}."""
    f, g, target, _ = _rotate(R, "ststs")
    return f, g, ["ststs", target]


@relation("newgen-rotation-tsts", "two-color", sign=-1)
def _rot_tsts(R):
    """Rotating the last strand of Phi_t^{tsts} gives -Phi_s^{ttst}."""
    f, g, target, _ = _rotate(R, "tsts")
    return f, g, ["tsts", target]


def _reduct(R, w, i):
    M = _Maps(R)
    w = tuple(w)
    c = w[i - 1]
    lhs = K.compose(K.pad(M.eps(c), "".join(w[: i - 1]), "".join(w[i:])), M.Phi("t", w))
    hat = w[: i - 1] + w[i:]
    return lhs, M.Phi("t", hat), ["".join(w), "".join(hat)]


@relation("newgen-reduct-stst-4", "two-color")
def _reduct1(R):
    """An enddot on strand 4 of Phi_t^{stst} gives Phi_t^{sts}."""
    return _reduct(R, "stst", 4)


@relation("newgen-reduct-ststs-1", "two-color")
def _reduct2(R):
    """An enddot on strand 1 of Phi_t^{ststs} gives Phi_t^{tsts}."""
    return _reduct(R, "ststs", 1)


@relation("newgen-mult", "two-color")
def _mult(R):
    """Splitting strand 2 of Phi_t^{sts} gives Phi_t^{stts}."""
    M = _Maps(R)
    lhs = K.compose(K.pad(M.dl("t"), "s", "s"), M.Phi("t", "sts"))
    return lhs, M.Phi("t", "stts"), ["sts", "stts"]


@relation("newgen-square", "two-color")
def _square(R):
    """Phi_t^{sts} stacked on the middle strand of Phi_t^{sts} vanishes."""
    M = _Maps(R)
    P = M.Phi("t", "sts")
    return K.compose(K.pad(P, "s", "s"), P), None, ["sts", "sstss"]


@relation("two-color-jumping", "two-color")
def _two_jump(R):
    """A Hochschild dot jumps from the first s-strand to the t-strand of Phi_t^{sts}."""
    M = _Maps(R)
    P = M.Phi("t", "sts")
    return K.compose(K.pad(M.phi("s"), "", "ts"), P), K.compose(K.pad(M.phi("t"), "s", "s"), P), ["sts"]


def _omega_terms(R):
    M = _Maps(R)
    omega = K.compose(K.pad(M.eps("s"), "st", ""), K.pad(M.mu("s"), "st", ""), K.pad(M.Phi("t", "sts"), "", "s"))

    def through_t(mid, top):
        # ts -> t (enddot on s) -> mid -> top-left insertion of s
        return K.compose(K.pad(top, "", "t"), M.tau("t"), mid, K.Unitor(R, "te", 1), K.pad(M.eps("s"), "t", ""))

    def through_s(bottom, mid, top):
        return K.compose(K.pad(top, "s", ""), M.sig("s"), mid, K.Unitor(R, "es", 0), K.pad(bottom, "", "s"))

    idt = K.identity(R, "t")
    ids = K.identity(R, "s")
    T = {
        "T1": through_t(M.phi("t"), M.eta("s")),
        "T2": K.compose(K.pad(M.eta("s"), "", "t"), M.tau("t"), K.Unitor(R, "te", 1),
                        K.pad(K.compose(M.eps("s"), M.phi("s")), "t", "")),
        "T3": through_s(M.eps("t"), ids, M.ext("t")),
        "T4": through_s(K.compose(M.eps("t"), M.phi("t")), ids, M.eta("t")),
        "B": through_s(M.eps("t"), M.phi("s"), M.eta("t")),
        "C": through_t(idt, M.ext("s")),
    }
    return K.cleaned(omega), T


def _alpha_times(R, f, c):
    return K.compose(K.LeftMul(f.tgt, R.alpha(c)), f)


@relation("cohomology-relation-s", "two-color")
def _coh_s(R):
    """[2] alpha_s Omega = -[2] T1 + [2] T2 + T3 - T4."""
    omega, T = _omega_terms(R)
    two = qnum(2, R.realm)
    lhs = _alpha_times(R, omega, "s").scaled(two)
    rhs = K.lincomb([(-two, T["T1"]), (two, T["T2"]), (1, T["T3"]), (-1, T["T4"])])
    return lhs, rhs, ["ts", "st"]


@relation("cohomology-relation-t", "two-color")
def _coh_t(R):
    """[2] alpha_t Omega = -[2] T3 + [2] B + C - T2."""
    omega, T = _omega_terms(R)
    two = qnum(2, R.realm)
    lhs = _alpha_times(R, omega, "t").scaled(two)
    rhs = K.lincomb([(-two, T["T3"]), (two, T["B"]), (1, T["C"]), (-1, T["T2"])])
    return lhs, rhs, ["ts", "st"]


# -- m = 2 -------------------------------------------------------------------------------

@relation("hochschild-slide", "m=2", m=2)
def _slide(R):
    """The 4-valent crossing commutes with a Hochschild dot."""
    M = _Maps(R)
    X = K.swap_lift(R, "s")
    return K.compose(X, K.pad(M.phi("s"), "", "t")), K.compose(K.pad(M.phi("s"), "t", ""), X), ["st", "ts"]


@relation("2m-absorption", "m=2", m=2)
def _absorb(R):
    """A crossing absorbed into the m = 2 analogue of Phi: (swap (x) id) Psi^{sts} = Psi^{tss}."""
    lhs = K.compose(K.pad(K.swap_lift(R, "s"), "", "s"), psi_m2(R, "sts"))
    return lhs, psi_m2(R, "tss"), ["sts", "tss"]


def psi_m2(R, w, c: str = "t") -> K.ChainMap:
    """m = 2: the degree 1 class out of K_c with rho-value 1(w) and gamma-value 0."""
    from .bimod import BimodElem, as_word
    from .ext import GEN_GAMMA, GEN_RHO

    w = as_word(w)
    cls = ExtClass(R, c, w, 1, -(len(w) + 1), {GEN_RHO: BimodElem.bottom(R, w), GEN_GAMMA: BimodElem(R, w)})
    if not is_cocycle(cls):
        raise ArithmeticError("psi is not a cocycle")
    return K.phi_lift(cls)


# -- verification ------------------------------------------------------------------------

def _residual(c: ExtClass) -> dict:
    return {g: str(v) for g, v in sorted(c.values.items())}


def applicable(rel: Relation, realm: Realm) -> bool:
    """Two-color relations involve Phi, which is only unique for m != 2."""
    if rel.m is not None:
        return realm.m == rel.m
    return not (rel.group == "two-color" and realm.m == 2)


def verify_relation(name: str, realm: Optional[Realm] = None) -> RelationReport:
    rel = CATALOG.get(name)
    if rel is None:
        raise KeyError(f"unknown relation {name!r}")
    if realm is None:
        realm = Realm(rel.m)
    if rel.m is not None and realm.m != rel.m:
        raise ValueError(f"{name} needs m = {rel.m}")
    if not applicable(rel, realm):
        return RelationReport(name, rel.group, realm_label(realm), [], (), None, "skipped")
    ring = PolyRing(realm, 2)
    t0 = time.perf_counter()
    lhs, rhs, words = rel.build(ring)
    a = K.to_class(lhs)
    bideg = (a.k, a.degree)
    nonzero = None
    if rhs is None:
        ok = is_coboundary(a)
        status = "pass" if ok else "fail"
        resid = None if ok else _residual(a)
    else:
        # a zero left side would make the comparison blind to the sign
        nonzero = not is_coboundary(a)
        b = K.to_class(rhs)
        target = b.scale(rel.sign)
        if class_equal(a, target):
            ok, status, resid = True, "pass", None
        elif class_equal(a, -target):
            ok, status, resid = False, "sign-flip pass", None
        else:
            ok, status = False, "fail"
            resid = _residual(a - target) if a.degree == b.degree else {"lhs": _residual(a), "rhs": _residual(b)}
    return RelationReport(name, rel.group, realm_label(realm), [tuple(w) for w in words], bideg, ok, status,
                          time.perf_counter() - t0, resid, nonzero)


def _run(args):
    name, m, delta = args
    realm = None
    if CATALOG[name].m is None:
        realm = Realm(m, delta)
    return verify_relation(name, realm)


SUITES = {
    "all": None,
    "onecolor": "one-color",
    "twocolor": "two-color",
    "m2": "m=2",
}


def suite_names(suite: str) -> list[str]:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}")
    group = SUITES[suite]
    return [n for n, r in CATALOG.items() if group is None or r.group == group]


def verify_suite(names=None, m=None, delta=None, jobs: int = 1) -> list[RelationReport]:
    """Verify the catalog (or the given names) with m = inf relations run at (m, delta).

    Relations with a fixed realm always run there.  Independent relations may
    run in parallel; the output order follows ``names``.
    """
    names = list(CATALOG) if names is None else list(names)
    args = [(n, m, delta) for n in names]
    if jobs <= 1:
        return [_run(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_run, args))


def realm_label(realm: Realm) -> str:
    if realm.m is None:
        return f"m=inf,delta={realm.delta_value}"
    return f"m={realm.m}"
