"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

All comparisons are exact over the rationals (tolerance 0).  Runtime
budgets are asserted as part of each criterion.
"""

import itertools
import time
from math import comb

import pytest

from soergel_ext import bimod
from soergel_ext.bimod import m_stat
from soergel_ext.ext import (
    ExtClass,
    class_equal,
    cohomology_dim,
    free_generators,
    hh_hs,
    is_cocycle,
    solve_phi,
    verify_indecomp,
    verify_maincohoiso,
)
from soergel_ext.hecke import bridge_check, gomi_check
from soergel_ext.homfly import Braid, TriSeries, expand_rational, hhh_series, homfly_substitute
from soergel_ext.polyring import PolyRing
from soergel_ext.relations import CATALOG, verify_relation
from soergel_ext.scalars import Realm

D = 24
TOP = D - 4


def report(n, title, ok, seconds, budget, detail=""):
    verdict = "PASS" if ok and seconds < budget else "FAIL"
    extra = f" [{detail}]" if detail else ""
    print(f"\ncriterion {n:2d} {verdict}: {title} (tol=exact, {seconds:.2f}s < {budget}s){extra}")
    assert ok, detail
    assert seconds < budget, f"runtime {seconds:.2f}s over budget {budget}s"


def ring(m=None):
    return PolyRing(Realm(m), 2)


def rational_series(parts, rank):
    """TriSeries from {(a, j): [(coeff, Q exponent, k)]} meaning sum coeff Q^e / (1-Q^2)^k."""
    terms = {}
    for key, items in parts.items():
        h = {}
        for c, e, k in items:
            # 1/(1-Q^2)^k = sum_n C(n+k-1, k-1) Q^{2n}
            for n in range(0, D + TOP + 1):
                mult = comb(n + k - 1, k - 1) if k else int(n == 0)
                d = e + 2 * n
                if -D <= d <= TOP and mult:
                    h[d] = h.get(d, 0) + c * mult
        terms[key] = h
    return TriSeries(D, TOP, rank, terms)


HOPF = {(0, 0): [(1, 2, 1)], (0, 2): [(1, -2, 0)], (1, 0): [(1, -2, 1)]}


def test_criterion_01_hochschild_of_bs():
    t = time.perf_counter()
    got = {}
    for m in (None, 2, 3, 4, 5, 6):
        R = ring(m)
        got[m] = [free_generators(hh_hs(R, "s", a, D), 2) for a in range(3)]
    ok = all(v == [[1], [-3, -1], [-5]] for v in got.values())
    report(1, "HH^a(B_s) free on degrees {1}, {-3,-1}, {-5}", ok, time.perf_counter() - t, 1,
           f"m=inf: {got[None]}")


def test_criterion_02_hopf_link():
    t = time.perf_counter()
    s = hhh_series(Braid(2, (1, 1)), D)
    ok = s == rational_series(HOPF, 1)
    report(2, "Hopf link series", ok, time.perf_counter() - t, 5, s.pretty())


def test_criterion_03_connect_sum():
    t = time.perf_counter()
    s = hhh_series(Braid(3, (1, 1, 2, 2)), D)
    expected = rational_series({
        (0, 0): [(1, 4, 2)], (0, 2): [(2, 0, 1)], (0, 4): [(1, -4, 0)],
        (1, 0): [(2, 0, 2)], (1, 2): [(2, -4, 1)],
        (2, 0): [(1, -4, 2)],
    }, 2)
    hopf = hhh_series(Braid(2, (1, 1)), D)
    square = hopf * hopf
    ok = s == expected and s == square
    report(3, "sigma1^2 sigma2^2 equals the three-level series and the squared Hopf series", ok,
           time.perf_counter() - t, 60, f"product compared up to Q^{square.top}")


def test_criterion_04_homfly_substitution():
    t = time.perf_counter()
    sub = homfly_substitute(hhh_series(Braid(2, (1, 1)), D))
    # (q^2 + q^-2 - 1 - a^-2) / (1 - q^2), unit 1
    want = expand_rational({(0, 2): 1, (0, -2): 1, (0, 0): -1, (-2, 0): -1}, {0: 1, 2: -1}, -D, D)
    lo, hi = -D + 2, TOP  # q-window covered by both a-levels
    a = {k: v for k, v in sub.items() if lo <= k[1] <= hi}
    b = {k: v for k, v in want.items() if lo <= k[1] <= hi}
    report(4, "HOMFLY-PT specialization of the Hopf series", a == b, time.perf_counter() - t, 1,
           f"q-window [{lo}, {hi}]")


def _words(n):
    return ["".join(w) for k in range(n + 1) for w in itertools.product("st", repeat=k)]


STRUCTURE = {}


def _structure_reports():
    if not STRUCTURE:
        t = time.perf_counter()
        for m in (None, 2, 3, 4):
            R = ring(m)
            for w in _words(5):
                STRUCTURE[(m, w)] = verify_maincohoiso(R, w, D)
        STRUCTURE["seconds"] = time.perf_counter() - t
    return STRUCTURE


def test_criterion_05_structure_theorem():
    reps = _structure_reports()
    bad = [k for k, r in reps.items() if k != "seconds" and not r["pass"]]
    report(5, "Ext(B_t, BS(w)) from ker rho_s^e(w), |w| <= 5, m = inf, 2, 3, 4", not bad,
           reps["seconds"], 600, f"{len(reps) - 1} cases, failures: {bad[:5]}")


def test_criterion_06_kernel_combinatorics():
    t = time.perf_counter()
    reps = _structure_reports()
    bad = []
    for key, r in reps.items():
        if key == "seconds":
            continue
        m, w = key
        gens = r.get("kernel_generators")
        if gens is None or len(gens) != bimod.kernel_count(w, m):
            bad.append(key)
    report(6, "rank ker rho_s^e(w) = #{e : r(e) in {id, t}}", not bad,
           reps["seconds"] + time.perf_counter() - t, 600, f"failures: {bad[:5]}")


def test_criterion_07_one_dimensionality():
    t = time.perf_counter()
    pool = [w for n in range(3, 7) for w in map("".join, itertools.product("st", repeat=n)) if m_stat("t", w) >= 4]
    sample = pool[::max(1, len(pool) // 10)][:10]
    dims = {}
    for m in (None, 3, 4):
        R = ring(m)
        for w in sample:
            dims[(m, w)] = cohomology_dim(R, "t", w, 1, -(len(w) + 1))
    ok = len(sample) == 10 and all(v == 1 for v in dims.values())
    report(7, "dim Ext^{1,-(|w|+1)}(B_t, BS(w)) = 1 on 10 sampled words", ok, time.perf_counter() - t, 120,
           f"words {sample}")


def test_criterion_08_indecomposables():
    t = time.perf_counter()
    bad = []
    for m, K in ((None, 5), (2, 2), (3, 3), (4, 4), (5, 5), (6, 6)):
        R = ring(m)
        for k in range(1, K + 1):
            if not verify_indecomp(R, k, D)["pass"]:
                bad.append((m, k))
    report(8, "HH(BS) = KL multiplicities times closed forms, k <= m (k <= 5 for inf)", not bad,
           time.perf_counter() - t, 300, f"failures: {bad}")


def test_criterion_09_phi_cocycle():
    t = time.perf_counter()
    ok = True
    for m in (None, 3, 4, 5):
        R = ring(m)
        phi = solve_phi(R, "sts")  # raises unless the gamma-value is unique
        o = R.one()
        rs, rt = R.rho("s"), R.rho("t")
        srs = R.reflect("s", rs)

        def T(fs):
            return bimod.from_tensor(R, "sts", fs)

        gamma = (T([o, rt, o, o]).scale(-R.a_st) + T([rs, o, o, o]) - T([o, srs, o, o])
                 + T([o, o, o, R.alpha("s")]) - T([o, o, rs, o]) + T([o, o, o, srs]))
        explicit = ExtClass(R, "t", ("s", "t", "s"), 1, -4, {"gamma": gamma, "rho": T([o, o, o, o])})
        ok = ok and is_cocycle(explicit) and class_equal(phi, explicit)
    report(9, "Phi_t^{sts} is unique and equals the explicit representative", ok, time.perf_counter() - t, 5,
           "m = inf, 3, 4, 5")


def test_criterion_10_relation_suite():
    t = time.perf_counter()
    reports = [verify_relation(name) for name in CATALOG]
    bad = [r.name for r in reports if r.status != "pass"]
    blind = [r.name for r in reports if r.lhs_nonzero is False]
    report(10, f"{len(reports)} diagrammatic relations", not bad and not blind, time.perf_counter() - t, 600,
           f"failures: {bad}, zero left sides: {blind}")


def test_criterion_11_gomi():
    t = time.perf_counter()
    reps = {m: gomi_check(m) for m in range(2, 7)}
    bad = [m for m, r in reps.items() if not r["pass"]]
    report(11, "Kihara conditions and trace symmetry, m = 2..6", not bad, time.perf_counter() - t, 30,
           f"failures: {bad}")


def test_criterion_12_bridge():
    t = time.perf_counter()
    reps = [bridge_check(3, k, D) for k in (1, 2, 3)]
    bad = [r["k"] for r in reps if not r["pass"]]
    report(12, "closed form eps_t(b_w) from engine HH data, m = 3, k = 1..3", not bad, time.perf_counter() - t,
           60, f"failures: {bad}")
