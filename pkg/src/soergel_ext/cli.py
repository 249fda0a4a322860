"""Command line front end.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage error.  ``--json`` output is deterministic and carries "schema": "1";
rationals are written as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__
from .gradedlin import DEFAULT_CUTOFF, FreenessFailure, free_generators

SCHEMA = "1"
M_CHOICES = ["2", "3", "4", "5", "6", "inf"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    m: Optional[int]
    delta: Optional[Fraction]
    cutoff: int
    json: bool
    jobs: int

    def realm(self):
        from .scalars import Realm

        return Realm(self.m, self.delta)

    def ring(self, rank: int = 2):
        from .polyring import PolyRing

        return PolyRing(self.realm(), rank)

    def realm_json(self) -> dict:
        out = {"m": "inf" if self.m is None else self.m}
        if self.m is None:
            out["delta"] = _q(self.delta if self.delta is not None else Fraction(3))
        return out


def _q(x) -> str:
    """A rational as "p/q" (or "p" when integral)."""
    x = Fraction(str(x))
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_delta(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid rational {text!r}; expected p/q") from None


def _config(args) -> RunConfig:
    m = None if args.m == "inf" else int(args.m)
    if args.delta is not None and m is not None:
        raise UsageError("--delta is only allowed with --m inf")
    if args.cutoff < 4:
        raise UsageError("--cutoff must be at least 4")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    cfg = RunConfig(m, args.delta, args.cutoff, args.json, args.jobs)
    try:
        cfg.realm()
    except ValueError as e:
        raise UsageError(str(e)) from None
    return cfg


def _word(text: str) -> str:
    text = text.strip()
    if any(c not in "st" for c in text):
        raise UsageError(f"words are strings over s and t, got {text!r}")
    return text


# -- output helpers ---------------------------------------------------------------

def _emit(cfg: RunConfig, payload: dict, lines: list[str]) -> None:
    if cfg.json:
        payload = {"schema": SCHEMA, **payload}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _hs_json(h, rank: int) -> dict:
    gens = free_generators(h, rank)
    return {
        "dims": {str(d): v for d, v in sorted(h.dims.items()) if v},
        "free_generators": gens if not isinstance(gens, FreenessFailure) else None,
        "window": [-h.cutoff, h.top],
    }


def _hs_line(label: str, h, rank: int) -> str:
    gens = free_generators(h, rank)
    shown = ", ".join(f"{d}:{v}" for d, v in sorted(h.dims.items()) if v) or "0"
    g = f"  generators {gens}" if not isinstance(gens, FreenessFailure) else f"  ({gens})"
    return f"{label}: {shown}{g}"


# -- subcommands -----------------------------------------------------------------

def cmd_ext(cfg: RunConfig, args) -> int:
    from . import ext

    ring = cfg.ring()
    top = cfg.cutoff - 4
    if args.indecomp:
        kmax = 5 if cfg.m is None else cfg.m
        reports = [ext.verify_indecomp(ring, k, cfg.cutoff) for k in range(1, kmax + 1)]
        ok = all(r["pass"] for r in reports)
        lines = [f"k={r['k']} word={r['word']}: {'pass' if r['pass'] else 'FAIL'}" for r in reports]
        _emit(cfg, {"command": "ext", "mode": "indecomp", "realm": cfg.realm_json(), "cutoff": cfg.cutoff,
                    "reports": reports, "pass": ok}, lines)
        return 0 if ok else 1
    w = _word(args.word)
    if args.structure:
        if not w:
            raise UsageError("--structure needs a nonempty word")
        r = ext.verify_maincohoiso(ring, w, cfg.cutoff)
        lines = [f"word={w} kernel generators={r.get('kernel_generators')} "
                 f"expected rank={r['expected_kernel_rank']}: {'pass' if r['pass'] else 'FAIL'}"]
        _emit(cfg, {"command": "ext", "mode": "structure", "realm": cfg.realm_json(), "report": r,
                    "pass": r["pass"]}, lines)
        return 0 if r["pass"] else 1
    target = "hh" if not w else args.target
    payload = {"command": "ext", "mode": target, "realm": cfg.realm_json(), "word": w, "cutoff": cfg.cutoff}
    groups = {}
    lines = [f"{'HH' if target == 'hh' else 'Ext(B_t, -)'} of BS({w or 'empty'}) in degrees "
             f"[{-cfg.cutoff}, {top}], realm {cfg.realm_json()}"]
    for i in range(3):
        if target == "hh":
            h = ext.hh_hs(ring, w, i, cfg.cutoff)
        else:
            C = ext.ext_b_complex(ring, w)
            from .gradedlin import cohomology_hs

            h = cohomology_hs(C, i, cfg.cutoff, top=top)
        groups[str(i)] = _hs_json(h, ring.rank)
        lines.append(_hs_line(f"  degree {i}", h, ring.rank))
    payload["groups"] = groups
    _emit(cfg, payload, lines)
    return 0


def cmd_hilbert(cfg: RunConfig, args) -> int:
    from . import bimod, ext

    ring = cfg.ring()
    w = _word(args.word)
    M = bimod.bs_module(ring, w)
    h = M.hilbert(cfg.cutoff)
    payload = {"command": "hilbert", "realm": cfg.realm_json(), "word": w, "cutoff": cfg.cutoff,
               "bs": _hs_json(h, ring.rank)}
    lines = [_hs_line(f"BS({w or 'empty'})", h, ring.rank)]
    if w:
        k = ext.kernel_rho_hs(ring, w, cfg.cutoff, args.color)
        payload["kernel"] = _hs_json(k, ring.rank)
        payload["expected_kernel_rank"] = bimod.kernel_count(w, cfg.m, args.color)
        lines.append(_hs_line(f"ker rho_{args.color}^e", k, ring.rank))
    _emit(cfg, payload, lines)
    return 0


def cmd_hhh(cfg: RunConfig, args) -> int:
    from . import homfly

    try:
        b = homfly.Braid.parse(args.braid, args.strands)
    except ValueError as e:
        raise UsageError(str(e)) from None
    s = homfly.hhh_series(b, cfg.cutoff)
    payload = {"command": "hhh", "strands": b.strands, "braid": list(b.word), **s.to_json()}
    lines = [f"braid {b} on {b.strands} strands, internal degrees [{-s.cutoff}, {s.top}]", s.pretty()]
    if args.homfly:
        sub = homfly.homfly_substitute(s)
        payload["homfly"] = {f"{a},{e}": c for (a, e), c in sub.items()}
        lines.append("HOMFLY-PT (a exponent, q exponent): " +
                     ", ".join(f"({a},{e}):{c}" for (a, e), c in sub.items()))
    _emit(cfg, payload, lines)
    return 0


def cmd_gomi(cfg: RunConfig, args) -> int:
    from .hecke import gomi_check

    ms = [cfg.m] if cfg.m is not None and args.m_given else [2, 3, 4, 5, 6]
    if None in ms:
        raise UsageError("gomi needs finite m")
    reports = [gomi_check(m) for m in ms]
    ok = all(r["pass"] for r in reports)
    lines = []
    for r in reports:
        lines.append(f"m={r['m']}: {'pass' if r['pass'] else 'FAIL'}")
        for c in r["conditions"]:
            lines.append(f"  {c['name']}: {'ok' if c['equal'] else 'FAIL'}")
    _emit(cfg, {"command": "gomi", "reports": reports, "pass": ok}, lines)
    return 0 if ok else 1


def cmd_verify(cfg: RunConfig, args) -> int:
    from . import relations

    if args.list:
        lines = [f"{n:28s} {r.group:10s} {r.doc}" for n, r in relations.CATALOG.items()]
        _emit(cfg, {"command": "verify", "relations": {n: {"group": r.group, "doc": r.doc}
                                                       for n, r in relations.CATALOG.items()}}, lines)
        return 0
    if args.relation:
        unknown = [n for n in args.relation if n not in relations.CATALOG]
        if unknown:
            raise UsageError(f"unknown relation(s): {', '.join(unknown)}")
        names = list(args.relation)
    else:
        names = relations.suite_names(args.suite)
    reports = relations.verify_suite(names, cfg.m, cfg.delta, cfg.jobs)
    ok = all(r.passed is not False for r in reports)
    lines = []
    for r in reports:
        bideg = f"Ext^{{{r.bidegree[0]},{r.bidegree[1]}}}" if r.bidegree else ""
        lines.append(f"{r.name:28s} {r.realm:18s} {bideg:12s} {r.status}")
    lines.append(f"{sum(1 for r in reports if r.passed)}/{len(reports)} passed"
                 f", {sum(1 for r in reports if r.passed is None)} skipped")
    _emit(cfg, {"command": "verify", "cutoff": cfg.cutoff, "reports": [r.as_dict() for r in reports],
                "pass": ok}, lines)
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", choices=M_CHOICES, default=None, help="dihedral order parameter (default inf)")
    common.add_argument("--delta", type=_parse_delta, default=None, help="delta as p/q, only with --m inf")
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="internal degree cutoff D")
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = argparse.ArgumentParser(prog="soergel-ext", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("ext", parents=[common], help="Ext and Hochschild cohomology tables")
    e.add_argument("--word", default="", help="word over s, t (empty for R)")
    e.add_argument("--target", choices=["bt", "hh"], default="bt", help="Ext(B_t, BS(w)) or HH(BS(w))")
    e.add_argument("--structure", action="store_true", help="verify the kernel description of Ext(B_t, BS(w))")
    e.add_argument("--indecomp", action="store_true", help="verify HH of indecomposables for k <= m (5 for inf)")

    h = sub.add_parser("hhh", parents=[common], help="triply graded homology of a braid closure")
    h.add_argument("--strands", type=int, choices=[2, 3], default=2)
    h.add_argument("--braid", default="", help='signed generators, e.g. "1 1 -2"')
    h.add_argument("--homfly", action="store_true", help="also print the HOMFLY-PT specialization")

    g = sub.add_parser("gomi", parents=[common], help="Kihara conditions for the rescaled trace")

    v = sub.add_parser("verify", parents=[common], help="relation checks")
    v.add_argument("--suite", choices=["all", "onecolor", "twocolor", "m2"], default="all")
    v.add_argument("--relation", action="append", help="a single relation (repeatable)")
    v.add_argument("--list", action="store_true", help="list the catalog")

    hb = sub.add_parser("hilbert", parents=[common], help="Hilbert data of BS(w) and ker rho^e")
    hb.add_argument("--word", default="")
    hb.add_argument("--color", choices=["s", "t"], default="s")

    for sp, fn in ((e, cmd_ext), (h, cmd_hhh), (g, cmd_gomi), (v, cmd_verify), (hb, cmd_hilbert)):
        sp.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.m_given = args.m is not None
    if args.m is None:
        args.m = "inf"
    try:
        cfg = _config(args)
        return args.func(cfg, args)
    except UsageError as e:
        parser.error(str(e))  # exits with status 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
