"""Command-line entry point.

Exit codes: 0 success, 2 a check failed, 3 usage error, 4 guard or timeout.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import report as rp
from .cache import ResultCache, use_cache
from .errors import (GuardExceeded, ModuleMismatch, PerpCalcError, PreconditionError,
                     SpecSemanticError, SpecSyntaxError, deadline)
from .modules import (DEFAULT_MAX_MODULE_ORDER, SIDES, free_module, module_order_guard,
                      parse_module_spec, parse_vector, split_top, submodule_generated)
from .rings import DEFAULT_MAX_RING_ORDER, build_ring, ring_axiom_audit

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 2, 3, 4

VERBS = ("ring-info", "ring-audit", "pf-check", "perp", "theorem-verify",
         "witness-find", "gallery", "oracle-crosscheck")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--cache-dir", default=None, help="cache lattice enumerations in this directory")
    p.add_argument("--max-ring-order", type=int, default=DEFAULT_MAX_RING_ORDER)
    p.add_argument("--max-module-order", type=int, default=DEFAULT_MAX_MODULE_ORDER)
    p.add_argument("--timeout-secs", type=float, default=None)
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="perpcalc", description="Perps and PF tests for finite rings.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_, ring=True):
        p = sub.add_parser(name, help=help_)
        if ring:
            p.add_argument("ring", help='ring spec, e.g. "zmod 4" or "quot gf2 [x]/(x^2)"')
        _common(p)
        return p

    verb("ring-info", "basic facts about a ring")
    verb("ring-audit", "exhaustive ring axiom check")
    verb("pf-check", "self-injectivity and Kasch tests on both sides")
    p = verb("perp", "perps in a module and its dual")
    p.add_argument("module", nargs="?", default="free 1", help='"free N" or "free N / [v1; v2]"')
    p.add_argument("--side", choices=SIDES, default="right")
    p.add_argument("--sub", default=None, help='generators of X, e.g. "(1, 0); (0, 2)"')
    p.add_argument("--dual", default=None, help="generators of Y as coordinate vectors of M*")
    verb("theorem-verify", "evaluate the PF characterization on R and R^2")
    verb("witness-find", "search for a submodule with X^perp^perp != X")
    p = verb("gallery", "infinite-dimensional examples by exact truncation", ring=False)
    p.add_argument("example", choices=("i", "ii", "iii"))
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--truncation", type=int, action="append", default=None,
                   help="support bound (repeatable; default 8, 16, 32)")
    p.add_argument("--p-max", type=int, default=8)
    p = verb("oracle-crosscheck", "compare the main path against brute force")
    p.add_argument("module", nargs="?", default="free 1")
    p.add_argument("--side", choices=SIDES, default="right")
    p.add_argument("--scope", action="store_true",
                   help="check R, R^2 and every quotient of R^2 on both sides within the oracle bound")
    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    argv = list(argv)
    for i in range(len(argv) - 1):
        if argv[i] == "oracle" and argv[i + 1] == "crosscheck":
            argv[i:i + 2] = ["oracle-crosscheck"]
            break
    # allow global flags before the verb
    for i, tok in enumerate(argv):
        if tok in VERBS:
            return [tok] + argv[:i] + argv[i + 1:]
    return argv


# ---------------------------------------------------------------------------
# verbs


def _ring(args, report):
    R = build_ring(args.ring, args.max_ring_order)
    report["ring"] = rp.ring_id(R)
    return R


def _module_id(M) -> dict:
    rel = [M.format_element(int(c)) for c in M.relation_generators if c] if not M.is_free else []
    return {"ring": M.ring.name, "side": M.side, "rank": M.rank, "order": M.size,
            "relations": rel, "key": M.key}


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def cmd_ring_info(args, report) -> int:
    R = _ring(args, report)
    n = R.order
    e = np.arange(n)
    units = [int(a) for a in e if (R.mul[a] == R.one).any() and (R.mul[:, a] == R.one).any()]
    idem = [int(a) for a in e if R.mul[a, a] == a]
    char, x = 1, R.one
    while x != 0:
        x = int(R.add[x, R.one])
        char += 1
    nil = [int(a) for a in e if _nilpotent(R, a)]
    rp.add_check(report, "structure", "info", order=n, characteristic=char,
                 commutative=R.commutative, units=len(units), idempotents=[R.format(i) for i in idem],
                 nilpotents=len(nil))
    if n <= 32:
        rp.add_check(report, "elements", "info", elements=[R.format(i) for i in range(n)])
    return EXIT_OK


def _nilpotent(R, a) -> bool:
    x = int(a)
    for _ in range(R.order):
        if x == 0:
            return True
        x = int(R.mul[x, a])
    return x == 0


def cmd_ring_audit(args, report) -> int:
    R = _ring(args, report)
    audit = ring_axiom_audit(R)
    samples = [{"axiom": ax, "elements": [None if v is None else R.format(v) for v in triple]}
               for ax, triple in audit.violations]
    rp.add_check(report, "ring axioms", _verdict(audit.ok), witness=samples or None,
                 counts=dict(sorted(audit.counts.items())))
    return EXIT_OK if audit.ok else EXIT_FAILED


def cmd_pf_check(args, report) -> int:
    from .pf import is_pf

    R = _ring(args, report)
    pf = is_pf(R)
    flags = pf.flags()
    for name in ("right_self_injective", "left_self_injective", "right_kasch", "left_kasch"):
        side, _, prop = name.partition("_")
        w = next((x for x in pf.witnesses if x["side"] == side
                  and x["kind"] == ("baer" if prop == "self_injective" else "kasch")), None)
        rp.add_check(report, name, "info", witness=w, holds=flags[name])
    rp.add_check(report, "is_pf", "info", holds=pf.is_pf)
    if args.timings:
        report["timings"] = {k: round(v, 4) for k, v in pf.timings.items()}
    return EXIT_OK


def _parse_gens(M, text: str) -> list[int]:
    return [M.element(parse_vector(M.ring, v)) for v in split_top(text, ";") if v.strip()]


def cmd_perp(args, report) -> int:
    from .duality import dual_module

    R = _ring(args, report)
    M = parse_module_spec(R, args.module, args.side, args.max_module_order)
    report["module"] = _module_id(M)
    D = dual_module(M)
    amb = D.ambient
    rp.add_check(report, "dual", "info", order=D.size,
                 elements=[amb.format_element(int(c)) for c in D.elements()] if D.size <= 64 else None)
    if args.sub is not None:
        X = submodule_generated(M, _parse_gens(M, args.sub))
        Xp = D.perp(X)
        Xpp = D.perp_dual(Xp)
        rp.add_check(report, "X^perp^perp = X", "info", holds=Xpp == X, X=X.describe(),
                     X_perp=Xp.describe(), X_perp_perp=Xpp.describe())
    if args.dual is not None:
        try:
            gens = [amb.element(parse_vector(R, v)) for v in split_top(args.dual, ";") if v.strip()]
            Y = submodule_generated(amb, gens)
            D.check_member(Y)
        except ModuleMismatch as exc:
            raise PreconditionError(f"--dual: {exc}") from None
        Yp = D.perp_dual(Y)
        Ypp = D.perp(Yp)
        rp.add_check(report, "Y^perp^perp = Y", "info", holds=Ypp == Y, Y=Y.describe(),
                     Y_perp=Yp.describe(), Y_perp_perp=Ypp.describe())
    if args.sub is None and args.dual is None:
        from .duality import perp_maps

        pm = perp_maps(M)
        refl = [i for i in range(len(pm.lat)) if pm.up[pm.down[i]] == i]
        rows = None
        if len(pm.lat) <= 64:
            rows = [{"X": X.describe(), "perp_order": pm.dlat[pm.down[i]].cardinality,
                     "reflexive": pm.up[pm.down[i]] == i} for i, X in enumerate(pm.lat)]
        rp.add_check(report, "lattice", "info", submodules=len(pm.lat), dual_submodules=len(pm.dlat),
                     reflexive=len(refl), table=rows)
    return EXIT_OK


def cmd_theorem_verify(args, report) -> int:
    from .pf import verify_main_theorem

    R = _ring(args, report)
    th = verify_main_theorem(R)
    for label, v in th.verdicts.items():
        rp.add_check(report, f"statement ({label})", "info", witness=th.witnesses.get(label),
                     holds=v, note=th.notes.get(label))
    rp.add_check(report, "verdicts consistent", _verdict(th.consistent), scope=th.notes["scope"])
    return EXIT_OK if th.consistent else EXIT_FAILED


def cmd_witness_find(args, report) -> int:
    from .pf import find_witness

    R = _ring(args, report)
    w = find_witness(R)
    rp.add_check(report, "double-perp witness", "info", witness=w.to_dict() if w else None, found=w is not None)
    return EXIT_OK


def cmd_gallery(args, report) -> int:
    from .gallery import run_example

    bounds = args.truncation or [8, 16, 32]
    g = run_example(args.example, args.field, bounds, args.p_max)
    d = g.to_dict()
    for v in d["verdicts"]:
        detail = {k: val for k, val in v.items() if k not in ("name", "holds")}
        rp.add_check(report, v["name"], _verdict(v["holds"]), **detail)
    rp.add_check(report, "example", "info", example=d["example"], title=d["title"], field=d["field"],
                 bounds=d["bounds"], notes=d["notes"])
    return EXIT_OK if g.ok else EXIT_FAILED


def cmd_oracle_crosscheck(args, report) -> int:
    from .oracle import ORACLE_BOUND, cross_check
    from .pf import scope_modules

    R = _ring(args, report)
    if args.scope:
        mods = []
        for side in SIDES:
            mods.append(free_module(R, 1, side))
            mods.extend(Q for _, Q in scope_modules(R, side))
        mods = [M for M in mods if M.size <= ORACLE_BOUND]
    else:
        M = parse_module_spec(R, args.module, args.side, args.max_module_order)
        report["module"] = _module_id(M)
        mods = [M]
    bad = 0
    for M in mods:
        res = cross_check(M)
        bad += not res.passed
        rp.add_check(report, f"cross-check {M.side} rank {M.rank} order {M.size} key {M.key}",
                     _verdict(res.passed), witness=res.mismatches or None,
                     checks=dict(sorted(res.checks.items())))
    return EXIT_OK if not bad else EXIT_FAILED


COMMANDS = {
    "ring-info": cmd_ring_info,
    "ring-audit": cmd_ring_audit,
    "pf-check": cmd_pf_check,
    "perp": cmd_perp,
    "theorem-verify": cmd_theorem_verify,
    "witness-find": cmd_witness_find,
    "gallery": cmd_gallery,
    "oracle-crosscheck": cmd_oracle_crosscheck,
}


def _flags(args) -> dict:
    skip = {"verb", "ring", "module", "example", "cache_dir", "json", "timings"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run_command(argv: list[str]) -> tuple[int, dict | None]:
    """Run one command; returns (exit code, report).  The report is None on usage errors."""
    try:
        args = build_parser().parse_args(_normalize_argv(argv))
    except UsageError as exc:
        return EXIT_USAGE, {"usage_error": str(exc)}
    targets = [getattr(args, k) for k in ("ring", "module", "example") if getattr(args, k, None) is not None]
    report = rp.new_report(args.verb, targets, _flags(args))
    report["guards"] = {"max_ring_order": args.max_ring_order, "max_module_order": args.max_module_order,
                        "timeout_secs": args.timeout_secs}
    store = ResultCache(args.cache_dir) if args.cache_dir else None
    t0 = time.perf_counter()
    try:
        with use_cache(store), deadline(args.timeout_secs), module_order_guard(args.max_module_order):
            code = COMMANDS[args.verb](args, report)
    except (SpecSyntaxError, SpecSemanticError, PreconditionError, ModuleMismatch, ValueError) as exc:
        return EXIT_USAGE, {"usage_error": str(exc), "report": report}
    except GuardExceeded as exc:
        report["status"] = "guard-exceeded"
        kind = "timeout" if str(exc).startswith("timeout") else "guard"
        report["error"] = {"kind": kind, "message": str(exc)}
        code = EXIT_GUARD
    except PerpCalcError as exc:
        return EXIT_USAGE, {"usage_error": str(exc), "report": report}
    else:
        if code == EXIT_FAILED:
            report["status"] = "check-failed"
    if args.timings:
        report.setdefault("timings", {})["total"] = round(time.perf_counter() - t0, 4)
    return code, report


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, report = run_command(argv)
    if code == EXIT_USAGE:
        print(f"perpcalc: error: {report['usage_error']}", file=sys.stderr)
        return code
    as_json = "--json" in argv
    sys.stdout.write(rp.to_json(report) if as_json else rp.to_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
