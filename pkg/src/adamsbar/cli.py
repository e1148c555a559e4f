"""Command-line interface.

Commands operate on presentation files (see parser module) and emit
canonical JSON reports: sorted keys, exact rationals rendered as
strings, byte-identical across runs.  Exit codes: 0 = pass, 1 = a
property failed (see the report's verdict), 2 = input error.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cdga as cdga_mod
from .bar import bar_truncated_h0, gamma, h0_hopf
from .cellmod import ModuleError
from .minimal import quillen_compare, relative_minimal_model, trivial_base
from .parser import ParseError, bind_cell, parse_file
from .relative import (
    AugmentedOverN,
    RelativeError,
    coaction_check,
    delta_approximation,
    pi1_demo,
    semidirect,
)

F = Fraction


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


def _key(k):
    if isinstance(k, tuple):
        return ",".join(str(_key(p)) for p in k)
    return str(k)


def emit(report, out_path):
    text = json.dumps(_jsonable(report), sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load_cdga(path):
    kind, obj = parse_file(path)
    if kind != "cdga":
        raise ParseError("expected a cdga presentation", 1)
    return obj


def _load_any(path, base_algebra=None):
    kind, obj = parse_file(path)
    if kind == "cdga":
        return "cdga", obj
    if base_algebra is None:
        raise ParseError(
            "cell file needs --base pointing at its algebra", 1
        )
    if obj["over"] != base_algebra.name:
        raise ParseError(
            f"cell module is over {obj['over']!r}, --base file defines "
            f"{base_algebra.name!r}", 1
        )
    return "cell", bind_cell(obj, base_algebra)


def _augmented(args):
    base = _load_cdga(args.base) if args.base else trivial_base()
    total = _load_cdga(args.total if hasattr(args, "total") and args.total
                       else args.file)
    return AugmentedOverN(base, total)


def cmd_validate(args):
    if args.base:
        base = _load_cdga(args.base)
        kind, obj = _load_any(args.file, base)
    else:
        kind, obj = _load_any(args.file)
    if kind == "cdga":
        ok, fails = cdga_mod.validate(obj, coh_max=args.deg_max,
                                      adams_max=args.wt_max)
    else:
        ok, fails = obj.check()
    report = _base_report("validate", args, ok)
    report["witnesses"] = [str(f) for f in fails]
    return report, 0 if ok else 1


def cmd_cohomology(args):
    if args.base:
        base = _load_cdga(args.base)
        kind, obj = _load_any(args.file, base)
    else:
        kind, obj = _load_any(args.file)
    tables = {}
    for n in range(0, args.deg_max + 1):
        for r in range(0, args.wt_max + 1):
            dim = obj.cohomology_slice(n, r)[0]
            if dim:
                tables[(n, r)] = dim
    report = _base_report("cohomology", args, True)
    report["tables"] = tables
    return report, 0


def cmd_bar_h0(args):
    A = _load_cdga(args.file)
    hopf = h0_hopf(A, args.wt_max)
    report = _base_report("bar-h0", args, True)
    report["tables"] = hopf.dims()
    report["truncated"] = {
        m: bar_truncated_h0(A, m, args.wt_max)
        for m in range(args.wt_max + 1)
    }
    return report, 0


def cmd_colie(args):
    A = _load_cdga(args.file)
    gam = gamma(A, args.wt_max)
    report = _base_report("colie", args, True)
    report["tables"] = gam.dims()
    report["generators"] = {
        g: {"weight": w} for g, (w, _) in enumerate(gam.basis)
    }
    report["structure_constants"] = {
        g: cb for g, cb in gam.cobracket.items() if cb
    }
    return report, 0


def cmd_minimal_model(args):
    A = _load_cdga(args.file)
    base = _load_cdga(args.base) if args.base else trivial_base()
    mm = relative_minimal_model(base, A, args.n, args.wt_max)
    ok = mm.certified()
    report = _base_report("minimal-model", args, ok)
    report["generators"] = {
        name: {"deg": mm.model.gen[name].coh, "wt": mm.model.gen[name].adams}
        for name in mm.fiber_names
    }
    report["tables"] = {
        (i, m): bool(v) for (i, m), v in mm.certification.items()
    }
    report["stage_iterations"] = [s["iterations"] for s in mm.stage_log]
    return report, 0 if ok else 1


def cmd_quillen(args):
    A = _load_cdga(args.file)
    ok, details = quillen_compare(A, args.wt_max)
    report = _base_report("quillen", args, ok)
    report["witnesses"] = [] if ok else [str(details)]
    return report, 0 if ok else 1


def cmd_kernel(args):
    X = _augmented(args)
    sd = semidirect(X, args.wt_max)
    ok = sd.verdict == "pass"
    report = _base_report("kernel", args, ok)
    report.update(
        {
            "weights": sd.weights,
            "kernel_dims": sd.kernel_dims,
            "base_dims": sd.base_dims,
            "total_dims": sd.total_dims,
            "coaction_split": sd.coaction_split,
            "coaction_conn": sd.coaction_conn,
        }
    )
    return report, 0 if ok else 1


def cmd_coaction_check(args):
    X = _augmented(args)
    ok, mats = coaction_check(X, args.wt_max)
    report = _base_report("coaction-check", args, ok)
    report["coaction_split"] = mats["split"]
    report["coaction_conn"] = mats["conn"]
    return report, 0 if ok else 1


def cmd_delta_approx(args):
    X = _augmented(args)
    rep = delta_approximation(X, args.n, args.wt_max)
    ok = (
        rep["d_squared_ok"]
        and rep["q_chain_map_ok"]
        and rep["system_compat_ok"]
    )
    report = _base_report("delta-approx", args, ok)
    report["tables"] = rep["dims"]
    report["full_dims"] = rep["full_dims"]
    report["stable_n"] = rep["stable_n"]
    return report, 0 if ok else 1


def cmd_pi1_demo(args):
    rep = pi1_demo(args.punctures, args.wt_max)
    report = _base_report("pi1-demo", args, True)
    report.update(rep)
    return report, 0


def _base_report(command, args, ok):
    return {
        "command": command,
        "window": {"deg_max": getattr(args, "deg_max", None),
                   "wt_max": getattr(args, "wt_max", None)},
        "verdict": "pass" if ok else "fail",
    }


def build_arg_parser():
    ap = argparse.ArgumentParser(
        prog="adamsbar",
        description="Exact computations with Adams-graded cdgas: bar "
        "constructions, minimal models, and semidirect kernel data.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, file_arg=True):
        if file_arg:
            p.add_argument("file", help="presentation file")
        p.add_argument("--wt-max", dest="wt_max", type=int, default=3)
        p.add_argument("--deg-max", dest="deg_max", type=int, default=4)
        p.add_argument("--out", dest="out", default=None)

    p = sub.add_parser("validate")
    common(p)
    p.add_argument("--base", default=None,
                   help="algebra file for a cell module")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology")
    common(p)
    p.add_argument("--base", default=None)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("bar-h0")
    common(p)
    p.set_defaults(func=cmd_bar_h0)

    p = sub.add_parser("colie")
    common(p)
    p.set_defaults(func=cmd_colie)

    p = sub.add_parser("minimal-model")
    common(p)
    p.add_argument("--base", default=None)
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_minimal_model)

    p = sub.add_parser("quillen")
    common(p)
    p.set_defaults(func=cmd_quillen)

    p = sub.add_parser("kernel")
    common(p, file_arg=False)
    p.add_argument("--base", required=True)
    p.add_argument("--total", required=True)
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("coaction-check")
    common(p, file_arg=False)
    p.add_argument("--base", required=True)
    p.add_argument("--total", required=True)
    p.set_defaults(func=cmd_coaction_check)

    p = sub.add_parser("delta-approx")
    common(p)
    p.add_argument("--base", default=None)
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_delta_approx)

    p = sub.add_parser("pi1-demo")
    common(p, file_arg=False)
    p.add_argument("--punctures", type=int, required=True)
    p.set_defaults(func=cmd_pi1_demo)

    return ap


def main(argv=None):
    # advisory knob: caps internal parallelism; evaluation here is
    # single-process, so it has no semantic effect
    os.environ.get("ADAMS_BAR_THREADS")
    ap = build_arg_parser()
    args = ap.parse_args(argv)
    try:
        report, code = args.func(args)
    except (ParseError, OSError, RelativeError, ModuleError,
            cdga_mod.CdgaError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
