"""Command-line front end.

Runs the symbolic and numerical pipelines and emits reports in text, JSON,
or CSV (curvature heatmaps).  Exit codes: 0 success, 2 when a theorem's
hypotheses are not met (an informative verdict, distinct from an error),
1 on errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from . import invariants as inv
from . import triples as tr
from . import vortex as vx
from .dirac import BundleSpec, LineBundleSpec, build_dirac, kernel_frame
from .errors import NahmTriplesError, UnsupportedFormat
from .sweep import (
    berry_curvature,
    double_transform,
    heatmap_rows,
    transform_morphism,
    transform_sweep,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2


@dataclass
class Report:
    """Structured result of one CLI command."""

    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    citations: List[str] = field(default_factory=list)
    schema_version: int = SCHEMA_VERSION


def _rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def _float(x: float) -> str:
    return f"{x:.12g}"


def _window_payload(w: tr.AlphaWindow) -> Dict[str, Any]:
    return {
        "alpha_m": _rat(w.alpha_m),
        "alpha_M": _rat(w.alpha_M) if w.alpha_M is not None else "inf",
        "criticals": [_rat(c) for c in w.criticals],
        "alpha_L": _rat(w.alpha_L),
        "chambers": w.chamber_count(),
        "note": "critical values are candidates (documented superset)",
    }


def _verdict_payload(v: tr.PreservationVerdict) -> Dict[str, Any]:
    out: Dict[str, Any] = {"applies": v.applies, "reason": v.reason}
    if v.transformed is not None:
        out["transformed"] = list(v.transformed.as_tuple())
    if v.it_index is not None:
        out["it_index"] = v.it_index.index
    if v.fibration_dim_N is not None:
        out["fibration_dim_N"] = v.fibration_dim_N
    if v.moduli_dim is not None:
        out["moduli_dim"] = v.moduli_dim
    if v.transformed_window is not None:
        out["transformed_window"] = _window_payload(v.transformed_window)
    return out


# -- command implementations -------------------------------------------------

def cmd_fm_class(args: argparse.Namespace) -> Report:
    b = inv.BundleClass.of(args.rank, args.degree)
    it = inv.it_class(b)
    bt, _ = inv.fm_transform_class(b)
    p = bt.summands[0].pair
    md = inv.moduli_descriptor(args.rank, args.degree)
    mdt = inv.moduli_descriptor(p.rank, p.degree)
    return Report(
        command="fm-class",
        inputs={"rank": args.rank, "degree": args.degree},
        results={
            "slope": _rat(inv.slope(b)),
            "it_index": it.index,
            "transformed": [p.rank, p.degree],
            "transformed_slope": _rat(p.slope()),
            "transformed_it_index": 1 - it.index,
            "moduli": {"h": md.h, "description": md.description,
                       "all_stable": md.all_stable},
            "transformed_moduli": {"h": mdt.h, "description": mdt.description,
                                   "all_stable": mdt.all_stable},
        },
        citations=[
            "transform on invariants: (r, d) -> (-1)^i (d, -r)",
            "index 0 iff degree > 0, index 1 iff degree < 0",
            "moduli of type (r, d) is the h-th symmetric product, h = gcd(r, |d|)",
        ],
    )


def _triple(args: argparse.Namespace) -> tr.TripleType:
    return tr.TripleType(args.n1, args.n2, args.d1, args.d2)


def cmd_alpha_window(args: argparse.Namespace) -> Report:
    t = _triple(args)
    cap = parse_rational(args.cap) if args.cap else None
    w = tr.alpha_window(t, cap=cap)
    return Report(
        command="alpha-window",
        inputs={"triple": list(t.as_tuple()), "cap": args.cap},
        results=_window_payload(w),
        citations=[
            "alpha_m = mu1 - mu2; alpha_M = (1 + (n1+n2)/|n1-n2|)(mu1 - mu2), infinite when n1 = n2",
        ],
    )


def cmd_critical_values(args: argparse.Namespace) -> Report:
    t = _triple(args)
    cap = parse_rational(args.cap) if args.cap else None
    crits = tr.critical_values(t, cap=cap)
    return Report(
        command="critical-values",
        inputs={"triple": list(t.as_tuple()), "cap": args.cap},
        results={"criticals": [_rat(c) for c in crits],
                 "note": "candidates (documented superset)"},
        citations=[
            "walls solve mu_alpha(subtype) = mu_alpha(type) over proper integer subtypes",
        ],
    )


def cmd_transform_triple(args: argparse.Namespace) -> Report:
    t = _triple(args)
    t_hat, it = tr.transform_triple_type(t)
    return Report(
        command="transform-triple",
        inputs={"triple": list(t.as_tuple())},
        results={"transformed": list(t_hat.as_tuple()), "it_index": it.index},
        citations=["componentwise transform (r, d) -> (-1)^i (d, -r)"],
    )


def cmd_check_preservation(args: argparse.Namespace) -> Report:
    t = _triple(args)
    if args.regime == "small":
        v = tr.check_small_alpha_preservation(t)
        checklist = [
            ("gcd(n1,d1)=1", tr.gcd(t.n1, t.d1) == 1),
            ("gcd(n2,d2)=1", tr.gcd(t.n2, t.d2) == 1),
            ("d1*d2>0", t.d1 * t.d2 > 0),
        ]
    elif args.regime == "large":
        v = tr.check_large_alpha_preservation(t)
        w = t if t.n1 > t.n2 else t.dual()
        checklist = [
            ("n1!=n2", t.n1 != t.n2),
            ("gcd(n1-n2,d1-d2)=1", t.n1 != t.n2
             and tr.gcd(abs(w.n1 - w.n2), abs(w.d1 - w.d2)) == 1),
            ("gcd(n2,d2)=1", tr.gcd(w.n2, w.d2) == 1),
            ("uniform sign of d1,d2,d1-d2",
             len({w.d1 > 0, w.d2 > 0, w.d1 - w.d2 > 0}) == 1
             and 0 not in (w.d1, w.d2, w.d1 - w.d2)),
        ]
    else:
        v = tr.check_equal_ranks_case(t)
        checklist = [
            ("d1!=0", t.d1 != 0),
            ("gcd(n1,d1)=1", tr.gcd(t.n1, t.d1) == 1),
        ]
    payload = _verdict_payload(v)
    payload["checklist"] = [
        {"hypothesis": h, "holds": ok} for h, ok in checklist
    ]
    return Report(
        command="check-preservation",
        inputs={"triple": list(t.as_tuple()), "regime": args.regime},
        results=payload,
        citations=[
            "stability near the window boundary is preserved by the transform when the hypotheses hold",
        ],
    )


def cmd_vortex_params(args: argparse.Namespace) -> Report:
    t = _triple(args)
    if args.alpha:
        v = vx.tau_from_alpha(t, parse_rational(args.alpha))
    elif args.tau:
        v = vx.alpha_from_tau(t, parse_rational(args.tau))
    else:
        raise NahmTriplesError("supply --alpha or --tau")
    return Report(
        command="vortex-params",
        inputs={"triple": list(t.as_tuple()), "alpha": args.alpha, "tau": args.tau},
        results={"tau": _rat(v.tau), "tau_prime": _rat(v.tau_prime),
                 "alpha": _rat(v.alpha)},
        citations=["n1 tau + n2 tau' = d1 + d2 and alpha = tau - tau'"],
    )


def cmd_cov_const(args: argparse.Namespace) -> Report:
    t = _triple(args)
    v = vx.tau_from_alpha(t, parse_rational(args.alpha))
    c = vx.cov_const_slopes(v)
    nahm = vx.nahm_cov_const(c, v)
    return Report(
        command="cov-const",
        inputs={"triple": list(t.as_tuple()), "alpha": args.alpha},
        results={
            "slopes": [_rat(s) for s in c.slopes],
            "lambda_over_pi": _rat(c.lambda_over_pi),
            "transformed_slopes": [_rat(s) for s in nahm.transformed.slopes],
            "solvable": nahm.solvable,
            "tau_hat": _rat(nahm.tau_hat) if nahm.tau_hat is not None else None,
        },
        citations=[
            "block slopes (tau, (tau+tau')/2, tau'); eigenvalue pi (tau - tau')",
            "transformed slopes (-1/tau, -2/(tau+tau'), -1/tau')",
            "transformed equations solvable iff tau = tau'",
        ],
    )


def cmd_counterexample(args: argparse.Namespace) -> Report:
    blocks, verdict = vx.polystability_counterexample(
        parse_rational(args.mu1), parse_rational(args.mu2)
    )
    t = blocks.triple_type()
    return Report(
        command="counterexample",
        inputs={"mu1": args.mu1, "mu2": args.mu2},
        results={
            "blocks": [[kind, [p.rank, p.degree]] for kind, p in blocks.blocks],
            "type": list(t.as_tuple()),
            "verdict": verdict,
        },
        citations=[
            "a polystable block triple whose transformed vortex equations are unsolvable",
        ],
    )


def cmd_nahm_line(args: argparse.Namespace) -> Report:
    spec = BundleSpec((LineBundleSpec(args.degree),))
    sweep = transform_sweep(spec, args.dual_grid, args.grid, workers=args.workers)
    cur = berry_curvature(sweep)
    report = Report(
        command="nahm-line",
        inputs={"degree": args.degree, "grid": args.grid,
                "dual_grid": args.dual_grid},
        results={
            "chern": cur.chern,
            "rank": sweep.rank(),
            "mean_curvature_density": _float(cur.mean_curvature_density),
            "target_curvature_density": _float(-2 * np.pi / args.degree),
            "max_relative_deviation": _float(cur.max_relative_deviation),
            "min_gap_ratio": _float(sweep.min_gap_ratio),
            "runtime_seconds": _float(sweep.runtime),
            "tolerances": {"mean_curvature_density": "3% of target",
                           "max_relative_deviation": "<= 0.05"},
        },
        citations=[
            "transformed curvature density is -2 pi / slope of the input",
            "lattice Chern number equals minus the input rank",
        ],
    )
    if args.heatmap:
        with open(args.heatmap, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["i", "j", "w_re", "w_im", "plaquette_phase"])
            w.writerows(heatmap_rows(cur, args.dual_grid))
    report._heatmap = heatmap_rows(cur, args.dual_grid)  # type: ignore[attr-defined]
    return report


def cmd_double_transform(args: argparse.Namespace) -> Report:
    spec = LineBundleSpec(args.degree)
    res = double_transform(spec, args.dual_grid, args.grid, workers=args.workers)
    return Report(
        command="double-transform",
        inputs={"degree": args.degree, "grid": args.grid,
                "dual_grid": args.dual_grid},
        results={
            "lambda_out": _float(res.lambda_out),
            "lambda_in": _float(res.lambda_in),
            "chern_pair": list(res.chern_pair),
            "tolerances": {"lambda_out": "5% of lambda_in"},
        },
        citations=["the double transform restores the input bundle"],
    )


def cmd_verify_all(args: argparse.Namespace) -> Report:
    from .verify import run_all

    results, ok = run_all(quick=args.quick)
    rep = Report(
        command="verify-all",
        inputs={"quick": args.quick},
        results={"criteria": results, "all_passed": ok},
        citations=["property-based acceptance checks of every module"],
    )
    if not ok:
        rep._failed = True  # type: ignore[attr-defined]
    return rep


# -- serialization ------------------------------------------------------------

def emit(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {
                "schema_version": report.schema_version,
                "command": report.command,
                "inputs": report.inputs,
                "results": report.results,
                "citations": report.citations,
            },
            indent=2,
            sort_keys=True,
        )
    if fmt == "text":
        buf = io.StringIO()
        buf.write(f"command: {report.command}\n")
        for k, v in report.inputs.items():
            buf.write(f"  input {k}: {v}\n")
        _emit_text(buf, report.results, indent=1)
        for c in report.citations:
            buf.write(f"  note: {c}\n")
        return buf.getvalue()
    if fmt == "csv":
        rows = getattr(report, "_heatmap", None)
        if rows is None:
            raise UnsupportedFormat("csv output is only defined for curvature maps")
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["i", "j", "w_re", "w_im", "plaquette_phase"])
        w.writerows(rows)
        return buf.getvalue()
    raise UnsupportedFormat(f"unknown format {fmt!r}")


def _emit_text(buf: io.StringIO, obj: Any, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if k == "checklist" and isinstance(v, list):
                buf.write(f"{pad}checklist:\n")
                for item in v:
                    mark = "✓" if item["holds"] else "✗"
                    buf.write(f"{pad}  {item['hypothesis']} {mark}\n")
            elif isinstance(v, (dict, list)) and v and not _is_flat(v):
                buf.write(f"{pad}{k}:\n")
                _emit_text(buf, v, indent + 1)
            else:
                buf.write(f"{pad}{k}: {v}\n")
    elif isinstance(obj, list):
        for v in obj:
            buf.write(f"{pad}- {v}\n")


def _is_flat(v: Any) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


def parse_report_json(text: str) -> Report:
    data = json.loads(text)
    return Report(
        command=data["command"],
        inputs=data["inputs"],
        results=data["results"],
        citations=data["citations"],
        schema_version=data["schema_version"],
    )


# -- argument parsing ---------------------------------------------------------

def _add_triple_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("n1", type=int)
    p.add_argument("n2", type=int)
    p.add_argument("d1", type=int)
    p.add_argument("d2", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nahmtriples",
        description="Transforms, stability windows, vortex parameters, and "
                    "numerical index-bundle sweeps on elliptic curves",
    )
    ap.add_argument("--format", choices=["text", "json", "csv"], default="text")
    ap.add_argument("--out", help="write the report to a file")
    ap.add_argument("--config", help="JSON config file mirroring flags (flags win)")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("fm-class", help="transform of a (rank, degree) class")
    p.add_argument("rank", type=int)
    p.add_argument("degree", type=int)
    p.set_defaults(fn=cmd_fm_class)

    p = sub.add_parser("alpha-window", help="stability-parameter window")
    _add_triple_args(p)
    p.add_argument("--cap", help="finite cap (rational) when n1 = n2")
    p.set_defaults(fn=cmd_alpha_window)

    p = sub.add_parser("critical-values", help="candidate chamber walls")
    _add_triple_args(p)
    p.add_argument("--cap", help="finite cap (rational) when n1 = n2")
    p.set_defaults(fn=cmd_critical_values)

    p = sub.add_parser("transform-triple", help="componentwise type transform")
    _add_triple_args(p)
    p.set_defaults(fn=cmd_transform_triple)

    p = sub.add_parser("check-preservation", help="stability preservation verdict")
    p.add_argument("--regime", choices=["small", "large", "equal-ranks"],
                   required=True)
    _add_triple_args(p)
    p.set_defaults(fn=cmd_check_preservation)

    p = sub.add_parser("vortex-params", help="tau / tau' / alpha conversions")
    _add_triple_args(p)
    p.add_argument("--alpha", help="rational alpha")
    p.add_argument("--tau", help="rational tau")
    p.set_defaults(fn=cmd_vortex_params)

    p = sub.add_parser("cov-const", help="covariantly constant block slopes")
    _add_triple_args(p)
    p.add_argument("--alpha", required=True, help="rational alpha")
    p.set_defaults(fn=cmd_cov_const)

    p = sub.add_parser("counterexample", help="polystability-failure block triple")
    p.add_argument("mu1")
    p.add_argument("mu2")
    p.set_defaults(fn=cmd_counterexample)

    p = sub.add_parser("nahm-line", help="numerical transform of a line bundle")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--dual-grid", type=int, default=12)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--heatmap", help="write the plaquette CSV heatmap to a file")
    p.set_defaults(fn=cmd_nahm_line)

    p = sub.add_parser("double-transform", help="two transforms round trip")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--grid", type=int, default=32)
    p.add_argument("--dual-grid", type=int, default=12)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(fn=cmd_double_transform)

    p = sub.add_parser("verify-all", help="run every acceptance criterion")
    p.add_argument("--quick", action="store_true",
                   help="reduced numerical sizes (smoke check)")
    p.set_defaults(fn=cmd_verify_all)

    return ap


def _apply_config(args: argparse.Namespace, argv: List[str]) -> None:
    if not args.config:
        return
    with open(args.config) as fh:
        cfg = json.load(fh)
    for key, val in cfg.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            continue
        flag = f"--{key}"
        if flag not in argv:  # explicit flags win over the config file
            setattr(args, attr, val)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _apply_config(args, argv)
        report = args.fn(args)
        text = emit(report, args.format)
    except NahmTriplesError as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    if report.command == "check-preservation" and not report.results["applies"]:
        return EXIT_HYPOTHESIS
    if getattr(report, "_failed", False):
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
