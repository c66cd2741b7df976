"""Command-line front end: classify, verify, density, probe, report.

Exit codes, stable across subcommands:

* 0 — classified in scope, certificate passed, or report produced;
* 2 — OutOfScope classification or a failed/blocked certification;
* 1 — malformed input (scalar syntax, grid override, degenerate basis).

The default grid is 2048 samples over a 32-second window; the environment
variable HRTLAB_GRID="N,T" overrides it for every subcommand.  Reports name
the certified-statement ledger tags verbatim (hrt_dense_large_covolume,
hrt_finite_relative_orbit, ...) for traceability; emitting a tag never
claims this build is itself certified.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .density_lab import (
    ProbeEntry,
    completeness_probe,
    density_witness_table,
    write_probe_csv,
)
from .exact_scalars import (
    Configuration,
    DenseLargeCovolume,
    OutOfScope,
    RationalCoordinate,
    ScalarParseError,
    classify,
    parse_scalar,
)
from .independence_lab import (
    DEFAULT_THRESHOLD,
    DuplicatePointsError,
    certify_independence,
)
from .phase_space import DegenerateBasisError, LatticeBasis, PhasePoint, covolume
from .signal_kernel import GridSpec, ZeroSignalError, make_gaussian

__all__ = ["main", "DEFAULT_GRID"]

DEFAULT_GRID = GridSpec(2048, 32.0)

TAG_DENSE = "hrt_dense_large_covolume"
TAG_DENSE_LINDEP = "hrt_dense_large_covolume_lindep"
TAG_RATIONAL = "hrt_finite_relative_orbit"
TAG_OUT_OF_SCOPE = "out-of-scope"
TAG_DENSITY = "dense_semigroup_preserves_all_phase_space"
TAG_PROBE = "large_covolume_contradiction"

CAVEAT = (
    "Numerical evidence, not proof: Gram certificates and truncated-orbit "
    "residuals support the tagged certified statements; they do not re-prove "
    "them, and small residuals never certify dependence or completeness."
)


class _CliInputError(Exception):
    """Malformed user input; rendered to stderr with exit code 1."""


def _grid_from_env() -> GridSpec:
    raw = os.environ.get("HRTLAB_GRID")
    if raw is None:
        return DEFAULT_GRID
    try:
        n_text, t_text = raw.split(",")
        return GridSpec(int(n_text.strip()), float(t_text.strip()))
    except (ValueError, TypeError) as exc:
        raise _CliInputError(f'HRTLAB_GRID must be "N,T"; got {raw!r} ({exc})')


def _parse_scalar_arg(flag: str, text: str):
    try:
        return parse_scalar(text)
    except ScalarParseError as exc:
        raise _CliInputError(f"{flag}: line 1, {exc}") from exc


def _build_config(args) -> Configuration:
    try:
        basis = LatticeBasis(
            PhasePoint(args.a[0], args.a[1]), PhasePoint(args.b[0], args.b[1])
        )
    except (DegenerateBasisError, ValueError) as exc:
        raise _CliInputError(str(exc)) from exc
    r = _parse_scalar_arg("--r", args.r)
    s = _parse_scalar_arg("--s", args.s)
    return Configuration(basis, r, s)


def _classification_dict(result) -> dict:
    if isinstance(result, DenseLargeCovolume):
        return {"kind": "DenseLargeCovolume", "lean_tag": TAG_DENSE}
    if isinstance(result, RationalCoordinate):
        return {"kind": "RationalCoordinate", "N": result.N, "lean_tag": TAG_RATIONAL}
    assert isinstance(result, OutOfScope)
    return {
        "kind": "OutOfScope",
        "reason": result.reason.value,
        "lean_tag": TAG_OUT_OF_SCOPE,
        "note": "no certified statement applies to this configuration",
    }


def _emit_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# Subcommands


def _cmd_classify(args) -> int:
    config = _build_config(args)
    result = classify(config)
    info = _classification_dict(result)
    info["covolume"] = covolume(config.basis)
    if args.format == "json":
        sys.stdout.write(_emit_json(info))
    else:
        print(f"classification: {info['kind']}")
        if "N" in info:
            print(f"refinement N: {info['N']}")
        if "reason" in info:
            print(f"reason: {info['reason']}")
            print(info["note"])
        print(f"lean_tag: {info['lean_tag']}")
        print(f"covolume: {info['covolume']:g}")
    return 0 if not isinstance(result, OutOfScope) else 2


def _cmd_verify(args) -> int:
    config = _build_config(args)
    grid = _grid_from_env()
    window = make_gaussian(grid)
    try:
        report = certify_independence(window, config, args.threshold)
    except (DuplicatePointsError, ZeroSignalError) as exc:
        print(f"not certified: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        sys.stdout.write(_emit_json(report.to_json_dict()))
    else:
        print(f"certified_independent: {report.certified_independent}")
        print(f"min_singular: {report.min_singular:.6e}")
        print(f"threshold: {report.threshold:g}")
        cond = "inf" if report.condition == float("inf") else f"{report.condition:.6e}"
        print(f"condition: {cond}")
        print(f"grid: {grid.n_samples},{grid.period:g}")
    return 0 if report.certified_independent else 2


def _witness_dict(witness) -> Optional[dict]:
    if witness is None:
        return None
    return {"n": witness.n, "m1": witness.m1, "m2": witness.m2, "error": witness.error}


def _density_doc(config: Configuration, args) -> dict:
    table = density_witness_table(
        config, args.eps, args.n_max, args.num_targets, args.seed
    )
    found = [w for _, w in table if w is not None]
    return {
        "eps": args.eps,
        "n_max": args.n_max,
        "num_targets": args.num_targets,
        "seed": args.seed,
        "success_rate": len(found) / len(table),
        "witnesses_found": len(found),
        "lean_tag": TAG_DENSITY,
        "table": [
            {"target": [t.x, t.omega], "witness": _witness_dict(w)} for t, w in table
        ],
    }


def _cmd_density(args) -> int:
    config = _build_config(args)
    if args.target is not None:
        from .density_lab import semigroup_witness

        target = PhasePoint(args.target[0], args.target[1])
        witness = semigroup_witness(config, target, args.eps, args.n_max)
        doc = {
            "target": [target.x, target.omega],
            "eps": args.eps,
            "n_max": args.n_max,
            "witness": _witness_dict(witness),
            "lean_tag": TAG_DENSITY,
        }
        if args.format == "json":
            sys.stdout.write(_emit_json(doc))
        elif witness is None:
            print("no witness found")
        else:
            print(
                f"witness: n={witness.n} m1={witness.m1} m2={witness.m2} "
                f"error={witness.error:.3e}"
            )
        return 0
    doc = _density_doc(config, args)
    if args.format == "json":
        sys.stdout.write(_emit_json(doc))
    elif args.format == "csv":
        print("target_x,target_omega,n,m1,m2,error")
        for row in doc["table"]:
            t = row["target"]
            w = row["witness"]
            if w is None:
                print(f"{t[0]!r},{t[1]!r},,,,")
            else:
                print(f"{t[0]!r},{t[1]!r},{w['n']},{w['m1']},{w['m2']},{w['error']!r}")
    else:
        print(f"success_rate: {doc['success_rate']:.4f}")
        print(f"witnesses: {doc['witnesses_found']}/{doc['num_targets']}")
        print(f"eps: {doc['eps']:g}  n_max: {doc['n_max']}  seed: {doc['seed']}")
    return 0


def _probe_doc(args, grid: GridSpec) -> tuple[dict, list[ProbeEntry]]:
    rows = completeness_probe(args.alphas, args.radius, grid)
    doc = {
        "coeff_radius": args.radius,
        "grid": {"n_samples": grid.n_samples, "period": grid.period},
        "lean_tag": TAG_PROBE,
        "rows": [
            {"alpha": row.alpha, "covol": row.covol, "residual": row.residual}
            for row in rows
        ],
    }
    return doc, rows


def _cmd_probe(args) -> int:
    grid = _grid_from_env()
    doc, rows = _probe_doc(args, grid)
    if args.format == "json":
        sys.stdout.write(_emit_json(doc))
    elif args.format == "csv":
        print("alpha,covol,R,residual")
        for row in rows:
            print(f"{row.alpha!r},{row.covol!r},{args.radius},{row.residual!r}")
    else:
        for row in rows:
            print(
                f"alpha={row.alpha:g}  covol={row.covol:g}  "
                f"residual={row.residual:.6e}"
            )
    if args.out_dir is not None:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_probe_csv(out / "probe.csv", rows, args.radius)
        from .figures import save_probe_figure

        save_probe_figure(out / "probe.png", rows, args.radius)
    return 0


def _cmd_report(args) -> int:
    config = _build_config(args)
    grid = _grid_from_env()
    doc: dict = {
        "inputs": {
            "a": [config.basis.a.x, config.basis.a.omega],
            "b": [config.basis.b.x, config.basis.b.omega],
            "r": args.r,
            "s": args.s,
            "grid": {"n_samples": grid.n_samples, "period": grid.period},
            "threshold": args.threshold,
            "eps": args.eps,
            "n_max": args.n_max,
            "num_targets": args.num_targets,
            "seed": args.seed,
            "alphas": list(args.alphas),
            "coeff_radius": args.radius,
        },
        "caveat": CAVEAT,
    }
    classification = classify(config)
    class_info = _classification_dict(classification)
    class_info["covolume"] = covolume(config.basis)
    doc["classification"] = class_info

    window = make_gaussian(grid)
    gram_report = None
    try:
        gram_report = certify_independence(window, config, args.threshold)
        gram_section = gram_report.to_json_dict()
        if isinstance(classification, RationalCoordinate):
            gram_section["lean_tag"] = TAG_RATIONAL
        elif isinstance(classification, DenseLargeCovolume):
            gram_section["lean_tag"] = TAG_DENSE_LINDEP
        else:
            gram_section["lean_tag"] = TAG_OUT_OF_SCOPE
    except (DuplicatePointsError, ZeroSignalError) as exc:
        gram_section = {"error": str(exc)}
    doc["gram"] = gram_section

    doc["density"] = _density_doc(config, args)
    probe_doc, probe_rows = _probe_doc(args, grid)
    doc["probe"] = probe_doc

    payload = _emit_json(doc)
    sys.stdout.write(payload)

    if args.out_dir is not None:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_bytes(payload.encode("utf-8"))
        write_probe_csv(out / "probe.csv", probe_rows, args.radius)
        from .figures import save_density_figure, save_gram_heatmap, save_probe_figure

        save_probe_figure(out / "probe.png", probe_rows, args.radius)
        witness_ns = [
            row["witness"]["n"]
            for row in doc["density"]["table"]
            if row["witness"] is not None
        ]
        save_density_figure(
            out / "density.png",
            witness_ns,
            args.eps,
            args.n_max,
            doc["density"]["success_rate"],
        )
        if gram_report is not None:
            save_gram_heatmap(out / "gram.png", gram_report)
    return 0


# --------------------------------------------------------------------------
# Parser


def _add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--a",
        nargs=2,
        type=float,
        default=[1.0, 0.0],
        metavar=("AX", "AOMEGA"),
        help="basis vector a (default: 1 0)",
    )
    parser.add_argument(
        "--b",
        nargs=2,
        type=float,
        default=[0.0, 1.0],
        metavar=("BX", "BOMEGA"),
        help="basis vector b (default: 0 1)",
    )
    parser.add_argument("--r", required=True, help='exact scalar, e.g. "1/2" or "sqrt(2)"')
    parser.add_argument("--s", required=True, help='exact scalar, e.g. "3/4" or "1+sqrt(3)"')


def _add_density_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", type=float, default=0.05, help="witness radius")
    parser.add_argument("--n-max", type=int, default=100_000, dest="n_max",
                        help="largest semigroup step count")
    parser.add_argument("--num-targets", type=int, default=200, dest="num_targets",
                        help="sampled targets per run")
    parser.add_argument("--seed", type=int, default=42, help="target-sampling seed")


def _add_probe_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alphas", nargs="+", type=float, default=[0.8, 1.2],
                        help="square-lattice spacings")
    parser.add_argument("--radius", type=int, default=6,
                        help="truncation radius R (family size (2R+1)^2)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrtlab",
        description=(
            "Verification laboratory for four-point time-frequency "
            "configurations {0, a, b, nu}: exact classification, Gram "
            "certification, density witnesses, completeness probes."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a configuration exactly")
    _add_config_arguments(p_classify)
    p_classify.add_argument("--format", choices=["text", "json"], default="text")
    p_classify.set_defaults(func=_cmd_classify)

    p_verify = sub.add_parser("verify", help="Gram-certify the four-point family")
    _add_config_arguments(p_verify)
    p_verify.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.set_defaults(func=_cmd_verify)

    p_density = sub.add_parser("density", help="Kronecker density witness search")
    _add_config_arguments(p_density)
    _add_density_arguments(p_density)
    p_density.add_argument("--target", nargs=2, type=float, default=None,
                           metavar=("X", "OMEGA"),
                           help="single target instead of a sampled table")
    p_density.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p_density.set_defaults(func=_cmd_density)

    p_probe = sub.add_parser("probe", help="deep-hole completeness probe")
    _add_probe_arguments(p_probe)
    p_probe.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p_probe.add_argument("--out-dir", default=None, dest="out_dir",
                         help="write probe.csv and probe.png here")
    p_probe.set_defaults(func=_cmd_probe)

    p_report = sub.add_parser(
        "report", help="consolidated JSON report (plus files with --out-dir)"
    )
    _add_config_arguments(p_report)
    p_report.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    _add_density_arguments(p_report)
    _add_probe_arguments(p_report)
    p_report.add_argument("--out-dir", default=None, dest="out_dir",
                          help="write report.json, probe.csv, and figures here")
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        # A malformed HRTLAB_GRID fails every subcommand, not only the ones
        # that consume the grid.
        _grid_from_env()
        return args.func(args)
    except _CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
