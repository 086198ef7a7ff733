"""Command-line workbench.

Subcommands: sample, spectrum, sst, limit, local, converge, gap, oracle.
Complexes travel in the canonical text format (header "n d", one d-face per
line).  Exit codes: 0 success, 2 validation error, 3 sampler exhaustion.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .complexes import PureComplex, read_complex, write_complex
from .experiments import (
    ExperimentConfig,
    converge_csv,
    converge_json,
    gap_csv,
    run_converge,
    run_gap_report,
)
from .limitlaw import (
    LimitLaw,
    growth_constant_chebyshev,
    growth_constant_closed,
    growth_constant_quadrature,
)
from .sampling import SamplerExhausted, SeededRng, steiner_complex
from .spectra import spectral_summary
from .trees import tree_count_exact, tree_growth_rate, weighted_tree_count

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SAMPLER = 3


def _add_sample_source(parser: argparse.ArgumentParser, with_input: bool = True) -> None:
    if with_input:
        parser.add_argument("--in", dest="infile", type=Path, help="complex file to load")
    parser.add_argument("--d", type=int, help="complex dimension")
    parser.add_argument("--k", type=int, help="number of Steiner systems in the union")
    parser.add_argument("--n", type=int, help="vertex count")
    parser.add_argument("--seed", type=int, default=0, help="master seed")
    parser.add_argument("--trial", type=int, default=0, help="stream index when sampling")


def _resolve_complex(args: argparse.Namespace) -> PureComplex:
    if getattr(args, "infile", None) is not None:
        return read_complex(args.infile)
    if args.d is None or args.k is None or args.n is None:
        raise ValueError("either --in or all of --d/--k/--n are required")
    rng = SeededRng(args.seed).substream(args.n, args.trial)
    return steiner_complex(args.n, args.d, args.k, rng)


def _write_text(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _cmd_sample(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for trial in range(args.trials):
        rng = SeededRng(args.seed).substream(args.n, trial)
        X = steiner_complex(args.n, args.d, args.k, rng)
        write_complex(X, out / f"complex_n{args.n}_t{trial}.txt")
    print(f"wrote {args.trials} complex(es) to {out}")
    return EXIT_OK


def _cmd_spectrum(args: argparse.Namespace) -> int:
    X = _resolve_complex(args)
    summary = spectral_summary(X, operator=args.op, bins=args.bins, lmax=args.lmax)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["bin_lo", "bin_hi", "mass"])
    for i, mass in enumerate(summary.hist_masses):
        writer.writerow([repr(float(summary.hist_edges[i])), repr(float(summary.hist_edges[i + 1])), repr(float(mass))])
    _write_text(args.out, buf.getvalue())
    sidecar = {
        "operator": args.op,
        "n": X.n,
        "d": X.d,
        "moments": list(summary.moments),
        "trivial_zero_count": summary.trivial_zero_count,
    }
    if args.out is not None:
        args.out.with_suffix(".json").write_text(json.dumps(sidecar, indent=2) + "\n")
    else:
        sys.stdout.write(json.dumps(sidecar, indent=2) + "\n")
    return EXIT_OK


def _cmd_sst(args: argparse.Namespace) -> int:
    X = _resolve_complex(args)
    result = weighted_tree_count(X, oracle=args.oracle)
    payload = {
        "log_kappa": None if result.zero_flag else result.log_count,
        "kappa_root": tree_growth_rate(X),
        "trivial_zeros": result.trivial_zeros,
        "flag": result.zero_flag,
    }
    if result.exact_count is not None:
        payload["exact"] = result.exact_count
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _cmd_limit(args: argparse.Namespace) -> int:
    closed = growth_constant_closed(args.d, args.k)
    quadrature = growth_constant_quadrature(args.d, args.k)
    chebyshev = growth_constant_chebyshev(args.d, args.k)
    print(f"growth constant, d={args.d} k={args.k}")
    print(f"  closed form : {closed!r}")
    print(f"  quadrature  : {quadrature!r}")
    print(f"  chebyshev   : {chebyshev!r}")
    if args.table:
        lo, hi, steps = args.table
        law = LimitLaw(args.d, args.k)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["x", "nu", "mu"])
        for x in np.linspace(lo, hi, steps):
            writer.writerow([repr(float(x)), repr(law.laplacian_density(float(x))), repr(law.adjacency_density(float(x)))])
        _write_text(args.out, buf.getvalue())
    return EXIT_OK


def _cmd_local(args: argparse.Namespace) -> int:
    from .arboreal import arboreal_fraction

    radii = args.r or [1]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "n", "r", "fraction"])
    for trial in range(args.trials):
        rng = SeededRng(args.seed).substream(args.n, trial)
        X = steiner_complex(args.n, args.d, args.k, rng)
        for r in radii:
            writer.writerow([trial, args.n, r, repr(arboreal_fraction(X, args.k, r))])
    _write_text(args.out, buf.getvalue())
    return EXIT_OK


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        d=args.d,
        k=args.k,
        n_values=tuple(args.n),
        trials=args.trials,
        radii=tuple(args.r or [1]),
        seed=args.seed,
        lmax=args.lmax,
        deterministic=args.deterministic,
        complex_dir=args.keep_complexes,
    )


def _cmd_converge(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    result = run_converge(config)
    text = converge_json(result, config) if args.format == "json" else converge_csv(result, config)
    _write_text(args.out, text)
    for failure in result.failures:
        print(f"skipped n={failure.n} trial={failure.trial}: {failure.reason}", file=sys.stderr)
    return EXIT_OK


def _cmd_gap(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    report = run_gap_report(config, epsilon=args.eps)
    _write_text(args.out, gap_csv(report, config))
    print(f"pass fraction: {report.pass_fraction:.3f} "
          f"(threshold {report.threshold_base:.4f} + eps {report.epsilon})", file=sys.stderr)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    X = read_complex(args.infile)
    exact = tree_count_exact(X)
    payload = {"n": X.n, "d": X.d, "exact_kappa": exact}
    _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _parse_table(raw: str) -> tuple[float, float, int]:
    parts = raw.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected lo:hi:steps")
    return (float(parts[0]), float(parts[1]), int(parts[2]))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinerlab",
        description="Random Steiner complexes: sampling, spectra, spanning-tree counts, limit laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample complexes to text files, one per trial")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("spectrum", help="eigenvalue histogram and moments of an operator")
    _add_sample_source(p)
    p.add_argument("--op", choices=["laplacian", "adjacency"], default="laplacian")
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--lmax", type=int, default=8)
    p.add_argument("--out", type=Path, default=None, help="histogram CSV (JSON sidecar alongside)")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("sst", help="weighted spanning-tree count of a complex")
    _add_sample_source(p)
    p.add_argument("--oracle", action="store_true", help="also run the exact enumeration oracle")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_sst)

    p = sub.add_parser("limit", help="growth constant by three routes; optional density table")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--table", type=_parse_table, default=None, metavar="LO:HI:STEPS")
    p.add_argument("--out", type=Path, default=None, help="density table CSV")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("local", help="arboreal-neighborhood fractions per trial")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, action="append", help="radius (repeatable)")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_local)

    p = sub.add_parser("converge", help="full convergence ensemble over an n-grid")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, action="append", required=True, help="vertex count (repeatable)")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, action="append", help="arboreal radius (repeatable)")
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--deterministic", action="store_true", help="suppress the timestamp header")
    p.add_argument("--keep-complexes", type=Path, default=None, help="persist sampled complexes here")
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("gap", help="adjacency spectral-gap statistic per trial")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, action="append", required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--r", type=int, action="append")
    p.add_argument("--lmax", type=int, default=0)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--keep-complexes", type=Path, default=None)
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("oracle", help="exact enumeration count for a complex file")
    p.add_argument("--in", dest="infile", type=Path, required=True)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SamplerExhausted as exc:
        print(f"sampler exhausted: {exc}", file=sys.stderr)
        return EXIT_SAMPLER
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
