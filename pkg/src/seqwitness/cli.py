"""Command-line front end emitting reproducible CSV/JSON tables.

Commands map one-to-one onto the protocol computations: ``thresholds``,
``max-bobs``, ``sweep-entanglement``, ``sweep-lambda``, ``discord-final``,
and ``verify``. Emitted files are byte-stable for identical configurations
(deterministic ordering, 12-significant-digit decimals) and are written
atomically. ``--plot`` additionally renders a figure next to the data file
for the three plottable commands.

Exit status: 0 success, 1 failed verification, 2 invalid configuration,
3 internal invariant breach.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import __version__, cascade, correlations, verify
from .measurement import shrink_factor
from .qmath import InvalidState, NotHermitian
from .witness import stage_witness_value

OUTPUT_DIR_ENV = "SEQWITNESS_OUTPUT_DIR"
GRID_ENDPOINT_TOL = 1e-12
PLOTTABLE = ("thresholds", "sweep-entanglement", "sweep-lambda")


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _json_value(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def parse_grid(spec: str, name: str) -> list[float]:
    """Parse ``start:stop:step``, inclusive of both endpoints within 1e-12."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"{name} has a non-numeric component: {spec!r}") from None
    if step <= 0:
        raise ConfigError(f"{name} step must be positive, got {step}")
    if stop < start:
        raise ConfigError(f"{name} stop must be >= start, got {spec!r}")
    count = int(math.floor((stop - start + GRID_ENDPOINT_TOL) / step)) + 1
    values = [start + k * step for k in range(count)]
    if abs(values[-1] - stop) <= GRID_ENDPOINT_TOL:
        values[-1] = stop
    return values


def _check_entanglement(value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"entanglement must lie in [0, 1] ebits, got {value}")
    return value


# ---------------------------------------------------------------------------
# Table builders: each returns (columns, rows)
# ---------------------------------------------------------------------------

def _table_thresholds(args):
    ent = _check_entanglement(args.entanglement)
    if args.epsilon <= 0:
        raise ConfigError(f"epsilon must be positive, got {args.epsilon}")
    report = cascade.threshold_cascade(cascade.entanglement_to_ab(ent))
    columns = [
        "stage",
        "threshold",
        "witness_minus_epsilon",
        "witness_plus_epsilon",
        "cumulative_shrink",
    ]
    rows = []
    shrink = 1.0
    for i, t in enumerate(report.thresholds, start=1):
        prefix = list(report.thresholds[: i - 1])
        below = stage_witness_value(report.ab, prefix + [max(t - args.epsilon, 1e-15)])
        above = stage_witness_value(report.ab, prefix + [min(t + args.epsilon, 1.0)])
        shrink *= shrink_factor(t)
        rows.append([i, t, below, above, shrink])
    return columns, rows, report


def _table_max_bobs(args):
    ent = _check_entanglement(args.entanglement)
    ab = cascade.entanglement_to_ab(ent)
    report = cascade.threshold_cascade(ab)
    return (
        ["entanglement_ebits", "ab", "max_bobs"],
        [[ent, ab, report.max_bobs]],
        None,
    )


def _table_sweep_entanglement(args):
    grid = parse_grid(args.entanglement_grid, "--entanglement-grid")
    for e in grid:
        _check_entanglement(e)
    points = cascade.sweep_entanglement(grid)
    columns = ["entanglement_ebits", "max_bobs"]
    return columns, [[p.entanglement, p.max_bobs] for p in points], points


def _table_sweep_lambda(args):
    ent = _check_entanglement(args.entanglement)
    grid = parse_grid(args.lambda_grid, "--lambda-grid")
    for lam in grid:
        if not 0.0 < lam <= 1.0:
            raise ConfigError(f"lambda grid values must lie in (0, 1], got {lam}")
    points = cascade.sweep_lambda(cascade.entanglement_to_ab(ent), grid)
    columns = ["lambda", "max_bobs"]
    return columns, [[p.sharpness, p.max_bobs] for p in points], points


def _table_discord_final(args):
    ent = _check_entanglement(args.entanglement)
    ab = cascade.entanglement_to_ab(ent)
    conventions = (
        [args.convention] if args.convention else list(correlations.DISCORD_CONVENTIONS)
    )
    columns = [
        "convention",
        "negativity",
        "discord_bits",
        "classical_correlation_bits",
        "mutual_information_bits",
        "method",
        "direction_x",
        "direction_y",
        "direction_z",
    ]
    rows = []
    for conv in conventions:
        rho = cascade.final_cascade_state(ab, convention=conv)
        rep = correlations.discord(rho, measured_side="bob")
        rows.append(
            [
                conv,
                correlations.negativity(rho),
                rep.discord,
                rep.classical_correlation,
                rep.mutual_information,
                rep.method,
                rep.best_direction[0],
                rep.best_direction[1],
                rep.best_direction[2],
            ]
        )
    return columns, rows, None


def _table_verify(args):
    results = verify.run_all(seed=args.seed)
    columns = ["check", "passed", "detail"]
    rows = [[r.name, r.passed, r.detail] for r in results]
    return columns, rows, results


# ---------------------------------------------------------------------------
# Rendering and output
# ---------------------------------------------------------------------------

def _render_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _render_json(columns, rows, meta) -> str:
    payload = {
        "meta": meta,
        "columns": columns,
        "rows": [
            {col: _json_value(v) for col, v in zip(columns, row)} for row in rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _resolve_output(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_plot(command: str, extra, path: Path) -> None:
    from . import plotting  # deferred: matplotlib import is slow

    if command == "thresholds":
        plotting.save_thresholds(extra, path)
    elif command == "sweep-entanglement":
        plotting.save_entanglement_sweep(extra, path)
    elif command == "sweep-lambda":
        plotting.save_lambda_sweep(extra, path)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqwitness",
        description="Sequential entanglement witnessing: thresholds, observer counts, sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, plottable=False):
        p.add_argument("-o", "--output", help="output file (default: stdout); relative paths resolve under $" + OUTPUT_DIR_ENV)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        if plottable:
            p.add_argument("--plot", action="store_true", help="also render a PNG figure next to the output file")

    p = sub.add_parser("thresholds", help="per-stage sharpness thresholds and witness values")
    p.add_argument("--entanglement", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=1e-9, help="strictness margin for the witness columns")
    add_common(p, plottable=True)

    p = sub.add_parser("max-bobs", help="maximal observer count, unequal sharpness schedule")
    p.add_argument("--entanglement", type=float, default=1.0)
    add_common(p)

    p = sub.add_parser("sweep-entanglement", help="observer count over an entanglement grid")
    p.add_argument("--entanglement-grid", required=True, metavar="START:STOP:STEP")
    add_common(p, plottable=True)

    p = sub.add_parser("sweep-lambda", help="equal-sharpness observer count over a sharpness grid")
    p.add_argument("--entanglement", type=float, default=1.0)
    p.add_argument("--lambda-grid", required=True, metavar="START:STOP:STEP")
    add_common(p, plottable=True)

    p = sub.add_parser("discord-final", help="residual correlations of the post-cascade state")
    p.add_argument("--entanglement", type=float, default=1.0)
    p.add_argument("--convention", choices=correlations.DISCORD_CONVENTIONS, default=None,
                   help="final-stage convention (default: report all)")
    add_common(p)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    add_common(p)

    return parser


_TABLES = {
    "thresholds": _table_thresholds,
    "max-bobs": _table_max_bobs,
    "sweep-entanglement": _table_sweep_entanglement,
    "sweep-lambda": _table_sweep_lambda,
    "discord-final": _table_discord_final,
    "verify": _table_verify,
}


def _meta(args) -> dict:
    meta = {"command": args.command, "version": __version__, "config": {}}
    for key in ("entanglement", "epsilon", "entanglement_grid", "lambda_grid",
                "convention", "seed", "format"):
        if hasattr(args, key) and getattr(args, key) is not None:
            meta["config"][key.replace("_", "-")] = _json_value(getattr(args, key))
    return meta


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "plot", False) and not args.output:
            raise ConfigError("--plot requires -o/--output to name the data file")
        columns, rows, extra = _TABLES[args.command](args)
    except (ConfigError, cascade.OutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidState, NotHermitian, AssertionError) as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3

    text = (
        _render_csv(columns, rows)
        if args.format == "csv"
        else _render_json(columns, rows, _meta(args))
    )

    if args.output:
        out = _resolve_output(args.output)
        _write_atomic(out, text)
        if getattr(args, "plot", False) and args.command in PLOTTABLE:
            _emit_plot(args.command, extra, out.with_suffix(".png"))
    else:
        sys.stdout.write(text)

    if args.command == "verify":
        failed = sum(1 for r in extra if not r.passed)
        for r in extra:
            print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}", file=sys.stderr)
        print(f"verify: {len(extra) - failed} passed, {failed} failed", file=sys.stderr)
        if failed:
            return 1
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
