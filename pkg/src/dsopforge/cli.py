"""Command-line front end and benchmark harness.

Three subcommands: `dsop` turns a PLA into a disjoint cover per output,
`pdsop` does the partial variant (two-file unique+shared form, or one
file with --dc-policy choosing how its don't-cares may be reused), and
`bench` sweeps a directory of PLA files over a variant/sort grid into a
CSV/JSON report plus a size pivot table.

Exit codes: 0 ok, 2 input/usage problems (PLA parse errors, shape or
disjointness violations), 3 minimizer backend failure, 4 verification
failure. Stats JSON has the shape {"schema", "notes", "rows"} with one
RunStats object per row; everything except elapsed_ms is deterministic
for fixed inputs and flags, regardless of --jobs.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Callable, Iterable, Sequence, TypeVar

from .covers import Cover, FunctionSpec
from .engine import (
    SORT_DIMENSION_WEIGHT,
    SORT_WEIGHT_DIMENSION,
    DsopConfig,
    dsop,
)
from .minimize import MinimizerBackend, MinimizerBackendError, build_sop
from .partial import PartialSpec, partial_dsop
from .pla import (
    PlaFile,
    PlaParseError,
    merged_product_count,
    parse_pla,
    split_outputs,
    write_pla,
)
from .verify import VerificationReport, verify_dsop, verify_partial_dsop

__all__ = ["RunStats", "STATS_SCHEMA", "ENV_MINIMIZER", "main", "run"]

STATS_SCHEMA = "dsopforge.run_stats.v1"
ENV_MINIMIZER = "DSOPFORGE_MINIMIZER"

# Recorded in every stats payload so readers know how sizes were produced.
STATS_NOTES = (
    "re-minimization runs once per output; cubes shared between outputs "
    "merge only when identical, and merged cubes count once in sizes",
    "elapsed_ms covers SOP building plus disjoint covering, not I/O or "
    "verification",
)

_SORT_FLAGS = {"dw": SORT_DIMENSION_WEIGHT, "wd": SORT_WEIGHT_DIMENSION}

_T = TypeVar("_T")
_R = TypeVar("_R")


@dataclass(slots=True)
class RunStats:
    benchmark: str
    inputs: int
    outputs: int
    sop_size: int
    dsop_size: int
    variant: int
    sort: str
    drop_dc_only: bool
    backend: str
    elapsed_ms: float
    verified: bool


def _resolve_backend(flag: str | None) -> MinimizerBackend:
    if flag is None:
        env = os.environ.get(ENV_MINIMIZER)
        if env:
            return MinimizerBackend.external(env)
        return MinimizerBackend.builtin()
    if flag == "builtin":
        return MinimizerBackend.builtin()
    if flag.startswith("external:"):
        path = flag[len("external:") :]
        if not path:
            raise ValueError("--minimizer external: needs a path")
        return MinimizerBackend.external(path)
    raise ValueError(
        f"--minimizer must be 'builtin' or 'external:PATH', got {flag!r}"
    )


def _map_ordered(
    fn: Callable[[_T], _R], items: Sequence[_T], jobs: int
) -> list[_R]:
    # pool.map keeps input order, so merged results stay deterministic.
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _read_pla(path: str) -> PlaFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise PlaParseError(f"cannot read {path}: {exc}") from None
    try:
        return parse_pla(text)
    except PlaParseError as exc:
        raise PlaParseError(f"{path}: {exc}") from None


def _emit_pla(args: argparse.Namespace, text: str) -> None:
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")


def _emit_stats(args: argparse.Namespace, stats: RunStats) -> None:
    if args.stats:
        payload = {
            "schema": STATS_SCHEMA,
            "notes": list(STATS_NOTES),
            "rows": [asdict(stats)],
        }
        Path(args.stats).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )
    print(
        f"{stats.benchmark}: sop={stats.sop_size} dsop={stats.dsop_size}"
        f" variant={stats.variant} sort={stats.sort}"
        f" backend={stats.backend} elapsed={stats.elapsed_ms:.1f}ms"
        f" verified={'yes' if stats.verified else 'no'}",
        file=sys.stderr,
    )


def _report_violations(name: str, reports: Iterable[VerificationReport]) -> None:
    for j, report in enumerate(reports):
        if report.ok:
            continue
        where = "sampled" if report.sampled else "exhaustive"
        print(
            f"dsopforge: {name} output {j}: {len(report.violations)}"
            f" violation(s) found ({where} check)",
            file=sys.stderr,
        )
        for minterm, constraint, observed in report.violations[:5]:
            print(
                f"  {minterm}: expected coverage {constraint},"
                f" observed {observed}",
                file=sys.stderr,
            )


def cmd_dsop(args: argparse.Namespace) -> int:
    pla = _read_pla(args.input)
    specs = split_outputs(pla)
    backend = _resolve_backend(args.minimizer)
    cfg = DsopConfig(
        variant=args.variant,
        sort=_SORT_FLAGS[args.sort],
        drop_dc_only=args.drop_dc_only,
        backend=backend,
    )

    started = time.perf_counter()
    sops = _map_ordered(lambda f: build_sop(f, backend), specs, args.jobs)
    results = _map_ordered(lambda f: dsop(f, cfg), specs, args.jobs)
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    verified = False
    if args.verify:
        reports = [
            verify_dsop(f, res, max_enum=args.max_enum)
            for f, res in zip(specs, results)
        ]
        if not all(r.ok for r in reports):
            _report_violations(args.input, reports)
            return 4
        verified = True

    stats = RunStats(
        benchmark=Path(args.input).name,
        inputs=pla.num_inputs,
        outputs=pla.num_outputs,
        sop_size=merged_product_count(sops),
        dsop_size=merged_product_count(results),
        variant=args.variant,
        sort=args.sort,
        drop_dc_only=args.drop_dc_only,
        backend=backend.describe(),
        elapsed_ms=round(elapsed_ms, 3),
        verified=verified,
    )
    _emit_pla(
        args,
        write_pla(
            results,
            input_labels=pla.input_labels,
            output_labels=pla.output_labels,
            ptype=pla.ptype,
        ),
    )
    _emit_stats(args, stats)
    return 0


def _pdsop_specs(args: argparse.Namespace) -> tuple[str, PlaFile, list[PartialSpec]]:
    """Assemble one PartialSpec per output from the argument forms."""
    pla_u = _read_pla(args.unique)
    if args.shared is not None:
        pla_s = _read_pla(args.shared)
        if pla_s.num_inputs != pla_u.num_inputs:
            raise ValueError(
                f"{args.unique} has {pla_u.num_inputs} inputs but"
                f" {args.shared} has {pla_s.num_inputs}"
            )
        if pla_s.num_outputs != pla_u.num_outputs:
            raise ValueError(
                f"{args.unique} has {pla_u.num_outputs} outputs but"
                f" {args.shared} has {pla_s.num_outputs}"
            )
        specs = [
            PartialSpec(unique=u, shared=s)
            for u, s in zip(split_outputs(pla_u), split_outputs(pla_s))
        ]
        name = f"{Path(args.unique).name}+{Path(args.shared).name}"
        return name, pla_u, specs
    # Single-file form: the function's dc-set becomes the shared region.
    n = pla_u.num_inputs
    empty = Cover(n)
    specs = [
        PartialSpec(
            unique=FunctionSpec(n, f.on, empty),
            shared=FunctionSpec(n, empty, f.dc),
        )
        for f in split_outputs(pla_u)
    ]
    return Path(args.unique).name, pla_u, specs


def cmd_pdsop(args: argparse.Namespace) -> int:
    backend = _resolve_backend(args.minimizer)
    cfg = DsopConfig(
        variant=args.variant,
        sort=_SORT_FLAGS[args.sort],
        drop_dc_only=args.drop_dc_only,
        backend=backend,
    )

    if args.shared is None and args.dc_policy == "once":
        # Each dc point may be used at most once: that is plain dsop.
        pla = _read_pla(args.unique)
        specs = split_outputs(pla)
        started = time.perf_counter()
        sops = _map_ordered(lambda f: build_sop(f, backend), specs, args.jobs)
        results = _map_ordered(lambda f: dsop(f, cfg), specs, args.jobs)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        name = Path(args.unique).name
        verified = False
        if args.verify:
            reports = [
                verify_dsop(f, res, max_enum=args.max_enum)
                for f, res in zip(specs, results)
            ]
            if not all(r.ok for r in reports):
                _report_violations(name, reports)
                return 4
            verified = True
        pla_out = write_pla(
            results,
            input_labels=pla.input_labels,
            output_labels=pla.output_labels,
            ptype=pla.ptype,
        )
        sop_size = merged_product_count(sops)
    else:
        name, pla, pspecs = _pdsop_specs(args)
        for spec in pspecs:
            spec.validate_disjoint()
        full = [
            FunctionSpec(
                spec.n,
                Cover(spec.n, spec.unique.on.cubes + spec.shared.on.cubes),
                Cover(spec.n, spec.unique.dc.cubes + spec.shared.dc.cubes),
            )
            for spec in pspecs
        ]
        started = time.perf_counter()
        sops = _map_ordered(lambda f: build_sop(f, backend), full, args.jobs)
        results = _map_ordered(lambda s: partial_dsop(s, cfg), pspecs, args.jobs)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        verified = False
        if args.verify:
            reports = [
                verify_partial_dsop(spec, res, max_enum=args.max_enum)
                for spec, res in zip(pspecs, results)
            ]
            if not all(r.ok for r in reports):
                _report_violations(name, reports)
                return 4
            verified = True
        pla_out = write_pla(
            results,
            input_labels=pla.input_labels,
            output_labels=pla.output_labels,
            ptype=pla.ptype,
        )
        sop_size = merged_product_count(sops)

    stats = RunStats(
        benchmark=name,
        inputs=pla.num_inputs,
        outputs=pla.num_outputs,
        sop_size=sop_size,
        dsop_size=merged_product_count(results),
        variant=args.variant,
        sort=args.sort,
        drop_dc_only=args.drop_dc_only,
        backend=backend.describe(),
        elapsed_ms=round(elapsed_ms, 3),
        verified=verified,
    )
    _emit_pla(args, pla_out)
    _emit_stats(args, stats)
    return 0


def _parse_int_list(raw: str, allowed: Iterable[int], flag: str) -> list[int]:
    out: list[int] = []
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if not piece.isdigit() or int(piece) not in allowed:
            raise ValueError(f"{flag} got unusable entry {piece!r}")
        if int(piece) not in out:
            out.append(int(piece))
    if not out:
        raise ValueError(f"{flag} selected nothing")
    return out


def _parse_sort_list(raw: str) -> list[str]:
    out: list[str] = []
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if piece not in _SORT_FLAGS:
            raise ValueError(f"--sorts got unusable entry {piece!r}")
        if piece not in out:
            out.append(piece)
    if not out:
        raise ValueError("--sorts selected nothing")
    return out


def _render_pivot(rows: list[RunStats]) -> str:
    """Size grid: one line per benchmark, one column per variant/sort."""
    combos: list[tuple[int, str]] = []
    for row in rows:
        if (row.variant, row.sort) not in combos:
            combos.append((row.variant, row.sort))
    combos.sort()
    names: list[str] = []
    for row in rows:
        if row.benchmark not in names:
            names.append(row.benchmark)
    by_key = {(r.benchmark, r.variant, r.sort): r for r in rows}
    header = ["benchmark", "in", "out", "sop"] + [
        f"{v}/{s}" for v, s in combos
    ]
    lines = [header]
    for name in names:
        first = next(r for r in rows if r.benchmark == name)
        line = [name, str(first.inputs), str(first.outputs), str(first.sop_size)]
        for v, s in combos:
            r = by_key.get((name, v, s))
            line.append("-" if r is None else str(r.dsop_size))
        lines.append(line)
    widths = [max(len(row[i]) for row in lines) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in lines
    )


def cmd_bench(args: argparse.Namespace) -> int:
    directory = Path(args.directory)
    files = sorted(directory.glob("*.pla"))
    if not files:
        print(f"dsopforge: no .pla files in {directory}", file=sys.stderr)
        return 2
    variants = _parse_int_list(args.variants, range(1, 6), "--variants")
    sorts = _parse_sort_list(args.sorts)
    backend = _resolve_backend(args.minimizer)

    grid = [
        (path, variant, sort)
        for path in files
        for variant in variants
        for sort in sorts
    ]

    failures: list[tuple[str, int, str]] = []
    rows: list[RunStats] = []

    def one(item: tuple[Path, int, str]) -> tuple[RunStats, None] | tuple[None, tuple[str, int, str]]:
        path, variant, sort = item
        label = f"{path.name} variant={variant} sort={sort}"
        try:
            pla = _read_pla(str(path))
            specs = split_outputs(pla)
            cfg = DsopConfig(
                variant=variant,
                sort=_SORT_FLAGS[sort],
                drop_dc_only=args.drop_dc_only,
                backend=backend,
            )
            started = time.perf_counter()
            sops = [build_sop(f, backend) for f in specs]
            results = [dsop(f, cfg) for f in specs]
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            reports = [
                verify_dsop(f, res, max_enum=args.max_enum)
                for f, res in zip(specs, results)
            ]
            ok = all(r.ok for r in reports)
            stats = RunStats(
                benchmark=path.name,
                inputs=pla.num_inputs,
                outputs=pla.num_outputs,
                sop_size=merged_product_count(sops),
                dsop_size=merged_product_count(results),
                variant=variant,
                sort=sort,
                drop_dc_only=args.drop_dc_only,
                backend=backend.describe(),
                elapsed_ms=round(elapsed_ms, 3),
                verified=ok,
            )
            if not ok:
                return stats, (label, 4, "verification failed")
            return stats, None
        except PlaParseError as exc:
            return None, (label, 2, str(exc))
        except MinimizerBackendError as exc:
            return None, (label, 3, str(exc))

    outcomes = _map_ordered(one, grid, args.jobs)
    for stats, failure in outcomes:
        if stats is not None:
            rows.append(stats)
        if failure is not None:
            failures.append(failure)

    columns = [f.name for f in fields(RunStats)]
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=columns)
            writer.writeheader()
            for row in rows:
                writer.writerow(asdict(row))
    if args.json:
        payload = {
            "schema": STATS_SCHEMA,
            "notes": list(STATS_NOTES),
            "rows": [asdict(row) for row in rows],
        }
        Path(args.json).write_text(
            json.dumps(payload, indent=2) + "\n", encoding="utf-8"
        )

    if rows:
        print(_render_pivot(rows))
    for label, _, message in failures:
        print(f"dsopforge: FAILED {label}: {message}", file=sys.stderr)
    if failures:
        return failures[0][1]
    return 0


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--minimizer",
        default=None,
        metavar="builtin|external:PATH",
        help="SOP backend; default reads $DSOPFORGE_MINIMIZER, else builtin",
    )
    shared.add_argument("--jobs", type=int, default=1, help="worker threads")
    shared.add_argument(
        "--max-enum",
        type=int,
        default=24,
        help="verify exhaustively up to this many inputs, sample beyond",
    )
    shared.add_argument(
        "--drop-dc-only",
        action="store_true",
        help="discard committed cubes that cover no original on-point",
    )

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument(
        "--variant", type=int, choices=range(1, 6), default=3
    )
    single.add_argument("--sort", choices=("dw", "wd"), default="dw")
    single.add_argument(
        "-o", "--output", default="-", help="result PLA path, '-' for stdout"
    )
    single.add_argument("--stats", default=None, help="write stats JSON here")
    single.add_argument(
        "--verify",
        action="store_true",
        help="check the result before writing, exit 4 on failure",
    )

    ap = argparse.ArgumentParser(
        prog="dsopforge",
        description="Disjoint sum-of-products covers for PLA functions.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser(
        "dsop",
        parents=[shared, single],
        help="disjoint cover of each output of a PLA",
    )
    d.add_argument("input", help="source PLA file")
    d.set_defaults(func=cmd_dsop)

    p = sub.add_parser(
        "pdsop",
        parents=[shared, single],
        help="partial disjoint cover: unique region exact, shared reusable",
    )
    p.add_argument("unique", help="PLA whose on-set is covered exactly once")
    p.add_argument(
        "shared",
        nargs="?",
        default=None,
        help="PLA whose points may be covered repeatedly (omit to derive"
        " the shared region from the first file's don't-cares)",
    )
    p.add_argument(
        "--dc-policy",
        choices=("once", "many"),
        default="many",
        help="single-file form only: may the file's don't-care points be"
        " covered once (plain disjoint cover) or many times",
    )
    p.set_defaults(func=cmd_pdsop)

    b = sub.add_parser(
        "bench",
        parents=[shared],
        help="run a directory of PLA files over a variant/sort grid",
    )
    b.add_argument("directory", help="directory containing *.pla")
    b.add_argument("--variants", default="1,2,3,4,5", help="comma list")
    b.add_argument("--sorts", default="dw,wd", help="comma list of dw,wd")
    b.add_argument("--csv", default=None, help="write rows as CSV here")
    b.add_argument("--json", default=None, help="write rows as JSON here")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PlaParseError as exc:
        print(f"dsopforge: {exc}", file=sys.stderr)
        return 2
    except MinimizerBackendError as exc:
        print(f"dsopforge: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"dsopforge: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"dsopforge: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
