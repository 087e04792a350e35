"""Verification oracles and exact minimum baselines.

verify_dsop / verify_partial_dsop check a result cover against its
specification point by point. Up to the enumeration cap the check is
exhaustive over all 2**n minterms (done on characteristic bitmasks);
beyond the cap a seeded random sample is used instead and the report
says so. Cube pairwise disjointness is always checked symbolically.

exact_min_dsop is a tiny-n reference: it enumerates every implicant of
on+dc that touches the on-set and runs an iterative-deepening search
for the smallest pairwise-disjoint subset covering the on-set, so
heuristic results can be compared against a true minimum.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .covers import (
    Cover,
    EnumerationCapExceeded,
    FunctionSpec,
    cover_point_mask,
)
from .cubes import Cube, intersect
from .partial import PartialSpec

__all__ = [
    "VerificationReport",
    "verify_dsop",
    "verify_partial_dsop",
    "exact_min_dsop",
    "chain_family",
]

DEFAULT_ENUM_CAP = 24
DEFAULT_SAMPLES = 1_000_000
DEFAULT_SAMPLE_SEED = 1729

_MAX_REPORTED = 1000


@dataclass(slots=True)
class VerificationReport:
    ok: bool
    violations: list[tuple[str, str, int]] = field(default_factory=list)
    mode: str = "dsop"
    sampled: bool = False
    seed: int | None = None
    samples: int = 0


def _minterm_string(index: int, n: int) -> str:
    return "".join("1" if index >> i & 1 else "0" for i in range(n))


def _coverage_masks(result: Cover) -> tuple[int, int]:
    covered = 0
    multi = 0
    for c in result.cubes:
        pm = c.point_mask()
        multi |= covered & pm
        covered |= pm
    return covered, multi


def _observed(result: Cover, index: int) -> int:
    return sum(1 for c in result.cubes if c.covers_minterm(index))


def _report_bits(
    violations: list[tuple[str, str, int]],
    bad: int,
    constraint: str,
    result: Cover,
    n: int,
) -> None:
    while bad and len(violations) < _MAX_REPORTED:
        b = bad & -bad
        bad ^= b
        idx = b.bit_length() - 1
        violations.append(
            (_minterm_string(idx, n), constraint, _observed(result, idx))
        )


def _pairwise_violations(result: Cover) -> list[tuple[str, str, int]]:
    out: list[tuple[str, str, int]] = []
    cubes = result.cubes
    for i in range(len(cubes)):
        for j in range(i + 1, len(cubes)):
            x = intersect(cubes[i], cubes[j])
            if x is not None:
                out.append((x.to_string(), "pairwise-disjoint", 2))
                if len(out) >= _MAX_REPORTED:
                    return out
    return out


def _sampled_check(
    constraints: list[tuple[Cover, str]],
    result: Cover,
    n: int,
    samples: int,
    seed: int,
) -> list[tuple[str, str, int]]:
    """Check per-minterm constraints on a random sample of the space.

    `constraints` lists (region cover, constraint) pairs in priority
    order; the first region containing a sampled minterm decides which
    constraint applies, and minterms in no region must be uncovered.
    """
    rng = random.Random(seed)
    violations: list[tuple[str, str, int]] = []
    for _ in range(samples):
        m = rng.getrandbits(n)
        count = _observed(result, m)
        constraint = "==0"
        for region, wanted in constraints:
            if any(c.covers_minterm(m) for c in region.cubes):
                constraint = wanted
                break
        bad = (
            (constraint == "==1" and count != 1)
            or (constraint == "<=1" and count > 1)
            or (constraint == ">=1" and count < 1)
            or (constraint == "==0" and count != 0)
        )
        if bad and constraint != "any":
            violations.append((_minterm_string(m, n), constraint, count))
            if len(violations) >= _MAX_REPORTED:
                break
    return violations


def verify_dsop(
    f: FunctionSpec,
    result: Cover,
    *,
    max_enum: int = DEFAULT_ENUM_CAP,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SAMPLE_SEED,
) -> VerificationReport:
    """Check that `result` is a disjoint cover of f.

    Cubes must be pairwise disjoint, every on-minterm covered exactly
    once, every off-minterm uncovered; don't-care minterms are free
    (disjointness already caps them at one). Exhaustive up to
    2**max_enum points, sampled with the given seed beyond that.
    """
    report = VerificationReport(ok=True, mode="dsop")
    report.violations.extend(_pairwise_violations(result))
    if f.n <= max_enum:
        on_m = cover_point_mask(f.on)
        dc_m = cover_point_mask(f.dc)
        covered, multi = _coverage_masks(result)
        _report_bits(report.violations, on_m & ~covered, "==1", result, f.n)
        _report_bits(report.violations, on_m & multi, "==1", result, f.n)
        space = (1 << (1 << f.n)) - 1
        off = space & ~(on_m | dc_m)
        _report_bits(report.violations, off & covered, "==0", result, f.n)
    else:
        report.sampled = True
        report.seed = seed
        report.samples = samples
        report.violations.extend(
            _sampled_check(
                [(f.on, "==1"), (f.dc, "any")], result, f.n, samples, seed
            )
        )
    report.ok = not report.violations
    return report


def verify_partial_dsop(
    spec: PartialSpec,
    result: Cover,
    *,
    max_enum: int = DEFAULT_ENUM_CAP,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SAMPLE_SEED,
) -> VerificationReport:
    """Check a partial disjoint cover: unique.on exactly once, unique.dc
    at most once, shared.on at least once, shared.dc unconstrained, off
    uncovered. Region priority follows that order should the given
    PartialSpec's parts accidentally overlap."""
    report = VerificationReport(ok=True, mode="partial")
    n = spec.n
    if n <= max_enum:
        on_u = cover_point_mask(spec.unique.on)
        dc_u = cover_point_mask(spec.unique.dc) & ~on_u
        on_s = cover_point_mask(spec.shared.on) & ~(on_u | dc_u)
        dc_s = cover_point_mask(spec.shared.dc) & ~(on_u | dc_u | on_s)
        covered, multi = _coverage_masks(result)
        _report_bits(report.violations, on_u & ~covered, "==1", result, n)
        _report_bits(report.violations, on_u & multi, "==1", result, n)
        _report_bits(report.violations, dc_u & multi, "<=1", result, n)
        _report_bits(report.violations, on_s & ~covered, ">=1", result, n)
        space = (1 << (1 << n)) - 1
        off = space & ~(on_u | dc_u | on_s | dc_s)
        _report_bits(report.violations, off & covered, "==0", result, n)
    else:
        report.sampled = True
        report.seed = seed
        report.samples = samples
        report.violations.extend(
            _sampled_check(
                [
                    (spec.unique.on, "==1"),
                    (spec.unique.dc, "<=1"),
                    (spec.shared.on, ">=1"),
                    (spec.shared.dc, "any"),
                ],
                result,
                n,
                samples,
                seed,
            )
        )
    report.ok = not report.violations
    return report


def exact_min_dsop(f: FunctionSpec, max_n: int = 5) -> Cover:
    """Smallest disjoint cover of f, by exhaustive search over implicants.

    Candidates are all cubes inside on+dc that touch the on-set,
    enumerated largest-first with trit-string tie order. An
    iterative-deepening search over the result size returns the first
    solution found at the minimum size, so the output is deterministic.
    Only meant for tiny n (the candidate pool is 3**n).
    """
    n = f.n
    if n > max_n:
        raise EnumerationCapExceeded(
            f"exact search over {n} variables refused (max_n={max_n})"
        )
    on_m = cover_point_mask(f.on)
    if on_m == 0:
        return Cover(n)
    care = on_m | cover_point_mask(f.dc)
    candidates: list[tuple[Cube, int]] = []
    for trits in itertools.product("-01", repeat=n):
        cube = Cube.from_string("".join(trits))
        pm = cube.point_mask()
        if not pm & ~care and pm & on_m:
            candidates.append((cube, pm))
    candidates.sort(key=lambda cp: (-cp[0].dimension, cp[0].to_string()))
    by_point: dict[int, list[int]] = {}
    rem = on_m
    while rem:
        b = rem & -rem
        rem ^= b
        idx = b.bit_length() - 1
        by_point[idx] = [
            ci for ci, (_, pm) in enumerate(candidates) if pm >> idx & 1
        ]
    chosen: list[int] = []
    failed_at: dict[int, int] = {}

    def search(covered: int, budget: int) -> bool:
        need = on_m & ~covered
        if not need:
            return True
        if budget == 0:
            return False
        if failed_at.get(covered, -1) >= budget:
            return False
        low = (need & -need).bit_length() - 1
        for ci in by_point[low]:
            pm = candidates[ci][1]
            if pm & covered:
                continue
            chosen.append(ci)
            if search(covered | pm, budget - 1):
                return True
            chosen.pop()
        failed_at[covered] = budget
        return False

    upper = on_m.bit_count()
    for k in range(1, upper + 1):
        if search(0, k):
            return Cover(n, tuple(candidates[ci][0] for ci in chosen))
    raise RuntimeError("unreachable: minterm cover always exists")


def chain_family(m: int) -> FunctionSpec:
    """The 2m-variable function x1 x2 + x3 x4 + ... + x(2m-1) x(2m).

    The smallest disjoint cover of this chain has 2**m - 1 cubes even
    though the plain SOP needs only m, which makes it a sharp test case
    for minimum-size oracles and heuristics alike.
    """
    if m < 1:
        raise ValueError("chain_family needs m >= 1")
    n = 2 * m
    cubes = tuple(
        Cube(n, 0b11 << (2 * i), 0b11 << (2 * i)) for i in range(m)
    )
    return FunctionSpec(n, Cover(n, cubes))
