"""Disjoint sum-of-products synthesis driven by cube weights.

The weight of a cube p against an overlapping peer q is
literal_count(p) - common_literal_count(p, q) - 1: the number of
fragments splitting q \\ p would create if p were selected first. A
cube's weight is the sum over all peers it intersects, or -1 when it
intersects none. Low weight means cheap to select.

dsop() repeatedly re-minimizes the remaining cover, moves isolated
cubes straight to the result, sorts the rest by the configured policy,
and then selects cubes greedily: each selected cube is committed and
every overlapping peer is split against it, with five selectable
policies for where the split fragments go (kept for the next round,
re-queued into the working set, or accompanied by their neighbours).
Fragments left at the end of a pass form the cover for the next round.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .covers import Cover, FunctionSpec, cover_intersects_cube, normalize
from .cubes import (
    Cube,
    ContractViolation,
    common_literal_count,
    disjoint_sharp,
    intersect,
)
from .minimize import MinimizerBackend, build_sop

__all__ = [
    "SORT_DIMENSION_WEIGHT",
    "SORT_WEIGHT_DIMENSION",
    "SORT_POLICIES",
    "WeightedCube",
    "DsopConfig",
    "ProgressError",
    "relative_weight",
    "weight_all",
    "sort_cubes",
    "covers_only_dc",
    "dsop",
]

SORT_DIMENSION_WEIGHT = "dimension_weight"
SORT_WEIGHT_DIMENSION = "weight_dimension"
SORT_POLICIES = (SORT_DIMENSION_WEIGHT, SORT_WEIGHT_DIMENSION)

# test hook: called with (iteration, committed cube list) once per outer pass
_OUTER_HOOK = None


class ProgressError(RuntimeError):
    """The outer loop exceeded its iteration budget without converging."""


@dataclass(frozen=True, slots=True)
class WeightedCube:
    cube: Cube
    weight: int


@dataclass(frozen=True, slots=True)
class DsopConfig:
    variant: int = 3
    sort: str = SORT_DIMENSION_WEIGHT
    drop_dc_only: bool = False
    backend: MinimizerBackend = field(default_factory=MinimizerBackend.builtin)
    max_outer_iterations: int = 10000

    def __post_init__(self) -> None:
        if self.variant not in (1, 2, 3, 4, 5):
            raise ValueError(f"variant must be 1..5, got {self.variant}")
        if self.sort not in SORT_POLICIES:
            raise ValueError(f"unknown sort policy {self.sort!r}")


def relative_weight(p: Cube, q: Cube) -> int:
    """Fragments created in q when p is selected first; requires overlap.

    Equals literal_count(p) - common_literal_count(p, q) - 1, which is
    -1 exactly when q is contained in p (selection erases q outright).
    """
    if intersect(p, q) is None:
        raise ContractViolation("relative_weight requires overlapping cubes")
    return p.literal_count - common_literal_count(p, q) - 1


def _overlaps(p: Cube, q: Cube) -> bool:
    return not (p.mask & q.mask) & (p.bits ^ q.bits)


def weight_all(cover: Cover | Sequence[Cube]) -> list[WeightedCube]:
    """Weight every cube against its peers; -1 marks isolated cubes."""
    cubes = list(cover.cubes) if isinstance(cover, Cover) else list(cover)
    out: list[WeightedCube] = []
    for i, c in enumerate(cubes):
        total = 0
        hit = False
        k = c.literal_count
        for j, d in enumerate(cubes):
            if i == j or not _overlaps(c, d):
                continue
            hit = True
            total += k - common_literal_count(c, d) - 1
        out.append(WeightedCube(c, total if hit else -1))
    return out


def _sort_key(policy: str):
    if policy == SORT_DIMENSION_WEIGHT:
        return lambda w: (-w.cube.dimension, w.weight, w.cube.to_string())
    return lambda w: (w.weight, -w.cube.dimension, w.cube.to_string())


def sort_cubes(weighted: Iterable[WeightedCube], policy: str) -> list[WeightedCube]:
    """Order for selection: dimension_weight prefers big then light cubes,
    weight_dimension prefers light then big. Full ties break on the
    ascending trit string, so the order is deterministic."""
    if policy not in SORT_POLICIES:
        raise ValueError(f"unknown sort policy {policy!r}")
    return sorted(weighted, key=_sort_key(policy))


def covers_only_dc(p: Cube, original_on: Cover) -> bool:
    """True when p covers no point of the original on-set."""
    return not cover_intersects_cube(original_on, p)


def _weight_at(P: list[WeightedCube], i: int) -> int:
    p = P[i].cube
    k = p.literal_count
    total = 0
    hit = False
    for j, w in enumerate(P):
        if j == i or not _overlaps(p, w.cube):
            continue
        hit = True
        total += k - common_literal_count(p, w.cube) - 1
    return total if hit else -1


def _reweight_all(P: list[WeightedCube]) -> None:
    for i in range(len(P)):
        P[i] = WeightedCube(P[i].cube, _weight_at(P, i))


def _apply_opt(
    variant: int,
    sort: str,
    q: Cube,
    fragments: list[Cube],
    P: list[WeightedCube],
    B: list[Cube],
) -> None:
    """Dispatch the split fragments of q according to the variant.

    1: fragments wait in B for the next round.
    2: like 1, but cubes of P that overlapped q are reweighted against
       the current P and the whole of P is re-sorted.
    3: fragments and every P cube overlapping q all move to B; the
       neighbours leave P unbroken.
    4: a single fragment goes back into P (re-sorted after a full
       reweight); several go to B.
    5: the biggest fragment (largest dimension, ties to the ascending
       trit string) goes back into P; the rest go to B; P is reweighted
       and re-sorted.
    """
    if variant == 1:
        B.extend(fragments)
    elif variant == 2:
        B.extend(fragments)
        touched = False
        for i in range(len(P)):
            if _overlaps(q, P[i].cube):
                P[i] = WeightedCube(P[i].cube, _weight_at(P, i))
                touched = True
        if touched:
            P.sort(key=_sort_key(sort))
    elif variant == 3:
        B.extend(fragments)
        moved = [w.cube for w in P if _overlaps(q, w.cube)]
        if moved:
            P[:] = [w for w in P if not _overlaps(q, w.cube)]
            B.extend(moved)
    elif variant == 4:
        if len(fragments) == 1:
            P.append(WeightedCube(fragments[0], 0))
        else:
            B.extend(fragments)
        _reweight_all(P)
        P.sort(key=_sort_key(sort))
    else:  # variant 5
        if fragments:
            bi = min(
                range(len(fragments)),
                key=lambda k: (-fragments[k].dimension, fragments[k].to_string()),
            )
            P.append(WeightedCube(fragments[bi], 0))
            B.extend(fragments[:bi] + fragments[bi + 1 :])
        _reweight_all(P)
        P.sort(key=_sort_key(sort))


def _split_isolated(cubes: list[Cube]) -> tuple[list[Cube], list[Cube]]:
    isolated: list[Cube] = []
    rest: list[Cube] = []
    for i, c in enumerate(cubes):
        alone = True
        for j, d in enumerate(cubes):
            if i != j and _overlaps(c, d):
                alone = False
                break
        (isolated if alone else rest).append(c)
    return isolated, rest


def dsop(f: FunctionSpec, cfg: DsopConfig | None = None) -> Cover:
    """Synthesize a pairwise-disjoint cover of f.

    On-minterms end up covered exactly once, off-minterms never, and
    don't-care minterms at most once (disjointness). Only the first
    re-minimization pass sees f.dc; later passes treat the residual
    fragments as a completely specified function. With drop_dc_only
    set, a cube about to be committed that covers no original on-point
    is discarded instead, without splitting its neighbours.
    """
    cfg = cfg or DsopConfig()
    n = f.n
    original_on = normalize(f.on)
    if not original_on.cubes:
        return Cover(n)
    committed: list[Cube] = []
    todo_on = f.on
    todo_dc = f.dc
    outer = 0
    while todo_on.cubes:
        outer += 1
        if outer > cfg.max_outer_iterations:
            raise ProgressError(
                f"no convergence after {cfg.max_outer_iterations} passes"
            )
        sop = build_sop(FunctionSpec(n, todo_on, todo_dc), cfg.backend)
        todo_dc = Cover(n)
        isolated, rest = _split_isolated(list(sop.cubes))
        for c in isolated:
            if cfg.drop_dc_only and covers_only_dc(c, original_on):
                continue
            committed.append(c)
        P = sort_cubes(weight_all(rest), cfg.sort)
        B: list[Cube] = []
        while P:
            p = P.pop(0).cube
            if cfg.drop_dc_only and covers_only_dc(p, original_on):
                continue
            committed.append(p)
            while True:
                qi = -1
                for i, w in enumerate(P):
                    if _overlaps(p, w.cube):
                        qi = i
                        break
                if qi < 0:
                    break
                q = P.pop(qi).cube
                fragments = disjoint_sharp(q, p)
                _apply_opt(cfg.variant, cfg.sort, q, fragments, P, B)
            if B:
                kept: list[Cube] = []
                for r in B:
                    if _overlaps(p, r):
                        kept.extend(disjoint_sharp(r, p))
                    else:
                        kept.append(r)
                B = kept
        todo_on = Cover(n, tuple(B))
        if _OUTER_HOOK is not None:
            _OUTER_HOOK(outer, list(committed))
    return Cover(n, tuple(committed))
