"""Covers (cube lists) and single-function specifications.

A cover is an ordered list of cubes over a shared variable count; its
point set is the union of the cubes' point sets, and the same minterm
may be covered by several cubes. FunctionSpec pairs an on-set cover
with a don't-care cover to describe an incompletely specified Boolean
function; points in neither are off.

The tautology check follows the recursive cofactor expansion: a cover
containing the all-free cube is a tautology, the empty cover is not,
and otherwise the cover is split on the most binate variable (the one
bound in the most cubes, ties to the lowest index) and both cofactors
are checked. A unate cover without an all-free cube is never a
tautology, which prunes the recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .cubes import Cube, DimensionMismatch, contains, intersect

__all__ = [
    "Cover",
    "FunctionSpec",
    "EnumerationCapExceeded",
    "normalize",
    "cofactor",
    "is_tautology",
    "cover_contains_cube",
    "cover_intersects_cube",
    "cover_point_mask",
    "enumerate_minterm_counts",
]

ENUMERATION_CAP = 24

# Largest n for which containment checks go through 2**n-bit point
# masks; beyond this the recursive tautology route is used instead.
_MASK_N_LIMIT = 16


class EnumerationCapExceeded(ValueError):
    """Point enumeration was requested over too wide a variable space.

    Callers hitting this should switch to the seeded sampling mode that
    the verification oracles expose instead of exhaustive enumeration.
    """


@dataclass(frozen=True, slots=True)
class Cover:
    """An ordered tuple of cubes over n variables."""

    n: int
    cubes: tuple[Cube, ...] = ()

    def __post_init__(self) -> None:
        for c in self.cubes:
            if c.n != self.n:
                raise DimensionMismatch(
                    f"cover over {self.n} variables given a {c.n}-variable cube"
                )

    @classmethod
    def from_strings(cls, trits: Iterable[str], n: int | None = None) -> "Cover":
        cubes = tuple(Cube.from_string(s) for s in trits)
        if cubes:
            return cls(cubes[0].n, cubes)
        if n is None:
            raise ValueError("empty cover needs an explicit variable count")
        return cls(n, ())

    def to_strings(self) -> list[str]:
        return [c.to_string() for c in self.cubes]

    def __len__(self) -> int:
        return len(self.cubes)

    def __iter__(self) -> Iterator[Cube]:
        return iter(self.cubes)

    def __bool__(self) -> bool:
        return bool(self.cubes)


@dataclass(frozen=True, slots=True)
class FunctionSpec:
    """An incompletely specified single-output function: on-set cover,
    don't-care cover, off everywhere else. Well-formed specs keep the
    two point-disjoint; generators and loaders are responsible for that."""

    n: int
    on: Cover
    dc: Cover = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.dc is None:
            object.__setattr__(self, "dc", Cover(self.n))
        if self.on.n != self.n or self.dc.n != self.n:
            raise DimensionMismatch("on/dc covers disagree with spec width")

    @classmethod
    def from_strings(
        cls,
        on: Iterable[str],
        dc: Iterable[str] = (),
        n: int | None = None,
    ) -> "FunctionSpec":
        on_cubes = tuple(Cube.from_string(s) for s in on)
        dc_cubes = tuple(Cube.from_string(s) for s in dc)
        if n is None:
            if on_cubes:
                n = on_cubes[0].n
            elif dc_cubes:
                n = dc_cubes[0].n
            else:
                raise ValueError("empty spec needs an explicit variable count")
        return cls(n, Cover(n, on_cubes), Cover(n, dc_cubes))

    def care_cover(self) -> Cover:
        """on and dc cubes concatenated: the region output cubes may use."""
        return Cover(self.n, self.on.cubes + self.dc.cubes)


def normalize(cover: Cover) -> Cover:
    """Drop duplicate cubes and cubes contained in another cube.

    Keeps the first occurrence of duplicates and preserves the relative
    order of the survivors. The result is absorption-free and has the
    same point set.
    """
    cubes = cover.cubes
    kept: list[Cube] = []
    for i, c in enumerate(cubes):
        absorbed = False
        for j, d in enumerate(cubes):
            if i == j or not contains(d, c):
                continue
            # equal cubes: the earliest occurrence survives
            if contains(c, d) and j > i:
                continue
            absorbed = True
            break
        if not absorbed:
            kept.append(c)
    return Cover(cover.n, tuple(kept))


def cofactor(cover: Cover, p: Cube) -> Cover:
    """Restrict the cover to the subspace of p.

    Cubes disjoint from p are dropped; the rest have every position
    bound in p freed. Duplicates in the result are kept as-is. The
    result, read over p's free variables, is the function inside p.
    """
    if cover.n != p.n:
        raise DimensionMismatch("cofactor cube width differs from cover")
    keep_mask = ~p.mask
    out = []
    for c in cover.cubes:
        if (c.mask & p.mask) & (c.bits ^ p.bits):
            continue
        out.append(Cube(cover.n, c.mask & keep_mask, c.bits & keep_mask))
    return Cover(cover.n, tuple(out))


def _recursive_tautology(n: int, items: list[tuple[int, int]]) -> bool:
    """Tautology of a cover given as (mask, bits) pairs."""
    if not items:
        return False
    zeros = [0] * n
    ones = [0] * n
    for mask, bits in items:
        if mask == 0:
            return True
        m = mask
        while m:
            b = m & -m
            m ^= b
            i = b.bit_length() - 1
            if bits & b:
                ones[i] += 1
            else:
                zeros[i] += 1
    split = -1
    best = 0
    binate = False
    for i in range(n):
        total = zeros[i] + ones[i]
        if total > best:
            best = total
            split = i
        if zeros[i] and ones[i]:
            binate = True
    if not binate:
        # unate cover without the all-free cube: the point opposing
        # every bound literal is uncovered
        return False
    b = 1 << split
    for want in (0, b):
        sub = []
        for mask, bits in items:
            if mask & b:
                if (bits & b) != want:
                    continue
                sub.append((mask & ~b, bits & ~b))
            else:
                sub.append((mask, bits))
        if not _recursive_tautology(n, sub):
            return False
    return True


def is_tautology(cover: Cover) -> bool:
    """True iff the cover's cubes jointly cover all 2**n points."""
    return _recursive_tautology(cover.n, [(c.mask, c.bits) for c in cover.cubes])


@lru_cache(maxsize=256)
def cover_point_mask(cover: Cover) -> int:
    """Union of the cubes' point masks (bit m set iff minterm m covered).

    Only sensible for small n; guarded to keep the 2**n-bit integers
    from exhausting memory on mistaken calls.
    """
    if cover.n > ENUMERATION_CAP + 2:
        raise EnumerationCapExceeded(
            f"point mask over {cover.n} variables; use sampling instead"
        )
    acc = 0
    for c in cover.cubes:
        acc |= c.point_mask()
    return acc


def _contains_by_recursion(cover: Cover, p: Cube) -> bool:
    return is_tautology(cofactor(cover, p))


def cover_contains_cube(cover: Cover, p: Cube) -> bool:
    """True iff every minterm of p is covered (p implies the cover).

    Equivalent to the cofactor of the cover by p being a tautology; for
    small n the check runs on point masks instead, which is faster for
    the expansion loop's many probes against one fixed cover.
    """
    if cover.n != p.n:
        raise DimensionMismatch("cube width differs from cover")
    for c in cover.cubes:
        if contains(c, p):
            return True
    if not cover.cubes:
        return False
    if cover.n <= _MASK_N_LIMIT:
        need = p.point_mask()
        acc = 0
        for c in cover.cubes:
            if (c.mask & p.mask) & (c.bits ^ p.bits):
                continue
            acc |= c.point_mask()
            if not need & ~acc:
                return True
        return not need & ~acc
    return _contains_by_recursion(cover, p)


def cover_intersects_cube(cover: Cover, p: Cube) -> bool:
    """True iff some cube of the cover shares a point with p."""
    if cover.n != p.n:
        raise DimensionMismatch("cube width differs from cover")
    for c in cover.cubes:
        if not (c.mask & p.mask) & (c.bits ^ p.bits):
            return True
    return False


def enumerate_minterm_counts(cover: Cover, limit_n: int = ENUMERATION_CAP) -> dict[int, int]:
    """Map each covered minterm to the number of cubes covering it.

    Raises EnumerationCapExceeded when n exceeds limit_n; callers that
    need larger spaces should use the sampling mode of the verification
    oracles instead. The dict is sparse: uncovered minterms are absent.
    """
    if cover.n > limit_n:
        raise EnumerationCapExceeded(
            f"cannot enumerate 2**{cover.n} points (limit 2**{limit_n}); "
            "use sampled verification"
        )
    counts: dict[int, int] = {}
    for c in cover.cubes:
        free = [i for i in range(cover.n) if not c.mask & (1 << i)]
        base = c.bits
        for k in range(1 << len(free)):
            m = base
            kk = k
            for pos in free:
                if kk & 1:
                    m |= 1 << pos
                kk >>= 1
            counts[m] = counts.get(m, 0) + 1
    return counts
