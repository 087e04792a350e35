"""Shared strategies, fixture paths, and random spec generators."""

from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dsopforge import (
    SORT_DIMENSION_WEIGHT,
    SORT_WEIGHT_DIMENSION,
    Cover,
    Cube,
    DsopConfig,
    FunctionSpec,
    PartialSpec,
    cover_intersects_cube,
)

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")

ALL_CONFIGS = [
    DsopConfig(variant=v, sort=s)
    for v in (1, 2, 3, 4, 5)
    for s in (SORT_DIMENSION_WEIGHT, SORT_WEIGHT_DIMENSION)
]


def trit_strings(n: int):
    return st.text(alphabet="-01", min_size=n, max_size=n)


@st.composite
def cubes_st(draw, n=None, max_n=8):
    if n is None:
        n = draw(st.integers(1, max_n))
    return Cube.from_string(draw(trit_strings(n)))


@st.composite
def cube_pairs_st(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    return draw(cubes_st(n=n)), draw(cubes_st(n=n))


@st.composite
def covers_st(draw, n=None, max_n=8, min_cubes=0, max_cubes=6):
    if n is None:
        n = draw(st.integers(1, max_n))
    k = draw(st.integers(min_cubes, max_cubes))
    return Cover(n, tuple(draw(cubes_st(n=n)) for _ in range(k)))


@st.composite
def function_specs_st(draw, n=None, max_n=8, max_on=6, max_dc=3):
    if n is None:
        n = draw(st.integers(1, max_n))
    on = draw(covers_st(n=n, min_cubes=1, max_cubes=max_on))
    dc = draw(covers_st(n=n, max_cubes=max_dc))
    return FunctionSpec(n, on, dc)


@st.composite
def partial_specs_st(draw, max_n=8):
    # Shared cubes are filtered against the unique care region, which
    # keeps the two parts point-disjoint by construction.
    n = draw(st.integers(1, max_n))
    unique = draw(function_specs_st(n=n, max_on=4, max_dc=2))
    care = Cover(n, unique.on.cubes + unique.dc.cubes)
    s_on = tuple(
        c
        for c in draw(covers_st(n=n, max_cubes=3)).cubes
        if not cover_intersects_cube(care, c)
    )
    s_dc = tuple(
        c
        for c in draw(covers_st(n=n, max_cubes=2)).cubes
        if not cover_intersects_cube(care, c)
    )
    return PartialSpec(
        unique=unique,
        shared=FunctionSpec(n, Cover(n, s_on), Cover(n, s_dc)),
    )


def rand_cover(rng, n, k, bind=None):
    """k random cubes; bind is the chance each position is a literal."""
    if bind is None:
        bind = rng.uniform(0.2, 0.8)
    cubes = []
    for _ in range(k):
        mask = bits = 0
        for i in range(n):
            if rng.random() < bind:
                mask |= 1 << i
                if rng.random() < 0.5:
                    bits |= 1 << i
        cubes.append(Cube(n, mask, bits))
    return Cover(n, tuple(cubes))


def rand_spec(rng, n, max_on=6, max_dc=3):
    on = rand_cover(rng, n, rng.randint(1, max_on))
    dc = rand_cover(rng, n, rng.randint(0, max_dc))
    return FunctionSpec(n, on, dc)


def rand_partial_spec(rng, n):
    unique = rand_spec(rng, n, max_on=4, max_dc=2)
    care = Cover(n, unique.on.cubes + unique.dc.cubes)
    s_on = tuple(
        c
        for c in rand_cover(rng, n, rng.randint(0, 3)).cubes
        if not cover_intersects_cube(care, c)
    )
    s_dc = tuple(
        c
        for c in rand_cover(rng, n, rng.randint(0, 2)).cubes
        if not cover_intersects_cube(care, c)
    )
    return PartialSpec(
        unique=unique,
        shared=FunctionSpec(n, Cover(n, s_on), Cover(n, s_dc)),
    )
