import pytest
from hypothesis import given, settings

from conftest import ALL_CONFIGS, function_specs_st
from dsopforge import (
    SORT_DIMENSION_WEIGHT,
    SORT_WEIGHT_DIMENSION,
    ContractViolation,
    Cover,
    Cube,
    DsopConfig,
    FunctionSpec,
    ProgressError,
    WeightedCube,
    build_sop,
    chain_family,
    cover_contains_cube,
    dsop,
    normalize,
    relative_weight,
    sort_cubes,
    verify_dsop,
    weight_all,
)
from dsopforge import engine as engine_mod
from dsopforge.engine import _apply_opt, _weight_at


def c(s):
    return Cube.from_string(s)


def cov(*strings, n=None):
    return Cover.from_strings(strings, n=n)


DEMO = cov("0-0-", "-1-1", "01--", "1-1-")
DEMO_F = FunctionSpec(4, DEMO)


class TestWeights:
    def test_relative_weight_counts_fragments(self):
        assert relative_weight(c("0-0-"), c("-1-1")) == 1
        assert relative_weight(c("01--"), c("-1-1")) == 0

    def test_relative_weight_is_minus_one_on_containment(self):
        assert relative_weight(c("01--"), c("010-")) == -1

    def test_relative_weight_requires_overlap(self):
        with pytest.raises(ContractViolation):
            relative_weight(c("00--"), c("11--"))

    def test_demo_cover_weights(self):
        got = {w.cube.to_string(): w.weight for w in weight_all(DEMO)}
        assert got == {"0-0-": 1, "-1-1": 2, "01--": 0, "1-1-": 1}

    def test_isolated_cubes_get_sentinel(self):
        got = {w.cube.to_string(): w.weight for w in weight_all(cov("00-", "11-"))}
        assert got == {"00-": -1, "11-": -1}


class TestSort:
    def test_dimension_weight_order_on_demo(self):
        out = sort_cubes(weight_all(DEMO), SORT_DIMENSION_WEIGHT)
        assert [w.cube.to_string() for w in out] == ["01--", "0-0-", "1-1-", "-1-1"]

    def test_weight_dimension_puts_light_small_cube_first(self):
        weighted = [
            WeightedCube(c("1---"), 5),
            WeightedCube(c("00--"), 0),
        ]
        dw = sort_cubes(weighted, SORT_DIMENSION_WEIGHT)
        wd = sort_cubes(weighted, SORT_WEIGHT_DIMENSION)
        assert dw[0].cube == c("1---")
        assert wd[0].cube == c("00--")

    def test_ties_break_on_trit_string(self):
        weighted = [WeightedCube(c("1-1-"), 1), WeightedCube(c("0-0-"), 1)]
        out = sort_cubes(weighted, SORT_DIMENSION_WEIGHT)
        assert [w.cube.to_string() for w in out] == ["0-0-", "1-1-"]

    def test_unknown_policy(self):
        with pytest.raises(ValueError):
            sort_cubes([], "sideways")


class TestApplyOpt:
    def test_variant_1_parks_fragments(self):
        P = [WeightedCube(c("11--"), 99)]
        B = []
        _apply_opt(1, SORT_DIMENSION_WEIGHT, c("1-1-"), [c("0100")], P, B)
        assert B == [c("0100")]
        assert P[0].weight == 99, "variant 1 leaves P alone"

    def test_variant_2_refreshes_only_neighbours_of_q(self):
        # 11-- overlaps q, 00-- does not; only the first weight is redone
        P = [WeightedCube(c("11--"), 99), WeightedCube(c("00--"), 99)]
        B = []
        _apply_opt(2, SORT_DIMENSION_WEIGHT, c("1-1-"), [c("0100")], P, B)
        by_cube = {w.cube.to_string(): w.weight for w in P}
        assert by_cube["11--"] == -1, "no overlapping peers left in P"
        assert by_cube["00--"] == 99, "untouched entries keep stale weight"
        assert B == [c("0100")]

    def test_variant_3_evicts_neighbours_whole(self):
        P = [WeightedCube(c("11--"), 0), WeightedCube(c("00--"), 0)]
        B = []
        _apply_opt(3, SORT_DIMENSION_WEIGHT, c("1-1-"), [c("0100")], P, B)
        assert [w.cube for w in P] == [c("00--")]
        assert B == [c("0100"), c("11--")]

    def test_variant_4_requeues_single_fragment(self):
        P = []
        B = []
        _apply_opt(4, SORT_DIMENSION_WEIGHT, c("1-1-"), [c("0100")], P, B)
        assert [w.cube for w in P] == [c("0100")]
        assert B == []

    def test_variant_4_parks_multiple_fragments(self):
        P = [WeightedCube(c("0---"), 99)]
        B = []
        _apply_opt(4, SORT_DIMENSION_WEIGHT, c("1-1-"), [c("0100"), c("0010")], P, B)
        assert B == [c("0100"), c("0010")]
        assert P[0].weight == -1, "variant 4 reweights everything"

    def test_variant_5_requeues_biggest_fragment(self):
        P = []
        B = []
        frags = [c("01--"), c("0-1-"), c("0000")]
        _apply_opt(5, SORT_DIMENSION_WEIGHT, c("1---"), frags, P, B)
        # two dimension-2 fragments tie; the lower trit string wins
        assert [w.cube for w in P] == [c("0-1-")]
        assert B == [c("01--"), c("0000")]


class TestDsop:
    def test_demo_golden_point_set(self):
        out = dsop(DEMO_F, DsopConfig(variant=1, sort=SORT_DIMENSION_WEIGHT))
        golden = cov("01--", "1-1-", "000-", "1101")
        assert len(out) == 4
        from dsopforge import cover_point_mask

        assert cover_point_mask(out) == cover_point_mask(golden)
        assert verify_dsop(DEMO_F, out).ok

    @pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=lambda c: f"v{c.variant}-{c.sort}")
    def test_all_variants_verify_on_demo(self, cfg):
        assert verify_dsop(DEMO_F, dsop(DEMO_F, cfg)).ok

    def test_empty_function(self):
        assert len(dsop(FunctionSpec(3, Cover(3)))) == 0

    def test_single_cube_stays_single(self):
        out = dsop(FunctionSpec(3, cov("01-")))
        assert len(out) == 1

    def test_disjoint_input_passes_through(self):
        f = FunctionSpec(4, cov("00--", "11--"))
        sop = build_sop(f)
        out = dsop(f)
        assert set(out.cubes) == set(sop.cubes)

    def test_deterministic(self):
        a = dsop(DEMO_F, DsopConfig(variant=3))
        b = dsop(DEMO_F, DsopConfig(variant=3))
        assert a == b

    def test_progress_guard_trips_when_capped(self):
        with pytest.raises(ProgressError):
            dsop(DEMO_F, DsopConfig(variant=1, max_outer_iterations=1))

    @pytest.mark.parametrize("m,want", [(2, 3), (3, 7)])
    @pytest.mark.parametrize("cfg", ALL_CONFIGS, ids=lambda c: f"v{c.variant}-{c.sort}")
    def test_chain_blowup_sizes(self, cfg, m, want):
        f = chain_family(m)
        out = dsop(f, cfg)
        assert len(out) == want
        assert verify_dsop(f, out).ok

    @given(function_specs_st(max_n=6))
    @settings(max_examples=60)
    def test_default_config_verifies_on_random_specs(self, f):
        out = dsop(f)
        report = verify_dsop(f, out)
        assert report.ok, report.violations[:5]
        care = Cover(f.n, f.on.cubes + f.dc.cubes)
        for p in out.cubes:
            assert cover_contains_cube(care, p)


class TestDropDcOnly:
    # The builtin backend never invents a cube without an on-point, so a
    # scripted first-pass SOP stands in for a more eager minimizer.
    ON = ("001",)
    DC = ("-1-",)
    FIRST_SOP = ("-1-", "0-1")

    def _patched(self, monkeypatch):
        calls = {"n": 0}

        def fake(f, backend=None):
            calls["n"] += 1
            if calls["n"] == 1:
                return cov(*self.FIRST_SOP)
            return normalize(f.on)

        monkeypatch.setattr(engine_mod, "build_sop", fake)
        return FunctionSpec(3, cov(*self.ON), cov(*self.DC))

    def test_flag_discards_without_splitting(self, monkeypatch):
        f = self._patched(monkeypatch)
        out = dsop(f, DsopConfig(variant=1, drop_dc_only=True))
        # -1- dies before it can break 0-1 apart
        assert out.to_strings() == ["0-1"]
        assert verify_dsop(f, out).ok

    def test_default_keeps_dont_care_cube(self, monkeypatch):
        f = self._patched(monkeypatch)
        out = dsop(f, DsopConfig(variant=1))
        assert set(out.to_strings()) == {"-1-", "001"}
        assert verify_dsop(f, out).ok


class TestOuterHook:
    def test_committed_grows_and_stays_disjoint(self, monkeypatch):
        seen = []
        monkeypatch.setattr(
            engine_mod, "_OUTER_HOOK", lambda outer, committed: seen.append((outer, committed))
        )
        dsop(DEMO_F, DsopConfig(variant=1))
        assert [outer for outer, _ in seen] == list(range(1, len(seen) + 1))
        sizes = [len(committed) for _, committed in seen]
        assert sizes == sorted(sizes)
        from dsopforge import intersect

        final = seen[-1][1]
        for i in range(len(final)):
            for j in range(i + 1, len(final)):
                assert intersect(final[i], final[j]) is None
