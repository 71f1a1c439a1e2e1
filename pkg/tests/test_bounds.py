import itertools
import math

import pytest
from hypothesis import given, settings

from reliable_fd import bounds
from reliable_fd.bounds import delta_gap, f_mon, f_spc, staged_bound_prunes, staged_check
from reliable_fd.data import Labeling, constant_labeling, contingency, joint_labeling
from reliable_fd.measures import oracle_expected_mi, score_bundle
from reliable_fd.synthetic import planted_dataset, key_gadget

from .conftest import labeling_pairs


def gadget_table(l):
    ds = key_gadget(l)
    return contingency(ds.labeling(0), ds.target)


class TestFMon:
    def test_constant_x(self):
        t = contingency(constant_labeling(4), Labeling.from_codes([0, 1, 0, 1]))
        assert f_mon(t) == 1.0

    def test_key(self):
        t = contingency(Labeling.from_codes([0, 1, 2, 3]), Labeling.from_codes([0, 1, 0, 1]))
        assert f_mon(t) == 0.0

    def test_gadget_l2_against_exact_oracle(self):
        ds = key_gadget(2)
        x, y = ds.labeling(0), ds.target
        h_y = math.log2(4)
        oracle = 1 - oracle_expected_mi(x, y) / h_y  # all 8! permutations
        assert f_mon(gadget_table(2)) == pytest.approx(oracle, abs=1e-12)
        assert oracle >= 1 - 1 / math.log2(4)


class TestFSpc:
    @pytest.mark.parametrize("l", [1, 2, 3, 4, 8, 16])
    def test_gadget_is_zero(self, l):
        assert f_spc(gadget_table(l)) == 0.0

    def test_constant_x_binary_target(self):
        y = Labeling.from_codes([0, 1, 0, 1])
        # X+ is Y itself; 1 - E[I(Y; Y_sigma)] / H(Y) by enumerating all 4! permutations
        oracle = 1 - oracle_expected_mi(y, y) / 1.0
        assert oracle == pytest.approx(2 / 3, abs=1e-12)
        assert f_spc(contingency(constant_labeling(4), y)) == pytest.approx(2 / 3, abs=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(labeling_pairs(max_n=25, max_domain=5))
    def test_shortcut_equals_materialized_join(self, pair):
        x, y = pair
        explicit = score_bundle(contingency(joint_labeling([x, y]), y))
        expected = 0.0 if explicit.h_y == 0 else min(max(1 - explicit.b0, 0.0), 1.0)
        assert f_spc(contingency(x, y)) == pytest.approx(expected, abs=1e-12)

    @given(labeling_pairs(max_n=25, max_domain=5))
    def test_never_above_f_mon(self, pair):
        t = contingency(*pair)
        assert f_spc(t) <= f_mon(t) + 1e-12
        assert delta_gap(t) >= -1e-12


class TestDelta:
    @pytest.mark.parametrize("l", [2, 4, 8, 16])
    def test_gadget_gap(self, l):
        assert delta_gap(gadget_table(l)) >= 1 - 1 / math.log2(2 * l)

    def test_gap_grows(self):
        gaps = [delta_gap(gadget_table(l)) for l in (2, 4, 8, 16)]
        assert gaps == sorted(gaps)

    def test_key(self):
        t = contingency(Labeling.from_codes([0, 1, 2]), Labeling.from_codes([0, 1, 1]))
        assert delta_gap(t) == 0.0


class TestStaged:
    def test_full_incumbent_prunes(self, rng):
        for _ in range(20):
            x = Labeling.from_codes(rng.integers(0, 4, 15))
            y = Labeling.from_codes(rng.integers(0, 3, 15))
            assert staged_bound_prunes(contingency(x, y), 1.0, 1.0)

    def test_zero_incumbent_constant_x(self):
        t = contingency(constant_labeling(6), Labeling.from_codes([0, 1, 2, 0, 1, 2]))
        assert not staged_bound_prunes(t, 1.0, 0.0)

    def test_second_stage_prunes_gadget(self):
        t = gadget_table(4)
        incumbent = 0.5 * (f_spc(t) + f_mon(t))
        st = staged_check(t, 1.0, incumbent)
        assert st.prune and st.spc is not None
        assert 1.0 * f_mon(t) > incumbent

    def test_no_spc_when_mon_prunes(self, monkeypatch):
        calls = []
        monkeypatch.setattr(bounds, "f_spc", lambda t: calls.append(t) or 0.0)
        t = gadget_table(2)
        assert staged_bound_prunes(t, 1.0, 0.99)
        assert calls == []
        assert staged_bound_prunes(t, 1.0, 0.1)
        assert len(calls) == 1

    def test_alpha_range(self):
        with pytest.raises(ValueError):
            staged_bound_prunes(gadget_table(1), 0.0, 0.0)


def test_admissibility_exhaustive_small(rng):
    for _ in range(15):
        ds = planted_dataset(rng, int(rng.integers(1, 6)), int(rng.integers(4, 20)))
        idx = range(ds.d)
        subsets = [s for r in range(ds.d + 1) for s in itertools.combinations(idx, r)]
        tables = {s: contingency(ds.joint(s), ds.target) for s in subsets}
        f0 = {s: score_bundle(t).f0 for s, t in tables.items()}
        for s in subsets:
            spc, mon = f_spc(tables[s]), f_mon(tables[s])
            assert mon >= spc - 1e-12
            for sup in subsets:
                if set(s) <= set(sup):
                    assert spc >= f0[sup] - 1e-12
