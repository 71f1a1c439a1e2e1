import itertools

import numpy as np
import pytest

from reliable_fd.data import contingency
from reliable_fd.measures import expected_mi_permutation, mutual_information, score_bundle
from reliable_fd.reduction import (NoCoverError, ReductionMeta, SetCoverInstance, base_size,
                                   copy_count, cover_mi_gap, example_cover_instance, min_set_cover_bruteforce,
                                   parse_subsets, random_instance, read_sidecar, subset_scores, tau1,
                                   tau1_rows, tau_k, verify_reduction, write_sidecar)

# the five-element example, transcribed row by row as X1 X2 X3 X4 Y
EXAMPLE_TABLE = """\
1 a 1 1 a
a 2 2 a a
3 a a a a
4 a 4 a a
a 5 a 5 a
a a a a b
a a a a b
a a a a b
a a a a b
a a a a b
b c c c c
c b c c c
c c b c c
c c c b c
c c c c c"""


def all_subsets(m):
    for r in range(m + 1):
        yield from itertools.combinations(range(m), r)


def brute_cover_size(inst):
    """Independent check: smallest k such that some k-family covers."""
    return min(len(s) for s in all_subsets(inst.m) if inst.covers(s))


class TestInstance:
    def test_validation(self):
        with pytest.raises(ValueError):
            SetCoverInstance(3, (frozenset({4}),))
        with pytest.raises(ValueError):
            SetCoverInstance(0, (frozenset(),))
        with pytest.raises(ValueError):
            SetCoverInstance(3, ())

    def test_parse(self):
        assert parse_subsets("1,3,4;2,5") == (frozenset({1, 3, 4}), frozenset({2, 5}))
        assert parse_subsets("1;;2")[1] == frozenset()

    def test_random_instance_covers(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            inst = random_instance(rng, int(rng.integers(1, 7)), int(rng.integers(1, 6)))
            assert inst.covers(range(inst.m))


class TestTau1:
    def test_example_table(self):
        got = "\n".join(" ".join(r) for r in tau1_rows(example_cover_instance()))
        assert got == EXAMPLE_TABLE

    def test_shape(self):
        inst = example_cover_instance()
        ds = tau1(inst)
        assert ds.n == base_size(inst) == 15
        assert ds.column_names == ["X1", "X2", "X3", "X4"]

    def test_covers_determine_y(self):
        inst = example_cover_instance()
        ds = tau1(inst)
        for s in all_subsets(inst.m):
            f = score_bundle(contingency(ds.joint(s), ds.target)).fraction
            if inst.covers(s):
                assert f == pytest.approx(1.0, abs=1e-12)
            else:
                assert f < 1.0 - 1e-9

    @pytest.mark.parametrize("seed", range(8))
    def test_fraction_monotone_in_coverage(self, seed):
        rng = np.random.default_rng(seed)
        inst = random_instance(rng, int(rng.integers(2, 7)), int(rng.integers(2, 7)))
        ds = tau1(inst)
        # the empty family is excluded: it cannot separate the third region's rows
        fr = {s: score_bundle(contingency(ds.joint(s), ds.target)).fraction
              for s in all_subsets(inst.m) if s}
        for a, b in itertools.product(fr, repeat=2):
            if inst.covered_count(a) >= inst.covered_count(b):
                assert fr[a] >= fr[b] - 1e-12

    @pytest.mark.parametrize("seed", range(10))
    def test_mi_gap(self, seed):
        rng = np.random.default_rng(100 + seed)
        inst = random_instance(rng, int(rng.integers(1, 7)), int(rng.integers(1, 6)))
        if all(inst.covers(s) for s in all_subsets(inst.m) if s):
            pytest.skip("no non-empty non-cover")
        assert cover_mi_gap(inst) >= 2 / base_size(inst) - 1e-12

    def test_mi_gap_example(self):
        assert cover_mi_gap(example_cover_instance()) >= 2 / 15


class TestTauK:
    def test_example_size(self):
        ds, meta = tau_k(example_cover_instance())
        assert (meta.l, meta.k, meta.rows, ds.n) == (15, 45, 675, 675)
        assert copy_count(15) == 45
        assert meta.regions == {"S1": (1, 5), "S2": (6, 10), "S3": (11, 15)}

    def test_rows_repeat(self):
        inst = example_cover_instance()
        base, _ = tau_k(inst, 1)
        ds, meta = tau_k(inst, 3)
        rows, brow = ds.rows(), base.rows()
        for j in range(meta.rows):
            assert rows[j] == brow[j % meta.l]

    def test_copying_keeps_fraction_and_shrinks_m0(self):
        inst = example_cover_instance()
        d1 = tau1(inst)
        dk, _ = tau_k(inst, 4)
        for s in all_subsets(inst.m):
            t1 = contingency(d1.joint(s), d1.target)
            tk = contingency(dk.joint(s), dk.target)
            assert score_bundle(tk).fraction == pytest.approx(score_bundle(t1).fraction, abs=1e-12)
            assert mutual_information(tk) == pytest.approx(mutual_information(t1), abs=1e-12)
            if s:
                assert expected_mi_permutation(tk) < expected_mi_permutation(t1)

    def test_cover_m0_below_threshold(self):
        inst = example_cover_instance()
        ds, meta = tau_k(inst)
        for s in all_subsets(inst.m):
            if inst.covers(s):
                assert expected_mi_permutation(contingency(ds.joint(s), ds.target)) < 2 / meta.l

    def test_smaller_covers_score_higher(self):
        inst = example_cover_instance()
        ds, _ = tau_k(inst)
        covers = [s for s in all_subsets(inst.m) if inst.covers(s)]
        for a, b in itertools.product(covers, repeat=2):
            if len(a) < len(b):
                assert subset_scores(ds, a).f0 >= subset_scores(ds, b).f0 - 1e-12

    def test_bad_k(self):
        with pytest.raises(ValueError):
            tau_k(example_cover_instance(), 0)


class TestSetCover:
    def test_example(self):
        assert min_set_cover_bruteforce(example_cover_instance()) == (0, 1)

    def test_universe_in_family(self):
        inst = SetCoverInstance(4, ({1}, {1, 2, 3, 4}, {2, 3}))
        assert min_set_cover_bruteforce(inst) == (1,)

    def test_no_cover(self):
        with pytest.raises(NoCoverError):
            min_set_cover_bruteforce(SetCoverInstance(3, ({1}, {2})))

    def test_random(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            inst = random_instance(rng, int(rng.integers(1, 8)), int(rng.integers(1, 8)))
            cov = min_set_cover_bruteforce(inst)
            assert inst.covers(cov)
            assert len(cov) == brute_cover_size(inst)


class TestVerify:
    def test_example(self):
        rep = verify_reduction(example_cover_instance())
        assert rep.maximizer == (0, 1)
        assert rep.ok and rep.gap > 0

    def test_unique_cover(self):
        inst = SetCoverInstance(4, ({1, 2}, {3}, {3, 4}, {1}))
        assert min_set_cover_bruteforce(inst) == (0, 2)
        rep = verify_reduction(inst)
        assert rep.maximizer == (0, 2) and rep.ok

    def test_every_set_covers(self):
        inst = SetCoverInstance(3, ({1, 2, 3}, {1, 2, 3}, {1, 2, 3}))
        rep = verify_reduction(inst)
        assert len(rep.maximizer) == 1 and rep.ok

    def test_random(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            inst = random_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 5)))
            rep = verify_reduction(inst)
            assert rep.is_cover and rep.is_minimum, rep

    def test_size_limit(self):
        inst = SetCoverInstance(2, tuple({1, 2} for _ in range(13)))
        with pytest.raises(ValueError):
            verify_reduction(inst)


def test_sidecar_roundtrip(tmp_path):
    meta = ReductionMeta(5, 4, 15, 45, 675)
    p = tmp_path / "out.csv.meta"
    write_sidecar(p, meta, (0, 1), "tauk")
    got = read_sidecar(p)
    assert got["l"] == "15" and got["k"] == "45" and got["rows"] == "675"
    assert got["S3"] == "11-15"
    assert got["min_cover"] == "X1,X2" and got["min_cover_size"] == "2"
