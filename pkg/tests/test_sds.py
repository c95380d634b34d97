import random
import time

import numpy as np
import pytest

from charmgolay.sds import (
    PairTransform,
    SupplementaryDifferenceSet,
    apply_transform,
    are_equivalent,
    canonical_form,
    difference_counts,
    is_periodic_golay_sds,
    iter_transforms,
    pair_to_sds,
    parse_listing,
    read_sds_file,
    sds_to_pair,
    verify_sds,
    write_sds_file,
)
from charmgolay.sequences import is_periodic_golay_pair

import oracles

# entry 2 of the bundled listing has a 30-element first block and does not verify
DEFECTIVE_ENTRIES = {"2"}


def random_transform(rng, v, extended=False):
    units = [k for k in range(1, v) if np.gcd(k, v) == 1] or [1]
    flags = [rng.random() < 0.5 for _ in range(5)] if extended else [False] * 5
    return PairTransform(
        rng.randrange(v), rng.randrange(v), rng.random() < 0.5, rng.random() < 0.5,
        rng.choice(units), flags[0], flags[1], flags[2],
    )


class TestSdsBasics:
    def test_first_solution(self, sds68):
        sol = sds68[0]
        assert sol.params == (68, 31, 29, 26)
        assert sol.counting_identity_holds()
        assert verify_sds(sol)
        assert is_periodic_golay_sds(sol)

    def test_tiny_example(self):
        sds = SupplementaryDifferenceSet(4, (0,), (0,), 0)
        assert verify_sds(sds)
        assert is_periodic_golay_sds(sds)
        assert sds_to_pair(sds) == ((-1, 1, 1, 1), (-1, 1, 1, 1))

    def test_planar_difference_set(self):
        # {1, 2, 4} mod 7 with an empty second block
        sds = SupplementaryDifferenceSet(7, (1, 2, 4), (), 1)
        assert verify_sds(sds)
        assert not is_periodic_golay_sds(sds)

    def test_perturbed_solution_fails(self, sds68):
        sol = sds68[0]
        missing = next(j for j in range(68) if j not in sol.X)
        bad = SupplementaryDifferenceSet(68, sol.X[1:] + (missing,), sol.Y, 26)
        assert not verify_sds(bad)

    def test_validation(self):
        with pytest.raises(ValueError):
            SupplementaryDifferenceSet(5, (0, 0), (), 0)
        with pytest.raises(ValueError):
            SupplementaryDifferenceSet(5, (5,), (), 0)

    def test_counts_match_brute_tally(self):
        rng = random.Random(12)
        for _ in range(300):
            v = rng.randint(2, 20)
            X = rng.sample(range(v), rng.randint(0, v))
            Y = rng.sample(range(v), rng.randint(0, v))
            assert difference_counts(v, X, Y).tolist() == oracles.difference_tally(v, X, Y)


class TestPairMap:
    def test_round_trip_corpus(self, sds68):
        for sol in sds68:
            back = pair_to_sds(sds_to_pair(sol), sol.lam)
            assert (back.X, back.Y) == (sol.X, sol.Y)

    def test_lambda_from_counting(self, sds68):
        assert pair_to_sds(sds_to_pair(sds68[0])).lam == 26

    def test_sds_iff_pgp_on_small_lengths(self):
        # a pair is periodic Golay exactly when its -1 positions form an SDS with v = 2(r+s-lam)
        for v in (4, 8, 10):
            pgp = set(oracles.periodic_golay_pairs(v))
            for pair in list(pgp)[:300]:
                sds = pair_to_sds(pair)
                assert verify_sds(sds) and is_periodic_golay_sds(sds)
        rng = np.random.default_rng(4)
        for _ in range(500):
            v = 10
            pair = tuple(tuple(int(x) for x in rng.choice([-1, 1], size=v)) for _ in range(2))
            try:
                sds = pair_to_sds(pair)
            except ValueError:
                assert not is_periodic_golay_pair(*pair)
                continue
            assert (verify_sds(sds) and is_periodic_golay_sds(sds)) == is_periodic_golay_pair(*pair)

    def test_corpus_pairs(self, sds68):
        for sol in sds68:
            ok = verify_sds(sol) and is_periodic_golay_sds(sol)
            assert is_periodic_golay_pair(*sds_to_pair(sol)) == ok
            assert ok == (sol.label not in DEFECTIVE_ENTRIES)


class TestListing:
    def test_corpus_shape(self, sds68):
        assert len(sds68) == 29
        assert [s.label for s in sds68] == [str(i) for i in range(1, 30)]
        assert sum(verify_sds(s) for s in sds68) == 28

    @pytest.mark.parametrize("label", ["17", "22", "23"])
    def test_misplaced_brackets_resolved_by_size(self, sds68, label):
        sol = sds68[int(label) - 1]
        assert (sol.r, sol.s) == (31, 29)
        assert verify_sds(sol)

    def test_wrong_block_count(self):
        with pytest.raises(ValueError):
            parse_listing("1) [[0,1,2]]", v=5, lam=0, sizes=(3, 0))

    def test_small_listing(self):
        items = parse_listing("1) [[1,2,4],[3]]\n2) [[0],[1,2,3]]", v=7, lam=1, sizes=(3, 1))
        assert items[0].X == (1, 2, 4) and items[0].Y == (3,)
        # second entry is listed small block first; sizes decide
        assert items[1].X == (1, 2, 3) and items[1].Y == (0,)

    def test_file_round_trip(self, tmp_path, sds68):
        path = tmp_path / "corpus.sds"
        write_sds_file(path, sds68)
        back = read_sds_file(path)
        assert back == sds68
        assert [s.label for s in back] == [s.label for s in sds68]

    def test_read_comments_and_errors(self, tmp_path):
        path = tmp_path / "x.sds"
        path.write_text("# header\nv: 4\nlambda: 0  # trailing\nX: 0\nY: 0\n")
        (sds,) = read_sds_file(path)
        assert verify_sds(sds)
        path.write_text("v: 4\nX: 0\n")
        with pytest.raises(ValueError):
            read_sds_file(path)


class TestTransforms:
    def test_identity(self, example68):
        pair = (example68["A"], example68["B"])
        assert apply_transform(PairTransform(), pair) == pair

    def test_group_size(self):
        assert sum(1 for _ in iter_transforms(5)) == 4 * 25 * 4
        assert sum(1 for _ in iter_transforms(4, extended=True)) == 8 * 4 * 16 * 2

    def test_closure_and_inverse(self):
        # the orbit of a pair under the generated group equals the brute orbit
        rng = np.random.default_rng(9)
        for v in (5, 6, 8):
            pair = tuple(tuple(int(x) for x in rng.choice([-1, 1], size=v)) for _ in range(2))
            orbit = {apply_transform(t, pair) for t in iter_transforms(v)}
            assert orbit == oracles.pair_orbit(pair, v)
            # every image maps back to the start: the set is closed under the group
            for img in list(orbit)[:10]:
                assert pair in {apply_transform(t, img) for t in iter_transforms(v)}

    def test_composition_stays_in_group(self):
        rng = random.Random(21)
        v = 9
        pair = tuple(tuple(rng.choice([-1, 1]) for _ in range(v)) for _ in range(2))
        orbit = oracles.pair_orbit(pair, v)
        for _ in range(200):
            t1, t2 = random_transform(rng, v), random_transform(rng, v)
            assert apply_transform(t2, apply_transform(t1, pair)) in orbit

    def test_preserves_pgp(self):
        rng = random.Random(5)
        pairs = oracles.periodic_golay_pairs(10)
        for _ in range(300):
            pair = rng.choice(pairs)
            t = random_transform(rng, 10, extended=True)
            assert is_periodic_golay_pair(*apply_transform(t, pair))

    def test_non_unit_multiplier(self):
        with pytest.raises(ValueError):
            apply_transform(PairTransform(multiplier=2), ((1, 1, 1, 1), (1, 1, 1, 1)))


class TestCanonicalForm:
    def test_matches_orbit_minimum(self):
        rng = np.random.default_rng(13)
        for v in range(1, 10):
            for _ in range(20):
                pair = tuple(tuple(int(x) for x in rng.choice([-1, 1], size=v)) for _ in range(2))
                assert canonical_form(pair) == min(oracles.pair_orbit(pair, v))

    def test_extended_matches_orbit_minimum(self):
        rng = np.random.default_rng(14)
        for v in (4, 5, 6):
            for _ in range(10):
                pair = tuple(tuple(int(x) for x in rng.choice([-1, 1], size=v)) for _ in range(2))
                ext = set()
                for t in iter_transforms(v, extended=True):
                    ext.add(apply_transform(t, pair))
                assert canonical_form(pair, extended=True) == min(ext)

    def test_idempotent_and_invariant(self, sds68):
        rng = random.Random(8)
        for sol in sds68[:5]:
            pair = sds_to_pair(sol)
            c = canonical_form(pair)
            assert canonical_form(c) == c
            for _ in range(5):
                assert canonical_form(apply_transform(random_transform(rng, 68), pair)) == c

    def test_example_is_solution_15(self, sds68, example68):
        assert are_equivalent(sds_to_pair(sds68[14]), (example68["A"], example68["B"]))

    def test_distinct_solutions(self, sds68):
        assert not are_equivalent(sds_to_pair(sds68[0]), sds_to_pair(sds68[2]))

    def test_corpus_classes(self, sds68):
        forms = {canonical_form(sds_to_pair(s)) for s in sds68}
        assert len(forms) == 29

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            canonical_form(((1, 1), (1, 1, 1)))
        with pytest.raises(ValueError):
            are_equivalent(((1,), (1,)), ((1, 1), (1, 1)))

    def test_speed(self, sds68):
        start = time.perf_counter()
        canonical_form(sds_to_pair(sds68[0]))
        assert time.perf_counter() - start < 10
