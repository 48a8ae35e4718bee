from datetime import date

import pytest
from hypothesis import given, strategies as st

from brandgauge.consistency import (
    CONSISTENT,
    NOT_CONSISTENT,
    STRONGLY_CONSISTENT,
    CompanyProfile,
    ConsistencyReport,
    bin_label_sim,
    brand_cons_score,
    compare_to_profile,
    consistency_level,
    hamming_label_sim,
    load_profiles,
    profile_from_label,
    rank_label_sim,
    representative_vectors,
    save_profiles,
    temporal_consistency,
)
from brandgauge.errors import BrandGaugeError

from oracles import (
    oracle_bin_label_sim,
    oracle_kendall_tau,
    oracle_rank_label_sim,
    oracle_spearman,
)


def bits(s):
    return tuple(int(c) for c in s)


def make_assessment(confidences):
    order = sorted(range(5), key=lambda i: (-confidences[i], i))
    ranks = [0] * 5
    for pos, i in enumerate(order, start=1):
        ranks[i] = pos
    from brandgauge.classify import TraitAssessment

    return TraitAssessment(
        tuple(confidences),
        tuple(1 if c >= 0.5 else 0 for c in confidences),
        tuple(ranks),
    )


class TestBinLabelSim:
    def test_identity(self):
        assert bin_label_sim(bits("11111"), bits("11111")) == 1.0

    def test_opposite(self):
        assert bin_label_sim(bits("11111"), bits("00000")) == 0.0

    def test_levenshtein_below_hamming_case(self):
        # Hamming 4, Levenshtein 2 -> 1 - (0.8 + 0.4)/2 = 0.4
        assert bin_label_sim(bits("11010"), bits("01101")) == pytest.approx(0.4, abs=1e-12)

    def test_all_1024_pairs_match_oracle(self):
        for a in range(32):
            for b in range(32):
                sa, sb = format(a, "05b"), format(b, "05b")
                assert bin_label_sim(bits(sa), bits(sb)) == pytest.approx(
                    oracle_bin_label_sim(sa, sb), abs=0
                )

    @given(st.integers(0, 31), st.integers(0, 31))
    def test_symmetric_and_bounded(self, a, b):
        sa, sb = bits(format(a, "05b")), bits(format(b, "05b"))
        sim = bin_label_sim(sa, sb)
        assert sim == bin_label_sim(sb, sa)
        assert 0.0 <= sim <= 1.0
        assert (sim == 1.0) == (sa == sb)

    def test_malformed_vector_errors(self):
        with pytest.raises(BrandGaugeError):
            bin_label_sim((1, 0), (1, 0, 1, 0, 1))

    def test_hamming_only_variant(self):
        assert hamming_label_sim(bits("11010"), bits("01101")) == pytest.approx(0.2)


class TestRankLabelSim:
    def test_identity_with_nonconstant_confidences(self):
        r = (1, 2, 3, 4, 5)
        c = (0.9, 0.7, 0.5, 0.3, 0.1)
        assert rank_label_sim(r, r, c, c) == pytest.approx(1.0, abs=1e-12)

    def test_full_reversal(self):
        sim = rank_label_sim(
            (1, 2, 3, 4, 5),
            (5, 4, 3, 2, 1),
            (0.9, 0.7, 0.5, 0.3, 0.1),
            (0.1, 0.3, 0.5, 0.7, 0.9),
        )
        assert sim == pytest.approx(-1.0, abs=1e-12)

    def test_swap_fixture_components_and_mean(self):
        ra, rb = (1, 2, 3, 4, 5), (2, 1, 3, 4, 5)
        ca, cb = (0.9, 0.8, 0.6, 0.4, 0.2), (0.8, 0.9, 0.6, 0.4, 0.2)
        assert oracle_spearman(ra, rb) == pytest.approx(0.9, abs=1e-12)
        assert oracle_kendall_tau(ra, rb) == pytest.approx(0.8, abs=1e-12)
        expected = oracle_rank_label_sim(ra, rb, ca, cb)
        assert rank_label_sim(ra, rb, ca, cb) == pytest.approx(expected, abs=1e-9)

    def test_matches_oracle_on_random_permutations(self):
        import itertools
        import random

        rng = random.Random(4)
        perms = list(itertools.permutations(range(1, 6)))
        for _ in range(30):
            ra, rb = rng.choice(perms), rng.choice(perms)
            ca = tuple(rng.random() for _ in range(5))
            cb = tuple(rng.random() for _ in range(5))
            assert rank_label_sim(ra, rb, ca, cb) == pytest.approx(
                oracle_rank_label_sim(ra, rb, ca, cb), abs=1e-9
            )

    def test_zero_variance_pearson_fallback(self):
        r = (1, 2, 3, 4, 5)
        same = (0.5,) * 5
        sim_equal = rank_label_sim(r, r, same, same)
        # Pearson falls back to 1 for identical constant vectors
        assert sim_equal == pytest.approx(1.0, abs=1e-12)
        sim_diff = rank_label_sim(r, r, same, (0.4,) * 5)
        assert sim_diff == pytest.approx((0.0 + 1.0 + 1.0) / 3, abs=1e-12)

    def test_malformed_permutation_errors(self):
        with pytest.raises(BrandGaugeError):
            rank_label_sim((1, 1, 3, 4, 5), (1, 2, 3, 4, 5), (0.5,) * 5, (0.5,) * 5)

    def test_confidence_out_of_range_errors(self):
        with pytest.raises(BrandGaugeError):
            rank_label_sim((1, 2, 3, 4, 5), (1, 2, 3, 4, 5), (1.5,) * 5, (0.5,) * 5)


class TestRepresentativeVectors:
    def test_majority_label(self):
        group = [
            make_assessment([0.9, 0.1, 0.9, 0.9, 0.1]),
            make_assessment([0.8, 0.2, 0.8, 0.7, 0.2]),
            make_assessment([0.9, 0.9, 0.9, 0.9, 0.1]),
        ]
        profile = representative_vectors(group, company="X")
        assert profile.representative_label == (1, 0, 1, 1, 0)

    def test_two_way_tie_lexicographic(self):
        group = [
            make_assessment([0.9, 0.1, 0.1, 0.1, 0.1]),
            make_assessment([0.1, 0.9, 0.1, 0.1, 0.1]),
        ]
        profile = representative_vectors(group)
        # (0,1,0,0,0) < (1,0,0,0,0)
        assert profile.representative_label == (0, 1, 0, 0, 0)

    def test_tie_broken_by_most_recent_date(self):
        group = [
            make_assessment([0.9, 0.1, 0.1, 0.1, 0.1]),
            make_assessment([0.1, 0.9, 0.1, 0.1, 0.1]),
        ]
        profile = representative_vectors(
            group, dates=[date(2016, 1, 1), date(2015, 1, 1)]
        )
        assert profile.representative_label == (1, 0, 0, 0, 0)

    def test_single_post(self):
        a = make_assessment([0.9, 0.6, 0.1, 0.1, 0.1])
        profile = representative_vectors([a])
        assert profile.representative_label == a.label_vector
        assert profile.representative_rank == a.rank_vector
        assert profile.static_post_count == 1

    def test_empty_errors(self):
        with pytest.raises(BrandGaugeError):
            representative_vectors([])

    def test_confidences_are_elementwise_means(self):
        group = [make_assessment([0.8, 0.2, 0.4, 0.6, 0.0]), make_assessment([0.6, 0.4, 0.4, 0.2, 1.0])]
        profile = representative_vectors(group)
        assert profile.representative_confidences == pytest.approx((0.7, 0.3, 0.4, 0.4, 0.5))


class TestConsistencyLevel:
    @pytest.mark.parametrize(
        "bin_sim,rank_sim,expected",
        [
            (0.9, 0.7, STRONGLY_CONSISTENT),
            (0.4, 0.2, NOT_CONSISTENT),
            (0.7, 0.9, CONSISTENT),
            (0.8, 0.6, STRONGLY_CONSISTENT),  # boundary inclusive
            (0.5, 0.9, NOT_CONSISTENT),  # bin boundary inclusive
            (0.9, 0.59, CONSISTENT),  # rank below strong cutoff
        ],
    )
    def test_fixed_points(self, bin_sim, rank_sim, expected):
        assert consistency_level(bin_sim, rank_sim) == expected

    def test_total_over_grid(self):
        levels = {STRONGLY_CONSISTENT, CONSISTENT, NOT_CONSISTENT}
        for i in range(21):
            for j in range(21):
                level = consistency_level(i * 0.05, -1.0 + j * 0.1)
                assert level in levels


class TestBrandConsScore:
    def test_all_strong(self):
        reports = [ConsistencyReport(0.9, 0.9, STRONGLY_CONSISTENT)] * 3
        assert brand_cons_score(reports) == 1.0

    def test_half(self):
        reports = [
            ConsistencyReport(0.7, 0.2, CONSISTENT),
            ConsistencyReport(0.7, 0.2, CONSISTENT),
            ConsistencyReport(0.3, 0.2, NOT_CONSISTENT),
            ConsistencyReport(0.3, 0.2, NOT_CONSISTENT),
        ]
        assert brand_cons_score(reports) == 0.5

    def test_none(self):
        assert brand_cons_score([ConsistencyReport(0.1, 0.0, NOT_CONSISTENT)]) == 0.0

    def test_empty_errors(self):
        with pytest.raises(BrandGaugeError):
            brand_cons_score([])

    def test_order_invariant_and_monotone(self):
        import random

        reports = [
            ConsistencyReport(0.7, 0.2, CONSISTENT),
            ConsistencyReport(0.3, 0.2, NOT_CONSISTENT),
            ConsistencyReport(0.9, 0.9, STRONGLY_CONSISTENT),
        ]
        shuffled = reports[:]
        random.Random(1).shuffle(shuffled)
        assert brand_cons_score(reports) == brand_cons_score(shuffled)
        upgraded = reports[:]
        upgraded[1] = ConsistencyReport(0.7, 0.2, CONSISTENT)
        assert brand_cons_score(upgraded) >= brand_cons_score(reports)


class TestTemporalConsistency:
    def consistent(self):
        return ConsistencyReport(0.9, 0.9, STRONGLY_CONSISTENT)

    def inconsistent(self):
        return ConsistencyReport(0.2, 0.0, NOT_CONSISTENT)

    def test_calendar_binning(self):
        d0 = date(2015, 1, 1)
        from datetime import timedelta

        dated = [
            (d0, self.consistent()),
            (d0 + timedelta(days=10), self.consistent()),
            (d0 + timedelta(days=100), self.inconsistent()),
        ]
        bins = temporal_consistency(dated, bin_weeks=12)
        assert len(bins) == 2
        assert bins[0].post_count == 2
        assert bins[1].post_count == 1
        assert bins[1].start == d0 + timedelta(days=84)

    def test_single_bin(self):
        d0 = date(2015, 1, 1)
        bins = temporal_consistency([(d0, self.consistent())] * 4, bin_weeks=26)
        assert len(bins) == 1
        assert bins[0].post_count == 4

    def test_boundary_score_is_consistent(self):
        d0 = date(2015, 1, 1)
        dated = [(d0, self.consistent()), (d0, self.inconsistent())]
        bins = temporal_consistency(dated, bin_weeks=12)
        assert bins[0].brand_cons_scr == 0.5
        assert bins[0].is_consistent is True

    def test_empty_errors(self):
        with pytest.raises(BrandGaugeError):
            temporal_consistency([], bin_weeks=12)


class TestCompareAndProfiles:
    def test_compare_uses_both_similarities(self):
        profile = profile_from_label("X", (1, 0, 1, 0, 0), confidences=(0.9, 0.2, 0.8, 0.1, 0.3))
        a = make_assessment([0.9, 0.2, 0.8, 0.1, 0.3])
        report = compare_to_profile(a, profile)
        assert report.bin_label_sim == 1.0
        assert report.level == STRONGLY_CONSISTENT

    def test_profile_roundtrip(self, tmp_path):
        profiles = [
            profile_from_label("Acme", (1, 0, 1, 0, 0)),
            CompanyProfile("Globex", (0, 1, 0, 0, 1), (3, 1, 4, 5, 2), None, 7),
        ]
        path = tmp_path / "p.prof"
        save_profiles(profiles, str(path))
        loaded = load_profiles(str(path))
        assert set(loaded) == {"Acme", "Globex"}
        assert loaded["Globex"].representative_rank == (3, 1, 4, 5, 2)
        assert loaded["Globex"].representative_confidences is None
        assert loaded["Acme"].representative_label == (1, 0, 1, 0, 0)
