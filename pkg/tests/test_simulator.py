from fractions import Fraction

import numpy as np
import pytest

from buslab import analytics
from buslab.codecs import (
    coset_spec,
    dbi_spec,
    make_codec,
    make_hamming,
    make_repetition,
    optimal_spec,
    ppm0_spec,
    uncoded_spec,
)
from buslab.combinatorics import Word
from buslab.simulator import (
    TraceConfig,
    clock_model,
    convergence_check,
    exact_average_distance,
    run_trace,
    word_cost,
)


class TestRunTrace:
    def test_deterministic_for_fixed_seed(self):
        cfg = TraceConfig(spec=optimal_spec(11, 12), trace_length=20_000, seed=7)
        a = run_trace(cfg)
        b = run_trace(cfg)
        assert a == b

    def test_sharded_merge_equals_serial(self):
        cfg = TraceConfig(spec=optimal_spec(8, 8), trace_length=30_000, seed=3, shards=4)
        serial = run_trace(cfg, jobs=1)
        parallel = run_trace(cfg, jobs=4)
        assert serial == parallel

    def test_histogram_accounts_for_every_word(self):
        for spec in (uncoded_spec(9), dbi_spec(6), optimal_spec(7, 5)):
            cfg = TraceConfig(spec=spec, trace_length=5_000, seed=11)
            stats = run_trace(cfg)
            assert sum(stats.weight_histogram) == stats.words_sent == 5_000
            assert stats.total_transitions == sum(
                w * c for w, c in enumerate(stats.weight_histogram)
            )
            assert stats.mean_transitions * stats.words_sent == stats.total_transitions

    def test_single_word_trace_counts_its_weight(self):
        # replay the documented generator contract to know the drawn word
        spec = optimal_spec(11, 12)
        cfg = TraceConfig(spec=spec, trace_length=1, seed=12345)
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(12345).spawn(1)[0])
        )
        u = int(rng.integers(0, 1 << 11, size=1, dtype=np.uint64)[0])
        expected = make_codec(spec).differential_int(u).bit_count()
        stats = run_trace(cfg)
        assert stats.total_transitions == expected

    def test_uncoded_mean_near_half_k(self):
        cfg = TraceConfig(spec=uncoded_spec(8), trace_length=100_000, seed=5)
        stats = run_trace(cfg)
        assert abs(float(stats.mean_transitions) - 4.0) / 4.0 < 0.02

    def test_optimal_mean_near_closed_form(self):
        cfg = TraceConfig(spec=optimal_spec(11, 12), trace_length=200_000, seed=5)
        stats = run_trace(cfg)
        ref = float(analytics.d_opt(11, 12))
        assert abs(float(stats.mean_transitions) - ref) / ref < 0.01

    def test_dbi_mean_near_exhaustive_mean(self):
        cfg = TraceConfig(spec=dbi_spec(4), trace_length=60_000, seed=9)
        stats = run_trace(cfg)
        ref = float(exact_average_distance(dbi_spec(4)).exact_mean)
        assert abs(float(stats.mean_transitions) - ref) / ref < 0.02

    def test_coset_trace_runs(self):
        cfg = TraceConfig(spec=coset_spec(make_hamming(4)), trace_length=50_000, seed=2)
        stats = run_trace(cfg)
        ref = 15 / 16
        assert abs(float(stats.mean_transitions) - ref) / ref < 0.02

    def test_optimal_cost_counters(self):
        spec = optimal_spec(11, 12)
        cfg = TraceConfig(spec=spec, trace_length=10_000, seed=1)
        stats = run_trace(cfg)
        pulses = stats.total_transitions
        assert stats.clock_cycles_total == pulses
        assert stats.comparisons_total == 23 * pulses + 4 * 10_000
        assert stats.additions_total == 2 * pulses
        assert stats.baseline_clock_cycles == 23 * 10_000

    def test_non_optimal_families_leave_cost_counters_zero(self):
        cfg = TraceConfig(spec=ppm0_spec(4), trace_length=1_000, seed=1)
        stats = run_trace(cfg)
        assert stats.clock_cycles_total == 0
        assert stats.comparisons_total == 0

    def test_wide_info_falls_back_to_per_word_encoding(self):
        # k = 21 skips the differential table; mean stays near k/2 at b = 0
        cfg = TraceConfig(spec=optimal_spec(21, 0), trace_length=2_000, seed=4)
        stats = run_trace(cfg)
        assert 10.0 < float(stats.mean_transitions) < 11.0

    def test_config_validation(self):
        with pytest.raises(ValueError):
            TraceConfig(spec=uncoded_spec(4), trace_length=0, seed=1)
        with pytest.raises(ValueError):
            TraceConfig(spec=uncoded_spec(4), trace_length=10, seed=1, shards=11)
        with pytest.raises(ValueError):
            run_trace(TraceConfig(spec=uncoded_spec(4), trace_length=10, seed=1), jobs=0)


class TestEstimatorConsistency:
    @pytest.mark.parametrize(
        "spec",
        [uncoded_spec(8), dbi_spec(5), ppm0_spec(4), optimal_spec(8, 4),
         coset_spec(make_hamming(4))],
        ids=lambda s: f"{s.family.value}-k{s.k}",
    )
    def test_three_seeds_within_one_percent_of_exact(self, spec):
        exact = float(exact_average_distance(spec).exact_mean)
        for seed in (1, 2, 3):
            cfg = TraceConfig(spec=spec, trace_length=200_000, seed=seed)
            mean = float(run_trace(cfg).mean_transitions)
            assert abs(mean - exact) / exact < 0.01, (spec.family, seed, mean)


class TestExactAverage:
    def test_optimal_golay_geometry(self):
        rep = exact_average_distance(optimal_spec(11, 12))
        assert rep.exact_mean == Fraction(2921, 1024)
        assert not rep.state_dependent

    def test_hamming_coset_reaches_the_floor(self):
        rep = exact_average_distance(coset_spec(make_hamming(4)))
        assert rep.exact_mean == Fraction(15, 16)

    def test_dbi_matches_repetition_coset(self):
        dbi = exact_average_distance(dbi_spec(4))
        rep = exact_average_distance(coset_spec(make_repetition(5)))
        assert dbi.state_dependent and not rep.state_dependent
        assert dbi.exact_mean == rep.exact_mean

    def test_uncoded_mean_is_half_k(self):
        for k in (1, 4, 8):
            rep = exact_average_distance(uncoded_spec(k))
            assert rep.exact_mean == Fraction(k, 2)

    def test_per_state_table(self):
        rep = exact_average_distance(dbi_spec(3), include_per_state=True)
        assert rep.per_state is not None
        assert len(rep.per_state) == 1 << 4
        total = sum(rep.per_state)
        assert total / (1 << 4) == rep.exact_mean

    def test_size_caps(self):
        with pytest.raises(ValueError):
            exact_average_distance(uncoded_spec(15))  # info bits past the state cap
        with pytest.raises(ValueError):
            exact_average_distance(dbi_spec(16))
        with pytest.raises(ValueError):
            exact_average_distance(optimal_spec(21, 0))


class TestClockModel:
    def test_zero_word_needs_no_clocks(self):
        assert clock_model(optimal_spec(11, 12), Word.zero(11)) == (0, 23)

    def test_top_info_word(self):
        assert clock_model(optimal_spec(11, 12), Word(2047, 11)) == (3, 23)

    def test_clocks_equal_differential_weight(self):
        spec = optimal_spec(11, 12)
        codec = make_codec(spec)
        total = 0
        for u in range(1 << 11):
            m, n = clock_model(spec, Word(u, 11))
            assert n == 23
            assert m == codec.differential_int(u).bit_count()
            total += m
        assert Fraction(total, 1 << 11) == analytics.d_opt(11, 12)

    def test_pulse_budget_never_exceeds_half_the_lines(self):
        for k, b in ((4, 1), (8, 4), (11, 12), (12, 8)):
            spec = optimal_spec(k, b)
            n = k + b
            for u in range(1 << k):
                m, _ = clock_model(spec, Word(u, k))
                assert 2 * m <= n

    def test_requires_optimal_family(self):
        with pytest.raises(ValueError):
            clock_model(ppm0_spec(4), Word.zero(4))


class TestWordCost:
    def test_average_cost_matches_closed_form(self):
        for k, b in ((1, 1), (4, 3), (8, 4), (11, 12)):
            spec = optimal_spec(k, b)
            total = 0
            for u in range(1 << k):
                comparisons, additions = word_cost(spec, Word(u, k))
                total += comparisons + additions
            assert Fraction(total, 1 << k) == analytics.encoding_cost(k, b)


class TestConvergence:
    def test_pass_at_generous_tolerance(self):
        cfg = TraceConfig(spec=optimal_spec(11, 12), trace_length=100_000, seed=1)
        report = convergence_check(cfg, analytics.d_opt(11, 12), 0.01)
        assert report.passed
        assert report.margin > 0

    def test_undersampled_trace_fails_honestly(self):
        # ten samples cannot land within 0.01% of 2921/1024: step size is 0.1
        cfg = TraceConfig(spec=optimal_spec(11, 12), trace_length=10, seed=1)
        report = convergence_check(cfg, analytics.d_opt(11, 12), 0.0001)
        assert not report.passed

    def test_parameter_validation(self):
        cfg = TraceConfig(spec=optimal_spec(11, 12), trace_length=10, seed=1)
        with pytest.raises(ValueError):
            convergence_check(cfg, Fraction(0), 0.01)
        with pytest.raises(ValueError):
            convergence_check(cfg, Fraction(1), 0)
