"""buslab: low-weight differential bus encoding.

Codecs that minimize bus line transitions (optimal pulse-position mapping,
DBI, PPM0, syndrome/coset encoders), exact closed-form performance figures,
and a reproducible Monte Carlo harness, plus the `buslab` CLI.
"""
from .analytics import (
    d_max,
    d_min,
    d_opt,
    d_unc,
    encoding_cost,
    energy_saving,
    per_codeword_cost,
    uncoded_distance_pmf,
)
from .codecs import (
    BusState,
    Codec,
    CodecSpec,
    CorruptedWordError,
    CosetLeaderTable,
    Family,
    LinearCode,
    build_coset_leader_table,
    coset_spec,
    coset_spec_for,
    dbi_encode,
    dbi_spec,
    decode,
    encode,
    make_codec,
    make_golay23,
    make_hamming,
    make_repetition,
    min_distance,
    optimal_differential,
    optimal_spec,
    ppm0_spec,
    uncoded_spec,
    words_of_weight,
)
from .combinatorics import (
    BinomialTable,
    CapacityError,
    PulsePositions,
    Word,
    build_binomial_table,
    cumulative_binomial,
    mppm_rank,
    mppm_unrank,
    positions_to_word,
    word_to_positions,
)
from .simulator import (
    ConvergenceReport,
    ExactAverageReport,
    TraceConfig,
    TransitionStats,
    clock_model,
    convergence_check,
    exact_average_distance,
    run_trace,
    word_cost,
)

__version__ = "0.1.0"
