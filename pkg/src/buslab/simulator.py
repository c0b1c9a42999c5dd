"""Monte Carlo traces, exhaustive averages, and modulator cost accounting.

Traces drive a codec with uniform random info words from the all-zero bus
state and count line transitions per step. Randomness comes from numpy's
PCG64 seeded through SeedSequence, so runs are reproducible and a trace can
be split into shards with independently derived child seeds; merging shard
stats is exact and order-fixed, so a sharded run equals its serial replay
no matter how many workers execute it.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .analytics import per_codeword_cost
from .codecs import Codec, CodecSpec, DbiCodec, Family, OptimalCodec, make_codec
from .combinatorics import Word

__all__ = [
    "TraceConfig",
    "TransitionStats",
    "ExactAverageReport",
    "ConvergenceReport",
    "run_trace",
    "exact_average_distance",
    "clock_model",
    "word_cost",
    "convergence_check",
]

_CHUNK = 1 << 17
# Differential maps are materialized once per run when the info space is
# small enough; larger codecs fall back to per-word encoding.
_TABLE_INFO_BITS = 20
_EXHAUSTIVE_INFO_BITS = 20
# state-dependent averages enumerate 2^n states x 2^k inputs
_EXHAUSTIVE_STATE_LINES = 24
_EXHAUSTIVE_STATE_INFO_BITS = 14


@dataclass(frozen=True)
class TraceConfig:
    """One reproducible trace: codec spec, word count, seed, shard count."""

    spec: CodecSpec
    trace_length: int
    seed: int
    shards: int = 1

    def __post_init__(self):
        if self.trace_length < 1:
            raise ValueError(f"trace_length must be >= 1, got {self.trace_length}")
        if not 1 <= self.shards <= self.trace_length:
            raise ValueError(
                f"shards must be in 1..trace_length, got {self.shards}"
            )


@dataclass
class TransitionStats:
    """Accumulated trace counters.

    weight_histogram[w] counts steps that toggled exactly w lines. The
    clock, comparison, and addition counters model the pulse-by-pulse
    modulator and are filled only for the optimal family (additions are
    tracked separately but carry comparison weight in cost totals).
    """

    n_lines: int
    words_sent: int = 0
    total_transitions: int = 0
    weight_histogram: list[int] = field(default_factory=list)
    clock_cycles_total: int = 0
    comparisons_total: int = 0
    additions_total: int = 0

    def __post_init__(self):
        if not self.weight_histogram:
            self.weight_histogram = [0] * (self.n_lines + 1)

    @property
    def mean_transitions(self) -> Fraction:
        return Fraction(self.total_transitions, self.words_sent)

    @property
    def baseline_clock_cycles(self) -> int:
        """Clocks a bit-serial modulator would spend: n per word."""
        return self.n_lines * self.words_sent

    def merge(self, other: "TransitionStats") -> "TransitionStats":
        if self.n_lines != other.n_lines:
            raise ValueError("cannot merge stats for different bus widths")
        return TransitionStats(
            n_lines=self.n_lines,
            words_sent=self.words_sent + other.words_sent,
            total_transitions=self.total_transitions + other.total_transitions,
            weight_histogram=[
                a + b for a, b in zip(self.weight_histogram, other.weight_histogram)
            ],
            clock_cycles_total=self.clock_cycles_total + other.clock_cycles_total,
            comparisons_total=self.comparisons_total + other.comparisons_total,
            additions_total=self.additions_total + other.additions_total,
        )


@dataclass(frozen=True)
class ExactAverageReport:
    """Exhaustive mean transitions per word, exact."""

    spec: CodecSpec
    exact_mean: Fraction
    state_dependent: bool
    per_state: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class ConvergenceReport:
    passed: bool
    mean: Fraction
    reference: Fraction
    rel_deviation: float
    tolerance: float

    @property
    def margin(self) -> float:
        return self.tolerance - self.rel_deviation


def _popcounts(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr)


def _draw_words(rng: np.random.Generator, k: int, count: int) -> np.ndarray:
    if k <= 63:
        return rng.integers(0, 1 << k, size=count, dtype=np.uint64)
    return rng.integers(0, 1 << 64, size=count, dtype=np.uint64)


def _differential_weights(codec: Codec) -> np.ndarray | None:
    k = codec.spec.k
    if k > _TABLE_INFO_BITS:
        return None
    weights = np.empty(1 << k, dtype=np.uint8)
    for u in range(1 << k):
        weights[u] = codec.differential_int(u).bit_count()  # type: ignore[attr-defined]
    return weights


def _run_shard(codec: Codec, length: int, seed: np.random.SeedSequence) -> TransitionStats:
    spec = codec.spec
    rng = np.random.Generator(np.random.PCG64(seed))
    stats = TransitionStats(n_lines=spec.n)
    hist = np.zeros(spec.n + 1, dtype=np.int64)
    total = 0
    if codec.is_differential:
        weights = _differential_weights(codec)
        done = 0
        while done < length:
            count = min(_CHUNK, length - done)
            us = _draw_words(rng, spec.k, count)
            if weights is not None:
                w = weights[us]
            else:
                w = np.fromiter(
                    (codec.differential_int(int(v)).bit_count() for v in us),  # type: ignore[attr-defined]
                    dtype=np.uint8,
                    count=count,
                )
            hist += np.bincount(w, minlength=spec.n + 1)
            total += int(w.sum(dtype=np.int64))
            done += count
    elif spec.family is Family.UNCODED:
        prev = np.uint64(0)
        done = 0
        while done < length:
            count = min(_CHUNK, length - done)
            xs = _draw_words(rng, spec.k, count)
            diffs = xs ^ np.concatenate(([prev], xs[:-1]))
            w = _popcounts(diffs)
            hist += np.bincount(w.astype(np.int64), minlength=spec.n + 1)
            total += int(w.sum(dtype=np.int64))
            prev = xs[-1]
            done += count
    else:  # DBI walks its state word by word
        assert isinstance(codec, DbiCodec)
        state = 0
        done = 0
        while done < length:
            count = min(_CHUNK, length - done)
            for u in _draw_words(rng, spec.k, count).tolist():
                x = codec.encode_int(state, u)
                w = (x ^ state).bit_count()
                hist[w] += 1
                total += w
                state = x
            done += count
    stats.words_sent = length
    stats.total_transitions = total
    stats.weight_histogram = [int(c) for c in hist]
    if spec.family is Family.OPTIMAL_MPPM:
        # one clock per pulse; n comparisons and 2 additions per pulse, plus
        # d_max + 1 comparisons per word to pick the pulse count
        assert isinstance(codec, OptimalCodec)
        pulses = total
        stats.clock_cycles_total = pulses
        stats.comparisons_total = spec.n * pulses + (codec.d_max + 1) * length
        stats.additions_total = 2 * pulses
    return stats


def run_trace(cfg: TraceConfig, jobs: int = 1) -> TransitionStats:
    """Feed trace_length uniform info words through the codec and count.

    The trace is split into cfg.shards shards with SeedSequence-derived
    child seeds; jobs only controls how many shards run concurrently, so
    the result is identical for any jobs value.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    codec = make_codec(cfg.spec)
    base, extra = divmod(cfg.trace_length, cfg.shards)
    lengths = [base + (1 if i < extra else 0) for i in range(cfg.shards)]
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.shards)
    if jobs == 1 or cfg.shards == 1:
        parts = [_run_shard(codec, ln, sq) for ln, sq in zip(lengths, seeds)]
    else:
        with ThreadPoolExecutor(max_workers=min(jobs, cfg.shards)) as pool:
            parts = list(pool.map(_run_shard, [codec] * cfg.shards, lengths, seeds))
    merged = parts[0]
    for part in parts[1:]:
        merged = merged.merge(part)
    return merged


def _exact_differential_mean(codec: Codec) -> Fraction:
    k = codec.spec.k
    total = sum(codec.differential_int(u).bit_count() for u in range(1 << k))  # type: ignore[attr-defined]
    return Fraction(total, 1 << k)


def exact_average_distance(
    spec: CodecSpec, include_per_state: bool = False
) -> ExactAverageReport:
    """Exact mean transitions over uniform info words and uniform states.

    For differential families the state cancels and the mean is taken over
    info words alone. For the uncoded bus and DBI every previous state is
    enumerated.
    """
    codec = make_codec(spec)
    if codec.is_differential:
        if spec.k > _EXHAUSTIVE_INFO_BITS:
            raise ValueError(f"k={spec.k} too large for exhaustive average")
        return ExactAverageReport(
            spec=spec, exact_mean=_exact_differential_mean(codec), state_dependent=False
        )
    n, k = spec.n, spec.k
    if n > _EXHAUSTIVE_STATE_LINES or k > _EXHAUSTIVE_STATE_INFO_BITS:
        raise ValueError(
            f"k={k}, n={n} too large for the exhaustive state average "
            f"(needs k <= {_EXHAUSTIVE_STATE_INFO_BITS} and n <= {_EXHAUSTIVE_STATE_LINES})"
        )
    pop = _popcounts(np.arange(1 << n, dtype=np.uint32)).astype(np.uint8)
    total = 0
    per_state: list[Fraction] | None = [] if include_per_state else None
    if spec.family is Family.UNCODED:
        us = np.arange(1 << k, dtype=np.uint32)
        for s in range(1 << n):
            sub = int(pop[us ^ np.uint32(s)].sum(dtype=np.int64))
            total += sub
            if per_state is not None:
                per_state.append(Fraction(sub, 1 << k))
    else:
        assert isinstance(codec, DbiCodec)
        plain = np.arange(1 << k, dtype=np.uint32) << np.uint32(1)
        for s in range(1 << n):
            d0 = pop[plain ^ np.uint32(s)].astype(np.int64)
            sub = int(np.minimum(d0, n - d0).sum(dtype=np.int64))
            total += sub
            if per_state is not None:
                per_state.append(Fraction(sub, 1 << k))
    return ExactAverageReport(
        spec=spec,
        exact_mean=Fraction(total, (1 << n) * (1 << k)),
        state_dependent=True,
        per_state=tuple(per_state) if per_state is not None else None,
    )


def clock_model(spec: CodecSpec, u: Word) -> tuple[int, int]:
    """(clocks for the pulse-position modulator, clocks for the bit-serial
    baseline) when encoding u: the pulse count m versus n."""
    if spec.family is not Family.OPTIMAL_MPPM:
        raise ValueError(f"clock_model needs an optimal spec, got {spec.family.value}")
    if u.length != spec.k:
        raise ValueError(f"info word length {u.length} != k={spec.k}")
    codec = make_codec(spec)
    assert isinstance(codec, OptimalCodec)
    return (codec.pulse_count(u.value), spec.n)


def word_cost(spec: CodecSpec, u: Word) -> tuple[int, int]:
    """(comparisons, additions) to encode u with the pulse-based modulator,
    including the d_max + 1 comparisons of the pulse-count selection."""
    m, n = clock_model(spec, u)
    codec = make_codec(spec)
    assert isinstance(codec, OptimalCodec)
    comparisons, additions = per_codeword_cost(n, m)
    return (comparisons + codec.d_max + 1, additions)


def convergence_check(
    cfg: TraceConfig, reference: Fraction, tolerance: float, jobs: int = 1
) -> ConvergenceReport:
    """Run the trace and compare its mean against an exact reference."""
    if reference <= 0:
        raise ValueError("reference mean must be positive")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    stats = run_trace(cfg, jobs=jobs)
    mean = stats.mean_transitions
    rel = abs(float((mean - reference) / reference))
    return ConvergenceReport(
        passed=rel <= tolerance,
        mean=mean,
        reference=reference,
        rel_deviation=rel,
        tolerance=tolerance,
    )
