"""Encode/decode kernels for every supported bus-encoding family.

All families share one contract: given the previous bus word and the current
info word, produce the next bus word; decoding inverts it. The differential
families (optimal, ppm0, coset) map the info word to a low-weight
differential d and transmit x = d XOR x_prev, so each step toggles exactly
weight(d) lines. DBI and the uncoded bus are handled directly.

Layout conventions: bit i = bus line i, line 0 = LSB. The DBI indicator
occupies line 0, with the data word on lines 1..k, so the transmitted word
is the info word concatenated with a 0, or its complement concatenated with
a 1 (line 0 printed rightmost).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .combinatorics import (
    BinomialTable,
    Word,
    build_binomial_table,
    mppm_rank,
    mppm_unrank,
    word_to_positions,
)

__all__ = [
    "MAX_OPTIMAL_LINES",
    "MAX_PPM0_INFO_BITS",
    "CorruptedWordError",
    "Family",
    "LinearCode",
    "CosetLeaderTable",
    "CodecSpec",
    "BusState",
    "Codec",
    "UncodedCodec",
    "DbiCodec",
    "Ppm0Codec",
    "OptimalCodec",
    "CosetCodec",
    "uncoded_spec",
    "dbi_spec",
    "ppm0_spec",
    "optimal_spec",
    "coset_spec",
    "coset_spec_for",
    "make_codec",
    "encode",
    "decode",
    "optimal_differential",
    "dbi_encode",
    "make_repetition",
    "make_hamming",
    "make_golay23",
    "min_distance",
    "build_coset_leader_table",
    "words_of_weight",
]

MAX_OPTIMAL_LINES = 64
MAX_PPM0_INFO_BITS = 20
MAX_SYNDROME_BITS = 16


class CorruptedWordError(ValueError):
    """A received bus word cannot have been emitted from the current state."""


class Family(enum.Enum):
    UNCODED = "uncoded"
    DBI = "dbi"
    PPM0 = "ppm0"
    OPTIMAL_MPPM = "optimal"
    COSET = "coset"


# ---------------------------------------------------------------------------
# GF(2) linear codes
# ---------------------------------------------------------------------------

def _gf2_rank(rows: list[int]) -> int:
    rank = 0
    work = list(rows)
    for i in range(len(work)):
        row = work[i]
        if row == 0:
            continue
        pivot = row & -row
        rank += 1
        for j in range(i + 1, len(work)):
            if work[j] & pivot:
                work[j] ^= row
    return rank


def _gf2_kernel_basis(rows: tuple[int, ...], width: int) -> list[int]:
    """Basis of {x : every row has even overlap with x}, rows as bitmasks."""
    # Forward-eliminate to one pivot column per row, then read each free
    # column's unique completion off the pivot rows.
    reduced: list[tuple[int, int]] = []  # (pivot_bit, row)
    for row in rows:
        for pivot, r in reduced:
            if row & pivot:
                row ^= r
        if row:
            pivot = row & -row
            for idx, (p, r) in enumerate(reduced):
                if r & pivot:
                    reduced[idx] = (p, r ^ row)
            reduced.append((pivot, row))
    pivot_mask = 0
    for pivot, _ in reduced:
        pivot_mask |= pivot
    basis = []
    for c in range(width):
        bit = 1 << c
        if pivot_mask & bit:
            continue
        vec = bit
        for pivot, row in reduced:
            if row & bit:
                vec |= pivot
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class LinearCode:
    """Binary linear code, described by its parity-check rows.

    h_rows[r] is parity row r as a bitmask over the code's lines; the
    syndrome of a word sets bit r when row r overlaps it an odd number of
    times. radius is the guaranteed correction radius t of the code.
    """

    name: str
    length: int
    dimension: int
    radius: int
    h_rows: tuple[int, ...]

    def __post_init__(self):
        checks = self.length - self.dimension
        if len(self.h_rows) != checks:
            raise ValueError(
                f"{self.name}: expected {checks} parity rows, got {len(self.h_rows)}"
            )
        for row in self.h_rows:
            if not 0 <= row < (1 << self.length):
                raise ValueError(f"{self.name}: parity row {row:#x} out of range")
        if _gf2_rank(list(self.h_rows)) != checks:
            raise ValueError(f"{self.name}: parity rows are not linearly independent")

    @property
    def syndrome_bits(self) -> int:
        return self.length - self.dimension

    def syndrome(self, word: int) -> int:
        s = 0
        for r, row in enumerate(self.h_rows):
            s |= ((row & word).bit_count() & 1) << r
        return s

    def is_codeword(self, word: int) -> bool:
        return self.syndrome(word) == 0


def make_repetition(n_lines: int) -> LinearCode:
    """(N, 1) repetition code; parity row r ties line r to the last line."""
    if n_lines < 2:
        raise ValueError(f"repetition code needs at least 2 lines, got {n_lines}")
    top = 1 << (n_lines - 1)
    rows = tuple((1 << r) | top for r in range(n_lines - 1))
    return LinearCode(
        name=f"repetition({n_lines},1)",
        length=n_lines,
        dimension=1,
        radius=(n_lines - 1) // 2,
        h_rows=rows,
    )


def make_hamming(m: int) -> LinearCode:
    """(2^m - 1, 2^m - 1 - m) Hamming code; column c holds the value c + 1."""
    if m < 2:
        raise ValueError(f"Hamming parameter m must be >= 2, got {m}")
    n_lines = (1 << m) - 1
    rows = []
    for r in range(m):
        row = 0
        for c in range(n_lines):
            if ((c + 1) >> r) & 1:
                row |= 1 << c
        rows.append(row)
    return LinearCode(
        name=f"hamming({n_lines},{n_lines - m})",
        length=n_lines,
        dimension=n_lines - m,
        radius=1,
        h_rows=tuple(rows),
    )


# Generator polynomial x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1 of the
# (23, 12) Golay code, as a coefficient bitmask.
_GOLAY_POLY = 0xC75


def _polymod(a: int, g: int) -> int:
    gd = g.bit_length() - 1
    while a and a.bit_length() - 1 >= gd:
        a ^= g << (a.bit_length() - 1 - gd)
    return a


def make_golay23() -> LinearCode:
    """(23, 12) Golay code in systematic form, message on lines 0..11.

    Parity rows combine the transposed parity block of the polynomial
    encoder with an identity on lines 12..22; the construction is validated
    by the exhaustive minimum-distance scan in the test suite.
    """
    parity = [_polymod(1 << (11 + i), _GOLAY_POLY) for i in range(12)]
    rows = []
    for r in range(11):
        row = 1 << (12 + r)
        for i in range(12):
            if (parity[i] >> r) & 1:
                row |= 1 << i
        rows.append(row)
    return LinearCode(
        name="golay(23,12)", length=23, dimension=12, radius=3, h_rows=tuple(rows)
    )


def min_distance(code: LinearCode) -> int:
    """Minimum weight over all nonzero codewords, by exhaustive enumeration."""
    if code.dimension > 20:
        raise ValueError(
            f"{code.name}: dimension {code.dimension} too large for exhaustive scan"
        )
    basis = _gf2_kernel_basis(code.h_rows, code.length)
    if len(basis) != code.dimension:
        raise ValueError(f"{code.name}: kernel dimension {len(basis)} != {code.dimension}")
    best = code.length
    for msg in range(1, 1 << code.dimension):
        c = 0
        mm = msg
        i = 0
        while mm:
            if mm & 1:
                c ^= basis[i]
            mm >>= 1
            i += 1
        w = c.bit_count()
        if w < best:
            best = w
    return best


def words_of_weight(n: int, w: int) -> Iterator[int]:
    """All weight-w words of n bits, in increasing integer order."""
    if not 0 <= w <= n:
        return
    if w == 0:
        yield 0
        return
    v = (1 << w) - 1
    limit = 1 << n
    while v < limit:
        yield v
        low = v & -v
        carry = (v + low) & ~v
        v = v + low | (carry // (low << 1)) - 1


@dataclass(frozen=True)
class CosetLeaderTable:
    """Minimum-weight representative of every syndrome's coset."""

    code: LinearCode
    leaders: tuple[int, ...]

    @property
    def max_weight(self) -> int:
        return max(l.bit_count() for l in self.leaders)

    def tier_counts(self) -> tuple[int, ...]:
        counts = [0] * (self.max_weight + 1)
        for l in self.leaders:
            counts[l.bit_count()] += 1
        return tuple(counts)

    def leader_word(self, syndrome: int) -> Word:
        return Word(self.leaders[syndrome], self.code.length)


def build_coset_leader_table(code: LinearCode) -> CosetLeaderTable:
    """Enumerate error patterns by weight, then by integer value, keeping the
    first pattern seen for each syndrome."""
    bits = code.syndrome_bits
    if bits > MAX_SYNDROME_BITS:
        raise ValueError(
            f"{code.name}: {bits} syndrome bits exceed the {MAX_SYNDROME_BITS}-bit table cap"
        )
    total = 1 << bits
    leaders: list[int | None] = [None] * total
    filled = 0
    for w in range(code.length + 1):
        if filled == total:
            break
        for e in words_of_weight(code.length, w):
            s = code.syndrome(e)
            if leaders[s] is None:
                leaders[s] = e
                filled += 1
                if filled == total:
                    break
    return CosetLeaderTable(code=code, leaders=tuple(leaders))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Codec specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CodecSpec:
    """Parameters of one bus codec: k info bits, b added lines, n = k + b."""

    family: Family
    k: int
    b: int
    code: LinearCode | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k={self.k} must be >= 1")
        fam = self.family
        if fam is Family.UNCODED:
            if self.b != 0:
                raise ValueError(f"uncoded bus requires b=0, got b={self.b}")
            if self.n > MAX_OPTIMAL_LINES:
                raise ValueError(f"bus width capped at {MAX_OPTIMAL_LINES} lines, got n={self.n}")
        elif fam is Family.DBI:
            if self.b != 1:
                raise ValueError(f"dbi requires b=1, got b={self.b}")
            if self.n > MAX_OPTIMAL_LINES:
                raise ValueError(f"bus width capped at {MAX_OPTIMAL_LINES} lines, got n={self.n}")
        elif fam is Family.PPM0:
            expected = (1 << self.k) - 1 - self.k
            if self.b != expected:
                raise ValueError(
                    f"ppm0 with k={self.k} requires b={expected}, got b={self.b}"
                )
            if self.k > MAX_PPM0_INFO_BITS:
                raise ValueError(f"ppm0 supports k <= {MAX_PPM0_INFO_BITS}, got {self.k}")
        elif fam is Family.OPTIMAL_MPPM:
            if self.b < 0:
                raise ValueError(f"b={self.b} must be >= 0")
            if self.n > MAX_OPTIMAL_LINES:
                raise ValueError(
                    f"optimal codec supports n <= {MAX_OPTIMAL_LINES}, got n={self.n}"
                )
        elif fam is Family.COSET:
            if self.code is None:
                raise ValueError("coset spec requires a linear code")
            if self.k != self.code.syndrome_bits:
                raise ValueError(
                    f"coset k={self.k} != syndrome bits {self.code.syndrome_bits}"
                )
            if self.n != self.code.length:
                raise ValueError(f"coset n={self.n} != code length {self.code.length}")
        if fam is not Family.COSET and self.code is not None:
            raise ValueError(f"{fam.value} spec does not take a linear code")

    @property
    def n(self) -> int:
        return self.k + self.b


def uncoded_spec(k: int) -> CodecSpec:
    return CodecSpec(Family.UNCODED, k, 0)


def dbi_spec(k: int) -> CodecSpec:
    return CodecSpec(Family.DBI, k, 1)


def ppm0_spec(k: int) -> CodecSpec:
    return CodecSpec(Family.PPM0, k, (1 << k) - 1 - k)


def optimal_spec(k: int, b: int) -> CodecSpec:
    return CodecSpec(Family.OPTIMAL_MPPM, k, b)


def coset_spec(code: LinearCode) -> CodecSpec:
    return CodecSpec(Family.COSET, code.syndrome_bits, code.dimension, code)


def coset_spec_for(k: int, b: int) -> CodecSpec:
    """Resolve (k, b) to one of the stock coset constructions.

    b = 1 gives the repetition code on k+1 lines; b = 2^k - 1 - k gives the
    Hamming code with k parity bits; (11, 12) gives the Golay code.
    """
    if (k, b) == (11, 12):
        return coset_spec(make_golay23())
    if b == 1:
        return coset_spec(make_repetition(k + 1))
    if k >= 2 and b == (1 << k) - 1 - k:
        return coset_spec(make_hamming(k))
    raise ValueError(
        f"no stock coset construction for k={k}, b={b}; "
        "supported: b=1 (repetition), b=2^k-1-k (hamming), (11,12) (golay)"
    )


@dataclass(frozen=True)
class BusState:
    """Previous word on the bus; all-zero at trace start."""

    x_prev: Word

    @classmethod
    def initial(cls, n: int) -> "BusState":
        return cls(Word.zero(n))


# ---------------------------------------------------------------------------
# Codec kernels
# ---------------------------------------------------------------------------

class Codec:
    """Common interface; subclasses implement the int-level kernels."""

    def __init__(self, spec: CodecSpec):
        self.spec = spec

    # pure int kernels, no length checks
    def encode_int(self, state: int, u: int) -> int:
        raise NotImplementedError

    def decode_int(self, state: int, x: int) -> int:
        raise NotImplementedError

    @property
    def is_differential(self) -> bool:
        return False

    def encode(self, state: Word, u: Word) -> Word:
        self._check_state(state)
        if u.length != self.spec.k:
            raise ValueError(f"info word length {u.length} != k={self.spec.k}")
        return Word(self.encode_int(state.value, u.value), self.spec.n)

    def decode(self, state: Word, x: Word) -> Word:
        self._check_state(state)
        if x.length != self.spec.n:
            raise ValueError(f"bus word length {x.length} != n={self.spec.n}")
        return Word(self.decode_int(state.value, x.value), self.spec.k)

    def _check_state(self, state: Word) -> None:
        if state.length != self.spec.n:
            raise ValueError(f"state length {state.length} != n={self.spec.n}")


class _DifferentialCodec(Codec):
    """Family whose differential word depends only on the info word."""

    @property
    def is_differential(self) -> bool:
        return True

    def differential_int(self, u: int) -> int:
        raise NotImplementedError

    def info_int(self, d: int) -> int:
        raise NotImplementedError

    def encode_int(self, state: int, u: int) -> int:
        return self.differential_int(u) ^ state

    def decode_int(self, state: int, x: int) -> int:
        return self.info_int(x ^ state)

    def differential(self, u: Word) -> Word:
        if u.length != self.spec.k:
            raise ValueError(f"info word length {u.length} != k={self.spec.k}")
        return Word(self.differential_int(u.value), self.spec.n)


class UncodedCodec(Codec):
    """Identity: the info word goes on the bus unchanged."""

    def encode_int(self, state: int, u: int) -> int:
        return u

    def decode_int(self, state: int, x: int) -> int:
        return x


class DbiCodec(Codec):
    """Send the word or its complement, whichever is nearer the bus state.

    Ties go to the non-inverted candidate. Decoding reads the indicator on
    line 0 and needs no state.
    """

    def __init__(self, spec: CodecSpec):
        super().__init__(spec)
        self._mask = (1 << spec.k) - 1

    def encode_int(self, state: int, u: int) -> int:
        plain = u << 1
        inverted = ((u ^ self._mask) << 1) | 1
        if (plain ^ state).bit_count() <= (inverted ^ state).bit_count():
            return plain
        return inverted

    def decode_int(self, state: int, x: int) -> int:
        data = x >> 1
        return data ^ self._mask if x & 1 else data


class Ppm0Codec(_DifferentialCodec):
    """Single pulse positioned by the info value, plus the all-zero word."""

    def differential_int(self, u: int) -> int:
        self._check_info(u)
        return 0 if u == 0 else 1 << (u - 1)

    def info_int(self, d: int) -> int:
        if d == 0:
            return 0
        if d.bit_count() != 1:
            raise CorruptedWordError(
                f"ppm0 differential must have weight <= 1, got weight {d.bit_count()}"
            )
        return d.bit_length()

    def _check_info(self, u: int) -> None:
        if not 0 <= u < (1 << self.spec.k):
            raise ValueError(f"info value {u} out of range for k={self.spec.k}")


class OptimalCodec(_DifferentialCodec):
    """Differential codebook of the 2^k lowest-weight n-tuples.

    The info value u selects the pulse count m (the first tier sum
    exceeding u) and the colex rank u minus the previous tier sum within
    that tier. Within the top tier only the first 2^k - (tier sum below)
    patterns in rank order are ever emitted; the decoder rejects anything
    past that bound as corrupted.
    """

    def __init__(self, spec: CodecSpec):
        super().__init__(spec)
        n = spec.n
        self.table: BinomialTable = build_binomial_table(n)
        need = 1 << spec.k
        sums = [1]
        m = 0
        while sums[-1] < need:
            m += 1
            sums.append(sums[-1] + self.table.binom(n, m))
        self.d_max = m
        self.tier_sums: tuple[int, ...] = tuple(sums)
        self._diffs: dict[int, int] = {}

    def pulse_count(self, u: int) -> int:
        """Smallest m whose tier sum exceeds the info value."""
        self._check_info(u)
        for m, total in enumerate(self.tier_sums):
            if total > u:
                return m
        raise AssertionError("unreachable: tier sums cover the info range")

    def differential_int(self, u: int) -> int:
        d = self._diffs.get(u)
        if d is None:
            m = self.pulse_count(u)
            offset = u - (self.tier_sums[m - 1] if m else 0)
            p = mppm_unrank(self.table, offset, m, self.spec.n)
            d = 0
            for s in p:
                d |= 1 << s
            self._diffs[u] = d
        return d

    def info_int(self, d: int) -> int:
        m = d.bit_count()
        if m > self.d_max:
            raise CorruptedWordError(
                f"differential weight {m} exceeds d_max={self.d_max}"
            )
        rank = mppm_rank(self.table, word_to_positions(Word(d, self.spec.n)))
        u = (self.tier_sums[m - 1] if m else 0) + rank
        if u >= (1 << self.spec.k):
            raise CorruptedWordError(
                f"weight-{m} rank {rank} is outside the emitted codebook"
            )
        return u

    def _check_info(self, u: int) -> None:
        if not 0 <= u < (1 << self.spec.k):
            raise ValueError(f"info value {u} out of range for k={self.spec.k}")


class CosetCodec(_DifferentialCodec):
    """Differential is the coset leader whose syndrome is the info word."""

    def __init__(self, spec: CodecSpec):
        super().__init__(spec)
        assert spec.code is not None
        self.code = spec.code
        self.leader_table = build_coset_leader_table(spec.code)

    def differential_int(self, u: int) -> int:
        if not 0 <= u < (1 << self.spec.k):
            raise ValueError(f"info value {u} out of range for k={self.spec.k}")
        return self.leader_table.leaders[u]

    def info_int(self, d: int) -> int:
        return self.code.syndrome(d)


_FAMILY_CODECS = {
    Family.UNCODED: UncodedCodec,
    Family.DBI: DbiCodec,
    Family.PPM0: Ppm0Codec,
    Family.OPTIMAL_MPPM: OptimalCodec,
    Family.COSET: CosetCodec,
}


@lru_cache(maxsize=64)
def make_codec(spec: CodecSpec) -> Codec:
    """Build (and share, since codecs are immutable) the codec for a spec."""
    return _FAMILY_CODECS[spec.family](spec)


def encode(spec: CodecSpec, state: BusState, u: Word) -> Word:
    """Next bus word for info word u from the given state."""
    return make_codec(spec).encode(state.x_prev, u)


def decode(spec: CodecSpec, state: BusState, x: Word) -> Word:
    """Recover the info word from the received bus word and the state."""
    return make_codec(spec).decode(state.x_prev, x)


def optimal_differential(spec: CodecSpec, u: Word) -> Word:
    """Low-weight differential word the optimal codec assigns to u."""
    if spec.family is not Family.OPTIMAL_MPPM:
        raise ValueError(f"optimal_differential needs an optimal spec, got {spec.family.value}")
    codec = make_codec(spec)
    assert isinstance(codec, OptimalCodec)
    return codec.differential(u)


def dbi_encode(state: BusState, u: Word) -> Word:
    """One DBI step: the closer of u||0 and complement(u)||1 to the state."""
    return make_codec(dbi_spec(u.length)).encode(state.x_prev, u)
