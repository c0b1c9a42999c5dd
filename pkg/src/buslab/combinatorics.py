"""Exact binomial tables and the bijection between integers and m-subsets.

Pulse patterns on a bus are m-subsets of the n line indices. The rank of a
subset (s_1 < ... < s_m) is C(s_1,1) + C(s_2,2) + ... + C(s_m,m), which
enumerates all m-subsets of {0..n-1} in colexicographic order as the rank
runs over 0 .. C(n,m)-1. Unranking scans line indices downward, mirroring a
bank of parallel comparators against pre-stored binomial coefficients.

Conventions used across the package: bit i of a word is bus line i, line 0
is the least significant bit, and printed words show line 0 rightmost.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "DEFAULT_CAPACITY",
    "CapacityError",
    "Word",
    "PulsePositions",
    "BinomialTable",
    "build_binomial_table",
    "cumulative_binomial",
    "mppm_rank",
    "mppm_unrank",
    "positions_to_word",
    "word_to_positions",
]

# Entries are exact Python integers; the explicit bound keeps the table an
# honest stand-in for fixed-width coefficient storage (128-bit words cover
# every C(n, m) with n <= 64 and far beyond).
DEFAULT_CAPACITY = (1 << 128) - 1


class CapacityError(OverflowError):
    """A binomial coefficient exceeded the configured storage capacity."""

    def __init__(self, n: int, k: int, value: int, capacity: int):
        self.n = n
        self.k = k
        self.value = value
        self.capacity = capacity
        super().__init__(
            f"C({n},{k}) = {value} exceeds the table capacity {capacity}"
        )


@dataclass(frozen=True)
class Word:
    """Fixed-width bit vector; bit i is the state of bus line i."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"word length must be >= 0, got {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(
                f"value {self.value} does not fit in {self.length} bits"
            )

    @classmethod
    def zero(cls, length: int) -> "Word":
        return cls(0, length)

    @classmethod
    def from_string(cls, bits: str) -> "Word":
        """Parse a binary string written with line 0 rightmost."""
        if bits and not set(bits) <= {"0", "1"}:
            raise ValueError(f"not a binary string: {bits!r}")
        return cls(int(bits, 2) if bits else 0, len(bits))

    def weight(self) -> int:
        return self.value.bit_count()

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValueError(f"bit index {i} out of range for length {self.length}")
        return (self.value >> i) & 1

    def __xor__(self, other: "Word") -> "Word":
        if self.length != other.length:
            raise ValueError(
                f"length mismatch: {self.length} vs {other.length}"
            )
        return Word(self.value ^ other.value, self.length)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""


@dataclass(frozen=True)
class PulsePositions:
    """Strictly increasing line indices carrying a pulse (a 1 bit)."""

    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))
        prev = -1
        for s in self.positions:
            if s <= prev:
                raise ValueError(
                    f"positions must be strictly increasing and >= 0, got {self.positions}"
                )
            prev = s

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions)


class BinomialTable:
    """Dense triangular table of exact C(i, j) for 0 <= j <= i <= n_max."""

    __slots__ = ("n_max", "max_value", "_rows")

    def __init__(self, n_max: int, max_value: int = DEFAULT_CAPACITY):
        if n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {n_max}")
        if max_value < 1:
            raise ValueError(f"max_value must be >= 1, got {max_value}")
        self.n_max = n_max
        self.max_value = max_value
        rows: list[tuple[int, ...]] = [(1,)]
        for i in range(1, n_max + 1):
            prev = rows[i - 1]
            row = [1]
            for j in range(1, i):
                v = prev[j - 1] + prev[j]
                if v > max_value:
                    raise CapacityError(i, j, v, max_value)
                row.append(v)
            row.append(1)
            rows.append(tuple(row))
        self._rows = tuple(rows)

    def binom(self, n: int, k: int) -> int:
        """C(n, k); zero when k > n, error when out of the table's range."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n={n} out of table range 0..{self.n_max}")
        if k < 0:
            raise ValueError(f"k must be >= 0, got {k}")
        if k > n:
            return 0
        return self._rows[n][k]

    def cumulative(self, n: int, m: int) -> int:
        """Sum of C(n, i) for i = 0..m."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n={n} out of table range 0..{self.n_max}")
        if not 0 <= m <= n:
            raise ValueError(f"m={m} out of range 0..{n}")
        row = self._rows[n]
        return sum(row[i] for i in range(m + 1))


def build_binomial_table(n_max: int, max_value: int = DEFAULT_CAPACITY) -> BinomialTable:
    """Precompute all C(i, j) up to n_max, failing loudly on capacity overflow."""
    return BinomialTable(n_max, max_value)


def cumulative_binomial(table: BinomialTable, n: int, m: int) -> int:
    return table.cumulative(n, m)


def mppm_rank(table: BinomialTable, p: PulsePositions) -> int:
    """Colex rank of a pulse pattern: sum over l of C(s_l, l)."""
    positions = p.positions
    if positions and positions[-1] > table.n_max - 1:
        raise ValueError(
            f"position {positions[-1]} outside table range (n_max={table.n_max})"
        )
    return sum(table.binom(s, l) for l, s in enumerate(positions, start=1))


def mppm_unrank(table: BinomialTable, x: int, m: int, n: int) -> PulsePositions:
    """Pulse pattern with colex rank x among the m-subsets of {0..n-1}.

    For l = m down to 1, s_l is the largest i < n with C(i, l) <= remainder;
    the scan walks i downward from n-1, the software analog of comparing the
    remainder against every stored coefficient at once and priority-selecting
    the last satisfied comparison.
    """
    if not 0 <= m <= n:
        raise ValueError(f"m={m} out of range 0..{n}")
    if n > table.n_max:
        raise ValueError(f"n={n} exceeds table range (n_max={table.n_max})")
    if not 0 <= x < table.binom(n, m):
        raise ValueError(f"rank {x} out of range for C({n},{m})={table.binom(n, m)}")
    positions = [0] * m
    rem = x
    for l in range(m, 0, -1):
        i = n - 1
        while table.binom(i, l) > rem:
            i -= 1
        positions[l - 1] = i
        rem -= table.binom(i, l)
    return PulsePositions(tuple(positions))


def positions_to_word(p: PulsePositions, n: int) -> Word:
    """Word of length n with bit i set iff i is a pulse position."""
    value = 0
    for s in p.positions:
        if s >= n:
            raise ValueError(f"position {s} out of range for word length {n}")
        value |= 1 << s
    return Word(value, n)


def word_to_positions(w: Word) -> PulsePositions:
    """Inverse of positions_to_word: indices of the set bits, ascending."""
    return PulsePositions(tuple(i for i in range(w.length) if (w.value >> i) & 1))
