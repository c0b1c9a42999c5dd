"""Self-check suites behind the `buslab verify` command.

Each check re-derives a property from scratch (exhaustive enumeration or an
independent counting oracle) rather than trusting the code path it audits.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import analytics
from .codecs import (
    CodecSpec,
    coset_spec,
    dbi_spec,
    make_codec,
    make_golay23,
    make_hamming,
    make_repetition,
    min_distance,
    optimal_spec,
    ppm0_spec,
    uncoded_spec,
)
from .combinatorics import build_binomial_table, mppm_rank, mppm_unrank
from .simulator import exact_average_distance

__all__ = ["CheckResult", "SCOPES", "run_checks"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_rank_bijection(n_limit: int = 12) -> CheckResult:
    """Unrank must invert rank and walk subsets in colex order, exhaustively."""
    table = build_binomial_table(n_limit)
    checked = 0
    for n in range(n_limit + 1):
        for m in range(n + 1):
            expected = sorted(combinations(range(n), m), key=lambda t: t[::-1])
            count = table.binom(n, m)
            if len(expected) != count:
                return CheckResult("rank", False, f"C({n},{m}) mismatch")
            for x in range(count):
                p = mppm_unrank(table, x, m, n)
                if p.positions != expected[x]:
                    return CheckResult(
                        "rank", False, f"unrank({x},{m},{n}) = {p.positions}, want {expected[x]}"
                    )
                if mppm_rank(table, p) != x:
                    return CheckResult("rank", False, f"rank(unrank({x},{m},{n})) != {x}")
                checked += 1
    return CheckResult("rank", True, f"bijection holds for n <= {n_limit} ({checked} patterns)")


def _roundtrip_specs() -> list[CodecSpec]:
    specs: list[CodecSpec] = []
    for k in (1, 4, 8, 12):
        specs.append(uncoded_spec(k))
        specs.append(dbi_spec(k))
    for k in (1, 2, 3, 4):
        specs.append(ppm0_spec(k))
    for k, b in ((1, 0), (1, 1), (3, 1), (4, 3), (4, 11), (8, 4), (11, 12), (12, 12)):
        specs.append(optimal_spec(k, b))
    specs.append(coset_spec(make_repetition(3)))
    specs.append(coset_spec(make_repetition(6)))
    specs.append(coset_spec(make_repetition(9)))
    specs.append(coset_spec(make_hamming(3)))
    specs.append(coset_spec(make_hamming(4)))
    specs.append(coset_spec(make_golay23()))
    return specs


def check_roundtrip(states_per_spec: int = 100, seed: int = 20260808) -> CheckResult:
    """decode(encode(u)) == u for every info word and random states, all families."""
    rnd = random.Random(seed)
    tried = 0
    for spec in _roundtrip_specs():
        codec = make_codec(spec)
        states = [0] + [rnd.getrandbits(spec.n) for _ in range(states_per_spec - 1)]
        for s in states:
            for u in range(1 << spec.k):
                x = codec.encode_int(s, u)
                got = codec.decode_int(s, x)
                if got != u:
                    return CheckResult(
                        "roundtrip",
                        False,
                        f"{spec.family.value} k={spec.k} b={spec.b}: "
                        f"state={s} u={u} decoded {got}",
                    )
                tried += 1
    return CheckResult("roundtrip", True, f"{tried} encode/decode pairs inverted exactly")


def check_coset() -> CheckResult:
    """Leader tables of the stock codes: weights, tiers, syndrome identity."""
    golay = make_golay23()
    dmin = min_distance(golay)
    if dmin != 7:
        return CheckResult("coset", False, f"golay minimum distance {dmin}, want 7")
    details = ["golay d_min=7"]
    for code, max_w, tiers in (
        (make_hamming(4), 1, (1, 15)),
        (golay, 3, (1, 23, 253, 1771)),
        (make_repetition(5), 2, (1, 5, 10)),
    ):
        codec = make_codec(coset_spec(code))
        table = codec.leader_table
        if table.max_weight > max_w:
            return CheckResult(
                "coset", False, f"{code.name}: leader weight {table.max_weight} > {max_w}"
            )
        if table.tier_counts() != tiers:
            return CheckResult(
                "coset", False, f"{code.name}: tiers {table.tier_counts()}, want {tiers}"
            )
        for s, leader in enumerate(table.leaders):
            if code.syndrome(leader) != s:
                return CheckResult("coset", False, f"{code.name}: H*leader({s}) != {s}")
        details.append(f"{code.name} tiers {'/'.join(map(str, tiers))}")
    return CheckResult("coset", True, "; ".join(details))


def _greedy_mean_weight(k: int, n: int) -> Fraction:
    """Mean weight of the 2^k lowest-weight n-tuples, by sorting all weights."""
    weights = sorted(v.bit_count() for v in range(1 << n))
    return Fraction(sum(weights[: 1 << k]), 1 << k)


def check_optimal_weight_law(k_limit: int = 10, b_limit: int = 8, n_limit: int = 18) -> CheckResult:
    """Codec mean weight == closed form == greedy enumeration, over a grid."""
    cells = 0
    for k in range(1, k_limit + 1):
        for b in range(0, b_limit + 1):
            n = k + b
            if n > n_limit:
                break
            closed = analytics.d_opt(k, b)
            codec_mean = exact_average_distance(optimal_spec(k, b)).exact_mean
            greedy = _greedy_mean_weight(k, n)
            if not closed == codec_mean == greedy:
                return CheckResult(
                    "optimal",
                    False,
                    f"k={k} b={b}: closed {closed}, codec {codec_mean}, greedy {greedy}",
                )
            cells += 1
    return CheckResult("optimal", True, f"weight law exact on {cells} (k, b) cells")


SCOPES = {
    "rank": (check_rank_bijection,),
    "roundtrip": (check_roundtrip,),
    "coset": (check_coset,),
    "optimal": (check_optimal_weight_law,),
}
SCOPES["all"] = SCOPES["rank"] + SCOPES["roundtrip"] + SCOPES["coset"] + SCOPES["optimal"]


def run_checks(scope: str = "all") -> list[CheckResult]:
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {sorted(SCOPES)}")
    return [check() for check in SCOPES[scope]]
