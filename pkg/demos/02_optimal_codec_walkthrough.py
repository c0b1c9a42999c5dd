"""How the optimal codec turns an info value into pulse positions.

The info value u first picks a pulse count m (the smallest whose tier of
binomial sums exceeds u), then the leftover rank places the m pulses via
the integer <-> m-subset bijection x = C(s_1,1) + ... + C(s_m,m).
"""
from buslab import (
    BusState,
    CorruptedWordError,
    Word,
    build_binomial_table,
    decode,
    encode,
    make_codec,
    mppm_rank,
    mppm_unrank,
    optimal_spec,
    positions_to_word,
    word_to_positions,
)

# -- the subset bijection on its own ----------------------------------------
table = build_binomial_table(23)
print("rank 0 of 3-subsets of 23 :", mppm_unrank(table, 0, 3, 23).positions)
print("rank 5 of 2-subsets of 12 :", mppm_unrank(table, 5, 2, 12).positions)
print("rank 1770 (the last)      :", mppm_unrank(table, 1770, 3, 23).positions)
p = mppm_unrank(table, 1234, 3, 23)
print("rank(unrank(1234))        :", mppm_rank(table, p))
print()

# -- tier selection ----------------------------------------------------------
spec = optimal_spec(11, 12)  # 11 info bits on 23 lines
codec = make_codec(spec)
print("tier sums for n=23:", codec.tier_sums, "-> d_max =", codec.d_max)
for u in (0, 1, 24, 276, 277, 2047):
    d = codec.differential_int(u)
    pulses = word_to_positions(Word(d, 23)).positions
    print(f"  u={u:>4} -> {codec.pulse_count(u)} pulse(s) at {pulses}")
print()

# -- differential encoding on the bus ---------------------------------------
state = BusState(Word.zero(23))
trace = [29, 29, 2047, 0]
print("driving the bus from the all-zero state:")
for u in trace:
    x = encode(spec, state, Word(u, 11))
    toggled = (x ^ state.x_prev).weight()
    back = decode(spec, state, x)
    print(f"  u={u:>4}: bus={x} toggles={toggled} decode={back.value}")
    state = BusState(x)
print()

# -- the decoder rejects impossible words ------------------------------------
# weight 4 exceeds d_max, so no reachable word differs from the state by it
try:
    codec.info_int(0b1111)
except CorruptedWordError as err:
    print("corrupted word rejected:", err)

# a small bus with a partial top tier: k=3 on 4 lines keeps only the first
# three weight-2 patterns, so the other three decode as corrupted
small = make_codec(optimal_spec(3, 1))
kept = [positions_to_word(mppm_unrank(small.table, r, 2, 4), 4) for r in range(3)]
print("kept weight-2 patterns    :", [str(w) for w in kept])
try:
    small.info_int(0b1100)
except CorruptedWordError as err:
    print("rejected pattern 1100    :", err)
