"""Closed-form figures for low-weight differential bus encoding.

An uncoded k-line bus toggles k/2 lines per word on average. Spending b
extra lines lets a differential code draw its per-step toggle patterns from
the 2^k lowest-weight (k+b)-tuples, and every figure of merit below comes
out as an exact rational.
"""
from fractions import Fraction

from buslab import analytics

k = 11

print(f"== uncoded {k}-line bus ==")
pmf = analytics.uncoded_distance_pmf(k)
print("P(d transitions), d = 0..4:", [str(p) for p in pmf[:5]], "...")
print("mean transitions per word :", analytics.d_unc(k), "=", float(analytics.d_unc(k)))
print()

print(f"== adding b lines, same {k} info bits ==")
print(f"{'b':>5} {'d_max':>5} {'d_opt':>12} {'saving':>10}")
for b in (0, 1, 2, 4, 8, 12, 24, 53):
    d = analytics.d_opt(k, b)
    s = analytics.energy_saving(k, b)
    print(f"{b:>5} {analytics.d_max(k, b):>5} {str(d):>12} {float(s):>10.4%}")
print()

# Two bus geometries stand out. With 12 added lines, every toggle pattern
# fits in weight <= 3 and the radius-3 ball in 23 dimensions holds exactly
# 2^11 words, so the codebook is tight:
print("b = 12 (23 lines):")
print("  d_opt       =", analytics.d_opt(k, 12), "(exactly 2921/1024)")
print("  transitions vs uncoded:", float(analytics.d_opt(k, 12) / analytics.d_unc(k)))
print()

# And with b = 2^k - 1 - k the codebook is the all-zero word plus one
# single-pulse word per remaining info value; no scheme with the same k can
# average fewer transitions:
floor = analytics.d_min(k)
print(f"b = {2**k - 1 - k} (single-pulse floor):")
print("  d_min       =", floor, "=", float(floor))
print("  best saving =", float(1 - floor / analytics.d_unc(k)))
print()

# The encoding cost model counts n*m comparisons plus 2m add/subtracts to
# place m pulses, plus d_max + 1 comparisons to pick m itself.
print("average modulator cost, comparison units:")
for kk, bb in ((4, 11), (11, 12)):
    cost = analytics.encoding_cost(kk, bb)
    print(f"  k={kk:>2} b={bb:>2}: {cost} = {float(cost):.4f}")

assert analytics.d_opt(11, 12) == Fraction(2921, 1024)
assert analytics.d_opt(4, 11) == analytics.d_min(4) == Fraction(15, 16)
print("\nanchors verified.")
