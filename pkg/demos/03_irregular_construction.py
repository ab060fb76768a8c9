"""
Arbitrary degree profiles
=========================

The irregular builder starts from a regular LPS-based graph and splits
vertices again by degree classes chosen with two seeded permutations. The
realized degree distribution equals the requested one exactly.
"""

from ramanujan_ldpc import LDPCOPT_RATE_HALF, DegreeDistributionPair, build_irregular, threshold
from ramanujan_ldpc.graph import girth

pair = DegreeDistributionPair.parse("l:3=0.5,5=0.5;r:15=1")
k, a = pair.lcm_and_multiplier()
print(f"lambda = {pair.to_text()}: lcm of degrees k = {k}, denominator multiplier a = {a}")

tg, meta = build_irregular(pair, q=13, seed=7)
print(f"p = {meta.recipe.p}, q = {meta.recipe.q}: n = {tg.n}, m = {tg.m}, rate {meta.rate}")
print("realized profile:", tg.degree_distribution().to_text())
print("girth:", girth(tg, witness=False).girth)

# The rate-1/2 profile from the literature used in the secrecy discussion.
# Its published coefficients are node fractions; the edge-perspective pair is
print(LDPCOPT_RATE_HALF.to_text())
print("design rate", float(LDPCOPT_RATE_HALF.design_rate()), "threshold", round(threshold(LDPCOPT_RATE_HALF), 4))
