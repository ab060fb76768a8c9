"""
Coset coding on the erasure wiretap channel
===========================================

The LDPC code is used as the dual of the coset code. Eve sees each bit with
probability 1 - xi. Her information is bounded by (secret bits) times the
block erasure probability of the LDPC code at epsilon = 1 - xi.
"""

import numpy as np

from ramanujan_ldpc import CosetCode, build_cd_regular, coset_decode, coset_encode, exact_leakage
from ramanujan_ldpc.erasure_sim import exact_rates
from ramanujan_ldpc.graph import TannerGraph
from ramanujan_ldpc.secrecy import secrecy_report

# A toy code where everything can be enumerated.
h = np.array([[1, 1, 0, 1, 0, 0], [0, 1, 1, 0, 1, 0], [1, 0, 1, 0, 0, 1]], dtype=np.uint8)
code = CosetCode.from_parity_matrix(h)
s = np.array([1, 0, 1], dtype=np.uint8)
x = coset_encode(code, s, seed=4)
print("secret", s, "-> sent", x, "-> decoded", coset_decode(code, x))

tg = TannerGraph.from_parity_matrix(h)
print(" xi   exact leak   bound")
for xi in (0.2, 0.5, 0.8):
    bound = code.secret_bits * exact_rates(tg, 1 - xi).block
    print(f"{xi:4.1f}  {exact_leakage(code, xi):10.4f}  {bound:7.4f}")

# A real code: at xi = 0.7 the LDPC code works at eps = 0.3, well below its
# threshold, so the estimated block erasure rate and the leak are tiny.
tg, _ = build_cd_regular(3, 6, q=13)
rep = secrecy_report(tg, 0.7, trials=500, seed=3)
print(rep.to_json())
