"""
Double-exponential decay below threshold
========================================

With minimum variable degree at least 3, once density evolution enters the
region where the upper recursion z -> A z^(l_min - 1) is contracting, the
erasure probability falls like exp(-beta (l_min - 1)^t).
"""

import math

from ramanujan_ldpc import DegreeDistributionPair, de_trace, decay_constants, iterations_for_secrecy, t_for_girth
from ramanujan_ldpc.density_evolution import decay_bound_rows

pair = DegreeDistributionPair.regular(3, 6)
eps = 0.40
dc = decay_constants(pair, eps)
print(f"A = {dc.A:g}, R = {dc.R}, alpha_R = {dc.alpha_R:.4f}, beta = {dc.beta:.3e}")

print(" t   log x_t        log bound")
for row in decay_bound_rows(pair, eps, range(dc.R, dc.R + 8)):
    lx = math.log(row.x_t) if row.x_t > 0 else -math.inf
    print(f"{row.t:3d}  {lx:12.4f}  {math.log(row.bound) if row.bound > 0 else -math.inf:12.4f}")

# Far from threshold R is small; close to it the trace lingers near the
# fixed point and R grows.
for e in (0.1, 0.3, 0.4, 0.42, 0.429):
    print(e, decay_constants(pair, e).R, de_trace(pair, e).iterations)

# Iterations needed so that y_t = O(n^-3), against what the girth permits.
for n in (10**3, 10**4, 10**6):
    print(n, iterations_for_secrecy(pair, dc.beta, n, 3))
print("girth 8 allows", t_for_girth(8), "tree-like iterations")
