"""
LPS Ramanujan graphs
====================

Build X^{p,q} for a couple of prime pairs and compare the measured girth with
the guaranteed lower bound. The Legendre symbol (p/q) decides whether the
graph is bipartite and how large it is.
"""

import math

from ramanujan_ldpc.graph import girth, is_bipartite, is_connected
from ramanujan_ldpc.lps import LpsParameters, generator_matrices, lps_graph

# The p + 1 generators come from the integer solutions of a0^2+a1^2+a2^2+a3^2 = p
# with a0 odd and positive.
print("generators of X^{5,13}:", len(generator_matrices(5, 13)))

for p, q in [(5, 13), (5, 17), (5, 29), (13, 17)]:
    params = LpsParameters.create(p, q)
    g = lps_graph(params)
    gr = girth(g, witness=False).girth
    print(f"X^{{{p},{q}}}: (p/q) = {params.residue:+d}, {g.n_vertices} vertices, "
          f"{p + 1}-regular, bipartite={is_bipartite(g)}, connected={is_connected(g)}, "
          f"girth {gr} >= {params.girth_lower_bound:.2f}")

# The bound grows like log q: for fixed p the girth keeps increasing with q.
for q in (13, 17, 29, 37):
    print(q, round(4 * math.log(q, 5) - math.log(4, 5), 2), round(2 * math.log(q, 5), 2))
