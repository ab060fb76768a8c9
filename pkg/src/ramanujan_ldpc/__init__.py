"""Large-girth LDPC codes from Ramanujan graphs, density evolution on the
erasure channel, and coset coding for the erasure wiretap channel."""

from .builders import build_cd_regular, build_irregular, build_k_regular, find_q, find_s
from .ddp import LDPCOPT_RATE_HALF, DegreeDistributionPair
from .density_evolution import (
    decay_constants,
    de_step,
    de_trace,
    iterations_for_secrecy,
    secrecy_certificate,
    t_for_girth,
    threshold,
    tree_ensemble_prob,
    verify_decay_bound,
)
from .erasure_sim import compare_to_de, peel, simulate
from .errors import LdpcError
from .graph import Graph, TannerGraph, girth, read_alist, write_alist
from .lps import LpsParameters, lps_graph
from .secrecy import CosetCode, coset_decode, coset_encode, exact_leakage, leakage_bound
from .transforms import bipartite_double, plan_split, split_vertex, split_vertices

__version__ = "0.1.0"
