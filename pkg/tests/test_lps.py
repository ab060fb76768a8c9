import math

import numpy as np
import pytest

from ramanujan_ldpc import number_theory as nt
from ramanujan_ldpc.errors import InvalidParameters
from ramanujan_ldpc.graph import girth, graph_from_edges, is_bipartite
from ramanujan_ldpc.lps import LpsParameters, canonicalize, generator_matrices, lps_graph, verify_lps

from .oracles import legendre_by_squares


def test_parameters_5_13():
    params = LpsParameters.create(5, 13)
    assert params.residue == -1 == legendre_by_squares(5, 13)
    assert params.expected_order == 2184
    assert params.girth_bound_int == math.ceil(4 * math.log(13, 5) - math.log(4, 5)) == 6


def test_parameters_5_29():
    params = LpsParameters.create(5, 29)
    assert params.residue == 1 == legendre_by_squares(5, 29)
    assert params.expected_order == 12180
    assert params.girth_bound_int == math.ceil(2 * math.log(29, 5)) == 5


@pytest.mark.parametrize("p, q", [(13, 5), (5, 5), (7, 13), (5, 11), (5, 15)])
def test_invalid_parameters(p, q):
    with pytest.raises(InvalidParameters):
        LpsParameters.create(p, q)


def test_canonical_form():
    mats = canonicalize(np.array([[0, 3, 4, 5], [2, 1, 0, 7]]), 13)
    assert mats[0, 1] == 1 and mats[0, 0] == 0
    assert mats[1, 0] == 1


def test_generators_are_inverse_closed_and_nonsingular():
    q = 13
    gens = generator_matrices(5, q)
    assert len(gens) == 6
    det = (gens[:, 0] * gens[:, 3] - gens[:, 1] * gens[:, 2]) % q
    assert np.all(det != 0)
    keys = {tuple(g) for g in gens.tolist()}
    for a, b, c, d in gens.tolist():
        inv = canonicalize(np.array([[d, -b, -c, a]]), q)[0]
        assert tuple(inv.tolist()) in keys


def test_x_5_13():
    params = LpsParameters.create(5, 13)
    g = lps_graph(params)
    rep = verify_lps(g, params)
    assert rep.all_ok
    assert g.n_vertices == 2184 and g.is_regular(6) and is_bipartite(g) and g.is_simple
    assert rep.girth_measured >= 6


def test_x_5_29():
    params = LpsParameters.create(5, 29)
    g = lps_graph(params)
    rep = verify_lps(g, params)
    assert rep.all_ok and not is_bipartite(g)
    assert g.n_vertices == 12180 and rep.girth_measured >= 5


@pytest.mark.parametrize("p, q", [(5, 17), (13, 17), (29, 13), (17, 13)])
def test_more_pairs(p, q):
    params = LpsParameters.create(p, q)
    g = lps_graph(params)
    assert verify_lps(g, params).all_ok
    assert (nt.legendre(p, q) == -1) == is_bipartite(g)


def test_build_is_canonical():
    params = LpsParameters.create(5, 13)
    assert lps_graph(params) == lps_graph(params)


def test_verify_fake_params():
    hexagon = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    rep = verify_lps(hexagon, LpsParameters.create(5, 13))
    assert rep.regular is False and rep.order_ok is False
    # degree-2 parameters with the wrong order: regular but order mismatch
    fake = verify_lps(hexagon, LpsParameters(1, 13, -1, 2184, 0.0))
    assert fake.regular is True and fake.order_ok is False
    assert girth(hexagon).girth == 6
