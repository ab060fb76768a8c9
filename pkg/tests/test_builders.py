import math
from fractions import Fraction

import numpy as np
import pytest

from ramanujan_ldpc.builders import build_cd_regular, build_irregular, build_k_regular, find_q, find_s, with_girth
from ramanujan_ldpc.ddp import DegreeDistributionPair
from ramanujan_ldpc.errors import InvalidParameters, UnsupportedDegreeProfile
from ramanujan_ldpc.graph import girth, is_bipartite
from ramanujan_ldpc.transforms import RANDOM

IRR = DegreeDistributionPair({3: "1/2", 5: "1/2"}, {15: 1})


@pytest.mark.parametrize("k, s", [(6, 1), (30, 1), (15, 2), (3, 2), (5, 6), (18, 1)])
def test_find_s(k, s):
    assert find_s(k) == s
    p = s * k - 1
    assert p % 4 == 1


@pytest.mark.parametrize("k", [4, 8, 12])
def test_find_s_rejects_multiples_of_four(k):
    with pytest.raises(UnsupportedDegreeProfile):
        find_s(k)


@pytest.mark.parametrize("p, min_q, q", [(5, 0, 13), (5, 14, 17), (29, 0, 13)])
def test_find_q(p, min_q, q):
    assert find_q(p, min_q) == q


def test_k_regular_6():
    g, meta, left = build_k_regular(6, q=13, measure_girth=True)
    assert g.n_vertices == 2184 and g.is_regular(6) and is_bipartite(g)
    assert meta.recipe.s == 1 and not meta.lps.residue == 1
    assert meta.girth_measured >= 6 and left.sum() == 1092


def test_k_regular_15_closed_form():
    g, meta, left = build_k_regular(15, q=13)
    s, q = meta.recipe.s, meta.recipe.q
    assert (s, meta.recipe.p, meta.lps.residue) == (2, 29, 1)
    assert g.n_vertices == s * q * (q * q - 1) == 4368
    assert g.is_regular(15) and is_bipartite(g)
    assert np.all(left[g.edges[:, 0]] != left[g.edges[:, 1]])
    assert girth(g, witness=False).girth >= meta.girth_bound_int


def test_k_regular_rejects():
    with pytest.raises(UnsupportedDegreeProfile):
        build_k_regular(8)


def test_cd_regular_3_6(cd36):
    tg, meta = cd36
    assert (tg.n, tg.m, meta.n, meta.m) == (2184, 1092, 2184, 1092)
    assert np.all(tg.variable_degrees == 3) and np.all(tg.check_degrees == 6)
    assert meta.rate == Fraction(1, 2) and meta.connected
    assert meta.girth_measured >= max(6, meta.girth_bound_int)
    assert tg.degree_distribution() == DegreeDistributionPair.regular(3, 6)


def test_cd_regular_q17_counts():
    tg, meta = build_cd_regular(3, 6, q=17)
    assert (tg.n, tg.m) == (4896, 2448)


def test_cd_regular_min_n_selects_q():
    _, meta = build_cd_regular(3, 6, min_n=3000)
    assert meta.recipe.q == 17


def test_cd_regular_rejects():
    with pytest.raises(UnsupportedDegreeProfile):
        build_cd_regular(4, 8)
    with pytest.raises(InvalidParameters):
        build_cd_regular(3, 6, q=13, mode=RANDOM)


def test_irregular_closed_form(irregular13):
    tg, meta = irregular13
    r = meta.recipe
    assert (r.s, r.a, r.p, r.q, meta.lps.residue) == (1, 2, 29, 13, 1)
    n0 = r.a * r.s * 13 * 168 // 2
    assert n0 == 2184
    assert tg.n == n0 * 15 * IRR.integral_lambda == 8736
    assert np.count_nonzero(tg.variable_degrees == 3) == 5460
    assert np.count_nonzero(tg.variable_degrees == 5) == 3276
    assert tg.m == 2184 and np.all(tg.check_degrees == 15)
    assert meta.rate == Fraction(3, 4)
    assert tg.degree_distribution() == IRR
    assert girth(tg, witness=False).girth >= math.ceil(2 * math.log(13, 29))


def test_irregular_reproducible():
    a, _ = build_irregular(IRR, q=13, seed=3)
    b, _ = build_irregular(IRR, q=13, seed=3)
    c, _ = build_irregular(IRR, q=13, seed=4)
    assert a == b and a != c


def test_irregular_of_regular_pair_matches_cd_profile(cd36):
    tg, _ = build_irregular(DegreeDistributionPair.regular(3, 6), q=13, seed=1)
    assert tg.degree_distribution() == cd36[0].degree_distribution()
    assert (tg.n, tg.m) == (2184, 1092)


def test_irregular_accepts_degree_two():
    pair = DegreeDistributionPair({2: "1/3", 3: "2/3"}, {6: 1})
    tg, meta = build_irregular(pair, q=None, seed=0)
    assert tg.degree_distribution() == pair and meta.recipe.a == 3


def test_random_mode_builds_are_seeded():
    a, _ = build_cd_regular(3, 6, q=13, mode=RANDOM, seed=9)
    b, _ = build_cd_regular(3, 6, q=13, mode=RANDOM, seed=9)
    assert a == b
    assert girth(a, witness=False).girth >= 6


def test_metadata_json(cd36):
    tg, meta = cd36
    data = with_girth(tg, meta).to_json()
    assert data["n"] == 2184 and data["rate"] == "1/2" and data["girth_measured"] >= 6
    assert data["recipe"]["p"] == 5 and data["lps"]["expected_order"] == 2184
