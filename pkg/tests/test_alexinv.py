import json
from math import comb

import pytest

from uppermccool.alexinv import (
    aomoto_d2,
    ascending_sign,
    block_B,
    block_D,
    certify_D,
    elements,
    expected_diagonal,
    gens_B,
    gens_Bprime,
    gens_D,
    gens_E,
    gens_G,
    groebner_G,
    kn_checks,
    kn_relations,
    m_block,
    m_count,
    phi,
    phi_agrees_with_d2,
    phi_from_d2,
    phi_star_equivalence,
    positions,
    presentation,
    psi,
    r,
    render_e3,
    w_length,
    w_vector,
    x,
    xm,
)
from uppermccool.cohomology import ExtElement, relation, triples
from uppermccool.modgb import buchberger, contains, initial_module
from uppermccool.qpoly import Polynomial

# Transpose of Psi for n = 4, columns r432, r431, r421, r321.
EXAMPLE_N4 = [
    ["x41+x31+x21", "0", "0", "0"],
    ["x42+x32", "0", "0", "0"],
    ["0", "x21", "0", "0"],
    ["-x31-x21", "x32", "0", "0"],
    ["0", "x41+x31", "0", "0"],
    ["x31", "x42", "0", "0"],
    ["0", "0", "x31", "0"],
    ["0", "0", "x32", "0"],
    ["0", "0", "x41+x21", "0"],
    ["-x21", "0", "x43", "0"],
    ["0", "0", "0", "x31+x21"],
    ["0", "0", "0", "x41"],
    ["0", "0", "0", "x42"],
    ["x21", "0", "0", "x43"],
]


def _parse(entry: str) -> Polynomial:
    out = Polynomial()
    if entry == "0":
        return out
    for tok in entry.replace("-", "+-").split("+"):
        if not tok:
            continue
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("-")
        out = out + x(int(tok[1]), int(tok[2])).scale(sign)
    return out


# -- Phi ------------------------------------------------------------------


def test_aomoto_zero():
    assert aomoto_d2(ExtElement(degree=2), 4).is_zero()


def test_phi_n3_single_entry():
    col = phi(3)[(3, 2, 1)]
    assert col.positions() == {(2, 1, 0)}
    # descending u32 u31 u21 carries x31 + x21; ascending u21 u31 u32 carries the negative
    assert col.component((2, 1, 0)) == x(3, 1) + x(2, 1)
    assert ascending_sign((2, 1, 0)) == -1
    assert render_e3(col) == "(x[3,1]+x[2,1])*u[3,2]^u[3,1]^u[2,1]"


def test_aomoto_n3():
    assert aomoto_d2(relation(3, 2, 1), 3) == phi(3)[(3, 2, 1)]


def test_phi_n2_empty():
    assert phi(2) == {}


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_phi_closed_equals_aomoto(n):
    assert phi(n) == phi_from_d2(n)
    assert phi_agrees_with_d2(n)


def test_phi_leading_coefficient_formula():
    from uppermccool.cohomology import u, wedge

    for i, j, k in triples(5):
        m = wedge(wedge(u(j, k), u(i, k)), u(i, j))
        (mono, sign), = m.terms.items()
        assert phi(5)[(i, j, k)].component(mono) == (x(i, k) + x(j, k)).scale(-sign)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_phi_star_equivalence(n):
    assert phi_star_equivalence(n)


def test_phi_star_guard():
    with pytest.raises(ValueError):
        phi_star_equivalence(6)


# -- B and Psi ------------------------------------------------------------------


def test_example_n4_literal():
    P = psi(4)
    assert len(P) == 14 and P.rank == 4
    assert P.positions == [(4, 3, 2), (4, 3, 1), (4, 2, 1), (3, 2, 1)]
    want = [[_parse(e) for e in row] for row in EXAMPLE_N4]
    assert P.table() == want


def test_n3_single_generator():
    B = gens_B(3)
    assert len(B) == 1
    assert str(B[0].label) == "h2[321]"
    assert B[0].element == r(3, 2, 1).mul_poly(x(3, 1) + x(2, 1))


@pytest.mark.parametrize("n", range(3, 9))
def test_B_counts(n):
    assert len(gens_B(n)) == m_count(n)
    for t in triples(n):
        assert len(block_B(*t, n)) == m_block(n, t[2]) == comb(n, 2) - 2 * t[2]


def test_B_count_n5_is_70():
    assert m_count(5) == 70 == len(gens_B(5))


@pytest.mark.parametrize("n", range(3, 7))
def test_block_triangular(n):
    assert presentation(n, "B").block_triangular() is None
    assert presentation(n, "G").block_triangular() is None


@pytest.mark.parametrize("n", range(3, 9))
def test_diagonal_matches_case_list(n):
    P = psi(n)
    for t in positions(n):
        got = P.diagonal(t)
        want = expected_diagonal(*t, n)
        assert sorted(map(str, got)) == sorted(map(str, want))
        assert len(got) == m_block(n, t[2])


def test_labels_unique():
    labels = [str(g.label) for g in gens_G(5)]
    assert len(labels) == len(set(labels))


def test_label_index_ranges():
    n = 6
    for g in gens_B(n):
        i, j, k = g.label.triple
        aux = dict(g.label.aux)
        if "l1" in aux:
            assert 1 <= aux["l1"] < k
        if "l2" in aux:
            assert k < aux["l2"] < j
        if "l3" in aux:
            assert j < aux["l3"] < i
        if "l4" in aux:
            assert i < aux["l4"] <= n
        if "s" in aux:
            assert not {aux["s"], aux["t"]} & {i, j, k}


def test_present_json_shape():
    d = presentation(4).to_dict()
    json.dumps(d)
    assert d["n"] == 4 and d["rank"] == 4 and len(d["rows"]) == 14
    term = d["rows"][0]["terms"][0]
    assert set(term) == {"pos", "mono", "coef"}
    assert term["coef"] == "1/1"
    assert term["pos"] == [4, 3, 2]


# -- D, E and w ---------------------------------------------------------------


def test_D_block_432():
    got = {g.element for g in block_D(4, 3, 2)}
    want = {r(4, 3, 2).mul_monomial(m) for m in [xm(2, 1) * xm(2, 1), xm(3, 1) * xm(2, 1), xm(3, 2) * xm(2, 1)]}
    assert got == want


def test_D_empty_n3():
    assert gens_D(3) == []


@pytest.mark.parametrize("n", [4, 5, 6])
def test_D_certified_by_explicit_combinations(n):
    res = certify_D(n)
    assert res and all(ok for _, ok in res)


@pytest.mark.parametrize("n", [4, 5])
def test_D_in_buchberger_of_B(n):
    GB = buchberger(elements(gens_B(n)))
    assert all(contains(g.element, GB) for g in gens_D(n))


@pytest.mark.parametrize("n", range(3, 8))
def test_w_lengths(n):
    for t in triples(n):
        assert len(w_vector(*t, n)) == w_length(n, t[2])


def test_E_n4():
    E = gens_E(4)
    assert [g.element for g in E] == [r(4, 3, 2).mul_poly(x(2, 1))]


def test_Bprime_initial_generators():
    # leading terms per position: x_kl, x_ik, x_il, and singletons x_ab
    ini = initial_module(groebner_from(gens_Bprime(5)))
    for i, j, k in positions(5):
        gens = ini.at((i, j, k))
        assert all(m.deg == 1 for m in gens)
        assert xm(i, k) in gens
        for l in range(1, k):
            assert xm(k, l) in gens and xm(i, l) in gens


def groebner_from(gens):
    from uppermccool.modgb import certify

    return certify(elements(gens))


# -- K_n ------------------------------------------------------------------------


def test_kn_relations_count():
    for n in range(4, 8):
        assert len(kn_relations(n)) == comb(n, 4)


@pytest.mark.parametrize("n", [4, 5])
def test_kn_checks(n):
    rep = kn_checks(n)
    assert rep.passed, rep.render()
    assert len(rep.checks) == 3 * comb(n, 4)


def test_kn_example_x21_squared():
    G = groebner_G(4)
    assert contains(r(4, 3, 2).mul_poly(x(2, 1) * x(2, 1)), G)


def test_kn_checks_n5_against_buchberger_oracle():
    GB = buchberger(elements(gens_B(5)))
    assert kn_checks(5, G=GB).passed


def test_kn_rejects_small_n():
    with pytest.raises(ValueError):
        kn_checks(3)
