import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uppermccool.cohomology import (
    ExtElement,
    UpperMcCoolRing,
    cup,
    cup_kernel,
    cup_rank,
    ext_basis,
    fmt_ext_monomial,
    relation,
    triples,
    u,
    wedge,
)
from uppermccool.linalg import LinearSubspace, rank


@pytest.fixture(scope="module", params=[3, 4, 5, 6])
def ring(request):
    return UpperMcCoolRing(request.param)


# -- exterior algebra ---------------------------------------------------------


def test_square_zero():
    assert wedge(u(2, 1), u(2, 1)).is_zero()


def test_anticommutative():
    assert wedge(u(3, 1), u(2, 1)) == -wedge(u(2, 1), u(3, 1))


def test_relation_matches_wedge_of_parts():
    i, j, k = 4, 3, 2
    assert relation(i, j, k) == wedge(u(i, j), u(i, k) - u(j, k))
    # the other factor order gives the negative
    assert relation(i, j, k) == -wedge(u(i, k) - u(j, k), u(i, j))


def test_rendering_descending():
    assert fmt_ext_monomial(next(iter(wedge(u(2, 1), u(3, 2)).terms))) == "u[3,2]^u[2,1]"
    assert str(wedge(u(3, 1), u(2, 1))) == "u[3,1]^u[2,1]"


deg1 = st.lists(st.integers(-4, 4), min_size=10, max_size=10).map(ExtElement.from_vector)


@settings(max_examples=50)
@given(deg1, deg1, deg1)
def test_graded_commutative_and_associative(a, b, c):
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))
    assert wedge(wedge(a, b), c) == wedge(c, wedge(a, b))


@settings(max_examples=50)
@given(deg1, deg1, deg1, st.integers(-3, 3))
def test_bilinear(a, b, c, s):
    assert wedge(a + b.scale(s), c) == wedge(a, c) + wedge(b, c).scale(s)


# -- ring dimensions ----------------------------------------------------------


def test_dimensions(ring):
    n = ring.n
    assert ring.dim1 == comb(n, 2)
    assert len(ext_basis(n, 2)) == comb(comb(n, 2), 2)
    assert len(ring.E3) == comb(comb(n, 2), 3)
    assert ring.relation_rank == comb(n, 3)
    assert ring.dim_A2 == comb(comb(n, 2), 2) - comb(n, 3)


def test_complement_spans_with_relations(ring):
    rows = [ring.e2_vector(rel) for rel in ring.relations]
    idx = {m: c for c, m in enumerate(ring.E2)}
    for m in ring.complement:
        row = [Fraction(0)] * len(ring.E2)
        row[idx[m]] = Fraction(1)
        rows.append(row)
    assert rank(rows, len(ring.E2)) == len(ring.E2)


def test_relations_vanish_in_cup(ring):
    for i, j, k in triples(ring.n):
        assert not any(ring.cup(u(i, j), u(i, k) - u(j, k)))


def test_cup_self_zero():
    R = UpperMcCoolRing(4)
    rng = random.Random(5)
    for _ in range(20):
        a = ExtElement.from_vector([rng.randint(-5, 5) for _ in range(R.dim1)])
        assert not any(cup(a, a, R))


def test_cup_nonzero_example():
    R = UpperMcCoolRing(4)
    assert any(cup(u(3, 1) - u(4, 1), u(3, 2) - u(4, 2), R))


def test_cup_accepts_vectors():
    R = UpperMcCoolRing(4)
    a, b = u(4, 3) + u(2, 1), u(3, 1)
    assert R.cup(a, b) == R.cup(list(a.to_vector(4)), list(b.to_vector(4)))


# -- cup rank and kernels ------------------------------------------------------


def _Lbasis(n, i, j):
    out = [u(i, j)]
    for l in range(1, j):
        out.append(u(i, l) - u(j, l))
    return out


def test_cup_rank_j2_zero():
    for n in (3, 4, 5):
        R = UpperMcCoolRing(n)
        for i in range(3, n + 1):
            assert cup_rank([u(2, 1) - u(i, 1), u(i, 2)], R) == 0


def test_cup_rank_L43_is_one():
    assert cup_rank(_Lbasis(4, 4, 3), UpperMcCoolRing(4)) == 1


@pytest.mark.parametrize("n", [4, 5, 6])
def test_cup_rank_general(n):
    R = UpperMcCoolRing(n)
    for i in range(3, n + 1):
        for j in range(2, i):
            assert cup_rank(_Lbasis(n, i, j), R) == comb(j - 1, 2)


def test_cup_rank_basis_independent():
    R = UpperMcCoolRing(5)
    rng = random.Random(9)
    B = _Lbasis(5, 5, 4)
    for _ in range(5):
        M = [[Fraction(rng.randint(-3, 3)) for _ in B] for _ in B]
        while rank(M, len(B)) < len(B):
            M = [[Fraction(rng.randint(-3, 3)) for _ in B] for _ in B]
        B2 = []
        for row in M:
            e = ExtElement()
            for c, b in zip(row, B):
                e = e + b.scale(c)
            B2.append(e)
        assert cup_rank(B2, R) == cup_rank(B, R) == 3


def test_cup_rank_accepts_subspace():
    R = UpperMcCoolRing(4)
    S = LinearSubspace.from_basis([list(b.to_vector(4)) for b in _Lbasis(4, 4, 3)], R.dim1)
    assert cup_rank(S, R) == 1


def test_cup_kernel_rejects_zero():
    with pytest.raises(ValueError):
        cup_kernel(ExtElement.from_vector([0] * 6), UpperMcCoolRing(4))


def test_cup_kernel_of_uij():
    for n in (4, 5):
        R = UpperMcCoolRing(n)
        for i in range(3, n + 1):
            for j in range(2, i):
                K = cup_kernel(u(i, j), R)
                assert K.dim >= j
                for b in _Lbasis(n, i, j):
                    assert K.contains(list(b.to_vector(n)))


def test_cup_kernel_generic_is_line():
    R = UpperMcCoolRing(4)
    rng = random.Random(2016)
    for _ in range(12):
        a = ExtElement.from_vector([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(R.dim1)])
        K = cup_kernel(a, R)
        assert K.dim == 1 and K.contains(list(a.to_vector(4)))


def test_cup_kernel_on_L_ij_j2_contains_component():
    # for j = 2 the component is isotropic, so it lies in each kernel
    R = UpperMcCoolRing(5)
    rng = random.Random(1)
    for i in range(3, 6):
        B = _Lbasis(5, i, 2)
        for _ in range(5):
            a = ExtElement()
            for b in B:
                a = a + b.scale(rng.randint(-5, 5) or 1)
            K = cup_kernel(a, R)
            assert all(K.contains(list(b.to_vector(5))) for b in B)


def test_cup_kernel_on_L_43_not_whole_component():
    # L_43 is 1-isotropic, so a generic point does not annihilate all of it
    R = UpperMcCoolRing(4)
    a = u(4, 3) + u(4, 1) - u(3, 1) + (u(4, 2) - u(3, 2)).scale(2)
    K = cup_kernel(a, R)
    assert K.dim >= 2
    assert K.contains(list(u(4, 3).to_vector(4)))
    assert not all(K.contains(list(b.to_vector(4))) for b in _Lbasis(4, 4, 3))
