from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from wreathcoh.arith import (
    DimensionVector,
    ExponentPair,
    dim_w_symmetric,
    dim_w_wreath,
    exponents_of_graded,
    nu_p_che,
    parse_tower,
    tower,
    wreath_exponents,
)
from wreathcoh.exactlin import PreconditionError
from wreathcoh.formulas import predict_wreath_cohomology
from wreathcoh.graded import Family, GradedAbelianGroup


def cyclic_group_cohomology(order):
    return GradedAbelianGroup((Family(0, 0), Family(2, order, period=2, count=None)))


# --- exponents ---------------------------------------------------------


def test_exponents_of_cyclic_group():
    assert exponents_of_graded(cyclic_group_cohomology(27)) == ExponentPair(27, 27)


def test_finite_group_has_trivial_ee():
    H = GradedAbelianGroup.from_table({0: [0], 1: [4], 3: [2]})
    ex = exponents_of_graded(H)
    assert (ex.e, ex.ee) == (4, 1)


def test_unbounded_exponent():
    H = GradedAbelianGroup.from_table({0: [0], 2: [0]})
    assert exponents_of_graded(H).e == 0


def test_prediction_for_c9_base():
    pred = predict_wreath_cohomology(cyclic_group_cohomology(9), 3, 40).result
    assert exponents_of_graded(pred).ee == 27


@pytest.mark.parametrize("p,r", [(2, 2), (3, 1), (3, 2), (5, 1)])
def test_two_exponent_paths_agree(p, r):
    H = cyclic_group_cohomology(p ** r)
    base = exponents_of_graded(H, p)
    assert not base.p2_caveat
    direct = exponents_of_graded(predict_wreath_cohomology(H, p, 12 * p).result, p)
    assert (direct.e, direct.ee) == (wreath_exponents(base, p).e, wreath_exponents(base, p).ee)


def test_wreath_exponents_odd():
    assert wreath_exponents(ExponentPair(9, 9), 3) == ExponentPair(27, 27)


def test_wreath_exponents_p2_caveat():
    H = GradedAbelianGroup.from_table({0: [0], 1: [4]}) + GradedAbelianGroup(
        (Family(2, 2, period=1, count=None),))
    base = exponents_of_graded(H, 2)
    assert base.p2_caveat
    out = wreath_exponents(base, 2)
    assert out.p2_caveat and out.e_choices == (4, 8)
    assert out.to_dict()["e_choices"] == [4, 8]


def test_wreath_exponents_errors():
    with pytest.raises(PreconditionError):
        wreath_exponents(ExponentPair(6, 6), 3)
    with pytest.raises(PreconditionError):
        ExponentPair(4, 8)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_iterated_tower_exponent(p, n):
    ex = ExponentPair(p, p)
    for _ in range(n - 1):
        ex = wreath_exponents(ex, p)
    assert ex.ee == p ** n


# --- varieties ---------------------------------------------------------


def test_dim_w_wreath_examples():
    for p in (2, 3, 5):
        for n in (1, 2, 4):
            out = dim_w_wreath(DimensionVector((n,)), p)
            assert out.dims == (p * n, n)
            assert nu_p_che(out) == p * n + n
        assert dim_w_wreath(DimensionVector(()), p).dims == (1,)


def test_nu_p_che_examples():
    for n in range(2, 8):
        v = DimensionVector((comb(n, 2) + 1, comb(n, 2)))
        assert nu_p_che(v) == n * n - n + 1
    assert nu_p_che(DimensionVector(())) == 0


def test_dim_w_symmetric_examples():
    assert dim_w_symmetric(8, 2, 1) == 2
    assert dim_w_symmetric(12, 2, 1) == 3
    assert [dim_w_symmetric(8, 2, i) for i in range(5)] == [4, 2, 1, 0, 0]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_symmetric_matches_iterated_wreath(p, n):
    v = DimensionVector(())
    for _ in range(n):
        v = dim_w_wreath(v, p)
    assert all(dim_w_symmetric(p ** n, p, i) == v[i] for i in range(n + 2))
    assert all(dim_w_symmetric(p ** n, p, i) == p ** (n - i - 1) for i in range(n))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 6), max_size=5).map(lambda xs: tuple(sorted(xs, reverse=True))),
       st.sampled_from([2, 3, 5]))
def test_wreath_keeps_vectors_decreasing(dims, p):
    out = dim_w_wreath(DimensionVector(dims), p)
    assert all(out[i] >= out[i + 1] for i in range(len(out.dims)))


def test_dimension_vector_validation():
    assert DimensionVector((2, 1, 0, 0)).dims == (2, 1)
    with pytest.raises(PreconditionError):
        DimensionVector((1, 2))
    with pytest.raises(PreconditionError):
        dim_w_symmetric(0, 2, 0)


# --- towers ---------------------------------------------------------


def test_parse_tower():
    assert parse_tower("C:9 wr C_3") == ("C", 3, 2, [3])
    assert parse_tower("C:3^2") == ("C", 3, 2, [])
    assert parse_tower("E:2^3 wr C_2 wr C_2") == ("E", 2, 3, [2, 2])


@pytest.mark.parametrize("text", ["", "X:9", "C:6", "E:4^2", "C:9 wr C_2", "C:9 wr", "E:3"])
def test_parse_tower_errors(text):
    with pytest.raises(PreconditionError):
        parse_tower(text)


def test_tower_reports():
    rep = tower("C:9 wr C_3")
    assert (rep.exponents.e, rep.exponents.ee) == (27, 27)
    rep = tower("E:3^2 wr C_3")
    assert rep.dims.dims == (6, 2) and nu_p_che(rep.dims) == 8
    rep = tower("C:1 wr C_2 wr C_2 wr C_2")
    assert rep.dims.dims == (4, 2, 1)
    assert rep.exponents.ee == 8
