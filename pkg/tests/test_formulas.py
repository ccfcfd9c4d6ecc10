from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from wreathcoh.equivariant import UnsupportedCaseError
from wreathcoh.exactlin import PreconditionError
from wreathcoh.formulas import (
    IndexSet,
    PageTable,
    Pattern,
    coprime_witness,
    detection_kernel,
    detection_kernel_sigma_p,
    f,
    g,
    normalize,
    predict_sigma_p,
    predict_typeI_pages,
    predict_typeII_E2,
    predict_wreath_cohomology,
    primary,
)
from wreathcoh.graded import Family, GradedAbelianGroup

ODD_PRIMES = [3, 5, 7, 11, 13]


def p7_column(n):
    """Column 0 of the p = 7 type-II E_2 page, rows 0, -1, ..., -7, for 7 | n."""
    return [primary([7 * n]), (), primary([7 * n, n, n]), primary([n, n]),
            primary([7 * n, n, n]), (), primary([n]), ()]


# --- multiplicity functions ---------------------------------------------------------


def test_g_values():
    assert g(7, 2) == 3
    assert [g(p, p - 2) for p in (3, 5, 7, 11)] == [0, 0, 0, 0]
    assert all(g(p, 0) == 1 for p in ODD_PRIMES)
    assert g(5, -1) == g(5, 5) == 0


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_g_f_recurrence(p):
    for j in range(1, p + 1):
        assert g(p, j) + g(p, j - 1) == f(p, j)


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_generating_functions(p):
    # (1 + t) G(t) = F(t) with G = sum g(j) t^j and F = sum f(j) t^j
    G = [g(p, j) for j in range(p + 1)]
    F = [f(p, j) for j in range(p + 1)]
    assert [G[j] + (G[j - 1] if j else 0) for j in range(p + 1)] == F


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_f_is_orbit_count(p):
    assert sum(f(p, j) for j in range(1, p)) * p == sum(comb(p, j) for j in range(1, p))


# --- type II ---------------------------------------------------------


@pytest.mark.parametrize("n", [7, 14, 49])
def test_p7_column(n):
    T = predict_typeII_E2(7, n)
    assert [primary(T.group(0, -j)) for j in range(8)] == p7_column(n)
    for i in range(1, 12):
        expected = (7,) if i % 2 == 0 else ()
        assert T.group(i, 0) == expected
        assert T.group(i, -7) == expected
        assert all(T.group(i, -j) == () for j in range(1, 7))


def test_typeII_p2_even_n():
    T = predict_typeII_E2(2, 4)
    assert T.group(0, 0) == (8,)
    assert all(T.group(2 * i + 2, 0) == (2,) and T.group(2 * i + 1, -2) == (2,) for i in range(5))
    assert T.collapse_page == 2


def test_typeII_exact_input():
    T = predict_typeII_E2(3, 1)
    assert T.e_infinity is not None and T.e_infinity.patterns == ()
    assert T.collapse_page == 4


def test_typeII_odd_parity_rejected_for_odd_p():
    with pytest.raises(UnsupportedCaseError):
        predict_typeII_E2(3, 3, "odd")
    with pytest.raises(PreconditionError):
        predict_typeII_E2(4, 3)


# --- type I ---------------------------------------------------------


def test_typeI_coprime_concentrated():
    P = predict_typeI_pages(5, 2)
    assert all(i == 0 for i, _ in P.E2.entries((0, 10), (-5, 0)))
    assert P.E2.collapse_page == 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_typeI_p_divides_n(p):
    P = predict_typeI_pages(p, p)
    assert [P.E3.group(1, j) for j in range(-1, 1 - p, -2)] == [(p,)] * ((p - 1) // 2)
    assert len(P.extensions) == (p - 1) // 2


def test_typeI_p2_extension():
    P = predict_typeI_pages(2, 4)
    assert [(e.kernel, e.quotient) for e in P.extensions] == [((1, -1), (0, 0))]


@pytest.mark.parametrize("p,n", [(3, 3), (5, 5), (3, 6), (2, 2), (2, 4)])
def test_typeI_order_conservation(p, n):
    """E_3 and type-II E_infinity describe the same total cohomology orders."""
    P = predict_typeI_pages(p, n)
    II = predict_typeII_E2(p, n)
    for m in range(-p, 12):
        a = b = 1
        for i in range(0, m + p + 1):
            for x in P.E3.group(i, m - i):
                a *= x
            for x in II.group(i, m - i):
                b *= x
        assert a == b, m


# --- symmetric group ---------------------------------------------------------


def test_sigma_p_delegates_for_p2():
    for n in (2, 4):
        for parity in ("even", "odd"):
            assert predict_sigma_p(2, n, parity) == predict_typeII_E2(2, n, parity)


@pytest.mark.parametrize("p", [3, 5])
def test_sigma_p_spacing(p):
    n = p
    T = predict_sigma_p(p, n)
    assert T.group(0, 0) == (p * n,)
    row0 = [i for i in range(1, 40) if T.group(i, 0)]
    assert row0 == list(range(2 * (p - 1), 40, 2 * (p - 1)))
    if p == 3:
        assert row0[:3] == [4, 8, 12]
    with pytest.raises(PreconditionError):
        predict_sigma_p(p, 2 * p)


# --- wreath cohomology ---------------------------------------------------------


def test_point_gives_classifying_space():
    H = GradedAbelianGroup.from_table({0: [0]})
    R = predict_wreath_cohomology(H, 3, 12).result
    assert R.degree_table(0, 12) == {0: [0], **{d: [3] for d in range(2, 13, 2)}}


def test_prediction_example_p3():
    H = GradedAbelianGroup.from_table({0: [0], 2: [9]})
    R = predict_wreath_cohomology(H, 3, 10).result
    assert R.primary_table(2, 6) == {2: [3, 9], 3: [9], 4: [3, 9, 9], 5: [3], 6: [3, 27]}
    assert all(3 in R.summands(d) for d in (5, 7, 9))


def test_prediction_example_p2():
    H = GradedAbelianGroup.from_table({0: [0], 1: [2]})
    R = predict_wreath_cohomology(H, 2, 10).result
    assert 2 in R.summands(1)
    assert all(R.summands(d).count(2) >= 1 for d in range(2, 11))


def test_provenance_tags_cover_everything():
    H = GradedAbelianGroup.from_table({0: [0], 1: [6], 2: [0, 9]})
    R = predict_wreath_cohomology(H, 3, 12).result
    assert all(fam.provenance for fam in R.families)


def test_normalize_splits_mixed_orders():
    H = normalize(GradedAbelianGroup.from_table({1: [12]}), 3)
    assert sorted(H.summands(1)) == [3, 4]


def test_coprime_witness():
    assert [coprime_witness(p) for p in (2, 3, 5)] == [3, 2, 2]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]),
       st.lists(st.tuples(st.integers(0, 3), st.sampled_from([0, 2, 3, 4, 9])), min_size=1, max_size=3))
def test_summand_count_against_universal_coefficients(p, parts):
    """Rank of the prediction equals the rank computed from the free part alone."""
    H = free = GradedAbelianGroup()
    for d, o in parts:
        H = H + GradedAbelianGroup.from_table({d: [o]})
        if o == 0:
            free = free + GradedAbelianGroup.from_table({d: [0]})
    top = 3 * p
    R = predict_wreath_cohomology(H, p, top).result
    F = predict_wreath_cohomology(free, p, top).result
    for d in range(0, top + 1):
        assert R.summands(d).count(0) == F.summands(d).count(0)


# --- detection kernels ---------------------------------------------------------


def test_detection_kernel_examples():
    K = detection_kernel(GradedAbelianGroup.from_table({2: [5]}), 5, 20)
    assert K.degree_table(0, 20) == {8: [5], 10: [5]}
    K = detection_kernel(GradedAbelianGroup.from_table({2: [4]}), 2, 20)
    assert K.degree_table(0, 20) == {4: [2]}
    assert detection_kernel(GradedAbelianGroup.from_table({2: [2]}), 3, 20).is_zero()


def test_sigma_p_kernel():
    K = detection_kernel_sigma_p(GradedAbelianGroup.from_table({2: [9]}), 3, 20)
    assert K.degree_table(0, 20) == {6: [3]}
    assert detection_kernel_sigma_p(GradedAbelianGroup.from_table({3: [9]}), 3, 20).is_zero()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 4), st.integers(1, 3))
def test_detection_kernel_pattern(p, i, r):
    K = detection_kernel(GradedAbelianGroup.from_table({i: [p ** r]}), p, 100)
    table = K.degree_table(0, 100)
    assert sorted(table) == list(range(p * (i - 1) + 3, p * i + 1, 2))
    assert all(v == [p] for v in table.values())


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(1, 4), st.integers(1, 3))
def test_sigma_kernel_pattern(p, i, r):
    K = detection_kernel_sigma_p(GradedAbelianGroup.from_table({i: [p ** r]}), p, 100)
    table = K.degree_table(0, 100)
    if i % 2:
        assert table == {}
    else:
        assert table == {p * i: [p]}
        assert all(d % (2 * p) == 0 for d in table)


# --- serialisation ---------------------------------------------------------


def test_index_set_parse():
    for s in ["3", "2:inf:2", "1:9:4"]:
        assert str(IndexSet.parse(s)) == s


def test_overlapping_patterns_rejected():
    with pytest.raises(PreconditionError):
        PageTable(2, "II", (Pattern(IndexSet(0), IndexSet.point(0), (2,)),
                            Pattern(IndexSet.point(4), IndexSet.point(0), (3,))))


@pytest.mark.parametrize("p,n", [(3, 3), (3, 2), (2, 1), (5, 10)])
def test_page_table_round_trip(p, n):
    T = predict_typeII_E2(p, n)
    back = PageTable.from_dict(T.to_dict())
    assert back.to_dict() == T.to_dict()
    assert back.entries((0, 12), (-p, 0)) == T.entries((0, 12), (-p, 0))
