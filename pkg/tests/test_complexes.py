from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from wreathcoh.complexes import (
    ChainMap,
    CochainComplex,
    Cocycle,
    build_cyclic_complex,
    cocycle_order,
    cohomology,
    complex_from_graded,
    direct_sum,
    induced_map_on_cohomology,
    tensor,
    tensor_power,
)
from wreathcoh.exactlin import IntegerMatrix, PreconditionError
from wreathcoh.graded import Family, GradedAbelianGroup


def table(C, lo=None, hi=None):
    lo = C.lo if lo is None else lo
    hi = C.hi if hi is None else hi
    return cohomology(C, (lo, hi)).primary_table(lo, hi)


small_pieces = st.tuples(st.sampled_from([0, 1, 2, 3, 4, 6]), st.integers(-1, 2))


def piece(t):
    return build_cyclic_complex(*t)


def kunneth(hA, hB):
    """Cohomology of A⊗B from cohomology tables {deg: [orders]} of A and B."""
    out = {}
    for a, oa in hA.items():
        for b, ob in hB.items():
            for x in oa:
                for y in ob:
                    g = gcd(x, y)
                    if g != 1:
                        out.setdefault(a + b, []).append(g)
                    # Tor term sits one degree lower in cohomological grading
                    if x and y and g != 1:
                        out.setdefault(a + b - 1, []).append(g)
    return GradedAbelianGroup.from_table(out)


def test_cyclic_complex_examples():
    free = build_cyclic_complex(0, 2)
    assert free.lo == 2 and free.ranks == (1,)
    assert table(build_cyclic_complex(5, 1)) == {1: [5]}
    assert table(build_cyclic_complex(1, 3)) == {}
    assert build_cyclic_complex(5, 1).basis_labels(0) == ("lower",)


def test_direct_sum_shapes():
    assert direct_sum([CochainComplex.zero(), CochainComplex.zero()]).ranks == ()
    S = direct_sum([build_cyclic_complex(3, 1), build_cyclic_complex(0, 2)])
    assert (S.lo, S.ranks) == (0, (1, 1, 1))
    assert table(S) == {1: [3], 2: [0]}


def test_tensor_examples():
    unit = build_cyclic_complex(0, 0)
    A = build_cyclic_complex(4, 2)
    assert table(tensor(A, unit)) == table(A)
    assert table(tensor(build_cyclic_complex(3, 1), build_cyclic_complex(3, 1))) == {1: [3], 2: [3]}
    assert table(tensor(build_cyclic_complex(3, 1), build_cyclic_complex(5, 1))) == {}
    assert table(tensor(build_cyclic_complex(7, 1), build_cyclic_complex(0, 3))) == {4: [7]}


def test_triple_tensor_is_a_complex():
    C = build_cyclic_complex(2, 1)
    T = tensor(C, tensor(C, C))  # constructor checks d∘d = 0
    assert T.ranks == (1, 3, 3, 1)


def test_tensor_power_agrees_with_nested_tensor():
    C = direct_sum([build_cyclic_complex(2, 1), build_cyclic_complex(0, 1)])
    T, _ = tensor_power(C, 3)
    N = tensor(C, tensor(C, C))
    assert T.ranks == N.ranks
    assert T.diffs == N.diffs


@settings(max_examples=60, deadline=None)
@given(st.lists(small_pieces, min_size=1, max_size=2), st.lists(small_pieces, min_size=1, max_size=2))
def test_kunneth(a, b):
    A = direct_sum([piece(t) for t in a])
    B = direct_sum([piece(t) for t in b])
    T = tensor(A, B)
    expected = kunneth(cohomology(A).degree_table(A.lo, A.hi), cohomology(B).degree_table(B.lo, B.hi))
    assert cohomology(T).same_on_window(expected, T.lo, T.hi)


@settings(max_examples=40, deadline=None)
@given(small_pieces, small_pieces, small_pieces)
def test_tensor_associative(a, b, c):
    A, B, C = piece(a), piece(b), piece(c)
    L, R = tensor(tensor(A, B), C), tensor(A, tensor(B, C))
    lo, hi = L.lo, L.hi
    assert cohomology(L).same_on_window(cohomology(R), lo, hi)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_pieces, min_size=1, max_size=3))
def test_euler_characteristic(parts):
    C = direct_sum([piece(t) for t in parts])
    H = cohomology(C)
    free = sum((-1) ** d * orders.count(0) for d, orders in H.degree_table(C.lo, C.hi).items())
    assert C.euler_characteristic() == free


def test_cohomology_window_precondition():
    C = CochainComplex.from_maps(0, [1, 1], {}, valid=(None, 0))
    with pytest.raises(PreconditionError):
        cohomology(C, (0, 1))


def test_cocycle_order_examples():
    C7 = build_cyclic_complex(7, 1)
    assert cocycle_order(C7, Cocycle(1, (0,))) == 1
    assert cocycle_order(C7, Cocycle(1, (1,))) == 7
    assert cocycle_order(build_cyclic_complex(0, 2), Cocycle(2, (1,))) == 0
    with pytest.raises(PreconditionError):
        cocycle_order(tensor(C7, C7), Cocycle(1, (1, 0)))


@settings(max_examples=50, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_cocycle_order_class_invariant(k, b):
    # C(6,1) ⊕ C(4,1): shift a cocycle by a coboundary
    C = direct_sum([build_cyclic_complex(6, 1), build_cyclic_complex(4, 1)])
    z = (1, 1)
    boundary = C.differential(0).apply((k, b))
    moved = tuple(x + y for x, y in zip(z, boundary))
    assert cocycle_order(C, Cocycle(1, z)) == cocycle_order(C, Cocycle(1, moved)) == 12


def test_complex_from_graded():
    assert table(complex_from_graded(GradedAbelianGroup.from_table({0: [0]}), 4)) == {0: [0]}
    C9 = complex_from_graded(GradedAbelianGroup.from_table({2: [9]}), 4)
    assert (C9.lo, C9.ranks, C9.diffs) == (1, (1, 1), build_cyclic_complex(9, 2).diffs)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.builds(Family, first_degree=st.integers(0, 5), order=st.sampled_from([0, 2, 3, 9]),
                          period=st.integers(1, 3), count=st.one_of(st.none(), st.integers(1, 3))),
                max_size=4),
       st.integers(0, 8))
def test_complex_from_graded_round_trip(fams, bound):
    H = GradedAbelianGroup(tuple(fams))
    C = complex_from_graded(H, bound)
    if not C.ranks:
        assert H.restrict(0, bound).is_zero()
        return
    assert cohomology(C).same_on_window(H, 0, bound)


def test_induced_maps():
    C = build_cyclic_complex(9, 2)
    assert induced_map_on_cohomology(ChainMap.identity(C), 2) == IntegerMatrix.identity(1)
    assert induced_map_on_cohomology(ChainMap.scalar(C, 3), 2) == IntegerMatrix.from_rows([[3]])
    A, B = build_cyclic_complex(4, 1), build_cyclic_complex(0, 1)
    S = direct_sum([A, B])
    inc = ChainMap(A, S, {0: IntegerMatrix.from_rows([[1]]), 1: IntegerMatrix.from_rows([[1], [0]])})
    M = induced_map_on_cohomology(inc, 1)
    assert M.shape == (2, 1)


def test_induced_map_rejects_non_chain_maps():
    C = build_cyclic_complex(3, 1)
    bad = ChainMap(C, C, {0: IntegerMatrix.from_rows([[1]]), 1: IntegerMatrix.from_rows([[2]])})
    with pytest.raises(PreconditionError, match="degree 0"):
        induced_map_on_cohomology(bad, 1)
