import pytest

from wreathcoh.complexes import (
    Cocycle,
    build_cyclic_complex,
    cocycle_order,
    cohomology,
    direct_sum,
    tensor,
)
from wreathcoh.equivariant import (
    SignedPermutation,
    SignedPermutationAction,
    UnsupportedCaseError,
    cp_cohomology,
    cyclic_power,
    equivariant_hom_double_complex,
    hom_double_complex,
    orbit_decomposition,
    periodic_resolution,
    single_row_double_complex,
    total_cohomology,
    totalize,
    wreath_class_cocycle,
    wreath_building_block,
)
from wreathcoh.exactlin import PreconditionError


def top_sign(E, m):
    t = E.action.at(m)
    assert t.size == 1
    return t.signs[0]


def test_cyclic_power_signs():
    assert top_sign(cyclic_power(build_cyclic_complex(5, 1), 2), 2) == -1
    assert top_sign(cyclic_power(build_cyclic_complex(5, 1), 3), 3) == 1
    E = cyclic_power(build_cyclic_complex(5, 2), 2)
    assert top_sign(E, 4) == 1
    assert top_sign(E, 2) == -1


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n,i", [(1, 0), (4, 1), (9, 2), (0, 1)])
def test_action_invariants_hold(p, n, i):
    E = wreath_building_block(n, i, p)  # construction checks t^p = 1 and td = dt
    assert E.underlying.lo == (p * (i - 1) if n else p * i)


def test_action_must_have_order_p():
    with pytest.raises(PreconditionError):
        SignedPermutationAction(3, {0: SignedPermutation.sign_module()})


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_resolution_exact(p):
    W = periodic_resolution(p, 6)
    assert W.is_exact()
    assert W.boundary(1) == (-1, 1) + (0,) * (p - 2)
    assert W.boundary(2) == (1,) * p


def test_resolution_length():
    with pytest.raises(PreconditionError):
        periodic_resolution(3, 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cp_cohomology_trivial(p):
    triv = SignedPermutation.identity(1)
    assert cp_cohomology(p, triv, 0).factors == (0,)
    assert cp_cohomology(p, triv, 1).factors == ()
    assert cp_cohomology(p, triv, 2).factors == (p,)
    assert cp_cohomology(p, triv, 5).factors == ()
    assert cp_cohomology(p, triv, 6).factors == (p,)


def test_cp_cohomology_sign_and_free():
    sign = SignedPermutation.sign_module()
    assert cp_cohomology(2, sign, 1).factors == (2,)
    assert cp_cohomology(2, sign, 2).factors == ()
    for p in (2, 3, 5):
        free = SignedPermutation.regular(p)
        assert cp_cohomology(p, free, 0).factors == (0,)
        assert all(cp_cohomology(p, free, i).factors == () for i in range(1, 5))


def test_hom_double_complex_ranks_p2():
    E = cyclic_power(build_cyclic_complex(2, 0), 2)
    D = equivariant_hom_double_complex(periodic_resolution(2, 6), E)
    assert [D.rank(0, j) for j in (0, -1, -2)] == [1, 2, 1]
    D.check()


def test_group_mismatch():
    E = cyclic_power(build_cyclic_complex(2, 0), 2)
    with pytest.raises(PreconditionError):
        equivariant_hom_double_complex(periodic_resolution(3, 4), E)


def column_cohomology(D, j, i):
    """H^i of row j of the double complex, computed from its horizontal maps."""
    sub = single_row_double_complex(
        D.source.action.at(j), D.p, 0, i + 2)
    return cohomology(totalize(sub, (0, i)), (i, i)).summands(i)


@pytest.mark.parametrize("p", [3, 5])
def test_rows_of_wreath_double_complex(p):
    E = cyclic_power(build_cyclic_complex(4, 0), p)
    D = hom_double_complex(E, 8)
    # row 0 computes H*(C_p; Z)
    assert [column_cohomology(D, 0, i) for i in range(5)] == [[0], [], [p], [], [p]]
    # middle rows are free modules
    for j in range(-p + 1, 0):
        assert D.rank(0, j) % p == 0
        assert all(column_cohomology(D, j, i) == [] for i in range(1, 4))


def test_totalize_single_row_is_the_row():
    D = single_row_double_complex(SignedPermutation.identity(1), 3, 0, 6)
    T = totalize(D, (0, 4))
    assert T.ranks[:5] == (1,) * 5


def test_totalize_examples():
    E = cyclic_power(build_cyclic_complex(1, 0), 3)
    assert total_cohomology(E, (-3, 6)).is_zero()
    H = total_cohomology(cyclic_power(build_cyclic_complex(3, 0), 3), (0, 0))
    assert 9 in H.summands(0)


def test_totalize_padding_error():
    D = hom_double_complex(cyclic_power(build_cyclic_complex(3, 0), 3), 4)
    with pytest.raises(PreconditionError, match="needs columns through"):
        totalize(D, (0, 6))


@pytest.mark.parametrize("p,n,i", [(2, 2, 1), (3, 3, 0), (3, 2, 1), (5, 5, 0)])
def test_truncation_stability(p, n, i):
    E = wreath_building_block(n, i, p)
    lo = E.underlying.lo
    window = (lo, lo + 6)
    D = hom_double_complex(E, lo + 6 - lo + 2 + 4)
    a = cohomology(totalize(D, window), window)
    b = cohomology(totalize(D.truncated(D.last_column - 1), window), window)
    assert a.same_on_window(b, *window)


@pytest.mark.parametrize("p", [2, 3])
def test_free_orbit_reduction(p):
    A, B = build_cyclic_complex(4, 1), build_cyclic_complex(0, 2)
    C = direct_sum([A, B])
    E = cyclic_power(C, p)

    orbits = orbit_decomposition(E, lambda label: label[0])
    mixed = [rep for rep in orbits if len(set(rep)) > 1]
    assert mixed
    rep = mixed[0]
    # cohomology of one cube: the tensor product of the factors named by rep
    cube = None
    for k in rep:
        piece = (A, B)[k]
        cube = piece if cube is None else tensor(cube, piece)
    sub = orbits[rep]
    window = (sub.underlying.lo, sub.underlying.hi)
    assert total_cohomology(sub, window).same_on_window(cohomology(cube), *window)


def test_wreath_class_cocycle_examples():
    E = cyclic_power(build_cyclic_complex(5, 0), 3)
    D = hom_double_complex(E, 6)
    z = wreath_class_cocycle(Cocycle(0, (1,)), D)
    assert z.degree == 0
    blocks = {(i, j): (off, r) for i, j, off, r in D.total_blocks(0)}
    off, r = blocks[(0, 0)]
    assert z.coefficients[off:off + r] == (1,)


def test_wreath_class_order_p_power():
    E = cyclic_power(build_cyclic_complex(9, 0), 3)
    D = hom_double_complex(E, 8)
    T = totalize(D, (-3, 2))
    assert cocycle_order(T, wreath_class_cocycle(Cocycle(0, (1,)), D)) == 27


def test_wreath_class_order_is_a_class_invariant():
    C = build_cyclic_complex(4, 0)
    E = cyclic_power(C, 3)
    D = hom_double_complex(E, 8)
    T = totalize(D, (-3, 2))
    # in C(4,0) the cocycles in degree 0 are multiples of the generator; 1 and 5 are cohomologous
    a = cocycle_order(T, wreath_class_cocycle(Cocycle(0, (1,)), D))
    b = cocycle_order(T, wreath_class_cocycle(Cocycle(0, (5,)), D))
    assert a == b == 4


def test_wreath_class_odd_degree_p2_rejected():
    E = cyclic_power(build_cyclic_complex(4, 1), 2)
    D = hom_double_complex(E, 6)
    with pytest.raises(UnsupportedCaseError):
        wreath_class_cocycle(Cocycle(1, (1,)), D)


def test_wreath_class_rejects_non_cocycles():
    E = cyclic_power(build_cyclic_complex(4, 1), 3)
    D = hom_double_complex(E, 6)
    with pytest.raises(PreconditionError):
        wreath_class_cocycle(Cocycle(0, (1,)), D)
