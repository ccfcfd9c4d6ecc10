import pytest
from hypothesis import given, settings, strategies as st

from wreathcoh.graded import Family, GradedAbelianGroup, MalformedGroupError, prime_power_parts


families = st.builds(
    Family,
    first_degree=st.integers(-3, 8),
    order=st.sampled_from([0, 2, 3, 4, 6, 9, 12]),
    period=st.integers(1, 3),
    count=st.one_of(st.none(), st.integers(1, 4)),
    multiplicity=st.integers(1, 3),
)
groups = st.lists(families, max_size=5).map(lambda fs: GradedAbelianGroup(tuple(fs)))


def test_family_rejects_unit_order():
    with pytest.raises(MalformedGroupError):
        Family(0, 1)


def test_family_rejects_bad_period():
    with pytest.raises(MalformedGroupError):
        Family(0, 2, period=0, count=3)


def test_family_degrees():
    f = Family(2, 3, period=2, count=None)
    assert list(f.degrees(0, 9)) == [2, 4, 6, 8]
    assert list(f.degrees(5, 9)) == [6, 8]
    with pytest.raises(MalformedGroupError):
        list(f.degrees())


def test_prime_power_parts():
    assert prime_power_parts(12) == [4, 3]
    assert prime_power_parts(0) == [0]
    assert prime_power_parts(1) == []


def test_merge_and_chain():
    a = GradedAbelianGroup((Family(2, 3), Family(2, 3)))
    assert a.families == (Family(2, 3, multiplicity=2),)
    b = GradedAbelianGroup((Family(2, 3), Family(4, 3, period=2, count=None)))
    assert b.families == (Family(2, 3, period=2, count=None),)


def test_mixed_orders_compare_by_primary_parts():
    six = GradedAbelianGroup.from_table({1: [6]})
    split = GradedAbelianGroup.from_table({1: [2, 3]})
    assert six.equivalent(split)
    assert not six.equivalent(GradedAbelianGroup.from_table({1: [2]}))


def test_equivalent_covers_tails():
    a = GradedAbelianGroup((Family(0, 2, period=2, count=None), Family(1, 2, period=2, count=None)))
    b = GradedAbelianGroup((Family(0, 2, period=1, count=None),))
    assert a.equivalent(b)


def test_table_and_order():
    H = GradedAbelianGroup.from_table({0: [0], 2: [9, 3]})
    assert H.degree_table(0, 3) == {0: [0], 2: [3, 9]}
    assert H.order_in_degree(2) == 27
    assert H.order_in_degree(0) == 0
    assert H.order_in_degree(1) == 1


def test_bad_json():
    with pytest.raises(MalformedGroupError):
        GradedAbelianGroup.from_json("{")
    with pytest.raises(MalformedGroupError):
        GradedAbelianGroup.from_json('{"families": [{"order": 2}]}')
    with pytest.raises(MalformedGroupError):
        GradedAbelianGroup.from_json('{"families": [{"first_degree": 0, "order": 1}]}')


@settings(max_examples=200, deadline=None)
@given(groups)
def test_json_round_trip(H):
    assert GradedAbelianGroup.from_json(H.to_json()) == H


@settings(max_examples=100, deadline=None)
@given(groups, groups)
def test_sum_is_degreewise(A, B):
    S = A + B
    for d in range(-3, 15):
        assert sorted(S.summands(d)) == sorted(A.summands(d) + B.summands(d))


@settings(max_examples=100, deadline=None)
@given(groups)
def test_canonical_form_is_idempotent(H):
    assert GradedAbelianGroup(H.families) == H
    assert H.equivalent(H)
