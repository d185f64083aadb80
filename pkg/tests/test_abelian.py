import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from lunaquot.abelian import (
    AmbientMismatch,
    GradingGroup,
    element_add,
    full_subgroup,
    parse_group,
    quotient_group,
    subgroup_contains,
    subgroup_equal,
    subgroup_from_generators,
)

Z = GradingGroup(1)
Z2xZmod2 = GradingGroup(1, (2,))
ZxZ = GradingGroup(2)
ZxZ3 = GradingGroup(1, (3,))


def brute_span(L, gens, bound):
    """All elements reachable as combinations with coefficients in [-bound, bound]."""
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        acc = L.zero()
        for c, g in zip(coeffs, gens):
            acc = acc + g.scale(c)
        out.add(acc)
    return out


def test_element_add_examples():
    assert element_add(Z.element((1,)), Z.element((-1,))).is_zero()
    assert element_add(Z2xZmod2.element((1, 1)), Z2xZmod2.element((0, 1))) == Z2xZmod2.element((1, 0))
    assert element_add(ZxZ3.element((2, 1)), ZxZ3.element((3, 1))) == ZxZ3.element((5, 2))


def test_element_add_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        element_add(Z.element((1,)), ZxZ.element((1, 0)))


def test_subgroup_from_generators_examples():
    # gcd(2,3)=1 by extended Euclid, so <2,3> is all of Z
    s = subgroup_from_generators(Z, [Z.element((2,)), Z.element((3,))])
    assert subgroup_equal(s, full_subgroup(Z))

    z = subgroup_from_generators(Z, [])
    assert not subgroup_contains(z, Z.element((1,)))
    assert subgroup_contains(z, Z.element((0,)))

    # index-2 subgroup of Z + Z/2, checked by enumerating cosets
    s = subgroup_from_generators(Z2xZmod2, [Z2xZmod2.element((1, 0))])
    members = [e for e in (Z2xZmod2.element((a, b)) for a in range(-3, 4) for b in range(2))
               if subgroup_contains(s, e)]
    span = brute_span(Z2xZmod2, s.generators, 3)
    assert set(members) == {e for e in span if all(abs(c) <= 3 for c in e.free_part)}
    assert not subgroup_contains(s, Z2xZmod2.element((0, 1)))


def test_subgroup_contains_examples():
    two = subgroup_from_generators(Z, [Z.element((2,))])
    assert subgroup_contains(two, Z.element((4,)))
    assert not subgroup_contains(two, Z.element((3,)))
    diag = subgroup_from_generators(Z2xZmod2, [Z2xZmod2.element((1, 1))])
    assert subgroup_contains(diag, Z2xZmod2.element((2, 0)))  # 2*(1,1)


def test_subgroup_equal_examples():
    assert subgroup_equal(
        subgroup_from_generators(Z, [Z.element((2,)), Z.element((3,))]),
        full_subgroup(Z),
    )
    assert not subgroup_equal(
        subgroup_from_generators(Z, [Z.element((2,))]),
        subgroup_from_generators(Z, [Z.element((4,))]),
    )
    assert subgroup_equal(
        subgroup_from_generators(Z, []),
        subgroup_from_generators(Z, [Z.element((0,))]),
    )


def test_quotient_group_examples():
    q = quotient_group(Z, subgroup_from_generators(Z, [Z.element((2,))]))
    assert q.group == GradingGroup(0, (2,))
    assert q(Z.element((3,))) == q.group.element((1,))
    assert q(Z.element((4,))).is_zero()

    q = quotient_group(Z, subgroup_from_generators(Z, []))
    assert q.group == Z
    assert q(Z.element((5,))) == Z.element((5,))

    # SNF of [1 1]
    q = quotient_group(ZxZ, subgroup_from_generators(ZxZ, [ZxZ.element((1, 1))]))
    assert q.group == Z
    assert q(ZxZ.element((1, 1))).is_zero()
    assert not q(ZxZ.element((1, 0))).is_zero()


small_groups = st.sampled_from([
    GradingGroup(1),
    GradingGroup(2),
    GradingGroup(0, (4,)),
    GradingGroup(1, (2,)),
    GradingGroup(1, (6,)),
    GradingGroup(2, (3,)),
])


@st.composite
def group_and_gens(draw):
    L = draw(small_groups)
    k = draw(st.integers(0, 3))
    gens = [L.element(tuple(draw(st.integers(-4, 4)) for _ in range(L.arity)))
            for _ in range(k)]
    return L, gens


@settings(max_examples=60, deadline=None)
@given(group_and_gens(), st.randoms(use_true_random=False))
def test_canonical_form_independent_of_spanning_set(lg, rng):
    L, gens = lg
    s1 = subgroup_from_generators(L, gens)
    # same span: original generators plus random Z-combinations of them
    extra = []
    for _ in range(2):
        acc = L.zero()
        for g in gens:
            acc = acc + g.scale(rng.randint(-3, 3))
        extra.append(acc)
    shuffled = list(gens) + extra
    rng.shuffle(shuffled)
    s2 = subgroup_from_generators(L, shuffled)
    assert s1.canonical_form == s2.canonical_form


@settings(max_examples=40, deadline=None)
@given(group_and_gens())
def test_projection_kernel_is_exactly_the_subgroup(lg):
    L, gens = lg
    if L.free_rank > 3:
        return
    S = subgroup_from_generators(L, gens)
    q = quotient_group(L, S)
    coords = [range(-2, 3)] * L.free_rank + [range(d) for d in L.torsion_orders]
    for tup in itertools.product(*coords):
        e = L.element(tup)
        assert q(e).is_zero() == subgroup_contains(S, e)


@settings(max_examples=40, deadline=None)
@given(group_and_gens())
def test_contains_agrees_with_bounded_combination_oracle(lg):
    L, gens = lg
    S = subgroup_from_generators(L, gens)
    span = brute_span(L, gens, 2)
    for e in span:
        assert subgroup_contains(S, e)


def test_parse_group():
    assert parse_group("Z, Z, Z/2") == GradingGroup(2, (2,))
    assert parse_group("Z") == Z
    with pytest.raises(ValueError):
        parse_group("Z/2, Z")
