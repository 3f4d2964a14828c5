import pytest

from synideal.semigroup import (
    ClosureOverflow,
    SearchInfeasible,
    TransformationSemigroup,
    closure,
    contains,
    equal_up_to_relabeling,
    generator_necessity,
    minimal_generator_count,
)
from synideal.transform import (
    Transformation,
    compose,
    conjugate,
    full_monoid_generators,
    identity,
)
from synideal.witness import IdealClass, build
from synideal.dfa import transition_semigroup

from oracles import naive_closure


def T(*image):
    return Transformation(tuple(image))


class TestClosure:
    def test_full_monoid_n3(self):
        s = closure(full_monoid_generators(3))
        assert s.size == 27

    def test_identity_only(self):
        s = closure([identity(4)])
        assert s.size == 1 and s.elements == (identity(4),)

    def test_single_climbing_generator(self):
        s = closure([T(1, 2, 2)])
        assert s.size == 2
        assert {t.image for t in s.elements} == {(1, 2, 2), (2, 2, 2)}

    def test_against_naive_closure(self):
        gens = [T(1, 2, 0, 1), T(0, 0, 2, 3), T(3, 1, 1, 0)]
        s = closure(gens)
        assert {t.image for t in s.elements} == naive_closure(gens)

    def test_idempotent(self):
        s = closure(full_monoid_generators(3))
        again = closure(list(s.elements))
        assert again.images == s.images

    def test_generator_order_irrelevant(self):
        gens = full_monoid_generators(3)
        assert closure(gens).images == closure(gens[::-1]).images

    def test_closedness(self):
        s = closure(full_monoid_generators(3))
        elems = s.elements
        for a in elems[:6]:
            for b in elems[:6]:
                assert compose(a, b) in s

    def test_empty_generators(self):
        with pytest.raises(ValueError):
            closure([])

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            closure([identity(2), identity(3)])

    def test_cap_overflow_is_a_value(self):
        result = closure(full_monoid_generators(4), cap=100)
        assert isinstance(result, ClosureOverflow)
        assert result.cap == 100 and result.n == 4

    def test_cap_just_enough(self):
        result = closure(full_monoid_generators(4), cap=256)
        assert isinstance(result, TransformationSemigroup)
        assert result.size == 256


class TestContains:
    def test_right_witness_membership(self):
        # The semigroup is exactly the maps fixing the sink: the identity is
        # induced (letter a cycles the first n-1 states, so a^{n-1} is the
        # identity) and the total collapse onto the sink is present, while
        # any map moving the sink is not.
        s = transition_semigroup(build(IdealClass.RIGHT, 4))
        assert contains(s, identity(4))
        assert contains(s, T(3, 3, 3, 3))
        assert not contains(s, T(0, 1, 2, 0))

    def test_generators_are_members(self):
        s = transition_semigroup(build(IdealClass.LEFT, 4))
        for g in s.generators:
            assert g in s

    def test_size_mismatch(self):
        s = closure([identity(2)])
        with pytest.raises(ValueError):
            contains(s, identity(3))


class TestGeneratorNecessity:
    def test_left_witness_n4_all_necessary(self):
        s = transition_semigroup(build(IdealClass.LEFT, 4))
        assert generator_necessity(s) == [True] * 5

    def test_right_witness_n4_all_necessary(self):
        s = transition_semigroup(build(IdealClass.RIGHT, 4))
        assert generator_necessity(s) == [True] * 4

    def test_duplicate_generators(self):
        s = closure([identity(2), identity(2)])
        assert generator_necessity(s) == [False, False]


class TestMinimalGeneratorCount:
    def test_trivial(self):
        assert minimal_generator_count(closure([identity(2)]), k_max=2) == 1

    def test_left_witness_n3_needs_four(self):
        s = transition_semigroup(build(IdealClass.LEFT, 3))
        assert s.size == 11
        assert minimal_generator_count(s, k_max=4) == 4

    def test_full_monoid_n3_needs_three(self):
        assert minimal_generator_count(closure(full_monoid_generators(3)), k_max=3) == 3

    def test_budget(self):
        s = transition_semigroup(build(IdealClass.RIGHT, 4))
        with pytest.raises(SearchInfeasible):
            minimal_generator_count(s, k_max=2, budget=10)


class TestRelabeling:
    def test_identity_permutation(self):
        s = transition_semigroup(build(IdealClass.LEFT, 3))
        assert equal_up_to_relabeling(s, s, fixed_states={0}) == (0, 1, 2)

    def test_witness_semigroup_invariant_under_relabeling(self):
        # The maximal left semigroup (maps fixing 0 plus constants) is stable
        # under any permutation fixing 0, so the identity already matches.
        s = transition_semigroup(build(IdealClass.LEFT, 3))
        perm = (0, 2, 1)
        swapped = TransformationSemigroup(
            n=3,
            images=frozenset(conjugate(t, perm).packed() for t in s.elements),
            generators=tuple(conjugate(t, perm) for t in s.generators),
        )
        assert swapped.images == s.images
        assert equal_up_to_relabeling(s, swapped, fixed_states={0}) == (0, 1, 2)

    def test_swapped_copy(self):
        # closure of {[1,2,2], [0,0,0]} is not invariant under state swaps
        s = closure([T(1, 2, 2), T(0, 0, 0)])
        perm = (0, 2, 1)
        swapped = TransformationSemigroup(
            n=3,
            images=frozenset(conjugate(t, perm).packed() for t in s.elements),
            generators=tuple(conjugate(t, perm) for t in s.generators),
        )
        assert swapped.images != s.images
        assert equal_up_to_relabeling(s, swapped, fixed_states={0}) == perm

    def test_different_sizes(self):
        left = transition_semigroup(build(IdealClass.LEFT, 3))
        right = transition_semigroup(build(IdealClass.RIGHT, 3))
        assert left.size == 11 and right.size == 9
        assert equal_up_to_relabeling(left, right) is None

    def test_fixed_states_constrain(self):
        s = closure([T(1, 2, 2), T(0, 0, 0)])
        perm = (0, 2, 1)
        swapped = TransformationSemigroup(
            n=3, images=frozenset(conjugate(t, perm).packed() for t in s.elements),
            generators=s.generators,
        )
        assert equal_up_to_relabeling(s, swapped, fixed_states={0, 1}) is None

    def test_too_large(self):
        s = closure([identity(8)])
        with pytest.raises(SearchInfeasible):
            equal_up_to_relabeling(s, s)


class TestSerialization:
    def test_header_and_sorted_elements(self):
        s = closure([T(1, 2, 2)])
        text = s.to_text()
        lines = text.splitlines()
        assert lines[0] == "semigroup n=3 size=2"
        assert lines[1:] == ["[1,2,2]", "[2,2,2]"]
