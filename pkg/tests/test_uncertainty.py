from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from msdp.uncertainty import (
    MStruct,
    StructureError,
    StructureGenerator,
    UncertaintyKind,
    check_monad_laws,
    check_nonempty_preservation,
    dyadic_weight_vectors,
    identity,
    m_bind,
    m_equal,
    m_is_not_empty,
    m_join,
    m_map,
    m_pure,
    m_render,
    nondet,
    stoch,
    weight_sum,
)

KINDS = (UncertaintyKind.IDENTITY, UncertaintyKind.NONDET, UncertaintyKind.STOCH)


def distributions(values=st.integers(-3, 3), max_size=4):
    """Exact finite distributions: positive integer masses, normalized."""
    pair = st.tuples(values, st.integers(1, 5))
    return st.lists(pair, min_size=1, max_size=max_size).map(
        lambda ps: stoch([(v, Fraction(m, sum(w for _, w in ps))) for v, m in ps]))


class TestConstructors:
    def test_identity_holds_one_value(self):
        ma = identity(5)
        assert ma.kind is UncertaintyKind.IDENTITY
        assert ma.values == (5,)
        assert ma.weights is None

    def test_identity_rejects_multiple_values(self):
        with pytest.raises(StructureError):
            MStruct(UncertaintyKind.IDENTITY, (1, 2))

    def test_nondet_may_be_empty(self):
        assert nondet([]).values == ()
        assert not m_is_not_empty(nondet([]))

    def test_nondet_keeps_order_and_duplicates(self):
        assert nondet([2, 1, 2]).values == (2, 1, 2)

    def test_stoch_requires_weight_sum_one(self):
        with pytest.raises(StructureError):
            stoch([(1, Fraction(1, 2)), (2, Fraction(1, 3))])

    def test_stoch_rejects_nonpositive_weights(self):
        with pytest.raises(StructureError):
            stoch([(1, Fraction(3, 2)), (2, Fraction(-1, 2))])
        with pytest.raises(StructureError):
            stoch([(1, 1), (2, 0)])

    def test_stoch_rejects_empty(self):
        with pytest.raises(StructureError):
            stoch([])

    def test_stoch_keeps_duplicate_outcomes_separate(self):
        ma = stoch([(1, Fraction(1, 2)), (1, Fraction(1, 2))])
        assert ma.values == (1, 1)
        assert ma.weights == (Fraction(1, 2), Fraction(1, 2))

    def test_stoch_float_weights_within_tolerance(self):
        ma = stoch([(1, 0.1), (2, 0.2), (3, 0.7)])
        assert abs(weight_sum(ma) - 1.0) <= 1e-9

    def test_stoch_float_weights_outside_tolerance(self):
        with pytest.raises(StructureError):
            stoch([(1, 0.5), (2, 0.5001)])


class TestOperations:
    def test_pure_per_kind(self):
        assert m_pure(UncertaintyKind.IDENTITY, 3) == identity(3)
        assert m_pure(UncertaintyKind.NONDET, 3) == nondet([3])
        one = m_pure(UncertaintyKind.STOCH, 3)
        assert one.values == (3,) and one.weights == (1,)

    def test_map_keeps_weights(self):
        ma = stoch([(1, Fraction(1, 4)), (2, Fraction(3, 4))])
        mb = m_map(lambda x: x + 10, ma)
        assert mb.values == (11, 12)
        assert mb.weights == ma.weights

    def test_join_nondet_concatenates_in_order(self):
        mma = nondet([nondet([1, 2]), nondet([]), nondet([3])])
        assert m_join(mma).values == (1, 2, 3)

    def test_join_stoch_multiplies_outer_into_inner(self):
        inner1 = stoch([(1, Fraction(1, 2)), (2, Fraction(1, 2))])
        inner2 = stoch([(3, 1)])
        mma = stoch([(inner1, Fraction(1, 4)), (inner2, Fraction(3, 4))])
        got = m_join(mma)
        assert got.values == (1, 2, 3)
        assert got.weights == (Fraction(1, 8), Fraction(1, 8), Fraction(3, 4))

    def test_join_rejects_mismatched_inner_kind(self):
        with pytest.raises(StructureError):
            m_join(nondet([identity(1)]))

    def test_bind_identity_threads_value(self):
        assert m_bind(identity(4), lambda a: identity(a * 2)) == identity(8)

    def test_render(self):
        assert m_render(identity(7)) == "One(7)"
        assert m_render(nondet([1, 2])) == "[1, 2]"
        assert m_render(stoch([(1, Fraction(1, 2)), (2, Fraction(1, 2))])) \
            == "[(1, 1/2), (2, 1/2)]"

    def test_equal_tolerance_applies_to_floats_only(self):
        a = stoch([(1, 0.5), (2, 0.5)])
        b = stoch([(1, 0.5 + 1e-12), (2, 0.5 - 1e-12)])
        assert m_equal(a, b, tolerance=1e-9)
        assert not m_equal(a, b)


def test_dyadic_weight_vectors_counts():
    assert dyadic_weight_vectors(1) == [(Fraction(1),)]
    assert len(dyadic_weight_vectors(2)) == 3
    assert len(dyadic_weight_vectors(3)) == 3
    for k in (1, 2, 3):
        for vec in dyadic_weight_vectors(k):
            assert sum(vec) == 1
            assert all(w > 0 for w in vec)


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.value)
def test_monad_laws_exhaustive(kind):
    report = check_monad_laws(kind)
    assert report.passed, report.failures()
    names = [c.law for c in report.checks]
    assert names == ["mapPresId", "mapPresComp", "pureNatTrans", "joinNatTrans",
                     "pureNeutralLeft", "pureNeutralRight", "joinAssoc",
                     "bindJoinSpec"]
    assert all(c.mode == "exhaustive" for c in report.checks)


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.value)
def test_nonempty_preservation_exhaustive(kind):
    report = check_nonempty_preservation(kind)
    assert report.passed, report.failures()
    assert [c.law for c in report.checks] == \
        ["pureNotEmpty", "mapPresNotEmpty", "bindPresNotEmpty"]


def test_law_check_reports_first_counterexample():
    # a "pure" that builds an empty structure breaks pureNotEmpty
    gen = StructureGenerator(UncertaintyKind.NONDET)
    report = check_monad_laws(UncertaintyKind.NONDET, gen)
    assert report.check("joinAssoc").counterexample is None
    broken = check_nonempty_preservation(UncertaintyKind.NONDET,
                                         StructureGenerator(UncertaintyKind.NONDET,
                                                            values=()))
    # empty value pool leaves nothing to check; laws hold vacuously
    assert broken.check("pureNotEmpty").cases == 0


@given(distributions())
def test_stoch_map_preserves_total_weight(ma):
    assert weight_sum(m_map(lambda x: x + 1, ma)) == 1


@given(distributions(max_size=3))
def test_stoch_join_preserves_total_weight(mma_inner):
    mma = m_map(lambda v: stoch([(v, Fraction(1, 2)), (v + 1, Fraction(1, 2))]),
                mma_inner)
    assert weight_sum(m_join(mma)) == 1


@given(distributions(max_size=3))
def test_bind_agrees_with_join_of_map(ma):
    # two independently coded routes to the same structure
    f = lambda a: stoch([(a, Fraction(1, 4)), (a - 1, Fraction(3, 4))])
    assert m_equal(m_bind(ma, f), m_join(m_map(f, ma)))


@given(st.lists(st.integers(-5, 5), max_size=5))
def test_bind_agrees_with_join_of_map_nondet(values):
    ma = nondet(values)
    f = lambda a: nondet([a, -a]) if a else nondet([0])
    assert m_equal(m_bind(ma, f), m_join(m_map(f, ma)))
