from fractions import Fraction

import pytest

from msdp.algebra import (
    AlgebraError,
    check_plus_mon,
    check_total_preorder,
    coerce,
    make_algebra,
    values_equal,
)


def test_coerce_int_accepts_exact_values():
    assert coerce("int", 3) == 3
    assert coerce("int", "12") == 12
    assert coerce("int", 4.0) == 4


def test_coerce_int_rejects_fractional():
    with pytest.raises(ValueError):
        coerce("int", 2.5)
    with pytest.raises(ValueError):
        coerce("int", "3/4")


def test_coerce_rational_reads_strings():
    assert coerce("rational", "3/4") == Fraction(3, 4)
    assert coerce("rational", "0.25") == Fraction(1, 4)
    assert coerce("rational", 2) == Fraction(2)


def test_coerce_rational_rejects_float_literals():
    with pytest.raises(ValueError, match="write it as a string"):
        coerce("rational", 0.1)


def test_coerce_float_goes_through_exact_parse():
    # "0.1" parses exactly, then converts once
    assert coerce("float", "0.1") == 0.1
    assert coerce("float", 3) == 3.0


def test_make_algebra_defaults():
    alg = make_algebra("int")
    assert alg.plus(2, 3) == 5
    assert alg.zero == 0
    assert alg.eq_tolerance == 0.0
    assert alg.leq(1, 2) and not alg.leq(2, 1)


def test_make_algebra_float_default_tolerance():
    assert make_algebra("float").eq_tolerance == 1e-9


def test_make_algebra_rejects_tolerance_on_exact_carriers():
    with pytest.raises(AlgebraError):
        make_algebra("rational", eq_tolerance=1e-9)


def test_make_algebra_unknown_carrier_and_plus():
    with pytest.raises(AlgebraError):
        make_algebra("decimal")
    with pytest.raises(AlgebraError):
        make_algebra("int", plus="sub")


def test_make_algebra_mul_plus():
    alg = make_algebra("rational", plus="mul", zero=1)
    assert alg.plus(Fraction(1, 2), Fraction(2, 3)) == Fraction(1, 3)
    assert alg.zero == 1


def test_values_equal_tolerance():
    alg = make_algebra("float")
    assert values_equal(alg, 0.1 + 0.2, 0.3)
    assert not values_equal(make_algebra("rational"), Fraction(1, 3), Fraction(1, 3) + Fraction(1, 10**12))


def test_total_preorder_holds_on_int_grid():
    report = check_total_preorder(make_algebra("int"), samples=range(4))
    assert report.passed
    assert [c.law for c in report.checks] == ["leqReflexive", "leqTransitive", "leqTotal"]


def test_total_preorder_catches_partial_order():
    # divisibility is not total on {2, 3}
    alg = make_algebra("int", leq=lambda a, b: b % a == 0)
    report = check_total_preorder(alg, samples=(2, 3))
    assert not report.check("leqTotal").passed


def test_plus_mon_holds_for_addition():
    report = check_plus_mon(make_algebra("int"), samples=range(4))
    assert report.passed
    assert report.check("plusMonSpec").cases == 256


def test_plus_mon_fails_for_subtraction():
    alg = make_algebra("int", plus=lambda a, b: a - b)
    report = check_plus_mon(alg, samples=range(3))
    check = report.check("plusMonSpec")
    assert not check.passed
    ce = check.counterexample
    assert alg.leq(ce["v1"], ce["v2"]) and alg.leq(ce["v3"], ce["v4"])
    assert not alg.leq(ce["lhs"], ce["rhs"])
