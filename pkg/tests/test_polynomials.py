import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sosdensity.polynomials import (
    ParseError,
    Polynomial,
    grlex_key,
    parse_polynomial,
    polynomial_from_json,
)

x = Polynomial.variable(2, 0)
y = Polynomial.variable(2, 1)


class TestConstruction:
    def test_zero_merging_and_degree(self):
        p = Polynomial(2, {(1, 0): 1, (0, 0): Fraction(1, 2)})
        q = p + Polynomial(2, {(1, 0): -1})
        assert q.terms == {(0, 0): Fraction(1, 2)}
        assert q.degree == 0
        assert (p - p).is_zero()

    def test_duplicate_exponents_accumulate(self):
        # dict literals can't carry duplicates, but ints and Fractions merge
        p = Polynomial(1, {(2,): "1/3"})
        assert p.coefficient((2,)) == Fraction(1, 3)

    def test_immutable(self):
        with pytest.raises(AttributeError):
            x.degree = 5

    def test_validation(self):
        with pytest.raises(ValueError):
            Polynomial(0, {})
        with pytest.raises(ValueError):
            Polynomial(2, {(1,): 1})
        with pytest.raises(ValueError):
            Polynomial(1, {(-1,): 1})
        with pytest.raises(ValueError):
            Polynomial.variable(2, 2)


class TestArithmetic:
    def test_ring_identities(self):
        p = x * x + 2 * y - 3
        q = y * y - x
        assert (p + q) - q == p
        assert p * q == q * p
        assert p * (q + 1) == p * q + p
        assert (-p) + p == Polynomial.zero(2)

    def test_pow(self):
        p = (x + y) ** 3
        assert p.coefficient((2, 1)) == 3
        assert p.coefficient((0, 3)) == 1
        assert (x + y) ** 0 == Polynomial.constant(2, 1)
        with pytest.raises(ValueError):
            (x + y) ** -1

    def test_scalar_ops(self):
        p = Fraction(1, 2) * x + 1
        assert p.evaluate([3.0, 0.0]) == 2.5
        assert (1 - x).coefficient((0, 0)) == 1


class TestEvaluation:
    def test_float_vs_exact(self):
        p = x**3 * y - 7 * y + Fraction(2, 3)
        pt = [Fraction(1, 2), Fraction(3, 4)]
        assert p.evaluate_exact(pt) == Fraction(1, 8) * Fraction(3, 4) - 7 * Fraction(3, 4) + Fraction(2, 3)
        assert abs(p.evaluate([0.5, 0.75]) - float(p.evaluate_exact(pt))) < 1e-15

    def test_callable(self):
        assert (x + y)([1.0, 2.0]) == 3.0

    def test_length_check(self):
        with pytest.raises(ValueError):
            x.evaluate([1.0])


class TestCalculus:
    def test_partial_antiderivative_roundtrip(self):
        p = x**3 * y**2 + 5 * x
        assert p.antiderivative(0).partial(0) == p
        assert p.partial(1) == 2 * x**3 * y

    def test_definite_integrate_constant_bounds(self):
        p = x * y
        lo = Polynomial.constant(2, 0)
        hi = Polynomial.constant(2, 1)
        q = p.definite_integrate(1, lo, hi)  # integral of x*y dy on [0,1] = x/2
        assert q == Fraction(1, 2) * x

    def test_definite_integrate_polynomial_bound(self):
        # integral of 1 dy from 0 to 1-x
        one = Polynomial.constant(2, 1)
        q = one.definite_integrate(1, Polynomial.constant(2, 0), 1 - x)
        assert q == 1 - x

    def test_bound_must_not_involve_variable(self):
        with pytest.raises(ValueError):
            (x * y).definite_integrate(1, Polynomial.constant(2, 0), y)

    def test_substitute_affine(self):
        p = x**2 + y
        q = p.substitute_affine([Fraction(1, 2), 2], [1, -1])  # x -> z/2+1, y -> 2w-1
        assert q.evaluate([2.0, 3.0]) == p.evaluate([2.0, 5.0])
        with pytest.raises(ValueError):
            p.substitute_affine([0, 1], [0, 0])


class TestParser:
    def test_catalog_style_expression(self):
        p = parse_polynomial("2*x1^2 - 1.05*x1^4 + x1^6/6 + x1*x2 + x2^2", 2)
        assert p.coefficient((4, 0)) == Fraction(-21, 20)
        assert p.coefficient((6, 0)) == Fraction(1, 6)
        assert p.degree == 6

    def test_decimal_literals_exact(self):
        p = parse_polynomial("0.26*x1 - 0.48", 1)
        assert p.coefficient((1,)) == Fraction(26, 100)
        assert p.constant_term() == Fraction(-48, 100)

    def test_parentheses_and_unary_minus(self):
        p = parse_polynomial("-(x1 - 2)^2", 1)
        assert p == -(Polynomial.variable(1, 0) - 2) ** 2

    def test_division_chains(self):
        assert parse_polynomial("x1/2/3", 1).coefficient((1,)) == Fraction(1, 6)

    @pytest.mark.parametrize(
        "bad",
        ["x1/x2", "1/0", "x1/(x2+1)", "x3", "x1^-1", "x1^2.5", "x1 +", "(x1", "x1 $ 2"],
    )
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_polynomial(bad, 2)

    def test_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_polynomial("x1 + x9", 2)
        assert "position" in str(exc.value)


class TestSerialization:
    def test_json_roundtrip(self):
        p = parse_polynomial("1.05*x1^2 - x2/3 + 7", 2)
        assert polynomial_from_json(json.dumps(p.to_json())) == p

    def test_str_grlex_order(self):
        p = y**2 + x + 1
        assert str(p) == "1 + x1 + x2^2"
        assert str(Polynomial.zero(2)) == "0"

    def test_grlex_key(self):
        exps = [(0, 2), (1, 0), (2, 0), (0, 0), (1, 1)]
        assert sorted(exps, key=grlex_key) == [(0, 0), (1, 0), (0, 2), (1, 1), (2, 0)]


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.tuples(st.integers(0, 4), st.integers(0, 4)),
            st.fractions(min_value=-5, max_value=5),
        ),
        max_size=6,
    ),
    st.tuples(st.fractions(min_value=-2, max_value=2), st.fractions(min_value=-2, max_value=2)),
)
def test_product_evaluation_homomorphism(terms, pt):
    p = Polynomial(2, dict())
    for exp, c in terms:
        p = p + Polynomial.monomial(2, exp, c)
    q = p * p - p + 3
    lhs = q.evaluate_exact(pt)
    v = p.evaluate_exact(pt)
    assert lhs == v * v - v + 3
