from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from symineq.errors import DivisibilityError, DomainError, ParseError, ResourceLimitError
from symineq.poly import (
    RationalFunction,
    SparsePoly,
    collect_coefficients,
    differentiate,
    exact_divide,
    parse_poly,
    symbolic_h,
    symbolic_h_lambda,
    verify_dh_identity,
)
from symineq.symmetric import complete_h_upto

from oracles import h_brute

VARS = ("x", "y", "z")


def to_sympy(f: SparsePoly):
    syms = sympy.symbols(f.variables) if f.variables else ()
    out = sympy.Integer(0)
    for exps, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s ** e
        out += term
    return sympy.expand(out)


def same(f: SparsePoly, expr) -> bool:
    return sympy.expand(to_sympy(f) - expr) == 0


coeffs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
polys = st.dictionaries(
    st.tuples(*(st.integers(0, 3) for _ in VARS)), coeffs, max_size=6
).map(lambda t: SparsePoly(VARS, t))


class TestArithmetic:
    @settings(max_examples=50, deadline=None)
    @given(polys, polys, polys)
    def test_ring_laws(self, a, b, c):
        zero = SparsePoly.const(0, VARS)
        one = SparsePoly.const(1, VARS)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert (a - a).is_zero()

    @settings(max_examples=40, deadline=None)
    @given(polys, polys, st.integers(0, 3))
    def test_against_sympy(self, a, b, e):
        sa, sb = to_sympy(a), to_sympy(b)
        assert same(a * b, sa * sb)
        assert same(a - b, sa - sb)
        assert same(a ** e, sa ** e)
        assert same(a / 3, sa / 3)

    def test_name_alignment(self):
        x, y = SparsePoly.var("x"), SparsePoly.var("y")
        f = x * y + y
        assert set(f.variables) == {"x", "y"}
        assert f.coefficient({"x": 1, "y": 1}) == 1

    def test_divide_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            SparsePoly.var("x") / 0

    def test_negative_power(self):
        with pytest.raises(DomainError):
            SparsePoly.var("x") ** -1

    def test_hashable(self):
        a = parse_poly("x + y")
        b = parse_poly("y + x")
        assert a == b and hash(a) == hash(b)
        assert len({a, b}) == 1


class TestParsing:
    @pytest.mark.parametrize("text, expected", [
        ("3/4*x^2 y - 2x + 5", "3/4 * x^2 y - 2 * x + 5"),
        ("(x+1)**2", "x^2 + 2 * x + 1"),
        ("2(x - y) / 4", "1/2 * x - 1/2 * y"),
        ("-x", "-x"),
        ("0", "0"),
    ])
    def test_examples(self, text, expected):
        assert str(parse_poly(text)) == expected

    @pytest.mark.parametrize("text", ["x +", "(x", "x / y", "x ^ y", "1/0", "x $ 2"])
    def test_rejects(self, text):
        with pytest.raises((ParseError, ZeroDivisionError)):
            parse_poly(text)

    @settings(max_examples=60, deadline=None)
    @given(polys)
    def test_roundtrip(self, f):
        assert parse_poly(str(f), VARS) == f

    def test_matches_sympy_parse(self):
        text = "(k+1)^3 (l+2) - 7/3 k l^2 + 4"
        k, l = sympy.symbols("k l")
        assert same(parse_poly(text, ("k", "l")), (k + 1) ** 3 * (l + 2) - sympy.Rational(7, 3) * k * l ** 2 + 4)


class TestCalculus:
    @settings(max_examples=40, deadline=None)
    @given(polys, st.sampled_from(VARS))
    def test_derivative(self, f, v):
        assert same(differentiate(f, v), sympy.diff(to_sympy(f), sympy.Symbol(v)))

    @settings(max_examples=40, deadline=None)
    @given(polys)
    def test_collect_roundtrip(self, f):
        cs = collect_coefficients(f, "x")
        x = SparsePoly.var("x")
        rebuilt = SparsePoly.const(0, VARS)
        for i, c in enumerate(cs):
            assert "x" not in c.variables
            rebuilt = rebuilt + c * x ** i
        assert rebuilt == f

    def test_collect_drops_variable(self):
        cs = collect_coefficients(parse_poly("t^2 k + 3 t + l"), "t")
        assert [str(c) for c in cs] == ["l", "3", "k"]
        assert "t" not in cs[2].variables

    @settings(max_examples=40, deadline=None)
    @given(polys, polys.filter(lambda g: not g.is_zero()))
    def test_exact_divide(self, a, b):
        assert exact_divide(a * b, b) == a

    def test_exact_divide_fails(self):
        with pytest.raises(DivisibilityError):
            exact_divide(parse_poly("x^2 + 1"), parse_poly("x - 1"))

    def test_subs(self):
        f = parse_poly("u v + u^2")
        g = f.subs({"u": parse_poly("k + 1"), "v": 2})
        k = sympy.Symbol("k")
        assert same(g, 2 * (k + 1) + (k + 1) ** 2)

    def test_evaluate(self):
        f = parse_poly("3/4*x^2 y - 2x + 5")
        assert f.evaluate({"x": 2, "y": Fraction(1, 3)}) == 2


class TestSymbolicH:
    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("k", range(0, 7))
    def test_matches_numeric(self, n, k):
        f = symbolic_h(n, k)
        pt = [Fraction(2 * i + 1, i + 2) for i in range(n)]
        values = {f"x{i + 1}": c for i, c in enumerate(pt)}
        assert f.evaluate(values) == complete_h_upto(pt, k)[k] == h_brute(pt, k)

    def test_term_count(self):
        # one term per monomial of degree k in n variables
        assert len(symbolic_h(3, 4)) == 15

    def test_resource_limit(self):
        with pytest.raises(ResourceLimitError):
            symbolic_h(7, 2)
        with pytest.raises(ResourceLimitError):
            symbolic_h(2, 9)

    def test_normalized_at_ones(self):
        f = symbolic_h_lambda(3, (2, 2, 1), normalized=True)
        assert f.evaluate({"x1": 1, "x2": 1, "x3": 1}) == 1

    @pytest.mark.parametrize("n", range(1, 5))
    @pytest.mark.parametrize("k", range(1, 6))
    def test_dh_identity(self, n, k):
        for i in range(1, n + 1):
            assert verify_dh_identity(n, k, i)


class TestRationalFunction:
    def test_equality_cross_multiplies(self):
        x = SparsePoly.var("x")
        assert RationalFunction(x * x - 1, x - 1) == RationalFunction(x + 1)
        assert RationalFunction(2 * x, 4) == RationalFunction(x, 2)

    def test_normalized_sign(self):
        x = SparsePoly.var("x")
        r = RationalFunction(x, -4 * x)
        assert r.denominator.constant_value() > 0 or r.denominator.leading_term()[1] > 0

    def test_arithmetic(self):
        x, y = SparsePoly.var("x"), SparsePoly.var("y")
        a = RationalFunction(x, y)
        b = RationalFunction(y, x)
        total = a + b
        assert total.evaluate({"x": 2, "y": 3}) == Fraction(2, 3) + Fraction(3, 2)
        assert (a * b) == RationalFunction(1)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(SparsePoly.var("x"), 0)
