import random
from fractions import Fraction

import pytest

from symineq.certificates import (
    BASE_QUOTIENT_COEFFS,
    BASE_SCALE,
    base_case,
    boundary_identity,
    breve_J,
    build_d8_certificate,
    default_d8_certificate,
    expand_J2,
    hat_J,
    lagrange_quadratic_check,
    load_appendix,
    odd_reduction_identity,
    profile_J,
    ratio_step_identity,
    t_derivative_identity,
    t_monotone,
    t_ratio,
    verify_appendix_coeffs,
)
from symineq.errors import CertificateError, DomainError
from symineq.poly import SparsePoly, collect_coefficients, parse_poly
from symineq.symmetric import random_point

from conftest import P
from oracles import H_brute


def J_brute(x):
    return H_brute(x, (2, 2, 2, 2)) - H_brute(x, (3, 1, 1, 1, 1, 1))


@pytest.fixture(scope="module")
def jbreve():
    return breve_J()[1]


@pytest.fixture(scope="module")
def cs(jbreve):
    return [c.with_variables(("k", "l")) for c in collect_coefficients(jbreve, "t")]


class TestBaseCase:
    def test_quotient(self):
        j2, quotient = expand_J2()
        assert tuple(BASE_SCALE * quotient.coefficient({"x1": 6 - j, "x2": j}) for j in range(7)) \
            == (47, 120, 177, 176, 177, 120, 47)
        x1, x2 = SparsePoly.var("x1"), SparsePoly.var("x2")
        assert j2 == (x1 - x2) ** 2 * quotient

    def test_record(self):
        bc = base_case()
        assert bc.ok and bc.j1_is_zero
        assert bc.quotient_coeffs == BASE_QUOTIENT_COEFFS

    def test_j2_matches_oracle(self):
        j2, _ = expand_J2()
        for x in [(1, 2), (Fraction(1, 3), 5), (0, 1)]:
            assert j2.evaluate({"x1": x[0], "x2": x[1]}) == J_brute(x)


class TestInterior:
    def test_profile_matches_oracle(self):
        J = profile_J()
        for t, u, v in [(2, 1, 2), (Fraction(1, 3), 2, 2), (5, 3, 1)]:
            pt = [t] * u + [1] * v
            assert J.evaluate({"t": t, "u": u, "v": v}) == J_brute(pt)

    def test_factorization(self, jbreve):
        J = profile_J()
        hat = hat_J()
        for t, k, l in [(3, 0, 0), (Fraction(1, 2), 2, 1), (7, 1, 4)]:
            u, v = k + 1, l + 1
            prod = hat.evaluate({"t": t, "u": u, "v": v}) * jbreve.evaluate({"t": t, "k": k, "l": l})
            assert prod == J.evaluate({"t": t, "u": u, "v": v})

    def test_degree_six(self, cs):
        assert len(cs) == 7

    def test_leading_constant(self, cs):
        assert cs[6].coefficient({}) == 94

    def test_positive_coefficients(self, cs):
        for c in cs:
            assert c.coefficient({}) > 0
            assert all(coeff > 0 for coeff in c.terms.values())

    def test_palindromic_symmetry(self, cs):
        # t^6 breve(1/t) with u and v swapped gives breve back
        for i in range(7):
            assert cs[i] == cs[6 - i].subs({"k": SparsePoly.var("l"), "l": SparsePoly.var("k")})

    def test_hat_vanishes_on_degenerate_profiles(self):
        hat = hat_J()
        J = profile_J()
        for t in (2, Fraction(1, 5)):
            assert hat.evaluate({"t": t, "u": 0, "v": 3}) == 0
            assert J.evaluate({"t": t, "u": 0, "v": 3}) == 0
            assert hat.evaluate({"t": t, "u": 3, "v": 0}) == 0
            assert J.evaluate({"t": t, "u": 3, "v": 0}) == 0

    def test_appendix_matches(self, jbreve):
        rec = verify_appendix_coeffs(jbreve)
        assert rec.ok and len(rec.c_polys) == 7

    def test_tampered_appendix_names_index(self, jbreve):
        appendix = load_appendix()
        appendix[3] = appendix[3] + parse_poly("k l", ("k", "l"))
        with pytest.raises(CertificateError) as info:
            verify_appendix_coeffs(jbreve, appendix)
        assert info.value.index == 3
        assert info.value.monomial == "k l"

    def test_negative_monomial_detected(self, jbreve):
        bad = jbreve - parse_poly("1000000 t^2 k", ("t", "k", "l"))
        with pytest.raises(CertificateError) as info:
            verify_appendix_coeffs(bad)
        assert info.value.index == 2
        assert info.value.monomial == "k"

    def test_appendix_parse_errors(self):
        with pytest.raises(CertificateError):
            load_appendix("c0 = 1\nc1 = 2\n")
        with pytest.raises(CertificateError):
            load_appendix("nonsense\n")


class TestBoundary:
    @pytest.mark.parametrize("n, value", [(1, 1), (2, Fraction(128, 81)), (3, Fraction(15, 8))])
    def test_values(self, n, value):
        assert t_ratio(n).value == value

    def test_domain(self):
        with pytest.raises(DomainError):
            t_ratio(0)

    def test_monotone(self):
        rec = t_monotone(3, 200)
        assert rec.ok and len(rec.increments) == 198
        assert all(d > 0 for d in rec.increments)

    def test_binomial_form(self):
        # T(2) = C(4,3) 2^5 / C(3,2)^4
        assert t_ratio(2).value == Fraction(4 * 32, 81)
        assert t_ratio(1).value < t_ratio(2).value < t_ratio(3).value

    def test_derivative(self):
        assert t_derivative_identity()

    @pytest.mark.parametrize("n, p, side", [
        (3, (Fraction(1, 2), Fraction(1, 2), 0), Fraction(191, 2048)),
        (4, (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 0), Fraction(2532893, 65536000)),
    ])
    def test_boundary_identity_frozen(self, n, p, side):
        assert boundary_identity(n, p) == (side, side)

    def test_boundary_identity_needs_zero(self):
        with pytest.raises(DomainError):
            boundary_identity(3, (1, 1, 1))


class TestDegreeExtension:
    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("m", [5, 6, 7])
    def test_symbolic(self, n, m):
        assert ratio_step_identity(n, m, mode="symbolic", samples=10)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_sampled(self, n):
        assert ratio_step_identity(n, 6, mode="sampled", samples=50, seed=n)

    def test_rejects(self):
        with pytest.raises(DomainError):
            ratio_step_identity(2, 4)
        with pytest.raises(DomainError):
            ratio_step_identity(5, 5, mode="symbolic")
        with pytest.raises(DomainError):
            ratio_step_identity(2, 5, mode="bogus")

    @pytest.mark.parametrize("n", range(1, 5))
    def test_odd_reduction(self, n):
        assert odd_reduction_identity(n, 4, samples=30, seed=n)


class TestLagrange:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_quadratic(self, n):
        rng = random.Random(n)
        for _ in range(5):
            assert lagrange_quadratic_check(n, random_point(rng, n))

    def test_domain(self):
        with pytest.raises(DomainError):
            lagrange_quadratic_check(5, [1] * 5)


class TestAssembled:
    def test_default_valid(self):
        cert = default_d8_certificate()
        assert cert.valid
        d = cert.to_dict()
        assert d["valid"] and [s["name"] for s in d["steps"]] == ["base_case", "interior", "boundary"]
        assert all(s["status"] == "pass" for s in d["steps"])

    def test_tampered_reports_failure(self):
        appendix = load_appendix()
        appendix[3] = appendix[3] * 2
        cert = build_d8_certificate(appendix=appendix)
        assert not cert.valid
        assert cert.failure.index == 3
        failing = [s for s in cert.to_dict()["steps"] if s["status"] == "fail"]
        assert failing and failing[0]["name"] == "interior"

    def test_json_deterministic(self):
        assert build_d8_certificate().to_json() == default_d8_certificate().to_json()
