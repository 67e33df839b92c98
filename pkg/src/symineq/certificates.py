"""Exact certificate that H_{n,(2^4)} >= H_{n,(3,1^5)} for every n, and the
identities that lift it to higher degree.

The argument has three parts, each checked mechanically here:

* base case n = 2: J_2 factors as (x1 - x2)^2 times a sextic with positive
  coefficients;
* interior minimizers: on two-value profiles (t^u, 1^v) the difference
  splits as a nonnegative factor times a sextic in t whose coefficients
  c_0..c_6 are polynomials in (k, l) = (u - 1, v - 1) with positive
  coefficients;
* boundary minimizers: the ratio T(n) of normalization constants is
  increasing, which carries J_{n-1} >= 0 over to J_n on the boundary.

Every polynomial computation is exact over Q.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import CertificateError, DivisibilityError, DomainError, ParseError
from .poly import (
    RationalFunction,
    SparsePoly,
    collect_coefficients,
    differentiate,
    exact_divide,
    parse_poly,
    symbolic_h,
)
from .symmetric import EvalPoint, complete_h_upto, format_rational, random_point

__all__ = [
    "BASE_SCALE",
    "BASE_QUOTIENT_COEFFS",
    "BaseCase",
    "InteriorRecord",
    "BoundaryRecord",
    "D8Certificate",
    "TRatio",
    "expand_J2",
    "base_case",
    "jn_in_power_sums",
    "breve_J",
    "hat_J",
    "load_appendix",
    "verify_appendix_coeffs",
    "t_ratio",
    "t_monotone",
    "t_derivative_identity",
    "ratio_step_identity",
    "odd_reduction_identity",
    "lagrange_quadratic_check",
    "boundary_identity",
    "default_d8_certificate",
    "build_d8_certificate",
]

BASE_SCALE = 10368
BASE_QUOTIENT_COEFFS = (47, 120, 177, 176, 177, 120, 47)

_X2 = ("x1", "x2")
_P_VARS = ("p1", "p2", "p3", "n")


# -- helpers -------------------------------------------------------------------


def _binom_poly(top: SparsePoly, k: int) -> SparsePoly:
    """C(top, k) as a polynomial in whatever ``top`` is written in."""
    out = SparsePoly.const(1, top.variables)
    for j in range(k):
        out = out * (top - j)
    return out / math.factorial(k)


def _norm_const(n: int, parts: Sequence[int]) -> int:
    return math.prod(math.comb(n + p - 1, p) for p in parts)


def _symbolic_J(n: int) -> SparsePoly:
    """J_n = H_{n,(2^4)} - H_{n,(3,1^5)} expanded in x1..xn."""
    h1, h2, h3 = (symbolic_h(n, k) for k in (1, 2, 3))
    return h2 ** 4 / _norm_const(n, (2,) * 4) - h3 * h1 ** 5 / _norm_const(n, (3,) + (1,) * 5)


def _J_value(n: int, x: Sequence[Fraction]) -> Fraction:
    h = complete_h_upto(EvalPoint(x, identity_mode=True), 3)
    return (h[2] ** 4 / _norm_const(n, (2,) * 4)
            - h[3] * h[1] ** 5 / _norm_const(n, (3,) + (1,) * 5))


# -- base case -------------------------------------------------------------------


@dataclass(frozen=True)
class BaseCase:
    quotient_coeffs: Tuple[int, ...]
    scale: int
    j1_is_zero: bool

    @property
    def ok(self) -> bool:
        return (self.scale == BASE_SCALE
                and self.quotient_coeffs == BASE_QUOTIENT_COEFFS
                and self.j1_is_zero)


def expand_J2() -> Tuple[SparsePoly, SparsePoly]:
    """Return ``(J_2, P)`` with ``J_2 = (x1 - x2)^2 * P``.

    Raises CertificateError if the quotient does not have the expected
    coefficient vector once scaled by 10368.
    """
    j2 = _symbolic_J(2)
    square = (SparsePoly.var("x1") - SparsePoly.var("x2")) ** 2
    try:
        quotient = exact_divide(j2, square).with_variables(_X2)
    except DivisibilityError as exc:
        raise CertificateError("base_case", f"(x1 - x2)^2 does not divide J_2: {exc}") from exc
    coeffs = tuple(BASE_SCALE * quotient.coefficient({"x1": 6 - j, "x2": j}) for j in range(7))
    if len(quotient) != 7 or coeffs != BASE_QUOTIENT_COEFFS:
        raise CertificateError(
            "base_case",
            f"{BASE_SCALE} * P has coefficients {tuple(map(str, coeffs))}, "
            f"expected {BASE_QUOTIENT_COEFFS}",
        )
    return j2, quotient


def base_case() -> BaseCase:
    _, quotient = expand_J2()
    coeffs = tuple(int(BASE_SCALE * quotient.coefficient({"x1": 6 - j, "x2": j}))
                   for j in range(7))
    return BaseCase(coeffs, BASE_SCALE, _symbolic_J(1).is_zero())


# -- interior: two-value profiles ----------------------------------------------------


def jn_in_power_sums() -> RationalFunction:
    """J_n as a rational function of p1, p2, p3 and n.

    h_2 and h_3 come from the Newton recurrence k h_k = sum h_{k-i} p_i, and
    the binomial normalizations are expanded as polynomials in n.
    """
    p1, p2, p3, n = (SparsePoly.var(v).with_variables(_P_VARS) for v in _P_VARS)
    h1 = p1
    h2 = (h1 * p1 + p2) / 2
    h3 = (h2 * p1 + h1 * p2 + p3) / 3
    first = RationalFunction(h2 ** 4, _binom_poly(n + 1, 2) ** 4)
    second = RationalFunction(h3 * h1 ** 5, _binom_poly(n + 2, 3) * n ** 5)
    return first - second


def hat_J() -> RationalFunction:
    """The nonnegative factor u v (t-1)^2 / ((u+v+2)(u+v+1)^4 (u+v)^6)."""
    t, u, v = (SparsePoly.var(s) for s in "tuv")
    s = u + v
    return RationalFunction(u * v * (t - 1) ** 2, (s + 2) * (s + 1) ** 4 * s ** 6)


def profile_J() -> RationalFunction:
    """J_n(t^u, 1^v) as a rational function of t, u, v."""
    t, u, v = (SparsePoly.var(s) for s in "tuv")
    images = {f"p{i}": u * t ** i + v for i in (1, 2, 3)}
    images["n"] = u + v
    return jn_in_power_sums().subs(images)


@lru_cache(maxsize=2)
def _breve_uv() -> SparsePoly:
    J = profile_J()
    hat = hat_J()
    # J = hat * breve  <=>  J.num * hat.den = J.den * hat.num * breve
    try:
        breve = exact_divide(J.numerator * hat.denominator, J.denominator * hat.numerator)
    except DivisibilityError as exc:
        raise CertificateError("interior", f"the claimed factor does not split off: {exc}") from exc
    return breve.with_variables(("t", "u", "v"))


def breve_J(shifted: bool = True) -> Tuple[RationalFunction, SparsePoly]:
    """Return ``(hat_J, breve_J)``.

    ``breve_J`` is a polynomial in t, u, v; with ``shifted`` (the default) it
    is rewritten through u = k + 1, v = l + 1 as a polynomial in t, k, l.
    """
    breve = _breve_uv()
    if shifted:
        k, l = SparsePoly.var("k"), SparsePoly.var("l")
        breve = breve.subs({"u": k + 1, "v": l + 1}).with_variables(("t", "k", "l"))
    return hat_J(), breve


def load_appendix(text: Optional[str] = None) -> Dict[int, SparsePoly]:
    """Parse the literal c_0..c_6 expressions into expanded polynomials in (k, l).

    ``text`` overrides the bundled data file.
    """
    if text is None:
        text = resources.files("symineq.data").joinpath("appendix_c.txt").read_text()
    logical: List[str] = []
    buf = ""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if line.endswith("\\"):
            buf += line[:-1] + " "
            continue
        buf += line
        if buf.strip():
            logical.append(buf)
        buf = ""
    if buf.strip():
        logical.append(buf)
    out: Dict[int, SparsePoly] = {}
    for line in logical:
        name, sep, expr = line.partition("=")
        name = name.strip()
        if not sep or not name.startswith("c") or not name[1:].isdigit():
            raise CertificateError("interior", f"bad appendix line: {line.strip()!r}")
        try:
            out[int(name[1:])] = parse_poly(expr, ("k", "l"))
        except ParseError as exc:
            raise CertificateError("interior", f"cannot parse {name}: {exc}",
                                   index=int(name[1:])) from exc
    if sorted(out) != list(range(7)):
        raise CertificateError("interior", f"appendix defines {sorted(out)}, expected c0..c6")
    return out


@dataclass
class InteriorRecord:
    c_polys: List[SparsePoly]
    all_monomials_positive: bool
    appendix_match: bool

    @property
    def ok(self) -> bool:
        return len(self.c_polys) == 7 and self.all_monomials_positive and self.appendix_match


def verify_appendix_coeffs(jbreve: SparsePoly,
                           appendix: Optional[Dict[int, SparsePoly]] = None) -> InteriorRecord:
    """Extract c_0..c_6 from ``jbreve`` and check them.

    Each c_i must have only strictly positive coefficients with a nonzero
    constant term (so c_i > 0 for k, l >= 0) and must equal the literal
    expression.  The first failing index raises CertificateError.
    """
    if appendix is None:
        appendix = load_appendix()
    cs = [c.with_variables(("k", "l")) for c in collect_coefficients(jbreve, "t")]
    if len(cs) != 7:
        raise CertificateError("interior", f"residual has degree {len(cs) - 1} in t, expected 6")
    for i, c in enumerate(cs):
        for exps, coeff in c.sorted_terms():
            if coeff <= 0:
                raise CertificateError(
                    "interior", f"c{i} has nonpositive coefficient {coeff} on {c.monomial_str(exps)}",
                    index=i, monomial=c.monomial_str(exps),
                )
        if c.coefficient({}) <= 0:
            raise CertificateError("interior", f"c{i} has no positive constant term",
                                   index=i, monomial="1")
        if c != appendix[i]:
            diff = c - appendix[i]
            exps, coeff = diff.leading_term()
            raise CertificateError(
                "interior",
                f"c{i} differs from the literal expression (difference {diff})",
                index=i, monomial=diff.monomial_str(exps),
            )
    return InteriorRecord(cs, True, True)


# -- boundary: the ratio T(n) ---------------------------------------------------------


@dataclass(frozen=True)
class TRatio:
    n: int
    value: Fraction


def t_ratio(n: int) -> TRatio:
    """T(n) = C(n+2,3) n^5 / C(n+1,2)^4, cross-checked against (8/3)(n^3+2n^2)/(n+1)^3."""
    if n < 1:
        raise DomainError(f"T(n) needs n >= 1, got {n}")
    binomial_form = Fraction(math.comb(n + 2, 3) * n ** 5, math.comb(n + 1, 2) ** 4)
    closed_form = Fraction(8, 3) * Fraction(n ** 3 + 2 * n ** 2, (n + 1) ** 3)
    if binomial_form != closed_form:
        raise CertificateError("boundary", f"T({n}) closed forms disagree: "
                               f"{binomial_form} vs {closed_form}")
    return TRatio(n, binomial_form)


def t_derivative_identity() -> bool:
    """d/dn of (8/3)(n^3+2n^2)/(n+1)^3 equals (8/3) n (n+4) / (n+1)^4."""
    n = SparsePoly.var("n")
    num = (n ** 3 + 2 * n ** 2) * Fraction(8, 3)
    den = (n + 1) ** 3
    deriv = RationalFunction(differentiate(num, "n") * den - num * differentiate(den, "n"), den ** 2)
    return deriv == RationalFunction(n * (n + 4) * Fraction(8, 3), (n + 1) ** 4)


@dataclass
class BoundaryRecord:
    t_values_checked: Tuple[int, int]
    monotone: bool
    derivative_identity: bool
    increments: List[Fraction] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return self.monotone and self.derivative_identity


def t_monotone(start: int = 3, stop: int = 200) -> BoundaryRecord:
    """Check T(n) > T(n-1) exactly for start <= n <= stop."""
    if start < 2 or stop < start:
        raise DomainError(f"bad range {start}..{stop}")
    increments = []
    prev = t_ratio(start - 1).value
    for n in range(start, stop + 1):
        cur = t_ratio(n).value
        if cur <= prev:
            raise CertificateError("boundary", f"T({n}) = {cur} is not above T({n - 1}) = {prev}")
        increments.append(cur - prev)
        prev = cur
    return BoundaryRecord((start, stop), True, t_derivative_identity(), increments)


# -- degree extension -----------------------------------------------------------------


def _H_sym(h: Dict[int, SparsePoly], n: int, parts: Sequence[int]) -> SparsePoly:
    out = SparsePoly.const(1, h[1].variables)
    for p in parts:
        out = out * h[p]
    return out / _norm_const(n, parts)


def _H_val(h: Sequence[Fraction], n: int, parts: Sequence[int]) -> Fraction:
    return math.prod((h[p] for p in parts), start=Fraction(1)) / _norm_const(n, parts)


def _step_parts(m: int):
    return ((2,) * m, (3,) + (1,) * (2 * m - 3), (2,) * (m - 1), (3,) + (1,) * (2 * m - 5))


def ratio_step_identity(n: int, m: int, mode: str = "symbolic",
                        samples: int = 100, seed: int = 0) -> bool:
    """Check F_{n,m} / F_{n,m-1} = H_{n,(2)} / H_{n,(1,1)} and H_{n,(2)} >= H_{n,(1,1)}.

    ``F_{n,m}`` is H_{n,(2^m)} / H_{n,(3,1^{2m-3})}.  The identity is checked
    in cross-multiplied form, symbolically in x1..xn (``mode="symbolic"``,
    n <= 4) or at seeded rational points (``mode="sampled"``).  The
    inequality is always checked at seeded nonnegative points.  Returns True
    or raises CertificateError.
    """
    if m < 5:
        raise DomainError(f"the step identity relates m and m-1 for m >= 5, got {m}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    two_m, lam_m, two_prev, lam_prev = _step_parts(m)
    if mode == "symbolic":
        if n > 4:
            raise DomainError("symbolic mode is limited to n <= 4; use mode='sampled'")
        h = {k: symbolic_h(n, k) for k in (1, 2, 3)}
        lhs = _H_sym(h, n, two_m) * _H_sym(h, n, lam_prev) * _H_sym(h, n, (1, 1))
        rhs = _H_sym(h, n, two_prev) * _H_sym(h, n, lam_m) * _H_sym(h, n, (2,))
        if lhs != rhs:
            raise CertificateError("ratio_step", f"symbolic identity fails for n={n}, m={m}")
    elif mode != "sampled":
        raise DomainError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    for idx in range(samples):
        pt = random_point(rng, n, zeros=rng.randint(0, n - 1) if idx % 2 else 0)
        h = complete_h_upto(pt, 3)
        if mode == "sampled":
            lhs = _H_val(h, n, two_m) * _H_val(h, n, lam_prev) * _H_val(h, n, (1, 1))
            rhs = _H_val(h, n, two_prev) * _H_val(h, n, lam_m) * _H_val(h, n, (2,))
            if lhs != rhs:
                raise CertificateError("ratio_step", f"identity fails at {pt} for n={n}, m={m}")
        if _H_val(h, n, (2,)) < _H_val(h, n, (1, 1)):
            raise CertificateError("ratio_step", f"H_(2) < H_(1,1) at {pt}")
    return True


def odd_reduction_identity(n: int, m: int, samples: int = 100, seed: int = 0) -> bool:
    """Check H_{(2^m,1)} / H_{(3,1^{2m-2})} = H_{(2^m)} / H_{(3,1^{2m-3})} at seeded points."""
    if m < 4:
        raise DomainError(f"the odd reduction needs m >= 4, got {m}")
    rng = random.Random(seed)
    for _ in range(samples):
        pt = random_point(rng, n)
        h = complete_h_upto(pt, 3)
        lhs = _H_val(h, n, (2,) * m + (1,)) * _H_val(h, n, (3,) + (1,) * (2 * m - 3))
        rhs = _H_val(h, n, (2,) * m) * _H_val(h, n, (3,) + (1,) * (2 * m - 2))
        if lhs != rhs:
            raise CertificateError("odd_reduction", f"identity fails at {pt} for n={n}, m={m}")
    return True


# -- stationarity structure ------------------------------------------------------------


def lagrange_quadratic_check(n: int, x: Sequence) -> bool:
    """Check dJ_n/dx_i = a x_i^2 + b x_i + c~ at ``x`` for every i.

    a, b, c~ depend on the point only through h_1, h_2, h_3 (c~ is the
    multiplier-free part of the constant term), so every partial derivative
    lies on one quadratic in its own coordinate.  The derivatives come from
    symbolic differentiation of the expanded J_n, which keeps the two sides
    independent.
    """
    if n < 2 or n > 4:
        raise DomainError(f"symbolic check supports 2 <= n <= 4, got {n}")
    x = [Fraction(c) for c in x]
    if len(x) != n:
        raise DomainError(f"point has {len(x)} coordinates, expected {n}")
    J = _symbolic_J(n)
    values = {f"x{i + 1}": c for i, c in enumerate(x)}
    h = complete_h_upto(EvalPoint(x, identity_mode=True), 3)
    k1 = math.comb(n + 1, 2) ** 4
    k2 = math.comb(n + 2, 3) * n ** 5
    a = -h[1] ** 5 / k2
    b = 4 * h[2] ** 3 / k1 - h[1] ** 6 / k2
    c = 4 * h[2] ** 3 * h[1] / k1 - (h[2] * h[1] ** 5 + 5 * h[3] * h[1] ** 4) / k2
    for i in range(n):
        grad = differentiate(J, f"x{i + 1}").evaluate(values)
        if grad != a * x[i] ** 2 + b * x[i] + c:
            return False
    return True


def boundary_identity(n: int, p: Sequence) -> Tuple[Fraction, Fraction]:
    """Both sides of k1 J_n(p) - k2 J_{n-1}(p~) = (T(n) - T(n-1)) h_{n,(2^4)}(p)."""
    p = [Fraction(c) for c in p]
    if n < 3 or len(p) != n:
        raise DomainError(f"need n >= 3 and a point of length n, got n={n}, len={len(p)}")
    if p[-1] != 0:
        raise DomainError("the boundary identity needs the last coordinate to be 0")
    k1 = math.comb(n + 2, 3) * n ** 5
    k2 = math.comb(n + 1, 3) * (n - 1) ** 5
    lhs = k1 * _J_value(n, p) - k2 * _J_value(n - 1, p[:-1])
    h2 = complete_h_upto(EvalPoint(p, identity_mode=True), 2)[2]
    rhs = (t_ratio(n).value - t_ratio(n - 1).value) * h2 ** 4
    return lhs, rhs


# -- assembled certificate ---------------------------------------------------------------


CLAIM = "H_{n,(2^4)} >= H_{n,(3,1^5)} on [0,inf)^n for every n >= 1"


@dataclass
class D8Certificate:
    base_case: Optional[BaseCase] = None
    interior: Optional[InteriorRecord] = None
    boundary: Optional[BoundaryRecord] = None
    failure: Optional[CertificateError] = None

    @property
    def valid(self) -> bool:
        return (self.failure is None
                and self.base_case is not None and self.base_case.ok
                and self.interior is not None and self.interior.ok
                and self.boundary is not None and self.boundary.ok)

    def steps(self) -> List[dict]:
        out = []
        if self.base_case is not None:
            out.append({
                "name": "base_case",
                "status": "pass" if self.base_case.ok else "fail",
                "evidence": {
                    "scale": str(self.base_case.scale),
                    "quotient_coeffs": [str(c) for c in self.base_case.quotient_coeffs],
                    "j1_is_zero": self.base_case.j1_is_zero,
                },
            })
        if self.interior is not None:
            out.append({
                "name": "interior",
                "status": "pass" if self.interior.ok else "fail",
                "evidence": {
                    "c_polys": {f"c{i}": str(c) for i, c in enumerate(self.interior.c_polys)},
                    "all_monomials_positive": self.interior.all_monomials_positive,
                    "appendix_match": self.interior.appendix_match,
                },
            })
        if self.boundary is not None:
            lo, hi = self.boundary.t_values_checked
            out.append({
                "name": "boundary",
                "status": "pass" if self.boundary.ok else "fail",
                "evidence": {
                    "t_values_checked": [str(lo), str(hi)],
                    "monotone": self.boundary.monotone,
                    "derivative_identity": self.boundary.derivative_identity,
                    "min_increment": format_rational(min(self.boundary.increments)),
                },
            })
        if self.failure is not None:
            out.append({"name": self.failure.step, "status": "fail",
                        "evidence": self.failure.as_dict()})
        return out

    def to_dict(self) -> dict:
        return {
            "claim": CLAIM,
            "steps": self.steps(),
            "valid": self.valid,
            "toolkit_version": __version__,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def build_d8_certificate(t_range: Tuple[int, int] = (3, 200),
                         appendix: Optional[Dict[int, SparsePoly]] = None,
                         jbreve: Optional[SparsePoly] = None) -> D8Certificate:
    """Run base case, interior and boundary checks; stop at the first failure.

    ``appendix`` and ``jbreve`` replace the literal expressions and the
    computed residual respectively, which is how fault injection is tested.
    """
    cert = D8Certificate()
    try:
        cert.base_case = base_case()
        if jbreve is None:
            _, jbreve = breve_J()
        cert.interior = verify_appendix_coeffs(jbreve, appendix)
        cert.boundary = t_monotone(*t_range)
    except CertificateError as exc:
        cert.failure = exc
    return cert


@lru_cache(maxsize=1)
def default_d8_certificate() -> D8Certificate:
    """The certificate with default settings, computed once per process."""
    return build_d8_certificate()
