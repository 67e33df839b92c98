"""Sparse multivariate polynomials and rational functions over Q.

Variables are identified by name, so polynomials over different variable
lists combine by aligning on the union of names.  Terms are stored as
``{exponent_tuple: Fraction}`` with no zero coefficients; printing and
leading terms use graded-lex order.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import DivisibilityError, DomainError, ParseError, ResourceLimitError

__all__ = [
    "SparsePoly",
    "RationalFunction",
    "parse_poly",
    "poly_arith",
    "differentiate",
    "collect_coefficients",
    "exact_divide",
    "symbolic_h",
    "symbolic_h_lambda",
    "verify_dh_identity",
    "SYMBOLIC_MAX_N",
    "SYMBOLIC_MAX_K",
]

Exponents = Tuple[int, ...]
Scalar = Union[int, Fraction]

SYMBOLIC_MAX_N = 6
SYMBOLIC_MAX_K = 8


def _add_exps(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def _grlex_key(exps: Exponents):
    return (sum(exps), exps)


class SparsePoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (),
                 terms: Mapping[Exponents, Scalar] | None = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise DomainError(f"duplicate variable names in {self.variables}")
        clean: Dict[Exponents, Fraction] = {}
        nv = len(self.variables)
        for exps, c in (terms or {}).items():
            if len(exps) != nv:
                raise DomainError(f"exponent {exps} does not match variables {self.variables}")
            if c:
                clean[tuple(exps)] = Fraction(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "SparsePoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def const(cls, c: Scalar, variables: Sequence[str] = ()) -> "SparsePoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def _raw(cls, variables, terms):
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    # -- variable handling --------------------------------------------------

    def with_variables(self, variables: Sequence[str]) -> "SparsePoly":
        """Re-express over ``variables``, which must cover every used name."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        used = self.used_variables()
        missing = [v for v in used if v not in index]
        if missing:
            raise DomainError(f"variables {missing} missing from {variables}")
        pos = [index.get(v) for v in self.variables]
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for p, e in zip(pos, exps):
                if e:
                    new[p] = e
            out[tuple(new)] = c
        return SparsePoly._raw(variables, out)

    def used_variables(self) -> Tuple[str, ...]:
        used = [False] * len(self.variables)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.variables, used) if u)

    def trim(self) -> "SparsePoly":
        return self.with_variables(self.used_variables())

    def _align(self, other: "SparsePoly"):
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        names = list(self.variables)
        names += [v for v in other.variables if v not in self.variables]
        names = tuple(names)
        return names, self.with_variables(names).terms, other.with_variables(names).terms

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.const(other, self.variables)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePoly._raw(names, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SparsePoly._raw(self.variables, {})
            return SparsePoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        names, a, b = self._align(other)
        out: Dict[Exponents, Fraction] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                out[e] = get(e, 0) + c1 * c2
        return SparsePoly._raw(names, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"polynomial powers need a nonnegative integer, got {k!r}")
        result = SparsePoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        _, a, b = self._align(other)
        return a == b

    def __hash__(self):
        if self._hash is None:
            t = self.trim()
            names = sorted(t.variables)
            t = t.with_variables(names)
            self._hash = hash((tuple(names), frozenset(t.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise DomainError(f"{self} is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    # -- inspection ---------------------------------------------------------

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise DomainError("the zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=0)

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        """Coefficient of an exact monomial given as ``{name: exponent}``."""
        exps = [0] * len(self.variables)
        for name, e in monomial.items():
            if e:
                exps[self._index(name)] = e
        return self.terms.get(tuple(exps), Fraction(0))

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise DomainError(f"unknown variable {var!r}; have {self.variables}") from None

    def monomial_str(self, exps: Exponents) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e:
                parts.append(f"{v}^{e}")
        return " ".join(parts) if parts else "1"

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        missing = [v for v in self.used_variables() if v not in values]
        if missing:
            raise DomainError(f"no value supplied for {missing}")
        vals = [Fraction(values.get(v, 0)) for v in self.variables]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(vals, exps):
                if e:
                    term *= x ** e
            total += term
        return total

    def subs(self, mapping: Mapping[str, Union["SparsePoly", Scalar]]) -> "SparsePoly":
        """Substitute polynomials or scalars for some variables."""
        keep = [v for v in self.variables if v not in mapping]
        keep_idx = [i for i, v in enumerate(self.variables) if v not in mapping]
        sub_idx = [(i, v) for i, v in enumerate(self.variables) if v in mapping]
        images = {}
        for _, v in sub_idx:
            img = mapping[v]
            images[v] = img if isinstance(img, SparsePoly) else SparsePoly.const(img)
        power_cache: Dict[Tuple[str, int], SparsePoly] = {}

        def power(v, e):
            key = (v, e)
            if key not in power_cache:
                power_cache[key] = images[v] ** e
            return power_cache[key]

        result = SparsePoly.const(0, keep)
        grouped: Dict[Exponents, Dict[Exponents, Fraction]] = {}
        # group by the substituted exponents so each product is formed once
        for exps, c in self.terms.items():
            sub_key = tuple(exps[i] for i, _ in sub_idx)
            grouped.setdefault(sub_key, {})[tuple(exps[i] for i in keep_idx)] = c
        for sub_key, coeff_terms in grouped.items():
            factor = SparsePoly._raw(tuple(keep), coeff_terms)
            for (_, v), e in zip(sub_idx, sub_key):
                if e:
                    factor = factor * power(v, e)
            result = result + factor
        return result

    # -- printing and parsing ----------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (exps, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            mono = self.monomial_str(exps)
            coef = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if mono == "1":
                body = coef
            elif a == 1:
                body = mono
            else:
                body = f"{coef} * {mono}"
            if i == 0:
                out.append(body if sign == "+" else f"-{body}")
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self):
        return f"SparsePoly({str(self)!r}, variables={self.variables})"

    @classmethod
    def parse(cls, text: str, variables: Sequence[str] | None = None) -> "SparsePoly":
        return parse_poly(text, variables)


# -- module-level operations --------------------------------------------------


def poly_arith(a: SparsePoly, b, op: str) -> SparsePoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``pow`` (``b`` is the exponent)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** b
    raise DomainError(f"unknown polynomial operation {op!r}")


def differentiate(f: SparsePoly, var: str) -> SparsePoly:
    i = f._index(var)
    out = {}
    for exps, c in f.terms.items():
        e = exps[i]
        if e:
            new = exps[:i] + (e - 1,) + exps[i + 1:]
            out[new] = c * e
    return SparsePoly._raw(f.variables, out)


def collect_coefficients(f: SparsePoly, var: str) -> list[SparsePoly]:
    """``[g_0, ..., g_deg]`` with ``f = sum g_j var^j`` and ``g_j`` free of ``var``."""
    i = f._index(var)
    rest = f.variables[:i] + f.variables[i + 1:]
    buckets: Dict[int, Dict[Exponents, Fraction]] = {}
    for exps, c in f.terms.items():
        buckets.setdefault(exps[i], {})[exps[:i] + exps[i + 1:]] = c
    deg = max(buckets, default=0)
    return [SparsePoly._raw(rest, buckets.get(j, {})) for j in range(deg + 1)]


def exact_divide(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Quotient ``q`` with ``f == q * g``; raises DivisibilityError otherwise.

    Division by leading terms in graded-lex order: if ``g`` divides ``f`` the
    leading term of every remainder is divisible by that of ``g``.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    names, fa, ga = f._align(g)
    g_al = SparsePoly._raw(names, ga)
    lead_e, lead_c = g_al.leading_term()
    rem = dict(fa)
    quotient: Dict[Exponents, Fraction] = {}
    g_items = list(ga.items())
    while rem:
        r_e = max(rem, key=_grlex_key)
        r_c = rem[r_e]
        q_e = tuple(a - b for a, b in zip(r_e, lead_e))
        if any(x < 0 for x in q_e):
            remainder = SparsePoly._raw(names, rem)
            raise DivisibilityError(
                f"{g} does not divide the dividend; stuck at term "
                f"{r_c} * {remainder.monomial_str(r_e)}"
            )
        q_c = r_c / lead_c
        quotient[q_e] = q_c
        for e, c in g_items:
            k = _add_exps(q_e, e)
            v = rem.get(k, 0) - q_c * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return SparsePoly._raw(names, quotient)


def _xvars(n: int) -> Tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


def symbolic_h(n: int, k: int) -> SparsePoly:
    """Full expansion of ``h_{n,k}`` in ``x1..xn`` (capped at n<=6, k<=8)."""
    if n < 1 or k < 0:
        raise DomainError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
    if n > SYMBOLIC_MAX_N or k > SYMBOLIC_MAX_K:
        raise ResourceLimitError(
            f"symbolic h_{{n,k}} is capped at n<={SYMBOLIC_MAX_N}, k<={SYMBOLIC_MAX_K}"
        )
    terms = {}
    for combo in combinations_with_replacement(range(n), k):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        terms[tuple(exps)] = 1
    return SparsePoly(_xvars(n), terms)


def symbolic_h_lambda(n: int, parts: Iterable[int], normalized: bool = False) -> SparsePoly:
    """Product of ``h_{n,part}``; divided by its value at all-ones if ``normalized``."""
    parts = list(parts)
    cache: Dict[int, SparsePoly] = {}
    result = SparsePoly.const(1, _xvars(n))
    for p in parts:
        if p not in cache:
            cache[p] = symbolic_h(n, p)
        result = result * cache[p]
    if normalized:
        result = result / math.prod(math.comb(n + p - 1, p) for p in parts)
    return result


def verify_dh_identity(n: int, k: int, i: int) -> bool:
    """Check d h_{n,k} / d x_i == sum_{j<k} h_{n,j} x_i^(k-1-j) symbolically."""
    if not 1 <= i <= n:
        raise DomainError(f"index i={i} outside 1..{n}")
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    xi = SparsePoly.var(f"x{i}").with_variables(_xvars(n))
    lhs = differentiate(symbolic_h(n, k), f"x{i}")
    rhs = SparsePoly.const(0, _xvars(n))
    for j in range(k):
        rhs = rhs + symbolic_h(n, j) * xi ** (k - 1 - j)
    return lhs == rhs


# -- rational functions --------------------------------------------------------


def _content(p: SparsePoly) -> Fraction:
    """Positive rational c with p / c having coprime integer coefficients."""
    if p.is_zero():
        return Fraction(1)
    nums = [c.numerator for c in p.terms.values()]
    dens = [c.denominator for c in p.terms.values()]
    return Fraction(abs(reduce(math.gcd, nums)), reduce(math.lcm, dens))


class RationalFunction:
    """``numerator / denominator`` with a nonzero denominator.

    Normalization cancels rational content and common monomial factors and
    makes the denominator's leading coefficient a positive integer; it does
    not compute polynomial gcds, so equal functions may print differently.
    Use ``==``, which cross-multiplies.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=1):
        num = numerator if isinstance(numerator, SparsePoly) else SparsePoly.const(numerator)
        den = denominator if isinstance(denominator, SparsePoly) else SparsePoly.const(denominator)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        names, a, b = num._align(den)
        num, den = SparsePoly._raw(names, a), SparsePoly._raw(names, b)
        if num.is_zero():
            self.numerator = num
            self.denominator = SparsePoly.const(1, names)
            return
        # common monomial factor
        shift = [min(e[i] for e in list(a) + list(b)) for i in range(len(names))]
        if any(shift):
            num = SparsePoly._raw(names, {tuple(x - s for x, s in zip(e, shift)): c for e, c in a.items()})
            den = SparsePoly._raw(names, {tuple(x - s for x, s in zip(e, shift)): c for e, c in b.items()})
        scale = _content(den)
        if den.leading_term()[1] < 0:
            scale = -scale
        self.numerator = num / scale
        self.denominator = den / scale

    @property
    def variables(self):
        return self.numerator.variables

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (SparsePoly, int, Fraction)):
            return RationalFunction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError(f"rational function powers need k >= 0, got {k!r}")
        return RationalFunction(self.numerator ** k, self.denominator ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        den = self.denominator.evaluate(values)
        if not den:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.numerator.evaluate(values) / den

    def subs(self, mapping) -> "RationalFunction":
        return RationalFunction(self.numerator.subs(mapping), self.denominator.subs(mapping))

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def __str__(self):
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


# -- parser ---------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif ident is not None:
            tokens.append(("var", ident))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}, got {tok[1]!r} in {self.text!r}")

    def parse(self) -> SparsePoly:
        if not self.tokens:
            raise ParseError("empty polynomial")
        out = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "var") or (kind == "op" and val == "(")

    def term(self):
        acc = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = acc * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                rhs = self.unary()
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError(f"can only divide by a nonzero constant in {self.text!r}")
                acc = acc / rhs.constant_value()
            elif self._starts_factor():
                acc = acc * self.power()
            else:
                return acc

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return SparsePoly.const(val)
        if kind == "var":
            return SparsePoly.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, variables: Sequence[str] | None = None) -> SparsePoly:
    """Parse the printed grammar (and ordinary infix with implicit products).

    ``variables`` fixes the variable order of the result; it must include
    every name that occurs.
    """
    poly = _Parser(text).parse()
    if variables is not None:
        return poly.with_variables(variables)
    return poly
