"""Exact evaluation of monomial, power-sum and complete homogeneous symmetric
functions, and of their term-normalizations, at rational points."""

from __future__ import annotations

import enum
import math
import random
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Sequence, Union

from . import kernels
from .errors import DomainError, ParseError
from .partitions import Partition

__all__ = [
    "EvalPoint",
    "Family",
    "parse_rational",
    "format_rational",
    "power_sum",
    "complete_h",
    "complete_h_upto",
    "monomial_m",
    "h_lambda",
    "family_value",
    "normalization_constant",
    "eval_normalized",
    "integer_scaling",
    "random_rational",
    "random_point",
]

Rational = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ParseError(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class EvalPoint:
    """An exact rational point ``x`` in ``n >= 1`` coordinates.

    Inequality verdicts only make sense on the nonnegative orthant, so
    negative coordinates are rejected unless ``identity_mode`` is set; that
    mode is meant for checking algebraic identities, which hold everywhere.
    """

    __slots__ = ("coords", "identity_mode")

    def __init__(self, coords: Iterable[Rational], identity_mode: bool = False):
        cs = tuple(Fraction(c) for c in coords)
        if not cs:
            raise DomainError("an evaluation point needs at least one coordinate")
        if not identity_mode and any(c < 0 for c in cs):
            raise DomainError(
                "negative coordinate outside identity mode: "
                + ",".join(map(format_rational, cs))
            )
        self.coords = cs
        self.identity_mode = identity_mode

    @classmethod
    def parse(cls, text: str, identity_mode: bool = False) -> "EvalPoint":
        s = re.sub(r"\s+", "", text).strip("()")
        if not s:
            raise ParseError("empty point")
        return cls([parse_rational(c) for c in s.split(",")], identity_mode)

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def scaled(self, c: Rational) -> "EvalPoint":
        return EvalPoint([c * x for x in self.coords], self.identity_mode)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, EvalPoint):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return "(" + ",".join(map(format_rational, self.coords)) + ")"

    def __repr__(self):
        return f"EvalPoint({self})"


def _as_point(x) -> EvalPoint:
    if isinstance(x, EvalPoint):
        return x
    return EvalPoint(x, identity_mode=True)


class Family(enum.Enum):
    MONOMIAL = "monomial"
    POWER_SUM = "power_sum"
    COMPLETE_H = "complete_h"

    @classmethod
    def parse(cls, text: Union[str, "Family"]) -> "Family":
        if isinstance(text, Family):
            return text
        key = text.strip().lower()
        aliases = {
            "m": cls.MONOMIAL, "monomial": cls.MONOMIAL,
            "p": cls.POWER_SUM, "power_sum": cls.POWER_SUM, "power-sum": cls.POWER_SUM,
            "h": cls.COMPLETE_H, "complete_h": cls.COMPLETE_H, "chs": cls.COMPLETE_H,
        }
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown family {text!r}") from None

    @property
    def letter(self) -> str:
        return {"monomial": "m", "power_sum": "p", "complete_h": "h"}[self.value]


def integer_scaling(coords: Sequence[Rational]) -> tuple[list[int], int]:
    """Return ``(X, L)`` with ``X = L * coords`` integral and ``L`` minimal."""
    fr = [Fraction(c) for c in coords]
    L = reduce(math.lcm, (c.denominator for c in fr), 1)
    return [c.numerator * (L // c.denominator) for c in fr], L


def power_sum(x, k: int) -> Fraction:
    if k < 1:
        raise DomainError(f"power sums are defined here for k >= 1, got {k}")
    pt = _as_point(x)
    return sum((c ** k for c in pt.coords), Fraction(0))


def complete_h_upto(x, kmax: int) -> list[Fraction]:
    """``[h_0(x), ..., h_kmax(x)]`` via the Newton recurrence."""
    if kmax < 0:
        raise DomainError(f"k must be nonnegative, got {kmax}")
    pt = _as_point(x)
    ints, L = integer_scaling(pt.coords)
    table = kernels.complete_h_table(ints, kmax)
    return [Fraction(v, L ** k) for k, v in enumerate(table)]


def complete_h(x, k: int) -> Fraction:
    return complete_h_upto(x, k)[k]


def _distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    # next-permutation over a sorted multiset; each arrangement appears once
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


def monomial_m(x, lam: Partition) -> Fraction:
    pt = _as_point(x)
    if len(lam) > pt.n:
        raise DomainError(f"{lam} has more than n={pt.n} nonzero parts")
    total = Fraction(0)
    for exps in _distinct_permutations(lam.padded(pt.n)):
        term = Fraction(1)
        for c, e in zip(pt.coords, exps):
            if e:
                term *= c ** e
        total += term
    return total


def h_lambda(x, lam: Partition) -> Fraction:
    table = complete_h_upto(x, max(lam.parts))
    return math.prod((table[p] for p in lam.parts), start=Fraction(1))


def family_value(family, x, lam: Partition) -> Fraction:
    """Unnormalized ``f_{n,lam}(x)`` for the given family."""
    family = Family.parse(family)
    if family is Family.COMPLETE_H:
        return h_lambda(x, lam)
    if family is Family.POWER_SUM:
        return math.prod((power_sum(x, p) for p in lam.parts), start=Fraction(1))
    return monomial_m(x, lam)


def normalization_constant(family, n: int, lam: Partition) -> int:
    """``f_{n,lam}(1, ..., 1)``, always a positive integer."""
    family = Family.parse(family)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if family is Family.COMPLETE_H:
        return math.prod(math.comb(n + p - 1, p) for p in lam.parts)
    if family is Family.POWER_SUM:
        return n ** len(lam)
    if len(lam) > n:
        raise DomainError(f"m_{{{n},{lam}}} vanishes identically; no normalization")
    orbit = math.factorial(n)
    for mult in lam.multiplicities().values():
        orbit //= math.factorial(mult)
    return orbit // math.factorial(n - len(lam))


def eval_normalized(family, n: int, lam: Partition, x) -> Fraction:
    pt = _as_point(x)
    if pt.n != n:
        raise DomainError(f"point has {pt.n} coordinates, expected n={n}")
    const = normalization_constant(family, n, lam)
    return family_value(family, pt, lam) / const


def random_rational(rng: random.Random, bound: int = 100) -> Fraction:
    """Nonnegative rational with numerator in [0, bound], denominator in [1, bound]."""
    return Fraction(rng.randint(0, bound), rng.randint(1, bound))


def random_point(rng: random.Random, n: int, bound: int = 100,
                 zeros: int = 0) -> EvalPoint:
    """Seeded nonnegative rational point; ``zeros`` coordinates forced to 0.

    All-zero points are redrawn since every comparison there is trivial.
    """
    while True:
        coords = [random_rational(rng, bound) for _ in range(n)]
        for idx in rng.sample(range(n), min(zeros, n)):
            coords[idx] = Fraction(0)
        if any(coords):
            return EvalPoint(coords)
