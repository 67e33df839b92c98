"""Independent brute-force oracles.

Nothing here imports the package's evaluation code, so tests comparing the
two are genuine cross-checks.
"""

import math
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product


def partitions_brute(d):
    """All partitions of d via compositions (2^(d-1) of them), sorted and deduped."""
    seen = set()
    for cuts in product((0, 1), repeat=d - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        seen.add(tuple(sorted(parts, reverse=True)))
    return seen


def majorizes_brute(mu, lam):
    length = max(len(mu), len(lam))
    a = list(mu) + [0] * (length - len(mu))
    b = list(lam) + [0] * (length - len(lam))
    return all(sum(a[:j]) >= sum(b[:j]) for j in range(1, length + 1))


def h_brute(x, k):
    """Sum of x_{i1}...x_{ik} over i1 <= ... <= ik."""
    x = [Fraction(c) for c in x]
    return sum((math.prod(c) for c in combinations_with_replacement(x, k)), Fraction(0)) if k else Fraction(1)


def h_lambda_brute(x, parts):
    return math.prod((h_brute(x, p) for p in parts), start=Fraction(1))


def H_brute(x, parts):
    n = len(x)
    return h_lambda_brute(x, parts) / math.prod(math.comb(n + p - 1, p) for p in parts)


def m_brute(x, parts):
    """Monomial symmetric function via the set of distinct exponent arrangements."""
    n = len(x)
    exps = tuple(parts) + (0,) * (n - len(parts))
    total = Fraction(0)
    for arrangement in set(permutations(exps)):
        total += math.prod(Fraction(c) ** e for c, e in zip(x, arrangement))
    return total


def M_brute(x, parts):
    ones = [1] * len(x)
    return m_brute(x, parts) / m_brute(ones, parts)
