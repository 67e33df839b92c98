import math
import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symineq import kernels

from oracles import h_brute

BACKENDS = kernels.available_backends()


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def int_points(rng, n, count, bound):
    return [[rng.randint(0, bound) for _ in range(n)] for _ in range(count)]


def test_default_backend_known():
    assert kernels.BACKEND in BACKENDS


class TestTables:
    def test_small(self, backend):
        assert list(backend.complete_h_table([2, 1], 3)) == [1, 3, 7, 15]
        assert list(backend.power_sums([3, 3, 1], 2)) == [3, 7, 19]

    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_oracle(self, backend, n):
        rng = random.Random(n)
        for pt in int_points(rng, n, 10, 50):
            assert list(backend.complete_h_table(pt, 6)) == [h_brute(pt, k) for k in range(7)]

    def test_batch(self, backend):
        pts = int_points(random.Random(1), 3, 20, 9)
        assert [list(r) for r in backend.complete_h_batch(pts, 5)] == [
            list(backend.complete_h_table(p, 5)) for p in pts
        ]

    def test_rational_power_sums(self, backend):
        psums = [2, Fraction(3, 2), Fraction(5, 4)]
        # x = (1, 1/2): h_2 = 1 + 1/2 + 1/4
        assert list(backend.h_from_power_sums(psums, 2)) == [1, Fraction(3, 2), Fraction(7, 4)]

    def test_overflow_falls_back_to_big_ints(self, backend):
        pt = [10 ** 12, 3, 10 ** 15]
        assert list(backend.complete_h_table(pt, 8)) == [h_brute(pt, k) for k in range(9)]

    def test_negative_coordinates(self, backend):
        pt = [-3, 2, -1]
        assert list(backend.complete_h_table(pt, 5)) == [h_brute(pt, k) for k in range(6)]


class TestFirstViolation:
    def test_finds_first(self, backend):
        # H_(1,1) >= H_(2) holds only on the diagonal
        pts = [[1, 1], [2, 2], [1, 0], [0, 3]]
        assert backend.first_violation(pts, [1, 1], [2], 4, 3) == 2

    def test_none(self, backend):
        pts = [[1, 0], [0, 3], [1, 1]]
        assert backend.first_violation(pts, [2], [1, 1], 3, 4) == -1

    def test_empty(self, backend):
        assert backend.first_violation([], [2], [1, 1], 3, 4) == -1


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
class TestAgreement:
    @settings(max_examples=80, deadline=None)
    @given(st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=1, max_size=7), st.integers(0, 10))
    def test_tables_agree(self, pt, kmax):
        py, cy = BACKENDS["python"], BACKENDS["cython"]
        assert list(py.complete_h_table(pt, kmax)) == list(cy.complete_h_table(pt, kmax))
        assert list(py.power_sums(pt, kmax)) == list(cy.power_sums(pt, kmax))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 2 ** 31), st.integers(1, 10 ** 4))
    def test_first_violation_agrees(self, n, seed, bound):
        pts = int_points(random.Random(seed), n, 30, bound)
        mu, lam = [1, 1, 1], [2, 1]
        w_mu, w_lam = n ** 3, n * math.comb(n + 1, 2)
        py, cy = BACKENDS["python"], BACKENDS["cython"]
        assert py.first_violation(pts, mu, lam, w_mu, w_lam) == cy.first_violation(pts, mu, lam, w_mu, w_lam)


def test_env_forces_pure_python():
    env = dict(os.environ, SYMINEQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from symineq import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
