import pytest
from hypothesis import given, strategies as st

from symineq.errors import DomainError, ParseError
from symineq.partitions import (
    Partition,
    counterexample_pair,
    enumerate_partitions,
    majorizes,
)

from conftest import P
from oracles import majorizes_brute, partitions_brute


class TestPartition:
    def test_zeros_dropped(self):
        assert Partition((2, 1, 0)) == Partition((2, 1))
        assert Partition((3, 0, 0)).parts == (3,)

    @pytest.mark.parametrize("text, parts", [
        ("3,1,1", (3, 1, 1)),
        ("3,1^2", (3, 1, 1)),
        ("2^4", (2, 2, 2, 2)),
        (" ( 3 , 1^5 ) ", (3, 1, 1, 1, 1, 1)),
        ("2,1,0", (2, 1)),
    ])
    def test_parse(self, text, parts):
        assert P(text).parts == parts

    @pytest.mark.parametrize("text", ["", "1,2", "a", "2^", "3,,1", "-1"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            P(text)

    def test_not_decreasing(self):
        with pytest.raises(DomainError):
            Partition((1, 2))

    def test_compact_roundtrip(self):
        for d in range(1, 9):
            for p in enumerate_partitions(d):
                assert P(p.compact()) == p

    def test_compact_blocks(self):
        assert P("3,1,1,1,1,1").compact() == "3,1^5"
        assert str(P("2^2")) == "(2,2)"


class TestEnumerate:
    def test_degree_three(self):
        assert [p.parts for p in enumerate_partitions(3)] == [(3,), (2, 1), (1, 1, 1)]

    def test_degree_one(self):
        assert [p.parts for p in enumerate_partitions(1)] == [(1,)]

    def test_degree_eight_count(self):
        # p(8) = 22, frozen from the composition oracle
        assert len(enumerate_partitions(8)) == 22

    @pytest.mark.parametrize("d", range(1, 13))
    def test_matches_oracle(self, d):
        got = [p.parts for p in enumerate_partitions(d)]
        assert len(got) == len(set(got))
        assert set(got) == partitions_brute(d)
        assert got == sorted(got, reverse=True)

    @pytest.mark.parametrize("d", [0, -3])
    def test_rejects_nonpositive(self, d):
        with pytest.raises(DomainError):
            enumerate_partitions(d)


class TestMajorizes:
    @pytest.mark.parametrize("mu, lam, expected", [
        ("3,0,0", "2,1,0", True),
        ("1,1,1", "2,1,0", False),
        ("4,4", "5,2,1", False),
        ("2^4", "3,1^5", False),
        ("2,1", "1,1,1", True),
    ])
    def test_examples(self, mu, lam, expected):
        assert majorizes(P(mu), P(lam)) is expected

    def test_unequal_degrees(self):
        with pytest.raises(DomainError):
            majorizes(P("3"), P("2"))

    @pytest.mark.parametrize("d", range(1, 10))
    def test_against_oracle(self, d):
        parts = enumerate_partitions(d)
        for a in parts:
            for b in parts:
                assert majorizes(a, b) == majorizes_brute(a.parts, b.parts)

    @pytest.mark.parametrize("d", range(1, 9))
    def test_partial_order(self, d):
        parts = enumerate_partitions(d)
        for a in parts:
            assert majorizes(a, a)
            assert majorizes(P(str(d)), a)
            assert majorizes(a, Partition((1,) * d))
            for b in parts:
                if majorizes(a, b) and majorizes(b, a):
                    assert a == b
                for c in parts:
                    if majorizes(a, b) and majorizes(b, c):
                        assert majorizes(a, c)


class TestCounterexamplePair:
    @pytest.mark.parametrize("d, mu, lam", [
        (8, "2,2,2,2", "3,1,1,1,1,1"),
        (9, "2,2,2,2,1", "3,1,1,1,1,1,1"),
        (10, "2^5", "3,1^7"),
        (11, "2^5,1", "3,1^8"),
    ])
    def test_examples(self, d, mu, lam):
        assert counterexample_pair(d) == (P(mu), P(lam))

    @given(st.integers(8, 200))
    def test_degree_and_non_majorization(self, d):
        mu, lam = counterexample_pair(d)
        assert mu.degree == lam.degree == d
        assert not majorizes(mu, lam)

    @pytest.mark.parametrize("d", [7, 3, 0])
    def test_small_d_rejected(self, d):
        with pytest.raises(DomainError):
            counterexample_pair(d)
