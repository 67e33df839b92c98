"""Integer partitions and the dominance (majorization) order."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import accumulate, zip_longest
from typing import Iterable, Iterator

from .errors import DomainError, ParseError

__all__ = [
    "Partition",
    "enumerate_partitions",
    "majorizes",
    "comparable",
    "counterexample_pair",
]


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Zeros are accepted on input and dropped, so ``Partition((2, 1, 0))`` and
    ``Partition((2, 1))`` are the same object.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be weakly decreasing: {parts}")
        parts = tuple(p for p in parts if p)
        if not parts:
            raise DomainError("a partition must have positive degree")
        object.__setattr__(self, "parts", parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def padded(self, length: int) -> tuple[int, ...]:
        if length < len(self.parts):
            raise DomainError(f"cannot pad {self} to length {length}")
        return self.parts + (0,) * (length - len(self.parts))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,1,1"``, ``"3,1^2"``, ``"(2^4)"`` and the like."""
        s = re.sub(r"\s+", "", text)
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        if not s:
            raise ParseError(f"empty partition: {text!r}")
        parts: list[int] = []
        for chunk in s.split(","):
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", chunk)
            if m is None:
                raise ParseError(f"bad partition block {chunk!r} in {text!r}")
            value = int(m.group(1))
            count = int(m.group(2)) if m.group(2) is not None else 1
            parts.extend([value] * count)
        try:
            return cls(parts)
        except DomainError as exc:
            raise ParseError(str(exc)) from exc

    def compact(self) -> str:
        """Block notation, e.g. ``3,1^5``."""
        blocks = []
        i = 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            run = j - i
            blocks.append(f"{self.parts[i]}^{run}" if run > 1 else str(self.parts[i]))
            i = j
        return ",".join(blocks)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __repr__(self) -> str:
        return f"Partition({self.parts})"


def enumerate_partitions(d: int) -> list[Partition]:
    """All partitions of ``d`` in reverse-lexicographic order."""
    if d < 1:
        raise DomainError(f"d must be a positive integer, got {d}")

    def gen(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(d, d)]


def majorizes(mu: Partition, lam: Partition) -> bool:
    """True iff every prefix sum of ``mu`` dominates that of ``lam``."""
    if mu.degree != lam.degree:
        raise DomainError(
            f"majorization needs equal degrees, got {mu.degree} and {lam.degree}"
        )
    pairs = zip_longest(mu.parts, lam.parts, fillvalue=0)
    running = accumulate(a - b for a, b in pairs)
    return all(s >= 0 for s in running)


def comparable(mu: Partition, lam: Partition) -> bool:
    return majorizes(mu, lam) or majorizes(lam, mu)


def counterexample_pair(d: int) -> tuple[Partition, Partition]:
    """The pair ``(2^(d//2), 1^(d%2))`` versus ``(3, 1^(d-3))`` for ``d >= 8``.

    The first does not majorize the second, yet its normalized complete
    homogeneous function dominates on the whole orthant for every ``n``.
    """
    if d < 8:
        raise DomainError(f"the construction is only valid for d >= 8, got {d}")
    half = d // 2
    mu = Partition((2,) * half + (1,) * (d - 2 * half))
    lam = Partition((3,) + (1,) * (d - 3))
    return mu, lam
