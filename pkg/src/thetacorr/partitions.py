"""Partitions and bipartitions, with the orders and set operations used by the
correspondence formulas."""

from __future__ import annotations

from functools import lru_cache
from itertools import zip_longest
from typing import Iterable, Iterator, NamedTuple


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition([2, 1, 0])``
    equals ``Partition([2, 1])``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("[]()")
        if not text or text in ("-", "0"):
            return cls()
        return cls(sorted((int(x) for x in text.split(",") if x.strip()), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part (1-based), zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def transpose(self) -> "Partition":
        return transpose(self)

    @property
    def t(self) -> "Partition":
        return transpose(self)

    def __repr__(self):
        return f"Partition({list(self)})"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")" if self else "∅"

    def to_json(self) -> list[int]:
        return list(self)


EMPTY = Partition()


class Bipartition(NamedTuple):
    top: Partition
    bottom: Partition

    @classmethod
    def of(cls, top: Iterable[int] = (), bottom: Iterable[int] = ()) -> "Bipartition":
        return cls(Partition(top), Partition(bottom))

    @property
    def size(self) -> int:
        return self.top.size + self.bottom.size

    def swap(self) -> "Bipartition":
        return Bipartition(self.bottom, self.top)

    def __str__(self):
        return f"[{self.top};{self.bottom}]"

    def to_json(self) -> dict:
        return {"top": list(self.top), "bottom": list(self.bottom)}

    @classmethod
    def from_json(cls, obj: dict) -> "Bipartition":
        return cls.of(obj["top"], obj["bottom"])


class SkewDiagram(NamedTuple):
    outer: Partition
    inner: Partition

    def cells(self) -> set[tuple[int, int]]:
        if not contains(self.outer, self.inner):
            raise ValueError("inner shape is not contained in the outer shape")
        return cells(self.outer) - cells(self.inner)


def cells(lam: Partition) -> set[tuple[int, int]]:
    return {(i, j) for i, row in enumerate(lam, 1) for j in range(1, row + 1)}


def transpose(lam: Iterable[int]) -> Partition:
    lam = list(lam)
    if not lam:
        return EMPTY
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def union(lam: Iterable[int], mu: Iterable[int]) -> Partition:
    return Partition(sorted(list(lam) + list(mu), reverse=True))


def _pairs(lam, mu) -> Iterator[tuple[int, int]]:
    return zip_longest(lam, mu, fillvalue=0)


def dominates(lam: Partition, mu: Partition) -> bool:
    """True if lam >= mu in the dominance order (equal sizes required)."""
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of the same size")
    a = b = 0
    for x, y in _pairs(lam, mu):
        a, b = a + x, b + y
        if a < b:
            return False
    return True


def preceq(lam: Partition, mu: Partition) -> bool:
    """lam ⪯ mu: mu is lam plus at most one box in each column."""
    n = max(len(lam), len(mu)) + 1
    lp = list(lam) + [0] * (n + 1 - len(lam))
    mp = list(mu) + [0] * (n + 1 - len(mu))
    return all(mp[i + 1] <= lp[i] <= mp[i] for i in range(n))


def contains(lam: Partition, mu: Partition) -> bool:
    return all(x >= y for x, y in _pairs(lam, mu))


def close(lam: Partition, mu: Partition) -> bool:
    return all(abs(x - y) <= 1 for x, y in _pairs(lam, mu))


RELATIONS = {"dominance": dominates, "preceq": preceq, "contains": contains, "close": close}


def relate(lam: Partition, mu: Partition, rel: str) -> bool:
    try:
        return RELATIONS[rel](lam, mu)
    except KeyError:
        raise ValueError(f"unknown relation {rel!r}") from None


def intersections(lam: Partition, mu: Partition) -> tuple[Partition, Partition]:
    """Return (lam ∩ mu, lam ∩= mu).

    The second keeps only the rows where lam and mu agree.
    """
    meet = [min(x, y) for x, y in _pairs(lam, mu)]
    agree = [min(x, y) for x, y in _pairs(lam, mu) if x == y and x > 0]
    return Partition(meet), Partition(agree)


def hook_lengths(lam: Partition) -> dict[tuple[int, int], int]:
    lt = transpose(lam)
    return {
        (i, j): lam[i - 1] + lt[j - 1] - i - j + 1
        for i in range(1, len(lam) + 1)
        for j in range(1, lam[i - 1] + 1)
    }


def remove_two_hooks(lam: Partition) -> list[Partition]:
    """All partitions obtained from lam by removing one domino."""
    out = []
    parts = list(lam)
    for i, p in enumerate(parts):
        nxt = parts[i + 1] if i + 1 < len(parts) else 0
        if p - 2 >= nxt:
            out.append(Partition(parts[:i] + [p - 2] + parts[i + 1:]))
        if i + 1 < len(parts) and p == parts[i + 1]:
            after = parts[i + 2] if i + 2 < len(parts) else 0
            if p - 1 >= after:
                out.append(Partition(parts[:i] + [p - 1, p - 1] + parts[i + 2:]))
    return out


@lru_cache(maxsize=None)
def two_core(lam: Partition) -> tuple[Partition, int]:
    """Strip dominoes until none can be removed; return (core, d) with core = [d, ..., 1]."""
    lam = Partition(lam)
    while True:
        smaller = remove_two_hooks(lam)
        if not smaller:
            break
        lam = smaller[0]
    d = len(lam)
    if list(lam) != list(range(d, 0, -1)):
        raise AssertionError(f"2-core {lam} is not a staircase")
    return lam, d


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


@lru_cache(maxsize=None)
def bipartitions_of(n: int) -> tuple[Bipartition, ...]:
    return tuple(
        Bipartition(a, b)
        for k in range(n, -1, -1)
        for a in partitions_of(k)
        for b in partitions_of(n - k)
    )
