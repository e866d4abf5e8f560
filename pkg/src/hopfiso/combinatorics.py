"""Compositions of intervals and their 0/1 marks.

A composition of ``(i, j)`` is a strictly increasing sequence
``(i_1, ..., i_r)`` with ``i_1 = i``, ``i_r = j`` and ``r >= 2``.  Compositions
of ``(i, j)`` are in bijection with 0/1 functions on ``[i, j-2]``: the mark
takes the value 1 at ``l`` exactly when ``l + 1`` is an interior point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

Composition = tuple[int, ...]


@lru_cache(maxsize=None)
def compositions(i: int, j: int) -> tuple[Composition, ...]:
    """All compositions of ``(i, j)`` in lexicographic order."""
    if not i < j:
        raise ValueError(f"need i < j, got ({i}, {j})")
    interior = range(i + 1, j)
    out = []
    for r in range(0, j - i):
        for mid in combinations(interior, r):
            out.append((i,) + mid + (j,))
    out.sort()
    return tuple(out)


def subsequences(seq: Composition) -> Iterator[Composition]:
    """Subsequences of ``seq`` keeping both endpoints (index set ``I_{1m}``)."""
    m = len(seq)
    for ks in compositions(1, m):
        yield tuple(seq[k - 1] for k in ks)


def steps(seq: Composition) -> Iterator[tuple[int, int]]:
    """Consecutive pairs ``(i_s, i_{s+1})``."""
    return zip(seq, seq[1:])


@dataclass(frozen=True)
class Mark:
    """A 0/1 function on ``[i, j-2]``; ``bits[k]`` is the value at ``i + k``."""

    i: int
    j: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.j - self.i - 1:
            raise ValueError("mark length must be j - i - 1")

    def __call__(self, l: int) -> int:
        if not self.i <= l <= self.j - 2:
            raise IndexError(l)
        return self.bits[l - self.i]

    @property
    def size(self) -> int:
        """Number of zeros, written |e|."""
        return self.bits.count(0)

    def __le__(self, other: "Mark") -> bool:
        # e <= f  iff  e(l) = 0 implies f(l) = 0
        return all(b == 0 for a, b in zip(self.bits, other.bits) if a == 0)

    def __lt__(self, other: "Mark") -> bool:
        return self <= other and self != other


def marks(i: int, j: int) -> tuple[Mark, ...]:
    """All marks on ``[i, j-2]``, ordered by number of zeros then bits."""
    out = [Mark(i, j, bits) for bits in product((1, 0), repeat=j - i - 1)]
    out.sort(key=lambda e: (e.size, tuple(-b for b in e.bits)))
    return tuple(out)


def omega(c: Composition) -> Mark:
    i, j = c[0], c[-1]
    inner = {p - 1 for p in c[1:-1]}
    return Mark(i, j, tuple(1 if l in inner else 0 for l in range(i, j - 1)))


def omega_inv(e: Mark) -> Composition:
    inner = [l + 1 for l in range(e.i, e.j - 1) if e(l) == 1]
    return (e.i, *inner, e.j)


def all_ones(i: int, j: int) -> Mark:
    return Mark(i, j, (1,) * (j - i - 1))


def all_zeros(i: int, j: int) -> Mark:
    return Mark(i, j, (0,) * (j - i - 1))
