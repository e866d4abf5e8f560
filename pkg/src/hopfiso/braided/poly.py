"""Noncommutative polynomials in x_1..x_n with braided commutators.

A word is a tuple of letter indices (1-based).  The braiding between two
words u, v is ``prod_{a in u, b in v} q_ab``; since every ``q_ab`` is a power
of ``zeta_L`` it is tracked as an integer exponent.
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Iterator, Mapping

from ..datum import CartanDatum
from ..errors import StructuralError
from ..scalars import Scalar

Word = tuple[int, ...]


class BraidedPoly:
    """Finitely supported map ``Word -> Scalar`` bound to a Cartan datum."""

    __slots__ = ("datum", "terms")

    def __init__(self, datum: CartanDatum, terms: Mapping[Word, Scalar] | None = None):
        self.datum = datum
        self.terms: dict[Word, Scalar] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def gen(cls, d: CartanDatum, i: int) -> "BraidedPoly":
        if not 1 <= i <= d.n:
            raise StructuralError(f"no generator x_{i} in rank {d.n}")
        return cls(d, {(i,): d.ctx.one})

    @classmethod
    def one(cls, d: CartanDatum) -> "BraidedPoly":
        return cls(d, {(): d.ctx.one})

    @classmethod
    def word(cls, d: CartanDatum, w: Word, coeff=1) -> "BraidedPoly":
        return cls(d, {tuple(w): d.ctx(coeff)})

    def _check(self, other: "BraidedPoly") -> None:
        if not isinstance(other, BraidedPoly):
            raise TypeError("expected BraidedPoly")
        if other.datum is not self.datum and other.datum != self.datum:
            raise StructuralError("polynomials over different data")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __iter__(self) -> Iterator[tuple[Word, Scalar]]:
        return iter(self.terms.items())

    def __add__(self, other: "BraidedPoly") -> "BraidedPoly":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return BraidedPoly(self.datum, out)

    def __neg__(self) -> "BraidedPoly":
        return BraidedPoly(self.datum, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "BraidedPoly") -> "BraidedPoly":
        return self + (-other)

    def __mul__(self, other) -> "BraidedPoly":
        if isinstance(other, BraidedPoly):
            self._check(other)
            out: dict[Word, Scalar] = {}
            for u, a in self.terms.items():
                for v, b in other.terms.items():
                    w = u + v
                    out[w] = out[w] + a * b if w in out else a * b
            return BraidedPoly(self.datum, out)
        c = Scalar.coerce(self.datum.ctx, other)
        return BraidedPoly(self.datum, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other) -> "BraidedPoly":
        c = Scalar.coerce(self.datum.ctx, other)
        return BraidedPoly(self.datum, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, e: int) -> "BraidedPoly":
        out = BraidedPoly.one(self.datum)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BraidedPoly):
            return NotImplemented
        return self.datum == other.datum and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            word = "*".join(f"x{a}" for a in w) or "1"
            parts.append(f"({self.terms[w]})*{word}")
        return " + ".join(parts)


def braiding_exponent(d: CartanDatum, u: Word, v: Word) -> int:
    cu, cv = Counter(u), Counter(v)
    return sum(a * b * d.qexp(x, y) for x, a in cu.items() for y, b in cv.items())


def braided_commutator(a: BraidedPoly, b: BraidedPoly) -> BraidedPoly:
    """``[a, b]_c = ab - sum_{u, v} a_u b_v beta(u, v) v u`` (bilinear extension)."""
    a._check(b)
    d = a.datum
    out: dict[Word, Scalar] = {}
    for u, x in a.terms.items():
        for v, y in b.terms.items():
            xy = x * y
            w = u + v
            out[w] = out[w] + xy if w in out else xy
            w2 = v + u
            t = -(xy * d.ctx.zeta(braiding_exponent(d, u, v)))
            out[w2] = out[w2] + t if w2 in out else t
    return BraidedPoly(d, out)


def ad_power(d: CartanDatum, i: int, j: int, k: int) -> BraidedPoly:
    """``ad_c(x_i)^k (x_j)``."""
    xi = BraidedPoly.gen(d, i)
    out = BraidedPoly.gen(d, j)
    for _ in range(k):
        out = braided_commutator(xi, out)
    return out


def serre_relations(d: CartanDatum) -> list[BraidedPoly]:
    """``ad_c(x_i)^(1 - a_ij)(x_j)`` for all ordered pairs i != j."""
    rels = []
    for i in range(1, d.n + 1):
        for j in range(1, d.n + 1):
            if i != j:
                rels.append(ad_power(d, i, j, 2 if abs(i - j) == 1 else 1))
    return rels


def root_vector(d: CartanDatum, i: int, j: int) -> BraidedPoly:
    """``x_ij``: ``x_{i,i+1} = x_i`` and ``x_ij = [x_i, x_{i+1,j}]_c``."""
    d._check_root(i, j)
    out = BraidedPoly.gen(d, j - 1)
    for l in range(j - 2, i - 1, -1):
        out = braided_commutator(BraidedPoly.gen(d, l), out)
    return out


def reverse_root_vector(d: CartanDatum, i: int, j: int) -> BraidedPoly:
    """``x_ji``: ``x_{i+1,i} = x_i`` and ``x_ji = [x_{j-1}, x_{j-1,i}]_c``."""
    d._check_root(i, j)
    out = BraidedPoly.gen(d, i)
    for l in range(i + 1, j):
        out = braided_commutator(BraidedPoly.gen(d, l), out)
    return out


def bracketings(d: CartanDatum, letters: Word) -> list[BraidedPoly]:
    """Every full bracketing of the given letter sequence, in order."""
    memo: dict[Word, list[BraidedPoly]] = {}

    def go(seq: Word) -> list[BraidedPoly]:
        if seq in memo:
            return memo[seq]
        if len(seq) == 1:
            res = [BraidedPoly.gen(d, seq[0])]
        else:
            res = []
            for k in range(1, len(seq)):
                for left, right in product(go(seq[:k]), go(seq[k:])):
                    res.append(braided_commutator(left, right))
        memo[seq] = res
        return res

    return go(tuple(letters))


def relabel_sigma(d_sigma: CartanDatum, p: BraidedPoly, d: CartanDatum) -> BraidedPoly:
    """Image under ``x_i -> x_{sigma(i)}`` from the twisted datum to ``d``."""
    if p.datum != d_sigma:
        raise StructuralError("polynomial is not over the given twisted datum")
    if d.twisted != d_sigma:
        raise StructuralError("d_sigma is not the twist of d")
    n = d.n
    return BraidedPoly(d, {tuple(n - a + 1 for a in w): c for w, c in p.terms.items()})
