"""Skew-polynomial quotients attached to a root and a 0/1 mark.

For a root (i, j) and mark f the algebra is generated by x_i..x_{j-1} with
``x_l x_k = p_lk x_k x_l`` for l > k.  Every ``p_lk`` is a power of zeta_L, so
straightening a word only accumulates an integer exponent.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from ..combinatorics import Mark
from ..datum import CartanDatum
from ..errors import StructuralError
from ..scalars import Scalar
from .poly import BraidedPoly, Word

Exps = tuple[int, ...]


class SkewAlgebra:
    def __init__(self, datum: CartanDatum, i: int, j: int, mark: Mark):
        datum._check_root(i, j)
        if (mark.i, mark.j) != (i, j):
            raise StructuralError(f"mark for ({mark.i},{mark.j}) used with root ({i},{j})")
        self.datum, self.i, self.j, self.mark = datum, i, j, mark
        self.m = j - i
        m = self.m
        # pexp[a][b] for a > b (0-based offsets from i)
        self.pexp = [[0] * m for _ in range(m)]
        for a in range(m):
            for b in range(a):
                l, k = i + a, i + b
                if l == k + 1:
                    self.pexp[a][b] = -datum.qexp(k, l) if mark(k) else datum.qexp(l, k)
                else:
                    self.pexp[a][b] = datum.qexp(l, k)

    def p(self, l: int, k: int) -> Scalar:
        """Commutation factor in ``x_l x_k = p_lk x_k x_l`` (l > k)."""
        return self.datum.ctx.zeta(self.pexp[l - self.i][k - self.i])

    def straighten(self, w: Word) -> tuple[int, Exps] | None:
        """Exponent of zeta and ordered monomial equal to the word, or None if it projects to 0."""
        i, m = self.i, self.m
        counts = [0] * m
        e = 0
        for a in w:
            x = a - i
            if not 0 <= x < m:
                return None
            row = self.pexp
            for y in range(x + 1, m):
                if counts[y]:
                    e += counts[y] * row[y][x]
            counts[x] += 1
        return e, tuple(counts)

    def monomial_product_exp(self, a: Exps, b: Exps) -> int:
        """``x^a x^b = zeta^e x^(a+b)``."""
        e = 0
        for l in range(self.m):
            if a[l]:
                for k in range(l):
                    if b[k]:
                        e += a[l] * b[k] * self.pexp[l][k]
        return e

    def monomial(self, exps: Exps, coeff=1) -> "SkewPoly":
        return SkewPoly(self, {tuple(exps): Scalar.coerce(self.datum.ctx, coeff)})

    def ordered_top(self, N: int) -> Exps:
        return (N,) * self.m

    def __repr__(self) -> str:
        return f"SkewAlgebra(root=({self.i},{self.j}), mark={self.mark})"


class SkewPoly:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: SkewAlgebra, terms: Mapping[Exps, Scalar] | None = None):
        self.alg = alg
        self.terms: dict[Exps, Scalar] = {k: v for k, v in (terms or {}).items() if v}

    def is_zero(self) -> bool:
        return not self.terms

    def __iter__(self) -> Iterator[tuple[Exps, Scalar]]:
        return iter(self.terms.items())

    def coefficient(self, exps: Exps) -> Scalar:
        return self.terms.get(tuple(exps), self.alg.datum.ctx.zero)

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SkewPoly(self.alg, out)

    def __neg__(self) -> "SkewPoly":
        return SkewPoly(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other) -> "SkewPoly":
        alg = self.alg
        if not isinstance(other, SkewPoly):
            c = Scalar.coerce(alg.datum.ctx, other)
            return SkewPoly(alg, {k: v * c for k, v in self.terms.items()})
        zeta = alg.datum.ctx.zeta
        out: dict[Exps, Scalar] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                ab = tuple(s + t for s, t in zip(a, b))
                v = x * y * zeta(alg.monomial_product_exp(a, b))
                out[ab] = out[ab] + v if ab in out else v
        return SkewPoly(alg, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "SkewPoly":
        out = SkewPoly(self.alg, {(0,) * self.alg.m: self.alg.datum.ctx.one})
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        i = self.alg.i
        parts = []
        for k in sorted(self.terms):
            mono = "*".join(f"x{i + a}^{e}" for a, e in enumerate(k) if e) or "1"
            parts.append(f"({self.terms[k]})*{mono}")
        return " + ".join(parts)


def skew_project(alg: SkewAlgebra, p: BraidedPoly) -> SkewPoly:
    """Image of ``p`` under the projection onto the skew algebra."""
    if p.datum != alg.datum:
        raise StructuralError("polynomial and skew algebra use different data")
    zeta = alg.datum.ctx.zeta
    out: dict[Exps, Scalar] = {}
    for w, c in p.terms.items():
        s = alg.straighten(w)
        if s is None:
            continue
        e, mono = s
        v = c * zeta(e)
        out[mono] = out[mono] + v if mono in out else v
    return SkewPoly(alg, out)


def skew_power_factor_exp(alg: SkewAlgebra, N: int) -> int:
    """Exponent e with ``(x_i ... x_{j-1})^N = zeta^e x_i^N ... x_{j-1}^N``, by the closed rule."""
    total = sum(alg.pexp[l][k] for l in range(alg.m) for k in range(l))
    return total * (N * (N - 1) // 2)
