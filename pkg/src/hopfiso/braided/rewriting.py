"""Normal forms modulo the q-Serre ideal by bounded completion.

Rules are oriented by the degree-lexicographic order with ``x_1 < ... < x_n``.
The Serre ideal is homogeneous for the Z^n letter-count grading, so
overlaps are resolved degree by degree and only words whose letter counts
fit under the configured cap ever matter.  Within that window the completed
system is confluent and normal forms are unique.
"""

from __future__ import annotations

import heapq
import logging
from itertools import count
from typing import Sequence

from ..datum import CartanDatum
from ..errors import BudgetExceededError
from ..scalars import Scalar
from .poly import BraidedPoly, Word, serre_relations

log = logging.getLogger(__name__)

DEFAULT_DEGREE_BUDGET = 16
DEFAULT_MAX_RULES = 20000


def word_key(w: Word) -> tuple:
    return (len(w), w)


class RewriteSystem:
    """Completed rule set ``leading word -> tail`` for the Serre ideal."""

    def __init__(self, datum: CartanDatum, degree_bound: int, multidegree_cap: tuple[int, ...] | None,
                 max_rules: int = DEFAULT_MAX_RULES):
        self.datum = datum
        self.degree_bound = degree_bound
        self.multidegree_cap = multidegree_cap
        self.max_rules = max_rules
        self.rules: dict[Word, dict[Word, Scalar]] = {}
        self._lengths: list[int] = []
        self._memo: dict[Word, dict[Word, Scalar]] = {}

    # -- windows ---------------------------------------------------------
    def fits(self, w: Word) -> bool:
        if len(w) > self.degree_bound:
            return False
        cap = self.multidegree_cap
        if cap is None:
            return True
        counts = [0] * len(cap)
        for a in w:
            counts[a - 1] += 1
            if counts[a - 1] > cap[a - 1]:
                return False
        return True

    # -- reduction -------------------------------------------------------
    def _find(self, w: Word):
        rules = self.rules
        for s in range(len(w)):
            for ln in self._lengths:
                if s + ln > len(w):
                    break
                sub = w[s:s + ln]
                if sub in rules:
                    return s, sub
        return None

    def _nf_word(self, w: Word) -> dict[Word, Scalar]:
        memo = self._memo
        if w in memo:
            return memo[w]
        one = self.datum.ctx.one
        stack = [w]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            m = self._find(x)
            if m is None:
                memo[x] = {x: one}
                stack.pop()
                continue
            s, lw = m
            pre, post = x[:s], x[s + len(lw):]
            tail = self.rules[lw]
            children = [pre + tw + post for tw in tail]
            missing = [ch for ch in children if ch not in memo]
            if missing:
                stack.extend(missing)
                continue
            out: dict[Word, Scalar] = {}
            for tw, tc in tail.items():
                for nw, nc in memo[pre + tw + post].items():
                    v = tc * nc
                    out[nw] = out[nw] + v if nw in out else v
            memo[x] = {k: v for k, v in out.items() if v}
            stack.pop()
        return memo[w]

    def reduce_terms(self, terms: dict[Word, Scalar]) -> dict[Word, Scalar]:
        out: dict[Word, Scalar] = {}
        for w, c in terms.items():
            if not c:
                continue
            for nw, nc in self._nf_word(w).items():
                v = c * nc
                out[nw] = out[nw] + v if nw in out else v
        return {k: v for k, v in out.items() if v}

    def normal_form(self, p: BraidedPoly) -> BraidedPoly:
        if p.datum != self.datum:
            raise BudgetExceededError("polynomial is over a different datum than the rewrite system")
        for w in p.terms:
            if not self.fits(w):
                raise BudgetExceededError(
                    f"word of length {len(w)} lies outside the completed window "
                    f"(degree bound {self.degree_bound}, cap {self.multidegree_cap})")
        return BraidedPoly(self.datum, self.reduce_terms(p.terms))

    def is_normal(self, w: Word) -> bool:
        return self._find(w) is None

    # -- completion ------------------------------------------------------
    def _add_rule(self, terms: dict[Word, Scalar]) -> Word:
        lw = max(terms, key=word_key)
        inv = terms[lw].inverse()
        tail = {w: -(c * inv) for w, c in terms.items() if w != lw}
        self.rules[lw] = tail
        if len(lw) not in self._lengths:
            self._lengths.append(len(lw))
            self._lengths.sort()
        # memoized normal forms of words at least this long may be stale
        ln = len(lw)
        self._memo = {w: v for w, v in self._memo.items() if len(w) < ln}
        if len(self.rules) > self.max_rules:
            raise BudgetExceededError(f"completion exceeded {self.max_rules} rules")
        return lw

    def _overlaps(self, a: Word, b: Word):
        """S-polynomials for suffix(a) == prefix(b) (proper overlaps)."""
        for k in range(1, min(len(a), len(b))):
            if a[-k:] == b[:k]:
                w = a + b[k:]
                if not self.fits(w):
                    continue
                x, y = b[k:], a[:-k]
                s: dict[Word, Scalar] = {}
                for tw, tc in self.rules[a].items():
                    nw = tw + x
                    s[nw] = s[nw] + tc if nw in s else tc
                for tw, tc in self.rules[b].items():
                    nw = y + tw
                    s[nw] = s[nw] - tc if nw in s else -tc
                yield w, s

    def complete(self, generators: Sequence[BraidedPoly]) -> None:
        heap: list = []
        tick = count()
        for g in generators:
            terms = {w: c for w, c in g.terms.items() if self.fits(w)}
            if len(terms) != len(g.terms):
                continue
            if terms:
                heapq.heappush(heap, (max(len(w) for w in terms), next(tick), terms))
        while heap:
            _, _, terms = heapq.heappop(heap)
            red = self.reduce_terms(terms)
            if not red:
                continue
            lw = self._add_rule(red)
            for other in list(self.rules):
                pairs = [(lw, other)] if other == lw else [(lw, other), (other, lw)]
                for a, b in pairs:
                    for w, s in self._overlaps(a, b):
                        if s:
                            heapq.heappush(heap, (len(w), next(tick), s))
        # inter-reduce tails against the final rule set
        for lw in sorted(self.rules, key=word_key):
            self.rules[lw] = self.reduce_terms(self.rules[lw])
        log.debug("completed %d rules (bound %d, cap %s)", len(self.rules), self.degree_bound,
                  self.multidegree_cap)


def build_rewrite_system(d: CartanDatum, degree_bound: int = DEFAULT_DEGREE_BUDGET,
                         multidegree_cap: Sequence[int] | None = None,
                         max_rules: int = DEFAULT_MAX_RULES) -> RewriteSystem:
    """Complete the Serre relations of ``d`` up to the given window.

    ``multidegree_cap[a-1]`` bounds the number of occurrences of ``x_a``; words
    outside the window are never rewritten and are rejected by
    :meth:`RewriteSystem.normal_form`.
    """
    if degree_bound < 2:
        raise ValueError("degree bound must be at least 2")
    cap = tuple(multidegree_cap) if multidegree_cap is not None else None
    if cap is not None and len(cap) != d.n:
        raise ValueError("multidegree cap needs one entry per generator")
    rs = RewriteSystem(d, degree_bound, cap, max_rules)
    rs.complete(serre_relations(d))
    return rs


def normal_form(rs: RewriteSystem, p: BraidedPoly) -> BraidedPoly:
    return rs.normal_form(p)


def cap_for_root(d: CartanDatum, i: int, j: int, power: int = 1) -> tuple[int, ...]:
    """Letter-count window for degree-``power`` expressions in ``x_i..x_{j-1}``."""
    return tuple(power if i <= a < j else 0 for a in range(1, d.n + 1))
