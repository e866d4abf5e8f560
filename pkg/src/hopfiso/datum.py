"""Cartan data of type A_n.

A datum is a finite abelian group with elements ``g_1..g_n`` and characters
``chi_1..chi_n`` whose braiding matrix ``q_ij = chi_j(g_i)`` satisfies

* ``q_ii = q`` for every i, with q of odd order N > 1;
* ``q_ij q_ji = q^-1`` for neighbours and ``= 1`` otherwise.

All indices in the public API are 1-based, matching the usual notation.
Roots of unity are tracked by integer exponents of ``zeta_L``; ``Scalar``
values are produced on demand.
"""

from __future__ import annotations

import math
import random
from functools import cached_property, lru_cache
from typing import Sequence

from .combinatorics import Composition, steps
from .errors import DatumError, InputError, UnsupportedCaseError
from .groups import Character, FiniteAbelianGroup, GroupElement
from .scalars import CycloContext, Scalar, cyclo_context

__all__ = ["CartanDatum", "build_datum", "cartan_entry", "twist", "tilde", "braiding_datum",
           "random_braiding_datum", "infinite_classes_datum", "random_datum", "cyclic_square_datum", "standard_datum"]


def cartan_entry(i: int, j: int) -> int:
    """Entry of the A_n Cartan matrix."""
    if i == j:
        return 2
    return -1 if abs(i - j) == 1 else 0


class CartanDatum:
    """Validated Cartan datum; construct through :func:`build_datum`."""

    def __init__(self, group: FiniteAbelianGroup, g: Sequence[GroupElement], chi: Sequence[Character],
                 ctx: CycloContext, qexp: tuple[tuple[int, ...], ...], N: int):
        self.group = group
        self.g = tuple(g)
        self.chi = tuple(chi)
        self.ctx = ctx
        self.n = len(self.g)
        self._qexp = qexp
        self.N = N

    # -- braiding -------------------------------------------------------
    @property
    def L(self) -> int:
        return self.ctx.L

    def qexp(self, i: int, j: int) -> int:
        """Exponent e with q_ij = zeta_L^e."""
        return self._qexp[i - 1][j - 1]

    def q_ij(self, i: int, j: int) -> Scalar:
        return self.ctx.zeta(self.qexp(i, j))

    @property
    def q_exponent(self) -> int:
        return self._qexp[0][0]

    @cached_property
    def q(self) -> Scalar:
        return self.ctx.zeta(self.q_exponent)

    @cached_property
    def q_minus_one_pow_N(self) -> Scalar:
        return (self.q - 1) ** self.N

    def q_table(self) -> list[list[Scalar]]:
        return [[self.q_ij(i, j) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    # -- interval quantities --------------------------------------------
    def _check_root(self, i: int, j: int) -> None:
        if not 1 <= i < j <= self.n + 1:
            raise InputError(f"({i}, {j}) is not a positive root of A_{self.n}")

    def roots(self) -> list[tuple[int, int]]:
        """Positive roots in lexicographic order."""
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 2)]

    def interval(self, i: int, j: int) -> tuple[GroupElement, Character]:
        """``(g_ij, chi_ij)``: products over ``i <= l < j``."""
        return self._interval(i, j)

    @lru_cache(maxsize=None)
    def _interval(self, i: int, j: int) -> tuple[GroupElement, Character]:
        self._check_root(i, j)
        gij, cij = self.g[i - 1], self.chi[i - 1]
        for l in range(i + 1, j):
            gij = gij * self.g[l - 1]
            cij = cij * self.chi[l - 1]
        return gij, cij

    def g_ij(self, i: int, j: int) -> GroupElement:
        if i == j:
            return self.group.identity
        return self.interval(i, j)[0]

    def g_pow_N(self, i: int, j: int) -> GroupElement:
        """``g_ij^N`` (identity for the empty interval)."""
        return self.g_ij(i, j) ** self.N

    def chi_ij(self, i: int, j: int) -> Character:
        if i == j:
            return self.group.trivial_character
        return self.interval(i, j)[1]

    def g_N_trivial(self, i: int, j: int) -> bool:
        return self.g_pow_N(i, j).is_identity

    def chi_N_trivial(self, i: int, j: int) -> bool:
        return (self.chi_ij(i, j) ** self.N).is_trivial

    def tau_exponent(self, i: int, j: int) -> int:
        return self._tau_exponent(i, j)

    @lru_cache(maxsize=None)
    def _tau_exponent(self, i: int, j: int) -> int:
        self._check_root(i, j)
        e = 0
        for k in range(i, j):
            for l in range(k + 1, j):
                e += self.qexp(l, k)
        return (self.N * e) % self.L

    def tau(self, i: int, j: int) -> Scalar:
        """``tau_ij = prod_{i <= k < l < j} q_lk^N``."""
        return self.ctx.zeta(self.tau_exponent(i, j))

    def tau_via_characters(self, i: int, j: int) -> Scalar:
        """``tau_ij`` through the equivalent form ``prod_{i<l<j} chi_il^N(g_l)``."""
        self._check_root(i, j)
        total = self.ctx.one
        for l in range(i + 1, j):
            total = total * (self.chi_ij(i, l) ** self.N)(self.g[l - 1], self.ctx)
        return total

    def tau_path(self, seq: Composition) -> Scalar:
        """``tau(i_1, ..., i_r) = prod_s tau_{i_s i_{s+1}}``."""
        e = sum(self.tau_exponent(a, b) for a, b in steps(seq))
        return self.ctx.zeta(e)

    # -- diagram automorphism --------------------------------------------
    def sigma(self, i: int) -> int:
        return self.n - i + 1

    def tilde(self, i: int) -> int:
        """Order-reversing involution of ``{1, ..., n+1}``."""
        if not 1 <= i <= self.n + 1:
            raise InputError(f"index {i} out of range")
        return self.n - i + 2

    @cached_property
    def twisted(self) -> "CartanDatum":
        d = CartanDatum(self.group, self.g[::-1], self.chi[::-1], self.ctx,
                        tuple(tuple(row[::-1]) for row in self._qexp[::-1]), self.N)
        d.__dict__["twisted"] = self
        return d

    def key(self) -> tuple:
        return (self.group, tuple(x.exp for x in self.g), tuple(x.exp for x in self.chi), self.L)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartanDatum):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return (f"CartanDatum(n={self.n}, group={self.group!r}, g={[list(x.exp) for x in self.g]}, "
                f"chi={[list(x.exp) for x in self.chi]}, N={self.N})")


def twist(d: CartanDatum) -> CartanDatum:
    """The datum with ``g_i, chi_i`` replaced by ``g_{sigma(i)}, chi_{sigma(i)}``."""
    return d.twisted


def tilde(d: CartanDatum, i: int) -> int:
    return d.tilde(i)


def build_datum(group: FiniteAbelianGroup, g: Sequence[GroupElement], chi: Sequence[Character],
                conductor: int | None = None) -> CartanDatum:
    """Validate and return a Cartan datum of type A_n.

    The cyclotomic conductor defaults to the exponent of the group; a larger
    multiple may be supplied so several data share one field.
    """
    g, chi = list(g), list(chi)
    n = len(g)
    if len(chi) != n:
        raise InputError("g and chi must have the same length")
    if n < 2:
        raise InputError("rank n must be at least 2")
    for x in g + chi:
        if x.group != group:
            raise InputError("all g_i and chi_i must belong to the given group")
    L = conductor or group.exponent
    if L % group.exponent:
        raise InputError(f"conductor {L} is not a multiple of the group exponent {group.exponent}")
    ctx = cyclo_context(L)

    qexp = []
    for i in range(n):
        row = []
        for j in range(n):
            a = chi[j].angle(g[i]) * L
            row.append(int(a) % L)
        qexp.append(tuple(row))

    violations = []
    q = qexp[0][0]
    for i in range(n):
        if qexp[i][i] != q:
            violations.append((i + 1, i + 1, "q_ii differs from q_11"))
    for i in range(n):
        for j in range(i + 1, n):
            want = -q if j - i == 1 else 0
            if (qexp[i][j] + qexp[j][i] - want) % L:
                rel = "q^-1" if j - i == 1 else "1"
                violations.append((i + 1, j + 1, f"q_ij q_ji != {rel}"))
    if violations:
        raise DatumError("not a Cartan datum of type A_n: " + "; ".join(
            f"({i},{j}) {msg}" for i, j, msg in violations), violations)
    N = L // math.gcd(L, q)
    if N == 1:
        raise DatumError("q = 1; the order N must exceed 1", [(1, 1, "q has order 1")])
    if N % 2 == 0:
        raise UnsupportedCaseError(f"q has even order N = {N}; only odd N is supported")
    return CartanDatum(group, g, chi, ctx, tuple(qexp), N)


# -- constructors used by tests, acceptance and the CLI -------------------

def cyclic_square_datum(N: int = 3) -> CartanDatum:
    """Rank-2 datum over Z/N^2 x Z/N with ``g_1 = gh``, ``g_2 = g^-1 h``.

    Here ``chi_1(g) = chi_1(h) = zeta``, ``chi_2(g) = zeta^-2``, ``chi_2(h) = 1``
    for zeta of order N, so q = zeta^2.  Both ``g_i^N`` are nontrivial while
    ``(g_1 g_2)^N = 1``.
    """
    G = FiniteAbelianGroup((N * N, N))
    g1, g2 = G.element((1, 1)), G.element((-1, 1))
    chi1 = G.character((N, 1))
    chi2 = G.character((-2 * N, 0))
    return build_datum(G, [g1, g2], [chi1, chi2])


def standard_datum(n: int, N: int) -> CartanDatum:
    """Datum over (Z/N)^n with ``g_i = e_i`` and upper-triangular braiding.

    ``q_ii = zeta_N``, ``q_{i,i+1} = zeta_N^-1``, every other off-diagonal
    entry is 1.
    """
    G = FiniteAbelianGroup((N,) * n)
    g = list(G.gens)
    chi = []
    for j in range(n):
        exp = [0] * n
        exp[j] = 1
        if j >= 1:
            exp[j - 1] = -1  # q_{j-1, j} = chi_j(g_{j-1})
        chi.append(G.character(exp))
    return build_datum(G, g, chi)


# cyclic factor lists with order <= 200, by N
_GROUPS = {
    3: [(3, 3), (9, 3), (9, 9), (27, 3), (9, 3, 3), (3, 3, 3), (3, 3, 3, 3), (9, 9, 2), (27, 6),
        (9, 3, 3, 2), (45, 3), (15, 3)],
    5: [(5, 5), (25, 5), (5, 5, 5), (25,), (15, 5), (10, 10), (25, 5)],
}


def random_datum(rng: random.Random, n: int, N: int, max_order: int = 200,
                 factors: Sequence[int] | None = None, attempts: int = 2000,
                 nontrivial_tau: bool = False) -> CartanDatum:
    """Sample a valid datum of rank n whose q has order N.

    Group elements are drawn at random; characters are then chosen one at a
    time among those meeting the braiding constraints against the earlier
    ones.  With ``nontrivial_tau`` the sample is redrawn until some
    ``tau_ij != 1``, which only happens when some ``q_{k,k+1}^N != 1``.
    """
    pool = [f for f in _GROUPS.get(N, [(N, N)]) if math.prod(f) <= max_order]
    if factors is not None:
        pool = [tuple(factors)]
    if not pool:
        raise InputError(f"no group of order <= {max_order} available for N = {N}")
    for _ in range(attempts):
        G = FiniteAbelianGroup(rng.choice(pool))
        L = G.exponent
        if L % N:
            continue
        g = [G.element([rng.randrange(m) for m in G.factors]) for _ in range(n)]
        q = (L // N) * rng.choice([a for a in range(1, N) if math.gcd(a, N) == 1])
        chars = list(G.characters())
        chi: list[Character] = []
        ok = True
        for j in range(n):
            def fits(c: Character) -> bool:
                if int(c.angle(g[j]) * L) != q:
                    return False
                for i in range(j):
                    want = -q if j - i == 1 else 0
                    s = (c.angle(g[i]) + chi[i].angle(g[j])) * L
                    if (s - want) % L:
                        return False
                return True
            options = [c for c in chars if fits(c)]
            if not options:
                ok = False
                break
            chi.append(rng.choice(options))
        if ok:
            d = build_datum(G, g, chi)
            if nontrivial_tau and not any(d.tau_exponent(i, j) for i, j in d.roots()):
                continue
            return d
    raise InputError(f"could not sample a datum with n={n}, N={N}")


def braiding_datum(Q: Sequence[Sequence[int]], M: int) -> CartanDatum:
    """Realize ``q_ij = zeta_M^Q[i][j]`` over (Z/M)^n with ``g_i = e_i``."""
    n = len(Q)
    G = FiniteAbelianGroup((M,) * n)
    chi = [G.character([Q[i][j] % M for i in range(n)]) for j in range(n)]
    return build_datum(G, list(G.gens), chi)


def random_braiding_datum(rng: random.Random, n: int, N: int, K: int = 3,
                          want_support_tau: bool | None = None, attempts: int = 5000) -> CartanDatum:
    """Random braiding over (Z/NK)^n with some ``tau_ij != 1``.

    When ``want_support_tau`` holds (default: ``n >= 3``) the sample also has
    a root with ``chi_ij^N = 1`` and ``tau_ij != 1``, so R2 families can be
    nonzero exactly where the tau factors matter.  That needs ``j - i >= 3``.
    """
    if want_support_tau is None:
        want_support_tau = n >= 3
    M = N * K
    units = [a for a in range(1, N) if math.gcd(a, N) == 1]
    for _ in range(attempts):
        qd = K * rng.choice(units)
        Q = [[0] * n for _ in range(n)]
        for i in range(n):
            Q[i][i] = qd
            for j in range(i + 1, n):
                Q[i][j] = rng.randrange(M)
                Q[j][i] = (-Q[i][j] - (qd if j == i + 1 else 0)) % M
        d = braiding_datum(Q, M)
        taus = [r for r in d.roots() if d.tau_exponent(*r)]
        if not taus:
            continue
        if want_support_tau and not any(d.chi_N_trivial(*r) for r in taus):
            continue
        return d
    raise InputError(f"could not sample a braiding datum with n={n}, N={N}, K={K}")


def infinite_classes_datum() -> CartanDatum:
    """Rank-2 datum over (Z/9)^2 with q = zeta_9^3.

    ``g_1^3``, ``g_2^3`` and ``(g_1 g_2)^3`` are all nontrivial while
    ``chi_1^3 = chi_2^3 = 1``, so every family satisfies R1 and R2 and the
    value of ``mu_13`` (with ``mu_12 = mu_23 = 1``) separates isomorphism classes.
    """
    return braiding_datum([[3, 0], [6, 3]], 9)
