"""Root vector parameter families and the maps acting on them.

A family ``mu`` assigns a scalar to every positive root ``(i, j)``,
``1 <= i < j <= n+1``.  This module computes the group-algebra elements
``u_ij(mu)``, the normalization ``nu^D(mu)`` (the unique family satisfying R1
with the same ``u``), the diagram action ``sigma^D(mu)``, the PBW coefficients
of N-th powers of reverse root vectors, and the diagonal rescaling ``s . mu``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .combinatorics import (Composition, Mark, all_ones, compositions, marks, omega, omega_inv,
                            steps, subsequences)
from .datum import CartanDatum
from .errors import InputError, InternalConsistencyError
from .groups import GroupAlgebraElement, TensorElement
from .scalars import CycloContext, Scalar

__all__ = [
    "ParamFamily",
    "ConditionReport",
    "check_conditions",
    "satisfies_r1",
    "satisfies_r2",
    "compositions",
    "omega",
    "omega_inv",
    "marks",
    "mu_path",
    "u_elements",
    "u_elements_closed_form",
    "coproduct_check",
    "normalize",
    "sigma_action",
    "t_coefficient",
    "tau_mark",
    "t_mark",
    "scale",
    "random_r2_family",
]

Root = tuple[int, int]


class ParamFamily:
    """Immutable total map from positive roots of A_n to scalars (default 0)."""

    __slots__ = ("n", "ctx", "_entries")

    def __init__(self, n: int, ctx: CycloContext, entries: Mapping[Root, object] | None = None):
        self.n = n
        self.ctx = ctx
        clean: dict[Root, Scalar] = {}
        for (i, j), v in (entries or {}).items():
            if not 1 <= i < j <= n + 1:
                raise InputError(f"({i}, {j}) is not a positive root of A_{n}")
            s = Scalar.coerce(ctx, v)
            if s:
                clean[(i, j)] = s
        self._entries = clean

    @classmethod
    def zero(cls, n: int, ctx: CycloContext) -> "ParamFamily":
        return cls(n, ctx)

    def __getitem__(self, root: Root) -> Scalar:
        return self._entries.get(root, self.ctx.zero)

    def roots(self) -> list[Root]:
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 2)]

    def items(self) -> Iterator[tuple[Root, Scalar]]:
        for r in self.roots():
            yield r, self[r]

    def support(self) -> list[Root]:
        return sorted(self._entries)

    def replace(self, updates: Mapping[Root, object]) -> "ParamFamily":
        new = dict(self._entries)
        new.update(updates)
        return ParamFamily(self.n, self.ctx, new)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParamFamily):
            return NotImplemented
        return self.n == other.n and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._entries.items()))))

    def __repr__(self) -> str:
        body = ", ".join(f"{i}{j}: {v}" for (i, j), v in sorted(self._entries.items()))
        return f"ParamFamily(n={self.n}, {{{body}}})"


def _check_rank(d: CartanDatum, mu: ParamFamily) -> None:
    if d.n != mu.n:
        raise InputError(f"datum has rank {d.n} but family has rank {mu.n}")
    if d.L != mu.ctx.L:
        raise InputError(f"datum lives in Q(zeta_{d.L}) but family in Q(zeta_{mu.ctx.L})")


# -- conditions ------------------------------------------------------------

@dataclass(frozen=True)
class ConditionReport:
    R1: bool
    R2: bool
    R3: bool

    def as_dict(self) -> dict:
        return {"R1": self.R1, "R2": self.R2, "R3": self.R3}


def satisfies_r1(d: CartanDatum, mu: ParamFamily) -> bool:
    """mu_ij = 0 whenever g_ij^N = 1."""
    _check_rank(d, mu)
    return all(not mu[r] for r in d.roots() if d.g_N_trivial(*r))


def satisfies_r2(d: CartanDatum, mu: ParamFamily) -> bool:
    """mu_ij = 0 whenever chi_ij^N != 1."""
    _check_rank(d, mu)
    return all(not mu[r] for r in d.roots() if not d.chi_N_trivial(*r))


def check_conditions(d: CartanDatum, mu: ParamFamily) -> ConditionReport:
    u = u_elements(d, mu)
    r3 = all(u[r].is_zero() for r in d.roots() if not d.chi_N_trivial(*r))
    return ConditionReport(satisfies_r1(d, mu), satisfies_r2(d, mu), r3)


# -- u_ij ------------------------------------------------------------------

def mu_path(mu: ParamFamily, c: Composition) -> Scalar:
    """Product of mu over the consecutive steps of a composition."""
    out = mu.ctx.one
    for a, b in steps(c):
        v = mu[(a, b)]
        if not v:
            return mu.ctx.zero
        out = out * v
    return out


def _one_minus_gN(d: CartanDatum, i: int, j: int) -> GroupAlgebraElement:
    ctx = d.ctx
    return GroupAlgebraElement(d.group, ctx, {d.group.identity: ctx.one}) - \
        GroupAlgebraElement.basis(d.g_pow_N(i, j), ctx)


def u_elements(d: CartanDatum, mu: ParamFamily) -> dict[Root, GroupAlgebraElement]:
    """``u_ij = mu_ij (1 - g_ij^N) + sum_{i<p<j} (q-1)^N mu_ip u_pj``, by induction on j - i."""
    _check_rank(d, mu)
    c = d.q_minus_one_pow_N
    u: dict[Root, GroupAlgebraElement] = {}
    for length in range(1, d.n + 1):
        for i in range(1, d.n + 2 - length):
            j = i + length
            val = _one_minus_gN(d, i, j) * mu[(i, j)]
            for p in range(i + 1, j):
                if mu[(i, p)]:
                    val = val + u[(p, j)] * (c * mu[(i, p)])
            u[(i, j)] = val
    return u


def u_elements_closed_form(d: CartanDatum, mu: ParamFamily) -> dict[Root, GroupAlgebraElement]:
    """Sum over compositions with weight ``(q-1)^(N(r-2)) mu(i_1..i_r) (1 - g_{i_{r-1} i_r}^N)``."""
    _check_rank(d, mu)
    c = d.q_minus_one_pow_N
    out = {}
    for (i, j) in d.roots():
        val = GroupAlgebraElement(d.group, d.ctx)
        for comp in compositions(i, j):
            m = mu_path(mu, comp)
            if m:
                val = val + _one_minus_gN(d, comp[-2], comp[-1]) * (c ** (len(comp) - 2) * m)
        out[(i, j)] = val
    return out


def coproduct_check(d: CartanDatum, u: Mapping[Root, GroupAlgebraElement]) -> bool:
    """Whether ``Delta(u_ij) = u_ij (x) 1 + g_ij^N (x) u_ij + sum (q-1)^N u_ip g_pj^N (x) u_pj``."""
    ctx = d.ctx
    one = GroupAlgebraElement.scalar(d.group, ctx, 1)
    c = d.q_minus_one_pow_N
    for (i, j) in d.roots():
        lhs = u[(i, j)].coproduct()
        rhs = TensorElement.tensor(u[(i, j)], one) + \
            TensorElement.tensor(GroupAlgebraElement.basis(d.g_pow_N(i, j), ctx), u[(i, j)])
        for p in range(i + 1, j):
            left = u[(i, p)] * GroupAlgebraElement.basis(d.g_pow_N(p, j), ctx)
            rhs = rhs + TensorElement.tensor(left, u[(p, j)]) * c
        if lhs != rhs:
            return False
    return True


# -- normalization ---------------------------------------------------------

def normalize(d: CartanDatum, mu: ParamFamily) -> ParamFamily:
    """The unique family satisfying R1 with the same ``u_ij`` as ``mu``."""
    _check_rank(d, mu)
    u = u_elements(d, mu)
    c = d.q_minus_one_pow_N
    new: dict[Root, Scalar] = {}
    # u_pj of the new family equals u_pj of mu for shorter roots, by induction
    for length in range(1, d.n + 1):
        for i in range(1, d.n + 2 - length):
            j = i + length
            if d.g_N_trivial(i, j):
                new[(i, j)] = d.ctx.zero
                continue
            w = u[(i, j)]
            for p in range(i + 1, j):
                if new.get((i, p)):
                    w = w - u[(p, j)] * (c * new[(i, p)])
            new[(i, j)] = _extract_multiple(d, w, i, j)
    return ParamFamily(d.n, d.ctx, new)


def _extract_multiple(d: CartanDatum, w: GroupAlgebraElement, i: int, j: int) -> Scalar:
    """The scalar x with ``w = x (1 - g_ij^N)``; ``g_ij^N`` must be nontrivial."""
    e, h = d.group.identity, d.g_pow_N(i, j)
    x = w.coefficient(e)
    if set(w.terms) - {e, h} or w.coefficient(h) != -x:
        raise InternalConsistencyError(
            f"normalization at ({i},{j}): {w!r} is not a multiple of 1 - g_ij^N")
    return x


# -- diagram action --------------------------------------------------------

def sigma_action(d: CartanDatum, mu: ParamFamily) -> ParamFamily:
    """``sigma^D(mu)``, a family for the twisted datum.

    ``sigma_ij = tau_{j~ i~} (-1)^(j-i+1) sum_{I_ij} (q-1)^(N(r-2)) mu(i_r~, ..., i_1~)``
    with ``k~ = n - k + 2``.
    """
    _check_rank(d, mu)
    if not satisfies_r2(d, mu):
        raise InputError("sigma action requires a family satisfying R2")
    c = d.q_minus_one_pow_N
    t = d.tilde
    out = {}
    for (i, j) in d.roots():
        total = d.ctx.zero
        for comp in compositions(i, j):
            rev = tuple(t(x) for x in reversed(comp))
            m = mu_path(mu, rev)
            if m:
                total = total + c ** (len(comp) - 2) * m
        if total:
            sign = 1 if (j - i + 1) % 2 == 0 else -1
            out[(i, j)] = total * d.tau(t(j), t(i)) * sign
    return ParamFamily(d.n, d.ctx, out)


# -- PBW coefficients --------------------------------------------------------

def t_coefficient(d: CartanDatum, c: Composition) -> Scalar:
    """``(-1)^(j-i-r+1) (q-1)^(N(r-2)) tau(c)^(-(N-1)/2) tau_ij^((N+1)/2)``."""
    i, j, r = c[0], c[-1], len(c)
    N, L = d.N, d.L
    sign = -1 if (j - i - r + 1) % 2 else 1
    e = (-(N - 1) // 2 * sum(d.tau_exponent(a, b) for a, b in steps(c))
         + (N + 1) // 2 * d.tau_exponent(i, j))
    return d.q_minus_one_pow_N ** (r - 2) * d.ctx.zeta(e % L) * sign


def tau_mark(d: CartanDatum, e: Mark) -> Scalar:
    """``(q-1)^(N|e|) tau(Omega^-1 e)^((N-1)/2)``."""
    c = omega_inv(e)
    return d.q_minus_one_pow_N ** e.size * d.tau_path(c) ** ((d.N - 1) // 2)


def t_mark(d: CartanDatum, e: Mark) -> Scalar:
    """``(-1)^|e| tau_e^-1 (q-1)^(N(j-i-1)) tau_ij^((N+1)/2)``."""
    sign = -1 if e.size % 2 else 1
    return (tau_mark(d, e).inverse() * d.q_minus_one_pow_N ** (e.j - e.i - 1)
            * d.tau(e.i, e.j) ** ((d.N + 1) // 2) * sign)


# -- rescaling -------------------------------------------------------------

def scale(mu: ParamFamily, t: Sequence[object]) -> ParamFamily:
    """``(t . mu)_ij = (prod_{i <= l < j} t_l) mu_ij``."""
    if len(t) != mu.n:
        raise InputError(f"need {mu.n} scaling factors, got {len(t)}")
    ts = [Scalar.coerce(mu.ctx, x) for x in t]
    if any(not x for x in ts):
        raise InputError("scaling factors must be nonzero")
    out = {}
    for (i, j), v in mu.items():
        if v:
            f = mu.ctx.one
            for l in range(i, j):
                f = f * ts[l - 1]
            out[(i, j)] = f * v
    return ParamFamily(mu.n, mu.ctx, out)


def random_r2_family(rng: random.Random, d: CartanDatum, density: float = 0.7,
                     values: Iterable[int] = range(-3, 4), cyclotomic: bool = True) -> ParamFamily:
    """Random family with ``mu_ij = 0`` wherever ``chi_ij^N != 1``."""
    values = [v for v in values if v]
    out = {}
    for r in d.roots():
        if d.chi_N_trivial(*r) and rng.random() < density:
            v = d.ctx(rng.choice(values))
            if cyclotomic and rng.random() < 0.5:
                v = v + d.ctx.zeta(rng.randrange(d.L)) * rng.choice(values)
            out[r] = v
    return ParamFamily(d.n, d.ctx, out)
