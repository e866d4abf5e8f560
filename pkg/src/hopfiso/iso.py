"""Deciding Hopf isomorphisms between the algebras u(D, mu).

An isomorphism ``u(D', mu') -> u(D, mu)`` is described by a group
isomorphism ``phi``, a choice ``rho`` of identity or the diagram flip, and
scalars ``s_l``; only ``t_l = s_l^N`` enter the parameter equations, and
over an algebraically closed field any nonzero ``t_l`` has an N-th root.
So the scaling part reduces to a multiplicative lattice problem:

    find t in (k^x)^n with  prod_{i <= l < j} t_l = r_ij  on the support,

decided through the Smith normal form of the interval matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from .datum import CartanDatum
from .errors import InputError, StructuralError
from .groups import GroupHomomorphism, enumerate_isomorphisms
from .params import ParamFamily, normalize, satisfies_r1, satisfies_r2, scale, sigma_action
from .scalars import Scalar, cyclo_context, root_of_unity

Root = tuple[int, int]


@dataclass(frozen=True)
class ScalingPattern:
    """Required values ``t_ij`` on the support, one particular ``t`` and the free rank."""

    required: dict[Root, Scalar]
    t: tuple[Scalar, ...]
    free_rank: int

    def t_ij(self, i: int, j: int) -> Scalar:
        out = self.t[0].ctx.one
        for l in range(i, j):
            out = out * self.t[l - 1]
        return out


@dataclass(frozen=True)
class IsoWitness:
    phi: GroupHomomorphism
    rho: str  # "id" or "sigma"
    scaling: ScalingPattern

    def as_dict(self) -> dict:
        return {
            "rho": self.rho,
            "phi": [list(img.exp) for img in self.phi.images],
            "t": {f"{i},{j}": str(v) for (i, j), v in sorted(self.scaling.required.items())},
            "t_particular": [str(x) for x in self.scaling.t],
            "free_rank": self.scaling.free_rank,
        }


# -- lattice feasibility --------------------------------------------------------

def interval_matrix(n: int, roots: Sequence[Root]) -> Matrix:
    """Rows ``v_ij = e_i + ... + e_{j-1}``."""
    return Matrix([[1 if i <= l < j else 0 for l in range(1, n + 1)] for (i, j) in roots]) \
        if roots else Matrix.zeros(0, n)


def _snf(A: Matrix):
    S, U, V = smith_normal_decomp(A)
    diag = [S[k, k] for k in range(min(S.shape)) if S[k, k] != 0]
    return S, U, V, diag


def _common_ctx(a: ParamFamily, b: ParamFamily):
    if a.ctx.L == b.ctx.L:
        return a, b
    ctx = cyclo_context(math.lcm(a.ctx.L, b.ctx.L))
    lift = lambda mu: ParamFamily(mu.n, ctx, {r: v.lift(ctx) for r, v in mu.items()})
    return lift(a), lift(b)


def solve_scaling(mu_ref: ParamFamily, mu_target: ParamFamily) -> ScalingPattern | None:
    """A pattern with ``mu_target = t . mu_ref``, or None if no ``t`` exists."""
    if mu_ref.n != mu_target.n:
        raise InputError("families of different rank")
    mu_ref, mu_target = _common_ctx(mu_ref, mu_target)
    n, ctx = mu_ref.n, mu_ref.ctx
    support = sorted(mu_ref.support())
    if support != sorted(mu_target.support()):
        return None
    ratios = [mu_target[r] / mu_ref[r] for r in support]
    if not support:
        return ScalingPattern({}, (ctx.one,) * n, n)
    A = interval_matrix(n, support)
    S, U, V, diag = _snf(A)
    rank = len(diag)
    # r' = U r (multiplicatively): r'_p = y_p^{d_p} for p < rank, 1 beyond
    rp = []
    for p in range(U.rows):
        v = ctx.one
        for row in range(U.cols):
            e = int(U[p, row])
            if e:
                v = v * ratios[row] ** e
        rp.append(v)
    if any(not rp[p].is_one() for p in range(rank, len(rp))):
        return None
    if any(abs(x) != 1 for x in diag):
        # interval matrices are totally unimodular, so this never triggers
        raise StructuralError("interval matrix has a nontrivial invariant factor")
    y = [rp[p] ** int(diag[p]) if p < rank else ctx.one for p in range(n)]
    t = []
    for l in range(n):
        v = ctx.one
        for k in range(n):
            e = int(V[l, k])
            if e:
                v = v * y[k] ** e
        t.append(v)
    pattern = ScalingPattern(dict(zip(support, ratios)), tuple(t), n - rank)
    if scale(mu_ref, t) != mu_target:
        raise StructuralError("lattice solution failed to reproduce the target family")
    return pattern


def solve_scaling_bruteforce(mu_ref: ParamFamily, mu_target: ParamFamily, order: int) -> tuple | None:
    """Search ``t`` among order-th roots of unity; complete when all ratios are such roots."""
    mu_ref, mu_target = _common_ctx(mu_ref, mu_target)
    ctx = mu_ref.ctx
    roots = [root_of_unity(ctx, order, k) for k in range(order)]
    for t in product(roots, repeat=mu_ref.n):
        if scale(mu_ref, t) == mu_target:
            return t
    return None


# -- isomorphisms ---------------------------------------------------------------

def _require_valid(d: CartanDatum, mu: ParamFamily, name: str) -> None:
    if mu.n != d.n:
        raise InputError(f"{name}: family of rank {mu.n} for a datum of rank {d.n}")
    if not satisfies_r2(d, mu):
        raise InputError(f"{name}: family violates R2 (mu_ij != 0 needs chi_ij^N = 1)")
    if not satisfies_r1(d, mu):
        raise InputError(f"{name}: family violates R1; normalize it first")


@lru_cache(maxsize=256)
def admissible_maps(d: CartanDatum, d2: CartanDatum) -> tuple[tuple[GroupHomomorphism, ...], tuple[GroupHomomorphism, ...]]:
    """Group isomorphisms ``phi: Gamma' -> Gamma`` for the untwisted and twisted cases."""
    if d.n != d2.n:
        return (), ()
    out = []
    for rho in (lambda i: i, d.sigma):
        cons = [(d2.g[i], d.g[rho(i + 1) - 1]) for i in range(d.n)]
        chars = [(d2.chi[i], d.chi[rho(i + 1) - 1]) for i in range(d.n)]
        out.append(tuple(enumerate_isomorphisms(d2.group, d.group, cons, chars)))
    return out[0], out[1]


def sigma_reference(d: CartanDatum, mu: ParamFamily) -> ParamFamily:
    """Normalized diagram image of ``mu``, a family for the twisted datum."""
    return normalize(d.twisted, sigma_action(d, mu))


def hopf_isomorphisms(d: CartanDatum, mu: ParamFamily, d2: CartanDatum, mu2: ParamFamily
                      ) -> list[IsoWitness]:
    """All witnesses for isomorphisms ``u(d2, mu2) -> u(d, mu)``."""
    _require_valid(d, mu, "reference")
    _require_valid(d2, mu2, "target")
    if d.n != d2.n:
        raise InputError("isomorphism test across different ranks")
    plain, twisted = admissible_maps(d, d2)
    out = []
    if plain:
        pat = solve_scaling(mu, mu2)
        if pat is not None:
            out += [IsoWitness(phi, "id", pat) for phi in plain]
    if twisted:
        pat = solve_scaling(sigma_reference(d, mu), mu2)
        if pat is not None:
            out += [IsoWitness(phi, "sigma", pat) for phi in twisted]
    return out


def verify_witness(d: CartanDatum, mu: ParamFamily, d2: CartanDatum, mu2: ParamFamily, w: IsoWitness) -> bool:
    """Re-check the group conditions and the scaling equality directly."""
    if not w.phi.is_bijective() or w.phi.src != d2.group or w.phi.dst != d.group:
        return False
    rho = (lambda i: i) if w.rho == "id" else d.sigma
    for i in range(1, d.n + 1):
        if w.phi(d2.g[i - 1]) != d.g[rho(i) - 1]:
            return False
        if d.chi[rho(i) - 1].compose(w.phi) != d2.chi[i - 1]:
            return False
    ref = mu if w.rho == "id" else sigma_reference(d, mu)
    ref, target = _common_ctx(ref, mu2)
    return scale(ref, w.scaling.t) == target


def inverse_witness(d: CartanDatum, mu: ParamFamily, d2: CartanDatum, mu2: ParamFamily,
                    w: IsoWitness) -> IsoWitness:
    """A witness for ``u(d, mu) -> u(d2, mu2)`` built from one in the other direction."""
    phi_inv = w.phi.inverse()
    if w.rho == "id":
        t = tuple(x.inverse() for x in w.scaling.t)
    else:
        n = d.n
        t = tuple(w.scaling.t[n - l].inverse() for l in range(1, n + 1))
    ref = mu2 if w.rho == "id" else sigma_reference(d2, mu2)
    ref, target = _common_ctx(ref, mu)
    required = {r: target[r] / ref[r] for r in ref.support()}
    return IsoWitness(phi_inv, w.rho, ScalingPattern(required, t, w.scaling.free_rank))


def is_isomorphic(d: CartanDatum, mu: ParamFamily, d2: CartanDatum, mu2: ParamFamily) -> bool:
    return bool(hopf_isomorphisms(d, mu, d2, mu2))


# -- automorphisms and classes --------------------------------------------------

@dataclass
class AutomorphismReport:
    maps_id: list[GroupHomomorphism]
    maps_sigma: list[GroupHomomorphism]
    witnesses: list[IsoWitness]
    free_rank: int
    finite_part: list[int] = field(default_factory=list)

    @property
    def finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if not self.finite:
            return None
        return len(self.witnesses) * math.prod(self.finite_part)

    def as_dict(self) -> dict:
        return {
            "admissible_phi": {"id": len(self.maps_id), "sigma": len(self.maps_sigma)},
            "witnesses": [w.as_dict() for w in self.witnesses],
            "free_rank": self.free_rank,
            "finite_part": self.finite_part,
            "finite": self.finite,
            "order": self.order,
        }


def automorphism_group(d: CartanDatum, mu: ParamFamily) -> AutomorphismReport:
    """Structure of the Hopf automorphism group of ``u(d, mu)``.

    For each admissible pair ``(phi, rho)`` the scalars ``s`` form a coset of
    ``{s : s_ij^N = 1 on the support}``, which is a torus of dimension
    ``n - rank`` times the finite group read off the Smith form of ``N * A``.
    """
    ws = hopf_isomorphisms(d, mu, d, mu)
    plain, twisted = admissible_maps(d, d)
    support = sorted(mu.support())
    A = interval_matrix(d.n, support)
    rank = A.rank() if support else 0
    finite = []
    if support:
        _, _, _, diag = _snf(A * d.N)
        finite = [abs(int(x)) for x in diag]
    return AutomorphismReport(list(plain), list(twisted), ws, d.n - rank, finite)


def iso_classes(d: CartanDatum, mus: Sequence[ParamFamily]) -> list[list[int]]:
    """Partition indices of ``mus`` into isomorphism classes of ``u(d, mu)``."""
    for k, mu in enumerate(mus):
        _require_valid(d, mu, f"family {k}")
    plain, twisted = admissible_maps(d, d)
    refs = [sigma_reference(d, mu) for mu in mus] if twisted else None
    parent = list(range(len(mus)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(len(mus)):
        for b in range(a + 1, len(mus)):
            if find(a) == find(b):
                continue
            same = (plain and solve_scaling(mus[a], mus[b]) is not None) or \
                (twisted and solve_scaling(refs[a], mus[b]) is not None)
            if same:
                parent[find(b)] = find(a)
    classes: dict[int, list[int]] = {}
    for k in range(len(mus)):
        classes.setdefault(find(k), []).append(k)
    return sorted(classes.values())


def pairwise_isomorphic(d: CartanDatum, mus: Sequence[ParamFamily]) -> list[list[bool]]:
    """Full verdict matrix, used to check that the relation is an equivalence."""
    return [[is_isomorphic(d, a, d, b) for b in mus] for a in mus]
