"""Machine checks of the PBW expansions of reverse root vectors.

Two independent routes are available for N-th powers:

* ``rewrite``: reduce ``x_ji^N - sum t(c) x_c^N`` modulo the Serre ideal
  with a completed rewrite system.  No structural assumptions; exponential
  cost, so only tiny roots are feasible.
* ``skew_oracle``: project both sides into every skew algebra ``R_f``,
  solve the resulting square linear system for the expansion coefficients
  and compare them with the closed formula.  This presupposes that the
  expansion has the shape ``sum_e t~_e x_e^N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..combinatorics import Composition, Mark, compositions, marks, omega, omega_inv, steps
from ..datum import CartanDatum
from ..errors import BudgetExceededError, InputError
from ..groups import GroupAlgebraElement
from ..params import ParamFamily, sigma_action, t_coefficient, u_elements
from ..scalars import Scalar
from .poly import BraidedPoly, reverse_root_vector, root_vector
from .rewriting import DEFAULT_DEGREE_BUDGET, RewriteSystem, build_rewrite_system, cap_for_root
from .skew import SkewAlgebra, skew_project

MODES = ("rewrite", "skew_oracle")


@dataclass
class VerificationReport:
    suite: str
    root: tuple[int, int]
    mode: str
    ok: bool
    residual: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        out = {"suite": self.suite, "root": list(self.root), "mode": self.mode, "ok": self.ok}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.details:
            out["details"] = self.details
        return out


def _power_nf(rs: RewriteSystem, p: BraidedPoly, e: int) -> BraidedPoly:
    base = rs.normal_form(p)
    out = BraidedPoly.one(p.datum)
    for _ in range(e):
        out = rs.normal_form(out * base)
    return out


def pbw_product_nf(rs: RewriteSystem, d: CartanDatum, c: Composition, e: int) -> BraidedPoly:
    """Normal form of ``x_{i1 i2}^e ... x_{i_{r-1} i_r}^e``."""
    out = BraidedPoly.one(d)
    for a, b in steps(c):
        out = rs.normal_form(out * _power_nf(rs, root_vector(d, a, b), e))
    return out


def _rewrite_system_for(d: CartanDatum, i: int, j: int, power: int, degree_budget: int,
                        rs: RewriteSystem | None) -> RewriteSystem:
    deg = power * (j - i)
    if deg > degree_budget:
        raise BudgetExceededError(
            f"root ({i},{j}) needs degree {deg}, over the budget of {degree_budget}")
    if rs is not None:
        return rs
    return build_rewrite_system(d, max(deg, 2), cap_for_root(d, i, j, power))


# -- N-th powers ---------------------------------------------------------------

def mainreverse_rewrite(d: CartanDatum, i: int, j: int, degree_budget: int = DEFAULT_DEGREE_BUDGET,
                        rs: RewriteSystem | None = None) -> VerificationReport:
    d._check_root(i, j)
    N = d.N
    rs = _rewrite_system_for(d, i, j, N, degree_budget, rs)
    lhs = _power_nf(rs, reverse_root_vector(d, i, j), N)
    rhs = BraidedPoly(d)
    for c in compositions(i, j):
        rhs = rhs + pbw_product_nf(rs, d, c, N) * t_coefficient(d, c)
    residual = rs.normal_form(lhs - rhs)
    return VerificationReport("mainreverse", (i, j), "rewrite", residual.is_zero(),
                              None if residual.is_zero() else repr(residual),
                              {"rules": len(rs.rules)})


def solve_linear(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list[Scalar] | None:
    """Unique solution of a square system by Gaussian elimination, or None if singular."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def skew_coefficients(d: CartanDatum, i: int, j: int) -> dict[Mark, Scalar] | None:
    """Coefficients t~_e of ``x_ji^N = sum_e t~_e x_e^N`` recovered from skew projections."""
    d._check_root(i, j)
    N = d.N
    es = marks(i, j)
    xji = reverse_root_vector(d, i, j)
    factors = {(a, b): root_vector(d, a, b) for a in range(i, j) for b in range(a + 1, j + 1)}
    top = (N,) * (j - i)
    rows, rhs = [], []
    for f in es:
        alg = SkewAlgebra(d, i, j, f)
        lhs = skew_project(alg, xji) ** N
        if set(lhs.terms) - {top}:
            return None
        rhs.append(lhs.coefficient(top))
        proj = {k: skew_project(alg, v) ** N for k, v in factors.items()}
        row = []
        for e in es:
            prod = alg.monomial((0,) * (j - i))
            for step in steps(omega_inv(e)):
                prod = prod * proj[step]
            if set(prod.terms) - {top}:
                return None
            row.append(prod.coefficient(top))
        rows.append(row)
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return dict(zip(es, sol))


def mainreverse_skew(d: CartanDatum, i: int, j: int) -> VerificationReport:
    coeffs = skew_coefficients(d, i, j)
    if coeffs is None:
        return VerificationReport("mainreverse", (i, j), "skew_oracle", False,
                                  details={"error": "projection system is singular or inhomogeneous"})
    diff = {}
    for e, val in coeffs.items():
        expected = t_coefficient(d, omega_inv(e))
        if val != expected:
            diff["".join(map(str, e.bits)) or "()"] = {"solved": str(val), "formula": str(expected)}
    return VerificationReport("mainreverse", (i, j), "skew_oracle", not diff, details={"diff": diff} if diff else {})


def mainreverse_report(d: CartanDatum, i: int, j: int, mode: str = "skew_oracle",
                       degree_budget: int = DEFAULT_DEGREE_BUDGET,
                       rs: RewriteSystem | None = None) -> VerificationReport:
    if mode == "rewrite":
        return mainreverse_rewrite(d, i, j, degree_budget, rs)
    if mode == "skew_oracle":
        return mainreverse_skew(d, i, j)
    raise InputError(f"unknown verification mode {mode!r}; expected one of {MODES}")


def verify_mainreverse(d: CartanDatum, i: int, j: int, mode: str = "skew_oracle",
                       degree_budget: int = DEFAULT_DEGREE_BUDGET) -> bool:
    return mainreverse_report(d, i, j, mode, degree_budget).ok


# -- degree one ----------------------------------------------------------------

def degree1_expansion(d: CartanDatum, i: int, j: int) -> BraidedPoly:
    """``(-q)^(j-i-1) prod q_lk sum_c (q^-1 - 1)^(r-2) x_c`` as a free-algebra element."""
    ctx = d.ctx
    qinv_minus_one = d.q.inverse() - ctx.one
    pref = (-d.q) ** (j - i - 1)
    for k in range(i, j):
        for l in range(k + 1, j):
            pref = pref * d.q_ij(l, k)
    out = BraidedPoly(d)
    for c in compositions(i, j):
        term = BraidedPoly.one(d)
        for a, b in steps(c):
            term = term * root_vector(d, a, b)
        out = out + term * (qinv_minus_one ** (len(c) - 2))
    return out * pref


def degree1_report(d: CartanDatum, i: int, j: int, degree_budget: int = DEFAULT_DEGREE_BUDGET,
                   rs: RewriteSystem | None = None) -> VerificationReport:
    d._check_root(i, j)
    rs = _rewrite_system_for(d, i, j, 1, degree_budget, rs)
    residual = rs.normal_form(reverse_root_vector(d, i, j) - degree1_expansion(d, i, j))
    return VerificationReport("degree1", (i, j), "rewrite", residual.is_zero(),
                              None if residual.is_zero() else repr(residual))


def verify_degree1(d: CartanDatum, i: int, j: int, degree_budget: int = DEFAULT_DEGREE_BUDGET) -> bool:
    return degree1_report(d, i, j, degree_budget).ok


# -- substitution into the group algebra ---------------------------------------

def mainsystem1_sides(d: CartanDatum, mu: ParamFamily, i: int, j: int
                      ) -> tuple[GroupAlgebraElement, GroupAlgebraElement]:
    """Both sides at root (i, j) of the twisted datum.

    Left: ``u^{D^sigma}_ij(sigma^D(mu))``.  Right: the expansion of
    ``x_{i~ j~}^N`` with every ``x_kl^N`` replaced by ``u_kl(mu)``.
    """
    ds = d.twisted
    ds._check_root(i, j)
    lhs = u_elements(ds, sigma_action(d, mu))[(i, j)]
    u = u_elements(d, mu)
    a, b = d.tilde(j), d.tilde(i)
    rhs = GroupAlgebraElement(d.group, d.ctx)
    for c in compositions(a, b):
        term = GroupAlgebraElement.scalar(d.group, d.ctx, t_coefficient(d, c))
        for step in steps(c):
            term = term * u[step]
            if term.is_zero():
                break
        rhs = rhs + term
    return lhs, rhs


def mainsystem1_check(d: CartanDatum, mu: ParamFamily, i: int, j: int) -> bool:
    lhs, rhs = mainsystem1_sides(d, mu, i, j)
    return lhs == rhs
