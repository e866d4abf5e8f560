"""Exact arithmetic in cyclotomic fields Q(zeta_L).

An element is stored as an integer coefficient vector of length phi(L) in the
power basis 1, z, ..., z^(phi-1) (z = zeta_L) together with a positive common
denominator.  Products are reduced modulo the L-th cyclotomic polynomial, so
the representation is canonical and equality is plain tuple comparison.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import ConductorMismatchError

__all__ = [
    "CycloContext",
    "Scalar",
    "cyclo_context",
    "cyclotomic_polynomial",
    "root_of_unity",
    "parse_scalar",
    "format_scalar",
]


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficient lists are low -> high
    num = list(num)
    dq = len(den) - 1
    if len(num) - 1 < dq:
        return [0], num
    quot = [0] * (len(num) - dq)
    for k in range(len(num) - 1, dq - 1, -1):
        c = num[k]
        if c:
            quot[k - dq] = c
            for t in range(dq + 1):
                num[k - dq + t] -= c * den[t]
    rem = num[:dq] or [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the L-th cyclotomic polynomial."""
    if L < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (L - 1) + [1]  # x^L - 1
    for d in range(1, L):
        if L % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    return tuple(poly)


class CycloContext:
    """The field Q(zeta_L) together with its reduction tables.

    Use :func:`cyclo_context` to obtain the shared instance for a conductor.
    """

    def __init__(self, L: int):
        if L < 1:
            raise ValueError("conductor must be positive")
        self.L = L
        self.modulus = cyclotomic_polynomial(L)
        self.phi = len(self.modulus) - 1
        phi = self.phi
        # x^k mod Phi_L for phi <= k <= 2*phi - 2
        fold = []
        cur = [0] * phi
        if phi:
            cur = [-c for c in self.modulus[:phi]]
        for _ in range(max(phi - 1, 0)):
            fold.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for t in range(phi):
                    cur[t] -= top * self.modulus[t]
        self._fold = fold
        self._zeta: dict[int, Scalar] = {}
        self._inverses: dict[tuple, Scalar] = {}
        self.zero = Scalar._make(self, (0,) * phi, 1)
        self.one = Scalar._make(self, (1,) + (0,) * (phi - 1), 1)

    def __repr__(self) -> str:
        return f"CycloContext(L={self.L})"

    def __reduce__(self):
        return (cyclo_context, (self.L,))

    def reduce(self, coeffs: list[int]) -> list[int]:
        """Reduce an integer polynomial of degree <= 2*phi - 2 modulo Phi_L."""
        phi = self.phi
        out = list(coeffs[:phi]) + [0] * max(0, phi - len(coeffs))
        for k in range(phi, len(coeffs)):
            c = coeffs[k]
            if c:
                row = self._fold[k - phi]
                for t in range(phi):
                    if row[t]:
                        out[t] += c * row[t]
        return out

    def zeta(self, k: int) -> "Scalar":
        """zeta_L ** k, cached."""
        k %= self.L
        z = self._zeta.get(k)
        if z is None:
            coeffs = [0] * max(k + 1, 1)
            coeffs[k] = 1
            coeffs = self._reduce_long(coeffs)
            z = Scalar._make(self, tuple(coeffs), 1)
            self._zeta[k] = z
        return z

    def _reduce_long(self, coeffs: list[int]) -> list[int]:
        if len(coeffs) <= self.phi:
            return coeffs + [0] * (self.phi - len(coeffs))
        _, rem = _poly_divmod_int(coeffs, list(self.modulus))
        return rem + [0] * (self.phi - len(rem))

    def __call__(self, value) -> "Scalar":
        return Scalar.coerce(self, value)


@lru_cache(maxsize=None)
def cyclo_context(L: int) -> CycloContext:
    """Shared context for Q(zeta_L)."""
    return CycloContext(L)


Number = Union[int, Fraction]


class Scalar:
    """Immutable element of Q(zeta_L)."""

    __slots__ = ("ctx", "num", "den", "_hash")

    def __init__(self, ctx: CycloContext, coeffs=(), den: int = 1):
        """Build from rational coefficients in the power basis (any length)."""
        fr = [Fraction(c) for c in coeffs]
        common = 1
        for c in fr:
            common = common * c.denominator // math.gcd(common, c.denominator)
        ints = [int(c * common) for c in fr]
        ints = ctx._reduce_long(ints) if ints else [0] * ctx.phi
        num, d = _canon(ints, common * den)
        self.ctx = ctx
        self.num = num
        self.den = d
        self._hash = None

    @classmethod
    def _make(cls, ctx: CycloContext, num: tuple, den: int) -> "Scalar":
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, ctx: CycloContext, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.ctx is not ctx and value.ctx.L != ctx.L:
                raise ConductorMismatchError(
                    f"scalar lives in Q(zeta_{value.ctx.L}), expected Q(zeta_{ctx.L})")
            return value
        if isinstance(value, int):
            return cls._make(ctx, (value,) + (0,) * (ctx.phi - 1), 1)
        if isinstance(value, Fraction):
            return cls._make(ctx, (value.numerator,) + (0,) * (ctx.phi - 1), value.denominator)
        if isinstance(value, str):
            return parse_scalar(ctx, value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.ctx.L == other.ctx.L and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == Scalar.coerce(self.ctx, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.ctx.L, self.num, self.den))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def _other(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx and other.ctx.L != self.ctx.L:
                raise ConductorMismatchError(
                    f"cannot combine Q(zeta_{self.ctx.L}) with Q(zeta_{other.ctx.L})")
            return other
        return Scalar.coerce(self.ctx, other)

    def __add__(self, other) -> "Scalar":
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            num = [a + b for a, b in zip(self.num, o.num)]
            den = self.den
        else:
            num = [a * o.den + b * self.den for a, b in zip(self.num, o.num)]
            den = self.den * o.den
        n, d = _canon(num, den)
        return Scalar._make(self.ctx, n, d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._make(self.ctx, tuple(-a for a in self.num), self.den)

    def __sub__(self, other) -> "Scalar":
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        if isinstance(other, int):
            if other == 0:
                return self.ctx.zero
            n, d = _canon([a * other for a in self.num], self.den)
            return Scalar._make(self.ctx, n, d)
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        ctx = self.ctx
        a, b = self.num, o.num
        phi = ctx.phi
        if not any(a[1:]):
            c = a[0]
            num = [c * x for x in b]
        elif not any(b[1:]):
            c = b[0]
            num = [c * x for x in a]
        else:
            conv = [0] * (2 * phi - 1)
            for s, x in enumerate(a):
                if x:
                    for t, y in enumerate(b):
                        if y:
                            conv[s + t] += x * y
            num = ctx.reduce(conv)
        n, d = _canon(num, self.den * o.den)
        return Scalar._make(ctx, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        key = (self.num, self.den)
        cached = self.ctx._inverses.get(key)
        if cached is not None:
            return cached
        inv = _invert(self)
        if len(self.ctx._inverses) < 50000:
            self.ctx._inverses[key] = inv
        return inv

    def __truediv__(self, other) -> "Scalar":
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return self._other(other) * self.inverse()

    def __pow__(self, e: int) -> "Scalar":
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        result = self.ctx.one
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def coefficients(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.num]

    def lift(self, ctx: CycloContext) -> "Scalar":
        """Embed into Q(zeta_M) for a multiple M of this conductor (z -> z^(M/L))."""
        if ctx.L % self.ctx.L:
            raise ConductorMismatchError(f"{self.ctx.L} does not divide {ctx.L}")
        if ctx.L == self.ctx.L:
            return self
        step = ctx.L // self.ctx.L
        total = ctx.zero
        for k, c in enumerate(self.num):
            if c:
                total = total + ctx.zeta(k * step) * c
        return total * Fraction(1, self.den)

    def __repr__(self) -> str:
        return f"Scalar<L={self.ctx.L}>({format_scalar(self)})"

    def __str__(self) -> str:
        return format_scalar(self)


def _canon(num, den: int) -> tuple[tuple, int]:
    if den < 0:
        num = [-a for a in num]
        den = -den
    if den != 1:
        g = den
        for a in num:
            if a:
                g = math.gcd(g, a)
                if g == 1:
                    break
        if not any(num):
            return tuple(0 for _ in num), 1
        if g != 1:
            num = [a // g for a in num]
            den //= g
    return tuple(num), den


def _fpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _fpoly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / lead
        if c:
            q[k - db] = c
            for t in range(db + 1):
                a[k - db + t] -= c * b[t]
    return q, _fpoly_trim(a[:db] or [Fraction(0)])


def _fpoly_sub_mul(s0, q, s1):
    # s0 - q*s1
    out = [Fraction(0)] * max(len(s0), len(q) + len(s1) - 1)
    for k, c in enumerate(s0):
        out[k] += c
    for a, x in enumerate(q):
        if x:
            for b, y in enumerate(s1):
                if y:
                    out[a + b] -= x * y
    return _fpoly_trim(out)


def _invert(x: Scalar) -> Scalar:
    ctx = x.ctx
    if x.is_rational():
        n, d = _canon([x.den] + [0] * (ctx.phi - 1), x.num[0])
        return Scalar._make(ctx, n, d)
    r0 = [Fraction(c) for c in ctx.modulus]
    r1 = _fpoly_trim([Fraction(c) for c in x.num])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _fpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _fpoly_sub_mul(s0, q, s1)
    c = r1[0]
    # x * s1 == c (mod Phi_L); multiply back by the denominator of x
    coeffs = [v / c * x.den for v in s1]
    return Scalar(ctx, coeffs)


def root_of_unity(ctx: CycloContext, order: int, exponent: int = 1) -> Scalar:
    """zeta_order ** exponent inside Q(zeta_L); requires order | L."""
    if order < 1 or ctx.L % order:
        raise ConductorMismatchError(f"root of unity of order {order} not in Q(zeta_{ctx.L})")
    return ctx.zeta((ctx.L // order) * exponent)


# -- text form -----------------------------------------------------------

_TERM = re.compile(
    r"""^(?:(?P<coef>\d+(?:/\d+)?)(?:\*?(?=z))?)?(?P<z>z(?:\^(?P<exp>\d+))?)?$""")


def parse_scalar(ctx: CycloContext, text: str) -> Scalar:
    """Parse ``"1/2 + 3*z^2 - z^5"`` (z = zeta_L) into a Scalar."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar text")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"malformed scalar text: {text!r}")
    total = ctx.zero
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        m = _TERM.match(piece[1:])
        if not m or (m.group("coef") is None and m.group("z") is None):
            raise ValueError(f"malformed term {piece!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("z"):
            k = int(m.group("exp")) if m.group("exp") else 1
            term = ctx.zeta(k) * (sign * coef)
        else:
            term = Scalar.coerce(ctx, sign * coef)
        total = total + term
    return total


def format_scalar(x: Scalar) -> str:
    """Canonical text form; ``parse_scalar(ctx, format_scalar(x)) == x``."""
    parts = []
    for k, c in enumerate(x.num):
        if not c:
            continue
        f = Fraction(c, x.den)
        mag = abs(f)
        if k == 0:
            body = str(mag)
        else:
            zp = "z" if k == 1 else f"z^{k}"
            body = zp if mag == 1 else f"{mag}*{zp}"
        parts.append(("-" if f < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
