"""Finite abelian groups, characters, group algebras and isomorphism search.

Groups are presented by a list of cyclic factor orders.  Elements and
characters are exponent vectors in that presentation; a character with
exponents ``b`` sends ``g = (a_t)`` to ``exp(2 pi i * sum_t a_t b_t / m_t)``.
Character values are kept as exact angles in Q/Z until a cyclotomic context
is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .combinatorics import compositions, steps
from .errors import ConductorMismatchError, InputError, StructuralError
from .scalars import CycloContext, Scalar

__all__ = [
    "FiniteAbelianGroup",
    "GroupElement",
    "Character",
    "GroupAlgebraElement",
    "TensorElement",
    "GroupHomomorphism",
    "char_eval",
    "enumerate_isomorphisms",
    "telescoping_sum_check",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(m) for m in self.factors))
        if not self.factors or any(m < 2 for m in self.factors):
            raise InputError(f"cyclic factor orders must be >= 2: {self.factors}")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors)

    def element(self, exp: Sequence[int]) -> "GroupElement":
        if len(exp) != self.rank:
            raise StructuralError(f"expected {self.rank} exponents, got {len(exp)}")
        return GroupElement(self, tuple(a % m for a, m in zip(exp, self.factors)))

    def character(self, exp: Sequence[int]) -> "Character":
        if len(exp) != self.rank:
            raise StructuralError(f"expected {self.rank} exponents, got {len(exp)}")
        return Character(self, tuple(b % m for b, m in zip(exp, self.factors)))

    @cached_property
    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    @cached_property
    def trivial_character(self) -> "Character":
        return Character(self, (0,) * self.rank)

    def gen(self, t: int) -> "GroupElement":
        exp = [0] * self.rank
        exp[t] = 1
        return GroupElement(self, tuple(exp))

    @property
    def gens(self) -> tuple["GroupElement", ...]:
        return tuple(self.gen(t) for t in range(self.rank))

    def elements(self) -> Iterator["GroupElement"]:
        for exp in product(*(range(m) for m in self.factors)):
            yield GroupElement(self, exp)

    def characters(self) -> Iterator["Character"]:
        for exp in product(*(range(m) for m in self.factors)):
            yield Character(self, exp)

    def __repr__(self) -> str:
        return "Z/" + " x Z/".join(map(str, self.factors))


@dataclass(frozen=True, slots=True)
class GroupElement:
    group: FiniteAbelianGroup
    exp: tuple[int, ...]

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise StructuralError("group elements from different groups")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, tuple(
            (a + b) % m for a, b, m in zip(self.exp, other.exp, self.group.factors)))

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(
            (a * k) % m for a, m in zip(self.exp, self.group.factors)))

    def inverse(self) -> "GroupElement":
        return self ** -1

    def __truediv__(self, other: "GroupElement") -> "GroupElement":
        return self * other.inverse()

    @property
    def is_identity(self) -> bool:
        return not any(self.exp)

    def order(self) -> int:
        return reduce(math.lcm, (m // math.gcd(a, m) for a, m in zip(self.exp, self.group.factors)), 1)

    def __repr__(self) -> str:
        return f"g{list(self.exp)}"


@dataclass(frozen=True, slots=True)
class Character:
    group: FiniteAbelianGroup
    exp: tuple[int, ...]

    def angle(self, g: GroupElement) -> Fraction:
        """chi(g) as a fraction x in [0, 1), meaning exp(2 pi i x)."""
        if g.group != self.group:
            raise StructuralError("character and element from different groups")
        return Fraction(sum(Fraction(a * b, m) for a, b, m in zip(g.exp, self.exp, self.group.factors))) % 1

    def __call__(self, g: GroupElement, ctx: CycloContext) -> Scalar:
        return char_eval(self, g, ctx)

    def __mul__(self, other: "Character") -> "Character":
        if not isinstance(other, Character) or other.group != self.group:
            raise StructuralError("characters of different groups")
        return Character(self.group, tuple(
            (a + b) % m for a, b, m in zip(self.exp, other.exp, self.group.factors)))

    def __pow__(self, k: int) -> "Character":
        return Character(self.group, tuple((b * k) % m for b, m in zip(self.exp, self.group.factors)))

    @property
    def is_trivial(self) -> bool:
        return not any(self.exp)

    def compose(self, phi: "GroupHomomorphism") -> "Character":
        """The character ``chi o phi`` of ``phi.src``."""
        if phi.dst != self.group:
            raise StructuralError("character does not live on the target of phi")
        exps = []
        for t, m in enumerate(phi.src.factors):
            x = self.angle(phi.images[t]) * m
            assert x.denominator == 1
            exps.append(int(x))
        return Character(phi.src, tuple(exps))

    def __repr__(self) -> str:
        return f"chi{list(self.exp)}"


def char_eval(chi: Character, g: GroupElement, ctx: CycloContext) -> Scalar:
    """chi(g) as an element of Q(zeta_L)."""
    x = chi.angle(g) * ctx.L
    if x.denominator != 1:
        raise ConductorMismatchError(f"character value {chi.angle(g)} not in Q(zeta_{ctx.L})")
    return ctx.zeta(int(x))


def _terms_clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if not v.is_zero()}


class GroupAlgebraElement:
    """Finitely supported map ``GroupElement -> Scalar`` with convolution product."""

    __slots__ = ("group", "ctx", "terms")

    def __init__(self, group: FiniteAbelianGroup, ctx: CycloContext, terms: Mapping | None = None):
        self.group = group
        self.ctx = ctx
        self.terms: dict[GroupElement, Scalar] = _terms_clean(terms or {})

    @classmethod
    def basis(cls, g: GroupElement, ctx: CycloContext, coeff=1) -> "GroupAlgebraElement":
        return cls(g.group, ctx, {g: Scalar.coerce(ctx, coeff)})

    @classmethod
    def scalar(cls, group: FiniteAbelianGroup, ctx: CycloContext, c) -> "GroupAlgebraElement":
        return cls.basis(group.identity, ctx, c)

    def _check(self, other: "GroupAlgebraElement") -> None:
        if not isinstance(other, GroupAlgebraElement) or other.group != self.group:
            raise StructuralError("group algebra elements over different groups")

    def coefficient(self, g: GroupElement) -> Scalar:
        return self.terms.get(g, self.ctx.zero)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out[g] + c if g in out else c
        return GroupAlgebraElement(self.group, self.ctx, out)

    def __neg__(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.group, self.ctx, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            self._check(other)
            out: dict[GroupElement, Scalar] = {}
            for g, c in self.terms.items():
                for h, d in other.terms.items():
                    k = g * h
                    out[k] = out[k] + c * d if k in out else c * d
            return GroupAlgebraElement(self.group, self.ctx, out)
        c = Scalar.coerce(self.ctx, other)
        return GroupAlgebraElement(self.group, self.ctx, {g: c * v for g, v in self.terms.items()})

    def __rmul__(self, other) -> "GroupAlgebraElement":
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def coproduct(self) -> "TensorElement":
        return TensorElement(self.group, self.ctx, {(g, g): c for g, c in self.terms.items()})

    def map(self, phi: "GroupHomomorphism") -> "GroupAlgebraElement":
        """Push forward along a group homomorphism."""
        out: dict[GroupElement, Scalar] = {}
        for g, c in self.terms.items():
            k = phi(g)
            out[k] = out[k] + c if k in out else c
        return GroupAlgebraElement(phi.dst, self.ctx, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{g}" for g, c in sorted(self.terms.items(), key=lambda t: t[0].exp))


class TensorElement:
    """Element of k[G] (x) k[G] in the basis g (x) h."""

    __slots__ = ("group", "ctx", "terms")

    def __init__(self, group: FiniteAbelianGroup, ctx: CycloContext, terms: Mapping | None = None):
        self.group = group
        self.ctx = ctx
        self.terms: dict[tuple[GroupElement, GroupElement], Scalar] = _terms_clean(terms or {})

    @classmethod
    def tensor(cls, a: GroupAlgebraElement, b: GroupAlgebraElement) -> "TensorElement":
        a._check(b)
        out = {}
        for g, c in a.terms.items():
            for h, d in b.terms.items():
                out[(g, h)] = c * d
        return cls(a.group, a.ctx, out)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.group, self.ctx, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.group, self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, other) -> "TensorElement":
        if isinstance(other, TensorElement):
            out: dict = {}
            for (g1, h1), c in self.terms.items():
                for (g2, h2), d in other.terms.items():
                    k = (g1 * g2, h1 * h2)
                    out[k] = out[k] + c * d if k in out else c * d
            return TensorElement(self.group, self.ctx, out)
        c = Scalar.coerce(self.ctx, other)
        return TensorElement(self.group, self.ctx, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.group == other.group and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms


class GroupHomomorphism:
    """Homomorphism determined by the images of the source generators."""

    def __init__(self, src: FiniteAbelianGroup, dst: FiniteAbelianGroup, images: Sequence[GroupElement]):
        images = tuple(images)
        if len(images) != src.rank:
            raise StructuralError("one image per source generator required")
        for t, (img, m) in enumerate(zip(images, src.factors)):
            if img.group != dst:
                raise StructuralError("image outside the target group")
            if m % img.order():
                raise InputError(f"image of generator {t} has order {img.order()}, not dividing {m}")
        self.src = src
        self.dst = dst
        self.images = images

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.src:
            raise StructuralError("element not in the source group")
        out = [0] * self.dst.rank
        for a, img in zip(g.exp, self.images):
            if a:
                for t, b in enumerate(img.exp):
                    out[t] += a * b
        return self.dst.element(out)

    def is_bijective(self) -> bool:
        if self.src.order != self.dst.order:
            return False
        return len({self(g) for g in self.src.elements()}) == self.dst.order

    def inverse(self) -> "GroupHomomorphism":
        if not self.is_bijective():
            raise InputError("homomorphism is not invertible")
        back = {self(g): g for g in self.src.elements()}
        return GroupHomomorphism(self.dst, self.src, [back[e] for e in self.dst.gens])

    def compose(self, other: "GroupHomomorphism") -> "GroupHomomorphism":
        """``self o other``."""
        return GroupHomomorphism(other.src, self.dst, [self(img) for img in other.images])

    @classmethod
    def identity(cls, group: FiniteAbelianGroup) -> "GroupHomomorphism":
        return cls(group, group, group.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupHomomorphism):
            return NotImplemented
        return (self.src, self.dst, self.images) == (other.src, other.dst, other.images)

    def __hash__(self) -> int:
        return hash((self.src, self.dst, self.images))

    def __repr__(self) -> str:
        return f"Hom({self.src} -> {self.dst}: {[list(i.exp) for i in self.images]})"


def enumerate_isomorphisms(
    src: FiniteAbelianGroup,
    dst: FiniteAbelianGroup,
    constraints: Iterable[tuple[GroupElement, GroupElement]] = (),
    char_constraints: Iterable[tuple[Character, Character]] = (),
) -> list[GroupHomomorphism]:
    """All isomorphisms ``phi: src -> dst`` with ``phi(a) = b`` for each constraint.

    ``char_constraints`` holds pairs ``(chi_src, chi_dst)`` requiring
    ``chi_dst o phi == chi_src``; they are checked generator by generator and
    prune the search early.  Results come in lexicographic order of the
    generator images.
    """
    if src.order != dst.order:
        return []
    constraints = list(constraints)
    char_constraints = list(char_constraints)
    for a, b in constraints:
        if a.group != src or b.group != dst:
            raise StructuralError("constraint pair outside the given groups")
    for cs, cd in char_constraints:
        if cs.group != src or cd.group != dst:
            raise StructuralError("character constraint outside the given groups")

    k = src.rank
    # check each element constraint once every generator it involves is assigned
    due: list[list[tuple[GroupElement, GroupElement]]] = [[] for _ in range(k)]
    for a, b in constraints:
        nz = [t for t, x in enumerate(a.exp) if x]
        if not nz:
            if not b.is_identity:
                return []
            continue
        due[max(nz)].append((a, b))

    candidates = []
    for t, m in enumerate(src.factors):
        gen = src.gen(t)
        want = [cs.angle(gen) for cs, _ in char_constraints]
        cands = [e for e in dst.elements()
                 if m % e.order() == 0
                 and all(cd.angle(e) == w for (_, cd), w in zip(char_constraints, want))]
        candidates.append(cands)

    results: list[GroupHomomorphism] = []
    images: list[GroupElement] = []

    def image_of(a: GroupElement) -> tuple[int, ...]:
        out = [0] * dst.rank
        for x, img in zip(a.exp, images):
            if x:
                for t, y in enumerate(img.exp):
                    out[t] += x * y
        return tuple(v % m for v, m in zip(out, dst.factors))

    def search(t: int) -> None:
        if t == k:
            phi = GroupHomomorphism(src, dst, images)
            if phi.is_bijective():
                results.append(phi)
            return
        for e in candidates[t]:
            images.append(e)
            if all(image_of(a) == b.exp for a, b in due[t]):
                search(t + 1)
            images.pop()

    search(0)
    return results


def telescoping_sum_check(h: Mapping[tuple[int, int], GroupElement], m: int, ctx: CycloContext) -> bool:
    """Compare the two alternating sums over compositions of ``(1, m)`` in k[G].

    Left: sum of ``(-1)^r (1 - h_{k_{r-1} k_r})``; right: sum of
    ``(-1)^r prod_t (1 - h_{k_t, k_t + 1})`` over the first ``r - 1`` parts.
    Requires ``h_{rs} h_{s,s+1} = h_{r,s+1}`` for ``r in {1, 2}``.
    """
    if m < 2:
        raise InputError("m must be at least 2")
    try:
        group = h[(1, 2)].group
        for r in (1, 2):
            for s in range(r + 1, m):
                if h[(r, s)] * h[(s, s + 1)] != h[(r, s + 1)]:
                    raise InputError(f"h_{r}{s} h_{s},{s + 1} != h_{r},{s + 1}")
    except KeyError as exc:
        raise InputError(f"missing h entry {exc}") from None

    one = GroupAlgebraElement.scalar(group, ctx, 1)

    def one_minus(g: GroupElement) -> GroupAlgebraElement:
        return one - GroupAlgebraElement.basis(g, ctx)

    left = GroupAlgebraElement(group, ctx)
    right = GroupAlgebraElement(group, ctx)
    for c in compositions(1, m):
        r = len(c)
        sign = -1 if r % 2 else 1
        left = left + one_minus(h[(c[-2], c[-1])]) * sign
        prod_ = one
        for a, _ in steps(c):
            prod_ = prod_ * one_minus(h[(a, a + 1)])
        right = right + prod_ * sign
    return left == right
