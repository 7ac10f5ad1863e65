"""Ideal calculus on top of the Buchberger kernel.

Equality of ideals is identity of reduced Groebner bases.  Intersections,
colons and radical membership all go through one auxiliary variable ``@t``
that is prepended to the ring and eliminated again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import gb
from .ring import GREVLEX, DomainError, Polynomial, PolyRing, StructuralError, block_order

AUX = "@t"
INFINITE = math.inf


def _to_kernel(f: Polynomial) -> dict:
    return {(0, *m): c for m, c in f.terms.items()}


def _from_kernel(ring: PolyRing, p: dict) -> Polynomial:
    return Polynomial(ring, {t[1:]: c for t, c in p.items()})


class Ideal:
    """Generators plus a write-once cache of the reduced Groebner basis."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = ()):
        kept = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring(g)
            if not g.ring.same_space(ring):
                raise StructuralError(f"generator from {g.ring} in an ideal of {ring}")
            if g:
                kept.append(Polynomial(ring, g.terms))
        self.ring = ring
        self.gens: tuple[Polynomial, ...] = tuple(kept)
        self._gb = None

    @classmethod
    def parse(cls, ring: PolyRing, texts: Sequence[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(map(str, self.gens))}])"

    def __iter__(self):
        return iter(self.gens)

    # Groebner data ----------------------------------------------------------

    def groebner(self) -> list[Polynomial]:
        if self._gb is None:
            basis = gb.groebner(
                [_to_kernel(g) for g in self.gens], self.ring.order, self.ring.field.characteristic
            )
            self._gb = tuple(_from_kernel(self.ring, p) for p in basis)
        return list(self._gb)

    def reducer(self) -> gb.Reducer:
        return gb.reducer_for([_to_kernel(g) for g in self.groebner()], self.ring.order,
                              self.ring.field.characteristic)

    def normal_form(self, f: Polynomial) -> Polynomial:
        _check_ring(self, f)
        return _from_kernel(self.ring, self.reducer().reduce(_to_kernel(f)))

    def contains(self, f: Polynomial) -> bool:
        _check_ring(self, f)
        if not f:
            return True
        return not self.reducer().reduce(_to_kernel(f), top_only=True)

    __contains__ = contains

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        basis = self.groebner()
        return len(basis) == 1 and basis[0].is_constant()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def issubset(self, other: "Ideal") -> bool:
        _same(self, other)
        if not self.gens:
            return True
        red = other.reducer()
        return all(not red.reduce(_to_kernel(g), top_only=True) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        _same(self, other)
        other = other.with_ring(self.ring)
        return self.groebner() == other.groebner()

    def non_members(self, other: "Ideal") -> list[Polynomial]:
        """Generators of ``self`` that do not lie in ``other``."""
        _same(self, other)
        red = other.reducer()
        return [g for g in self.gens if red.reduce(_to_kernel(g), top_only=True)]

    # constructions ----------------------------------------------------------

    def with_ring(self, ring: PolyRing) -> "Ideal":
        if ring == self.ring:
            return self
        if not ring.same_space(self.ring):
            raise StructuralError(f"cannot move an ideal of {self.ring} to {ring}")
        return Ideal(ring, self.gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        _same(self, other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same(self, other)
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def plus(self, polys: Iterable[Polynomial]) -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(polys))

    def minimalized(self) -> "Ideal":
        """Drop generators that are redundant modulo the earlier ones."""
        kept: list[Polynomial] = []
        for g in self.gens:
            if not Ideal(self.ring, kept).contains(g):
                kept.append(g)
        return Ideal(self.ring, kept)


def _check_ring(I: Ideal, f: Polynomial):
    if not f.ring.same_space(I.ring):
        raise StructuralError(f"polynomial from {f.ring} tested against an ideal of {I.ring}")


def _same(I: Ideal, J: Ideal):
    if not I.ring.same_space(J.ring):
        raise StructuralError(f"ring mismatch: {I.ring} vs {J.ring}")


def ideal(ring: PolyRing, *gens) -> Ideal:
    return Ideal(ring, [ring(g) for g in gens])


# ---------------------------------------------------------------------------
# operations


def groebner_basis(I: Ideal) -> list[Polynomial]:
    return I.groebner()


def normal_form(f: Polynomial, I: Ideal) -> Polynomial:
    return I.normal_form(f)


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I.equals(J)


def eliminate(I: Ideal, first_k: int) -> Ideal:
    """Generators of ``I`` intersected with the subring on variables ``first_k:``."""
    ring = I.ring
    if not 0 <= first_k <= ring.nvars:
        raise DomainError("cannot eliminate more variables than the ring has")
    elim_ring = ring.with_order(block_order(first_k))
    basis = Ideal(elim_ring, I.gens).groebner()
    sub = PolyRing(ring.field, ring.variables[first_k:],
                   GREVLEX if ring.order.kind == "block" else ring.order)
    kept = [
        Polynomial(sub, {m[first_k:]: c for m, c in g.terms.items()})
        for g in basis
        if not any(any(m[:first_k]) for m in g.terms)
    ]
    return Ideal(sub, kept)


def _aux_ring(ring: PolyRing) -> tuple[PolyRing, callable]:
    if AUX in ring.variables:
        raise StructuralError(f"variable name {AUX} is reserved")
    ext = ring.extend([AUX], prepend=True, order=block_order(1))

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ext, {(0, *m): c for m, c in f.terms.items()})

    return ext, lift


def intersect(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    ext, lift = _aux_ring(ring)
    t = ext.gen(AUX)
    one_minus_t = ext.one() - t
    gens = [t * lift(f) for f in I.gens] + [one_minus_t * lift(g) for g in J.gens]
    basis = Ideal(ext, gens).groebner()
    kept = [
        Polynomial(ring, {m[1:]: c for m, c in g.terms.items()})
        for g in basis
        if not any(m[0] for m in g.terms)
    ]
    return Ideal(ring, kept)


def exact_quotient(h: Polynomial, g: Polynomial) -> Polynomial:
    """``h / g`` when ``g`` divides ``h``; raises DomainError otherwise."""
    ring = h.ring
    field = ring.field
    key = ring.order.key
    lm_g, lc_g = g.leading_term()
    inv = field.inv(lc_g)
    rem = dict(h.terms)
    p = field.characteristic
    quotient = {}
    while rem:
        m = min(rem, key=key)
        c = rem[m]
        e = tuple(a - b for a, b in zip(m, lm_g))
        if min(e) < 0:
            raise DomainError("polynomial division is not exact")
        qc = field.mul(c, inv)
        quotient[e] = qc
        for mg, cg in g.terms.items():
            mm = tuple(a + b for a, b in zip(mg, e))
            v = rem.get(mm, 0) - qc * cg
            if p:
                v %= p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial(ring, {m: gb._norm(c) for m, c in quotient.items()})


def colon(I: Ideal, J: Ideal) -> Ideal:
    """``I : J`` as the intersection of ``(I ∩ (g)) / g`` over the generators g of J."""
    _same(I, J)
    gens = [g for g in J.gens if g]
    if not gens:
        raise DomainError("colon by the zero ideal")
    result = None
    for g in gens:
        if g.is_constant():
            part = Ideal(I.ring, I.gens)
        else:
            cut = intersect(I, Ideal(I.ring, [g]))
            part = Ideal(I.ring, [exact_quotient(h, g) for h in cut.gens])
        result = part if result is None else intersect(result, part)
        if result.is_zero():
            break
    return result


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """Rabinowitsch: ``f`` is in the radical of ``I`` iff ``1 ∈ I + (1 - t f)``."""
    _check_ring(I, f)
    if not f:
        return True
    ring = I.ring
    if AUX in ring.variables:
        raise StructuralError(f"variable name {AUX} is reserved")
    ext = ring.extend([AUX], prepend=True)
    lift = lambda p: Polynomial(ext, {(0, *m): c for m, c in p.terms.items()})  # noqa: E731
    t = ext.gen(AUX)
    return Ideal(ext, [lift(g) for g in I.gens] + [ext.one() - t * lift(f)]).is_unit()


@dataclass(frozen=True)
class DimensionResult:
    dim: int
    height: float  # int, or INFINITE for the unit ideal

    def __post_init__(self):
        if self.dim < -1:
            raise ValueError("dimension below -1")


def _max_independent(n: int, masks: list[int]) -> int:
    # keep only inclusion-minimal supports
    masks = sorted(set(masks), key=lambda m: bin(m).count("1"))
    minimal: list[int] = []
    for m in masks:
        if not any(m & k == k for k in minimal):
            minimal.append(m)
    best = 0

    def rec(i: int, chosen: int, size: int):
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = size
            return
        with_i = chosen | (1 << i)
        if all(k & ~with_i for k in minimal):
            rec(i + 1, with_i, size + 1)
        rec(i + 1, chosen, size)

    rec(0, 0, 0)
    return best


def leading_supports(I: Ideal) -> list[int]:
    masks = []
    for g in I.groebner():
        lm = g.leading_monomial()
        masks.append(sum(1 << i for i, e in enumerate(lm) if e))
    return masks


def dimension(I: Ideal) -> DimensionResult:
    """Krull dimension from maximal independent variable sets of the initial ideal."""
    n = I.ring.nvars
    if I.is_unit():
        return DimensionResult(-1, INFINITE)
    d = _max_independent(n, leading_supports(I))
    return DimensionResult(d, n - d)


def height(I: Ideal) -> float:
    return dimension(I).height
