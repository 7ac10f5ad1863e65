"""Kitt ideals and the identities they satisfy.

``Kitt(a, I)`` is generated by the top-degree coefficients of the products
``zeta_L ^ z`` where ``zeta_j = sum_i c_ij e_i`` are the degree-one forms
read off the matrix ``Phi`` and ``z`` runs over generators of the cycle
module ``Z_{r-|L|}(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .ideals import Ideal, colon, dimension, height, ideal_equal, intersect, radical_member
from .koszul import CycleBasis, KoszulElement, cycles, wedge, wedge_all
from .modules import PolyMatrix, fitting_ideal, fitting_zero, lift
from .report import HEIGHT_NOTE, VerificationReport, height_value
from .ring import DomainError, Polynomial, PreconditionError, StructuralError


class KittInput:
    """Generators ``f`` of I, ``a`` of the subideal, and ``Phi`` with ``[a] = [f] * Phi``."""

    __slots__ = ("ring", "f", "a", "Phi")

    def __init__(self, f: Sequence[Polynomial], a: Sequence[Polynomial], Phi: PolyMatrix):
        f, a = list(f), list(a)
        if not f:
            raise DomainError("I needs at least one generator")
        ring = f[0].ring
        for p in f + a:
            if not p.ring.same_space(ring):
                raise StructuralError("generators from different rings")
        if Phi.nrows != len(f) or (Phi.ncols != len(a) and not (a == [] and Phi.ncols == 0)):
            raise StructuralError(f"Phi is {Phi.nrows}x{Phi.ncols}, expected {len(f)}x{len(a)}")
        image = Phi.row_times(f) if a else []
        for j, (aj, bj) in enumerate(zip(a, image)):
            if aj != bj:
                raise PreconditionError(f"column {j + 1} of Phi does not express a_{j + 1} in terms of f")
        self.ring = ring
        self.f = f
        self.a = a
        self.Phi = Phi

    @classmethod
    def from_generators(cls, a: Sequence[Polynomial], f: Sequence[Polynomial]) -> "KittInput":
        """Find ``Phi`` by lifting each ``a_j`` against ``f``."""
        f, a = list(f), list(a)
        if not f:
            raise DomainError("I needs at least one generator")
        ring = f[0].ring
        coeffs = lift(f, a)
        if coeffs is None:
            bad = [str(p) for p in a if not Ideal(ring, f).contains(p)]
            raise PreconditionError(f"a is not contained in I: {', '.join(bad)}")
        Phi = PolyMatrix.from_columns(ring, coeffs, len(f)) if a else PolyMatrix(ring, [[] for _ in f])
        return cls(f, a, Phi)

    @property
    def r(self) -> int:
        return len(self.f)

    @property
    def s(self) -> int:
        return len(self.a)

    def I(self) -> Ideal:
        return Ideal(self.ring, self.f)

    def a_ideal(self) -> Ideal:
        return Ideal(self.ring, self.a)

    def zetas(self) -> list[KoszulElement]:
        return [KoszulElement.linear(self.ring, self.Phi.column(j)) for j in range(self.s)]

    def select(self, columns: Sequence[int]) -> "KittInput":
        """Keep only the listed columns of Phi (and the matching a_j)."""
        cols = list(columns)
        Phi = self.Phi.select(range(self.r), cols)
        if not cols:
            Phi = PolyMatrix(self.ring, [[] for _ in self.f])
        return KittInput(self.f, [self.a[j] for j in cols], Phi)

    def __repr__(self):
        return (f"KittInput(f=[{', '.join(map(str, self.f))}], "
                f"a=[{', '.join(map(str, self.a))}], Phi={self.Phi})")


@dataclass
class KittResult:
    ideal: Ideal
    strata: dict = field(default_factory=dict)      # k -> harvested coefficients
    provenance: list = field(default_factory=list)  # (k, L, cycle index, generator)

    @property
    def generators(self) -> list[Polynomial]:
        return list(self.ideal.gens)


CycleSource = Callable[[int], CycleBasis]


def kitt_ideal(inp: KittInput, modulo: Sequence[Polynomial] = (),
               cycle_source: CycleSource | None = None) -> KittResult:
    """Kitt(a, I); with ``modulo`` the computation happens in R/b and the result is lifted (b included)."""
    ring, r, s = inp.ring, inp.r, inp.s
    modulo = [b for b in modulo if b]
    if cycle_source is None:
        cache: dict = {}

        def cycle_source(i):
            if i not in cache:
                cache[i] = cycles(inp.f, i, modulo=modulo)
            return cache[i]

    zetas = inp.zetas()
    strata: dict = {}
    provenance: list = []
    seen: set = set()
    gens: list = []
    for k in range(0, min(s, r) + 1):
        cyc = cycle_source(r - k)
        harvested = []
        if len(cyc):
            for L in combinations(range(s), k):
                zl = wedge_all([zetas[j] for j in L], ring, r)
                if not zl:
                    continue
                for idx, z in enumerate(cyc):
                    c = wedge(zl, z).top_coefficient()
                    if not c:
                        continue
                    c = c.monic()
                    harvested.append(c)
                    provenance.append((k, tuple(j + 1 for j in L), idx, c))
                    if c not in seen:
                        seen.add(c)
                        gens.append(c)
        strata[k] = harvested
    for b in modulo:
        b = b.monic()
        if b not in seen:
            seen.add(b)
            gens.append(b)
    return KittResult(Ideal(ring, gens), strata, provenance)


def kitt(inp: KittInput) -> Ideal:
    return kitt_ideal(inp).ideal


# ---------------------------------------------------------------------------
# recursive descriptions


def kitt_recursive_small_r(inp: KittInput) -> Ideal:
    """``a + Fitt_0(I/a) + sum over (r-2)-subsets T of Kitt(a_T, I)``, valid for r <= s."""
    r, s = inp.r, inp.s
    if r > s:
        raise DomainError(f"needs r <= s, got r = {r}, s = {s}")
    total = inp.a_ideal() + fitting_zero(inp.f, inp.Phi)
    if r >= 2:
        for T in combinations(range(s), r - 2):
            total = total + kitt(inp.select(T))
    return total


def kitt_recursive_large_r(inp: KittInput) -> Ideal:
    """``sum_i Kitt(a without a_i, I) + coefficients of zeta_1 ^ ... ^ zeta_s ^ Z_{r-s}``, valid for r >= s."""
    r, s = inp.r, inp.s
    if r < s:
        raise DomainError(f"needs r >= s, got r = {r}, s = {s}")
    ring = inp.ring
    total = Ideal(ring, [])
    for i in range(s):
        total = total + kitt(inp.select([j for j in range(s) if j != i]))
    top = wedge_all(inp.zetas(), ring, r)
    extra = [wedge(top, z).top_coefficient() for z in cycles(inp.f, r - s)]
    return total.plus(extra)


# ---------------------------------------------------------------------------
# identity suite


def _non_members(gens, ideal: Ideal) -> list[str]:
    return [str(g) for g in gens if not ideal.contains(g)]


def _not_in_radical(gens, ideal: Ideal) -> list[str]:
    return [str(g) for g in gens if not radical_member(g, ideal)]


def _default_comparisons(inp: KittInput) -> list[tuple[str, KittInput]]:
    out = []
    if inp.s >= 1:
        # a_1 = first s-1 generators of a
        out.append(("smaller_a", inp.select(range(inp.s - 1))))
    if inp.r >= 2:
        # I_1 = a + (f_1) sits between a and I
        f1 = [inp.f[0]] + inp.a
        try:
            out.append(("smaller_I", KittInput.from_generators(inp.a, f1)))
        except PreconditionError:
            pass
    return out


def kitt_identity_suite(inp: KittInput, comparisons: Sequence[KittInput] | None = None,
                        result: KittResult | None = None) -> VerificationReport:
    """Containments and equalities that every Kitt ideal satisfies, checked on one input."""
    rep = VerificationReport("kitt identity suite")
    rep.note(HEIGHT_NOTE)
    K = (result or kitt_ideal(inp)).ideal
    a, I = inp.a_ideal(), inp.I()
    J = colon(a, I)
    rep.facts["kitt"] = [str(g) for g in K.gens]
    rep.facts["colon"] = [str(g) for g in J.gens]

    rep.run("a_in_kitt", lambda: _verdict(_non_members(a.gens, K), "not_in_kitt"))
    rep.run("kitt_in_colon", lambda: _verdict(_non_members(K.gens, J), "not_in_colon"))
    rep.run("colon_in_radical_kitt", lambda: _verdict(_not_in_radical(J.gens, K), "not_in_radical"))
    rep.run("kitt_in_radical_colon", lambda: _verdict(_not_in_radical(K.gens, J), "not_in_radical"))
    rep.run("fitt0_in_kitt",
            lambda: _verdict(_non_members(fitting_zero(inp.f, inp.Phi).gens, K), "not_in_kitt"))

    if comparisons is None:
        named = _default_comparisons(inp)
    else:
        named = [(f"comparison_{n + 1}", c) for n, c in enumerate(comparisons)]
    for label, other in named:
        rep.run(f"monotone_{label}", lambda other=other: _monotone(inp, K, other))

    # a single extra generator: Kitt = J
    single = next((g for g in inp.f if I.issubset(a.plus([g]))), None)
    if single is None:
        rep.skip("colon_equal_when_one_extra_generator", "I/a needs more than one generator")
    else:
        rep.run("colon_equal_when_one_extra_generator",
                lambda: _verdict(_non_members(J.gens, K), "colon_minus_kitt"))

    # s <= ht(I) + 1 for a residual intersection: Kitt = J
    ht_I, ht_J = height(I), height(J)
    rep.facts["height_I"] = height_value(ht_I)
    rep.facts["height_colon"] = height_value(ht_J)
    if J.is_proper() and ht_J >= inp.s and inp.s <= ht_I + 1:
        rep.run("colon_equal_when_s_at_most_height_plus_one",
                lambda: _verdict(_non_members(J.gens, K), "colon_minus_kitt"))
    else:
        rep.skip("colon_equal_when_s_at_most_height_plus_one",
                 "not an s-residual intersection with s <= ht(I) + 1")

    missing = _non_members(J.gens, K)
    rep.facts["kitt_equals_colon"] = not missing
    if missing:
        rep.facts["colon_minus_kitt"] = missing
    return rep


def _verdict(bad: list, label: str):
    return (not bad, {label: bad} if bad else {})


def _monotone(inp: KittInput, K: Ideal, other: KittInput):
    a, I = inp.a_ideal(), inp.I()
    a1, I1 = other.a_ideal(), other.I()
    K1 = kitt(other)
    if ideal_equal(I1, I) and a1.issubset(a):
        return _verdict(_non_members(K1.gens, K), "smaller_a_kitt_not_in_kitt")
    if ideal_equal(a1, a) and a.issubset(I1) and I1.issubset(I):
        return _verdict(_non_members(K.gens, K1), "kitt_not_in_smaller_I_kitt")
    raise PreconditionError("comparison input is not nested with the main input")


# ---------------------------------------------------------------------------
# quotients and specialization


def quotient_image_kitt(inp: KittInput, b: Ideal) -> VerificationReport:
    """Compare the image of Kitt(a, I) in R/b with the Kitt ideal of the images."""
    ring = inp.ring
    if not b.ring.same_space(ring):
        raise StructuralError("b lives in a different ring")
    if not intersect(inp.I(), b).is_zero():
        raise PreconditionError("I and b intersect nontrivially")
    rep = VerificationReport("quotient image of Kitt")
    image = kitt(inp).plus(b.gens)
    over_quotient = kitt_ideal(inp, modulo=b.gens).ideal
    rep.run("image_equals_kitt_of_images", lambda: _equal_witness(image, over_quotient))
    return rep


def specialization_by_element(inp: KittInput, f0: Polynomial) -> VerificationReport:
    """For a nonzerodivisor ``f0`` in a: Kitt(a, I) mod f0 equals Kitt of the images mod f0."""
    ring = inp.ring
    rep = VerificationReport("Kitt modulo a regular element of a")
    if not inp.a_ideal().contains(f0):
        raise PreconditionError(f"{f0} is not in a")
    if not colon(Ideal(ring, []), Ideal(ring, [f0])).is_zero():
        raise PreconditionError(f"{f0} is a zero divisor")
    lhs = kitt(inp).plus([f0])
    rhs = kitt_ideal(inp, modulo=[f0]).ideal
    rep.run("kitt_mod_f0_equals_kitt_over_quotient", lambda: _equal_witness(lhs, rhs))
    return rep


def _equal_witness(A: Ideal, B: Ideal):
    if ideal_equal(A, B):
        return True, {}
    return False, {"left_not_in_right": _non_members(A.gens, B),
                   "right_not_in_left": _non_members(B.gens, A)}


# ---------------------------------------------------------------------------
# residual intersections


def residual_check(a: Ideal, I: Ideal, s: int) -> VerificationReport:
    """Is ``J = a : I`` an s-residual intersection, and is it geometric?"""
    if not a.issubset(I):
        raise PreconditionError("a is not contained in I: " + ", ".join(_non_members(a.gens, I)))
    if len(a.gens) > s:
        raise PreconditionError(f"a has {len(a.gens)} generators, more than s = {s}")
    rep = VerificationReport(f"{s}-residual intersection check")
    rep.note(HEIGHT_NOTE)
    J = colon(a, I)
    ht_J = dimension(J).height
    ht_IJ = dimension(I + J).height
    rep.facts["colon"] = [str(g) for g in J.gens]
    rep.facts["height_colon"] = height_value(ht_J)
    rep.facts["height_I_plus_colon"] = height_value(ht_IJ)
    proper = J.is_proper()
    rep.record("algebraic", proper and ht_J >= s,
               {"height_colon": height_value(ht_J), "proper": proper, "s": s})
    rep.record("geometric", ht_IJ >= s + 1,
               {"height_I_plus_colon": height_value(ht_IJ), "needed": s + 1})
    return rep


def g_condition_heights(I: Ideal, s: int) -> list[tuple[int, object]]:
    """``(i, ht Fitt_i(I))`` for 1 <= i <= s-1."""
    out = []
    for i in range(1, s):
        F = fitting_ideal(list(I.gens), i)
        out.append((i, height_value(height(F))))
    return out


def g_condition(I: Ideal, s: int) -> bool:
    """G_s: ``ht Fitt_i(I) >= i + 1`` for ``1 <= i <= s - 1``."""
    for i, h in g_condition_heights(I, s):
        if h != "inf" and h < i + 1:
            return False
    return True
