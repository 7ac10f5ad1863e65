"""The Koszul complex K(f; R) as a differential graded algebra.

Basis elements of K_i are increasing index tuples (0-based) of length i,
listed in lexicographic order.  Every sign comes from counting the
transpositions needed to sort a concatenation of two index tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .modules import syzygies
from .ring import DomainError, Polynomial, PolyRing, StructuralError


def basis(r: int, i: int) -> list[tuple]:
    return list(combinations(range(r), i))


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the permutation sorting ``a + b``; 0 if they share an index."""
    inversions = 0
    for x in a:
        for y in b:
            if x == y:
                return 0
            if x > y:
                inversions += 1
    return -1 if inversions % 2 else 1


class KoszulElement:
    __slots__ = ("ring", "r", "terms")

    def __init__(self, ring: PolyRing, r: int, terms: dict | None = None):
        self.ring = ring
        self.r = r
        clean = {}
        for S, c in (terms or {}).items():
            S = tuple(S)
            if any(b <= a for a, b in zip(S, S[1:])) or any(not 0 <= k < r for k in S):
                raise StructuralError(f"bad index set {S} for rank {r}")
            if c:
                clean[S] = c
        self.terms = clean

    @classmethod
    def generator(cls, ring: PolyRing, r: int, i: int) -> "KoszulElement":
        return cls(ring, r, {(i,): ring.one()})

    @classmethod
    def scalar(cls, ring: PolyRing, r: int, c) -> "KoszulElement":
        return cls(ring, r, {(): ring(c) if not isinstance(c, Polynomial) else c})

    @classmethod
    def linear(cls, ring: PolyRing, coeffs: Sequence[Polynomial]) -> "KoszulElement":
        """``sum coeffs[i] e_i``."""
        return cls(ring, len(coeffs), {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, ring: PolyRing, r: int, i: int, entries: Sequence[Polynomial]) -> "KoszulElement":
        return cls(ring, r, dict(zip(basis(r, i), entries)))

    def to_vector(self, i: int) -> list[Polynomial]:
        return [self.terms.get(S, self.ring.zero()) for S in basis(self.r, i)]

    def degrees(self) -> set[int]:
        return {len(S) for S in self.terms}

    def degree(self) -> int | None:
        """Homogeneous degree, or None for zero or mixed elements."""
        d = self.degrees()
        return d.pop() if len(d) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, S: tuple) -> Polynomial:
        return self.terms.get(tuple(S), self.ring.zero())

    def top_coefficient(self) -> Polynomial:
        return self.coefficient(tuple(range(self.r)))

    def _check(self, other: "KoszulElement"):
        if other.r != self.r:
            raise StructuralError(f"rank mismatch: {self.r} vs {other.r}")
        if not other.ring.same_space(self.ring):
            raise StructuralError("ring mismatch in Koszul algebra")

    def __add__(self, other: "KoszulElement") -> "KoszulElement":
        self._check(other)
        out = dict(self.terms)
        for S, c in other.terms.items():
            out[S] = out[S] + c if S in out else c
        return KoszulElement(self.ring, self.r, out)

    def __neg__(self):
        return KoszulElement(self.ring, self.r, {S: -c for S, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Polynomial) -> "KoszulElement":
        return KoszulElement(self.ring, self.r, {S: c * v for S, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, KoszulElement) and self.r == other.r and self.terms == other.terms

    def __hash__(self):
        return hash((self.r, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for S in sorted(self.terms, key=lambda S: (len(S), S)):
            name = "e{" + ",".join(str(k + 1) for k in S) + "}" if S else "1"
            parts.append(f"({self.terms[S]})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


def wedge(a: KoszulElement, b: KoszulElement) -> KoszulElement:
    a._check(b)
    out: dict = {}
    for S, c in a.terms.items():
        for T, d in b.terms.items():
            sign = _merge_sign(S, T)
            if not sign:
                continue
            U = tuple(sorted(S + T))
            v = c * d
            if sign < 0:
                v = -v
            out[U] = out[U] + v if U in out else v
    return KoszulElement(a.ring, a.r, out)


def wedge_all(elements: Sequence[KoszulElement], ring: PolyRing, r: int) -> KoszulElement:
    acc = KoszulElement.scalar(ring, r, 1)
    for e in elements:
        acc = wedge(acc, e)
    return acc


def differential(a: KoszulElement, f: Sequence[Polynomial]) -> KoszulElement:
    """``d(e_S) = sum_k (-1)^k f_{S_k} e_{S minus S_k}`` with k counted from 0."""
    if len(f) != a.r:
        raise StructuralError(f"differential needs {a.r} polynomials, got {len(f)}")
    out: dict = {}
    for S, c in a.terms.items():
        for k, idx in enumerate(S):
            fi = f[idx]
            if not fi:
                continue
            T = S[:k] + S[k + 1:]
            v = c * fi
            if k % 2:
                v = -v
            out[T] = out[T] + v if T in out else v
    return KoszulElement(a.ring, a.r, out)


@dataclass
class CycleBasis:
    degree: int
    generators: list = field(default_factory=list)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def differential_columns(f: Sequence[Polynomial], i: int) -> list[list[Polynomial]]:
    """Columns of the matrix of ``d_i: K_i -> K_{i-1}`` in the canonical bases."""
    r = len(f)
    ring = f[0].ring
    target = {S: n for n, S in enumerate(basis(r, i - 1))}
    cols = []
    for S in basis(r, i):
        col = [ring.zero()] * len(target)
        img = differential(KoszulElement(ring, r, {S: ring.one()}), f)
        for T, c in img.terms.items():
            col[target[T]] = c
        cols.append(col)
    return cols


def cycles(f: Sequence[Polynomial], i: int, modulo: Sequence[Polynomial] = ()) -> CycleBasis:
    """Module generators of ``Z_i(f)``.

    With ``modulo`` the cycles are those of ``K(f; R/b)``, returned as lifts to R.
    """
    f = list(f)
    r = len(f)
    if not f:
        raise DomainError("Koszul complex of an empty sequence")
    if not 0 <= i <= r:
        raise DomainError(f"cycle degree {i} outside 0..{r}")
    ring = f[0].ring
    if i == 0:
        return CycleBasis(0, [KoszulElement.scalar(ring, r, 1)])
    syz = syzygies(differential_columns(f, i), ring, modulo=modulo)
    gens = [KoszulElement.from_vector(ring, r, i, v.entries) for v in syz]
    return CycleBasis(i, gens)
