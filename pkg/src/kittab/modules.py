"""Free modules over a polynomial ring: syzygies, lifting, minors, Fitting ideals."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import gb
from .ideals import Ideal
from .ring import DomainError, Polynomial, PolyRing, StructuralError


@dataclass(frozen=True)
class FreeVector:
    ring: PolyRing
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if not e.ring.same_space(self.ring):
                raise StructuralError("vector entry from a different ring")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "FreeVector") -> "FreeVector":
        if other.rank != self.rank:
            raise StructuralError("rank mismatch")
        return FreeVector(self.ring, [a + b for a, b in zip(self.entries, other.entries)])

    def scale(self, c: Polynomial) -> "FreeVector":
        return FreeVector(self.ring, [c * a for a in self.entries])

    def __str__(self):
        return "(" + ", ".join(map(str, self.entries)) + ")"


class PolyMatrix:
    """Dense matrix of polynomials, stored row-major."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        rows = [[e if isinstance(e, Polynomial) else ring(e) for e in row] for row in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise StructuralError("ragged matrix")
        for row in rows:
            for e in row:
                if not e.ring.same_space(ring):
                    raise StructuralError("matrix entry from a different ring")
        self.ring = ring
        self.rows = rows

    @classmethod
    def zeros(cls, ring: PolyRing, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(ring, [[ring.zero()] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, ring: PolyRing, cols: Sequence[Sequence], nrows: int) -> "PolyMatrix":
        return cls(ring, [[col[i] for col in cols] for i in range(nrows)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.rows]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.columns())

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.nrows != self.nrows:
            raise StructuralError("row counts differ")
        return PolyMatrix(self.ring, [a + b for a, b in zip(self.rows, other.rows)])

    def select(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[fn(e) for e in row] for row in self.rows])

    def with_ring(self, ring: PolyRing, fn=None) -> "PolyMatrix":
        fn = fn or (lambda e: Polynomial(ring, e.terms))
        return PolyMatrix(ring, [[fn(e) for e in row] for row in self.rows])

    def row_times(self, vec: Sequence[Polynomial]) -> list[Polynomial]:
        """``[vec] * self`` for a row vector of length ``nrows``."""
        if len(vec) != self.nrows:
            raise StructuralError(f"row vector of length {len(vec)} against {self.nrows} rows")
        out = []
        for j in range(self.ncols):
            acc = self.ring.zero()
            for i, v in enumerate(vec):
                e = self.rows[i][j]
                if e and v:
                    acc = acc + v * e
            out.append(acc)
        return out

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# kernels


def _vector_to_kernel(entries, offset: int = 0) -> dict:
    out = {}
    for pos, e in enumerate(entries):
        for m, c in e.terms.items():
            out[(pos + offset, *m)] = c
    return out


def _kernel_to_entries(ring: PolyRing, p: dict, rank: int, offset: int) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(rank)]
    for t, c in p.items():
        parts[t[0] - offset][t[1:]] = c
    return [Polynomial(ring, d) for d in parts]


def _as_columns(g) -> list[list[Polynomial]]:
    cols = []
    for v in g:
        if isinstance(v, FreeVector):
            cols.append(list(v.entries))
        elif isinstance(v, Polynomial):
            cols.append([v])
        else:
            cols.append(list(v))
    return cols


def syzygies(g: Sequence, ring: PolyRing | None = None, modulo: Sequence[Polynomial] = ()) -> list[FreeVector]:
    """Generators of ``{h : sum h_i g_i = 0}``; with ``modulo`` the relation only has to hold mod that ideal.

    Computed from a position-over-term Groebner basis of the graph module
    ``R^m + R^k`` whose first ``m`` positions dominate.
    """
    cols = _as_columns(g)
    if not cols:
        raise DomainError("syzygies of an empty list")
    m = len(cols[0])
    if any(len(c) != m for c in cols):
        raise StructuralError("vectors of different rank")
    ring = ring or cols[0][0].ring
    for c in cols:
        for e in c:
            if not e.ring.same_space(ring):
                raise StructuralError("ring mismatch in syzygies")
    k = len(cols)
    rows = []
    for i, col in enumerate(cols):
        p = _vector_to_kernel(col)
        p[(m + i, *([0] * ring.nvars))] = 1
        rows.append(p)
    # relations of the target module (R/b)^m
    for b in modulo:
        if not b:
            continue
        for pos in range(m):
            rows.append({(pos, *mono): c for mono, c in b.terms.items()})
    basis = gb.groebner(rows, ring.order, ring.field.characteristic, module=True)
    out = []
    for p in basis:
        lead = min(p, key=gb.term_key(ring.order))
        if lead[0] >= m:
            out.append(FreeVector(ring, _kernel_to_entries(ring, p, k, m)))
    return out


def lift(f: Sequence[Polynomial], targets: Sequence[Polynomial]) -> list[list[Polynomial]] | None:
    """Coefficients ``c`` with ``targets[j] = sum_i c[j][i] f_i``, or None if some target is not in (f)."""
    f = list(f)
    if not f:
        return None if any(targets) else [[] for _ in targets]
    ring = f[0].ring
    r = len(f)
    # targets that are literally generators need no Groebner basis
    if all(a in f or not a for a in targets):
        out = []
        for a in targets:
            row = [ring.zero()] * r
            if a:
                row[f.index(a)] = ring.one()
            out.append(row)
        return out
    zero_mono = (0,) * ring.nvars
    rows = []
    for i, fi in enumerate(f):
        p = _vector_to_kernel([fi])
        p[(1 + i, *zero_mono)] = 1
        rows.append(p)
    mod = ring.field.characteristic
    basis = gb.groebner(rows, ring.order, mod, module=True)
    red = gb.reducer_for(basis, ring.order, mod)
    out = []
    for a in targets:
        rem = red.reduce(_vector_to_kernel([a]))
        if any(t[0] == 0 for t in rem):
            return None
        coeffs = _kernel_to_entries(ring, rem, r, 1)
        out.append([-c for c in coeffs])
    return out


# ---------------------------------------------------------------------------
# determinants


def determinant(M: PolyMatrix) -> Polynomial:
    if M.nrows != M.ncols:
        raise StructuralError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return M.ring.one()
    memo: dict = {}

    def det(row: int, cols: tuple) -> Polynomial:
        # expand along row `row` over the remaining columns
        if row == n:
            return M.ring.one()
        hit = memo.get((row, cols))
        if hit is not None:
            return hit
        acc = M.ring.zero()
        for idx, j in enumerate(cols):
            e = M.rows[row][j]
            if not e:
                continue
            sub = det(row + 1, cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = e * sub
            acc = acc - term if idx % 2 else acc + term
        memo[(row, cols)] = acc
        return acc

    return det(0, tuple(range(n)))


def minors_list(M: PolyMatrix, t: int) -> list[Polynomial]:
    if not 1 <= t <= min(M.nrows, M.ncols):
        raise DomainError(f"minor size {t} outside 1..{min(M.nrows, M.ncols)}")
    out = []
    for rows in combinations(range(M.nrows), t):
        for cols in combinations(range(M.ncols), t):
            d = determinant(M.select(rows, cols))
            if d:
                out.append(d)
    return out


def minors(M: PolyMatrix, t: int) -> Ideal:
    """Ideal of all ``t x t`` minors."""
    return Ideal(M.ring, minors_list(M, t))


# ---------------------------------------------------------------------------
# Fitting ideals


def presentation(f: Sequence[Polynomial], modulo: Sequence[Polynomial] = ()) -> PolyMatrix:
    """Columns are the syzygies of ``f``: a presentation matrix of the ideal (f)."""
    f = list(f)
    ring = f[0].ring
    syz = syzygies(f, ring, modulo=modulo)
    cols = [list(v.entries) for v in syz]
    if not cols:
        return PolyMatrix(ring, [[] for _ in f])
    return PolyMatrix.from_columns(ring, cols, len(f))


def _fitting(matrix: PolyMatrix, size: int) -> Ideal:
    ring = matrix.ring
    if size <= 0:
        return Ideal(ring, [ring.one()])
    if matrix.ncols < size or matrix.nrows < size:
        return Ideal(ring, [])
    return minors(matrix, size)


def fitting_ideal(f: Sequence[Polynomial], i: int, extra: PolyMatrix | None = None) -> Ideal:
    """``Fitt_i`` of ``(f) / (columns of extra)``: the ``(r-i)``-minors of ``[extra | Syz(f)]``."""
    f = list(f)
    r = len(f)
    pres = presentation(f)
    if extra is not None:
        if extra.nrows != r:
            raise StructuralError(f"matrix has {extra.nrows} rows, expected {r}")
        pres = extra.hstack(pres) if pres.ncols else extra
    return _fitting(pres, r - i)


def fitting_zero(f: Sequence[Polynomial], Phi: PolyMatrix) -> Ideal:
    """``Fitt_0(I/a)`` for ``I = (f)`` and ``[a] = [f] * Phi``."""
    if Phi.nrows != len(f):
        raise StructuralError(f"Phi has {Phi.nrows} rows but I has {len(f)} generators")
    return fitting_ideal(f, 0, Phi)
