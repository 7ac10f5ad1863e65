"""Reproducible inputs: seeded random Kitt data and the worked examples."""

from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .ideals import Ideal
from .kitt import KittInput
from .modules import PolyMatrix
from .ring import GF, QQ, PolyRing, polys

CORPUS_SEED = 20240531
PINNED_SEED = 2505
PINNED_PRIME = 32003


def _random_monomial(rng: random.Random, n: int, deg: int) -> tuple:
    e = [0] * n
    for _ in range(deg):
        e[rng.randrange(n)] += 1
    return tuple(e)


def random_poly(ring: PolyRing, rng: random.Random, max_deg: int = 3, max_terms: int = 2,
                min_deg: int = 1):
    """A sparse polynomial with small integer coefficients, never zero."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            m = _random_monomial(rng, ring.nvars, rng.randint(min_deg, max_deg))
            terms[m] = rng.choice([-2, -1, 1, 1, 2, 3])
        p = ring.from_dict(terms)
        if p:
            return p


def random_phi_entry(ring: PolyRing, rng: random.Random):
    roll = rng.random()
    if roll < 0.25:
        return ring.zero()
    if roll < 0.55:
        return ring.const(rng.choice([-1, 1, 2]))
    if roll < 0.85:
        return ring.gens()[rng.randrange(ring.nvars)]
    return ring.gens()[rng.randrange(ring.nvars)] + ring.const(rng.choice([-1, 1]))


def random_kitt_input(ring: PolyRing, rng: random.Random, max_r: int = 3, max_s: int = 3) -> KittInput:
    r = rng.randint(1, max_r)
    s = rng.randint(1, max_s)
    f = [random_poly(ring, rng) for _ in range(r)]
    Phi = PolyMatrix(ring, [[random_phi_entry(ring, rng) for _ in range(s)] for _ in range(r)])
    return KittInput(f, Phi.row_times(f), Phi)


def corpus_ring(nvars: int = 3) -> PolyRing:
    return PolyRing(QQ, ["x", "y", "z"][:nvars])


def kitt_corpus(count: int = 20, seed: int = CORPUS_SEED) -> list[KittInput]:
    """``count`` random inputs over QQ[x,y,z] with r, s <= 3 and generators of degree <= 3."""
    rng = random.Random(seed)
    ring = corpus_ring()
    return [random_kitt_input(ring, rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# worked examples


def two_generating_sets():
    """The two generating sets of one ideal of QQ[x,y]."""
    R = PolyRing(QQ, ["x", "y"])
    return R, polys(R, ["x^2+y", "x^5"]), polys(R, ["x^2+y", "x^5+x^2+y"])


PRINTED_GENERIC_KITT_F = ["x^5*U22 + x^2*U12 + y*U12", "x^5*U21 + x^2*U11 + y*U11", "U12*U21 - U11*U22"]
PRINTED_GENERIC_KITT_F_PRIME = [
    "x^5*U22 + x^2*U12 + x^2*U22 + y*U12",
    "x^5*U21 + x^2*U11 + x^2*U21 + y*U11 + y*U21",
    "U12*U21 - U11*U22",
]


def twisted_quartic_data(field=QQ):
    """Returns ``(ring, a, f)``: a sub-ideal of the twisted quartic's ideal and its colon by m."""
    R = PolyRing(field, ["x0", "x1", "x2", "x3"])
    a = polys(R, ["x2^3 - x1*x3^2", "x0*x2^2 - x1^2*x3", "x1^3 - x0^2*x2"])
    f = a + polys(R, ["x1^2*x2^2 - x0*x1*x2*x3"])
    return R, a, f


def _random_form(ring: PolyRing, rng: random.Random, deg: int, p: int):
    terms = {}
    for c in combinations_with_replacement(range(ring.nvars), deg):
        e = [0] * ring.nvars
        for i in c:
            e[i] += 1
        terms[tuple(e)] = rng.randrange(1, p)
    return ring.from_dict(terms)


def pinned_residual_input(seed: int = PINNED_SEED) -> KittInput:
    """``I = (x3, x4)(x1, x2^2 - x3 x4)`` and a 4x4 matrix of dense forms of row degrees 2, 2, 1, 1.

    The matrix is drawn once from ``random.Random(seed)`` over F_32003; with
    the default seed ``a : I`` is a 4-residual intersection.
    """
    R = PolyRing(GF(PINNED_PRIME), ["x1", "x2", "x3", "x4"])
    f = polys(R, ["x1*x3", "x1*x4", "x2^2*x3 - x3^2*x4", "x2^2*x4 - x3*x4^2"])
    rng = random.Random(seed)
    M = PolyMatrix(R, [[_random_form(R, rng, d, PINNED_PRIME) for _ in range(4)] for d in (2, 2, 1, 1)])
    return KittInput(f, M.row_times(f), M)


def linkage_instance():
    """``(x^2, y^2)`` inside ``(x, y)`` in QQ[x,y]."""
    R = PolyRing(QQ, ["x", "y"])
    x, y = R.gens()
    return Ideal(R, [x**2, y**2]), Ideal(R, [x, y]), 2


def height_plus_one_instance():
    """Three elements of ``(x, y)`` in QQ[x,y,z] whose colon is primary to (x, y, z)."""
    R = PolyRing(QQ, ["x", "y", "z"])
    x, y, z = R.gens()
    return Ideal(R, [x**2, x * z + y**2, y * z]), Ideal(R, [x, y]), 3
