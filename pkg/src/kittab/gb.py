"""Buchberger kernel shared by ideals and free modules.

Terms are tuples ``(position, e_1, ..., e_n)``; an ideal is a module of rank
one whose terms all sit at position 0.  Polynomials inside the kernel are
plain dicts ``{term: coefficient}``.  ``mod`` is the field characteristic
(0 for the rationals).

Module orders are position-over-term with position 0 largest, then the ring
order inside a position.  Pair selection is the normal strategy (smallest lcm
first); pairs are pruned with the Gebauer-Moeller update, and the coprime
leading-monomial criterion is applied only in ideal mode, where it is valid.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from functools import lru_cache
from itertools import count
from operator import add, le, sub

from .ring import MonomialOrder


@lru_cache(maxsize=None)
def term_key(order: MonomialOrder):
    okey = order._key
    cache: dict = {}

    def key(t):
        r = cache.get(t)
        if r is None:
            r = cache[t] = (t[0], *okey(t[1:]))
        return r

    return key


def _inv(c, mod):
    if mod:
        return pow(c, -1, mod)
    q = Fraction(1) / c
    return q.numerator if q.denominator == 1 else q


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def make_monic(p: dict, key, mod) -> dict:
    lm = min(p, key=key)
    c = p[lm]
    if c == 1:
        return p
    inv = _inv(c, mod)
    if mod:
        return {m: v * inv % mod for m, v in p.items()}
    return {m: _norm(v * inv) for m, v in p.items()}


class Reducer:
    """Full reduction against an append-only list of monic polynomials.

    Reducing by any monic element of the ideal is sound, so the divisor
    cache never needs invalidation: reducible terms remember their reducer,
    irreducible ones remember how many reducers they were checked against.
    """

    def __init__(self, key, mod):
        self.key = key
        self.mod = mod
        self.lms: list = []
        self.lm_deg: list = []
        self.tails: list = []
        self._div: dict = {}

    def add(self, poly: dict) -> int:
        lm = min(poly, key=self.key)
        self.lms.append(lm)
        self.lm_deg.append(sum(lm))
        self.tails.append([(m, c) for m, c in poly.items() if m != lm])
        return len(self.lms) - 1

    def find(self, t):
        hit = self._div.get(t)
        if hit is not None and hit >= 0:
            return hit
        start = 0 if hit is None else -hit - 1
        lms, degs = self.lms, self.lm_deg
        pos = t[0]
        d = sum(t)
        for i in range(start, len(lms)):
            lm = lms[i]
            if lm[0] == pos and degs[i] <= d and all(map(le, lm, t)):
                self._div[t] = i
                return i
        self._div[t] = -len(lms) - 1
        return None

    def reduce(self, p: dict, top_only: bool = False) -> dict:
        """Normal form of ``p``; with ``top_only`` stop at the first irreducible leading term."""
        if not p:
            return {}
        key, mod = self.key, self.mod
        p = dict(p)
        heap = [(key(m), m) for m in p]
        heapq.heapify(heap)
        rem = {}
        tails = self.tails
        lms = self.lms
        find = self.find
        push, pop = heapq.heappush, heapq.heappop
        get = p.get
        while heap:
            m = pop(heap)[1]
            c = p.pop(m, None)
            if c is None:
                continue
            i = find(m)
            if i is None:
                rem[m] = c
                if top_only:
                    rem.update(p)
                    return rem
                continue
            q = tuple(map(sub, m, lms[i]))
            for mt, ct in tails[i]:
                mm = tuple(map(add, mt, q))
                old = get(mm)
                if old is None:
                    v = (-c * ct) % mod if mod else -c * ct
                    p[mm] = v
                    push(heap, (key(mm), mm))
                else:
                    v = (old - c * ct) % mod if mod else old - c * ct
                    if v:
                        p[mm] = v
                    else:
                        del p[mm]
        if not mod:
            rem = {m: _norm(v) for m, v in rem.items()}
        return rem


def _lcm(a, b):
    return tuple(map(max, a, b))


def _divides(a, b):
    return a[0] == b[0] and all(map(le, a, b))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a[1:], b[1:]))


def groebner(polys, order: MonomialOrder, mod: int, module: bool = False, stats=None) -> list[dict]:
    """Reduced Groebner basis of the module (or ideal) generated by ``polys``.

    Output elements are monic and sorted by leading term, largest first.
    """
    key = term_key(order)
    red = Reducer(key, mod)
    store: list = []  # monic polys by index
    active: list = []  # indices of the current minimal basis
    pairs: list = []  # heap of (selection key, tiebreak, i, j, lcm)
    tick = count()

    def sel(l):
        return tuple(-x for x in key(l))

    def update(h: int):
        nonlocal active, pairs
        lh = red.lms[h]
        cand = [(g, _lcm(red.lms[g], lh)) for g in active if red.lms[g][0] == lh[0]]
        kept = []
        for idx, (g, l) in enumerate(cand):
            if not module and _coprime(red.lms[g], lh):
                kept.append((g, l))
                continue
            rest = cand[idx + 1:]
            if any(_divides(l2, l) for _, l2 in rest) or any(_divides(l2, l) for _, l2 in kept):
                continue
            kept.append((g, l))
        new = [(g, l) for g, l in kept if module or not _coprime(red.lms[g], lh)]
        survivors = []
        for entry in pairs:
            _, _, i, j, l = entry
            if (
                _divides(lh, l)
                and _lcm(red.lms[i], lh) != l
                and _lcm(red.lms[j], lh) != l
            ):
                continue
            survivors.append(entry)
        for g, l in new:
            survivors.append((sel(l), next(tick), g, h, l))
        heapq.heapify(survivors)
        pairs = survivors
        active = [g for g in active if not _divides(lh, red.lms[g])]
        active.append(h)

    def insert(poly: dict) -> bool:
        poly = make_monic(poly, key, mod)
        h = red.add(poly)
        store.append(poly)
        if not module and not any(red.lms[h][1:]):
            return True  # unit ideal
        update(h)
        return False

    # seed with the inputs, each reduced against the ones before it
    inputs = [p for p in polys if p]
    inputs.sort(key=lambda p: key(min(p, key=key)), reverse=True)
    for p in inputs:
        h = red.reduce(p)
        if h and insert(h):
            return [{(0,) * len(next(iter(h))): 1}]

    n_spoly = n_zero = 0
    while pairs:
        _, _, i, j, l = heapq.heappop(pairs)
        s = _spoly(red, i, j, l, mod)
        n_spoly += 1
        h = red.reduce(s)
        if not h:
            n_zero += 1
            continue
        if insert(h):
            return [{(0,) * len(l): 1}]
    if stats is not None:
        stats.update(spolys=n_spoly, zero=n_zero, basis=len(active))

    # interreduce the minimal basis
    final = []
    minimal = sorted(active, key=lambda g: key(red.lms[g]))
    for g in minimal:
        lm = red.lms[g]
        tail = red.reduce(dict(red.tails[g]))
        out = {lm: 1}
        out.update(tail)
        final.append(out)
    return final


def _spoly(red: Reducer, i: int, j: int, l, mod) -> dict:
    qi = tuple(map(sub, l, red.lms[i]))
    qj = tuple(map(sub, l, red.lms[j]))
    out = {}
    for m, c in red.tails[i]:
        out[tuple(map(add, m, qi))] = c
    get = out.get
    for m, c in red.tails[j]:
        mm = tuple(map(add, m, qj))
        v = get(mm, 0) - c
        if mod:
            v %= mod
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def reducer_for(basis: list[dict], order: MonomialOrder, mod: int) -> Reducer:
    red = Reducer(term_key(order), mod)
    for g in basis:
        red.add(make_monic(g, red.key, mod))
    return red


def is_groebner(basis: list[dict], order: MonomialOrder, mod: int, module: bool = False) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    red = reducer_for(basis, order, mod)
    n = len(red.lms)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = red.lms[i], red.lms[j]
            if a[0] != b[0]:
                continue
            s = _spoly(red, i, j, _lcm(a, b), mod)
            if red.reduce(s):
                return False
    return True
