"""Acceptance criteria, shared by ``kittab selftest`` and the test suite.

Each ``criterion_N`` returns a CriterionResult; ``passed`` includes the
runtime budget.  Slow-tier criteria only run when asked.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import gb
from .corpus import (
    PRINTED_GENERIC_KITT_F, PRINTED_GENERIC_KITT_F_PRIME, pinned_residual_input, two_generating_sets, twisted_quartic_data, height_plus_one_instance,
    kitt_corpus, linkage_instance, random_poly,
)
from .generic import generic_kitt, height_report, verify_deformation, verify_specialization
from .ideals import Ideal, colon, dimension, ideal_equal, _to_kernel
from .kitt import (
    KittInput, kitt, kitt_identity_suite, kitt_recursive_large_r, kitt_recursive_small_r, residual_check,
)
from .koszul import KoszulElement, basis, differential, wedge
from .modules import PolyMatrix, _vector_to_kernel, syzygies
from .ring import GF, QQ, PolyRing


@dataclass
class CriterionResult:
    number: int
    title: str
    ok: bool = False
    skipped: bool = False
    seconds: float = 0.0
    budget: float = 0.0
    parts: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.ok and not self.skipped and self.seconds < self.budget

    def line(self) -> str:
        if self.skipped:
            status = "SKIP"
        else:
            status = "PASS" if self.passed else "FAIL"
        text = f"criterion {self.number} [{status}] {self.title} ({self.seconds:.1f} s, budget {self.budget:g} s)"
        if self.detail:
            text += f": {self.detail}"
        return text


def _finish(res: CriterionResult, t0: float) -> CriterionResult:
    res.seconds = time.perf_counter() - t0
    res.ok = all(res.parts.values()) if res.parts else res.ok
    failed = [k for k, v in res.parts.items() if not v]
    if failed and not res.detail:
        res.detail = "failed parts: " + ", ".join(failed)
    return res


# ---------------------------------------------------------------------------
# 1-2: worked examples over the rationals


def criterion_1() -> CriterionResult:
    res = CriterionResult(1, "two-generator generic Kitt ideals", budget=10)
    t0 = time.perf_counter()
    _, f, f_prime = two_generating_sets()
    K = generic_kitt(f, 2)
    K_prime = generic_kitt(f_prime, 2)
    S = K.ring
    res.parts["f_matches_display"] = ideal_equal(K, Ideal.parse(S, PRINTED_GENERIC_KITT_F))
    displayed_prime = Ideal.parse(S, PRINTED_GENERIC_KITT_F_PRIME)
    res.parts["f_prime_matches_display"] = ideal_equal(K_prime, displayed_prime)
    res.parts["generic_kitts_differ"] = not ideal_equal(K, K_prime)
    if not res.parts["f_prime_matches_display"]:
        missing = [str(g) for g in K_prime.gens if not displayed_prime.contains(g)]
        res.detail = ("the displayed ideal for f' does not contain computed generators "
                      + "; ".join(missing))
    return _finish(res, t0)


def criterion_2() -> CriterionResult:
    res = CriterionResult(2, "colon ideals of a twisted-quartic subideal", budget=60)
    t0 = time.perf_counter()
    R, a, f = twisted_quartic_data(QQ)
    m = Ideal(R, R.gens())
    I = colon(Ideal(R, a), m)
    res.parts["I_has_fourth_generator"] = ideal_equal(I, Ideal(R, f))
    J = colon(Ideal(R, a), I)
    res.parts["colon_is_maximal_ideal"] = ideal_equal(J, m)
    res.parts["height_4"] = dimension(J).height == 4
    return _finish(res, t0)


# ---------------------------------------------------------------------------
# 3-4: slow tier over F_32003


def criterion_3(slow: bool = True) -> CriterionResult:
    res = CriterionResult(3, "generic Kitt height drops below the Kitt height", budget=1800)
    if not slow:
        res.skipped, res.detail = True, "slow tier"
        return res
    t0 = time.perf_counter()
    _, a, f = twisted_quartic_data(GF(32003))
    rep = height_report(f, a, 3)
    res.parts["height_generic_kitt_3"] = rep.facts["height_generic_kitt"] == 3
    res.parts["height_kitt_4"] = rep.facts["height_kitt"] == 4
    res.detail = ", ".join(f"{k}={v}" for k, v in rep.facts.items())
    return _finish(res, t0)


def criterion_4(slow: bool = True) -> CriterionResult:
    res = CriterionResult(4, "pinned 4-residual intersection with Kitt strictly smaller", budget=1800)
    if not slow:
        res.skipped, res.detail = True, "slow tier"
        return res
    t0 = time.perf_counter()
    inp = pinned_residual_input()
    rc = residual_check(inp.a_ideal(), inp.I(), 4)
    res.parts["four_residual"] = rc.verdict("algebraic") == "pass"
    suite = kitt_identity_suite(inp, comparisons=[])
    res.parts["kitt_in_colon"] = suite.verdict("kitt_in_colon") == "pass"
    res.parts["kitt_not_colon"] = suite.facts["kitt_equals_colon"] is False
    res.parts["suite_identities_hold"] = suite.passed
    res.detail = (f"height of colon {rc.facts['height_colon']}, "
                  f"{len(suite.facts.get('colon_minus_kitt', []))} colon generators outside Kitt")
    return _finish(res, t0)


# ---------------------------------------------------------------------------
# 5-6: random corpus


def criterion_5(count: int = 20) -> CriterionResult:
    res = CriterionResult(5, "generic Kitt specializes to Kitt on random inputs", budget=300)
    t0 = time.perf_counter()
    bad = []
    for n, inp in enumerate(kitt_corpus(count)):
        if not verify_specialization(inp).passed:
            bad.append(n)
    res.parts["all_specializations_agree"] = not bad
    res.detail = f"{count} inputs" + (f", failing indices {bad}" if bad else "")
    return _finish(res, t0)


def identity_failures(inp: KittInput) -> list[str]:
    """Every Kitt identity checked on one input; returns the names of failures."""
    ring = inp.ring
    bad = []
    K = kitt(inp)
    suite = kitt_identity_suite(inp)
    bad += [f"suite:{c.name}" for c in suite.failures]

    a_gens = []
    for g in inp.a:
        if g and g not in a_gens:
            a_gens.append(g)
    if a_gens:
        ident = PolyMatrix.identity(ring, len(a_gens))
        if not kitt(KittInput(a_gens, a_gens, ident)).is_unit():
            bad.append("kitt_of_a_with_itself")
    zero_a = inp.select([])
    if not ideal_equal(kitt(zero_a), colon(Ideal(ring, []), inp.I())):
        bad.append("kitt_of_zero")
    if inp.r <= inp.s and not ideal_equal(kitt_recursive_small_r(inp), K):
        bad.append("recursive_small_r")
    if inp.r >= inp.s and not ideal_equal(kitt_recursive_large_r(inp), K):
        bad.append("recursive_large_r")
    if inp.r >= 2:
        f = inp.f + [inp.f[0] + inp.f[1]]
        Phi = PolyMatrix(ring, inp.Phi.rows + [[ring.zero()] * inp.s])
        if not ideal_equal(kitt(KittInput(f, inp.a, Phi)), K):
            bad.append("redundant_generator")
    rperm = list(reversed(range(inp.r)))
    sperm = list(reversed(range(inp.s)))
    permuted = KittInput([inp.f[i] for i in rperm], [inp.a[j] for j in sperm],
                         inp.Phi.select(rperm, sperm) if inp.s else PolyMatrix(ring, [[] for _ in rperm]))
    if not ideal_equal(kitt(permuted), K):
        bad.append("permutation")
    return bad


def criterion_6(count: int = 20) -> CriterionResult:
    res = CriterionResult(6, "Kitt identities on random inputs", budget=600)
    t0 = time.perf_counter()
    failures = {}
    for n, inp in enumerate(kitt_corpus(count)):
        bad = identity_failures(inp)
        if bad:
            failures[n] = bad
    res.parts["all_identities_hold"] = not failures
    res.detail = f"{count} inputs" + (f", failures {failures}" if failures else "")
    return _finish(res, t0)


# ---------------------------------------------------------------------------
# 7: deformation


def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "deformation checks for s <= ht(I) + 1", budget=300)
    t0 = time.perf_counter()
    names = ["residual_precondition", "colon_equals_kitt", "generic_kitt_equals_generic_residual",
             "specialization_sequence_regular", "specialized_residual_matches"]
    for label, (a, I, s) in (("linkage", linkage_instance()), ("height_plus_one", height_plus_one_instance())):
        rep = verify_deformation(a, I, s)
        res.parts[label] = all(rep.verdict(n) == "pass" for n in names)
    return _finish(res, t0)


# ---------------------------------------------------------------------------
# 8: kernels


def _nullspace(field_, rows: list[dict], ncols: int) -> list[dict]:
    """Basis of ``{v : rows . v = 0}`` by Gauss-Jordan elimination; vectors as sparse dicts."""
    pivots: dict = {}  # pivot column -> reduced row
    for row in rows:
        row = dict(row)
        for col, prow in pivots.items():
            c = row.get(col)
            if c:
                for k, v in prow.items():
                    nv = field_.add(row.get(k, 0), field_.neg(field_.mul(c, v)))
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        col = min(row)
        inv = field_.inv(row[col])
        row = {k: field_.mul(v, inv) for k, v in row.items()}
        for pc, prow in pivots.items():
            c = prow.get(col)
            if c:
                for k, v in row.items():
                    nv = field_.add(prow.get(k, 0), field_.neg(field_.mul(c, v)))
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[col] = row
    basis_ = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: 1}
        for pc, prow in pivots.items():
            c = prow.get(free)
            if c:
                vec[pc] = field_.neg(c)
        basis_.append(vec)
    return basis_


def _monomials_up_to(n: int, d: int) -> list[tuple]:
    out = []
    for deg in range(d + 1):
        for c in combinations_with_replacement(range(n), deg):
            e = [0] * n
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


def syzygy_completeness(g: list, D: int = 6) -> tuple[bool, str]:
    """Every syzygy of total degree <= D found by linear algebra lies in the computed module."""
    g = [list(v) for v in g]
    ring = g[0][0].ring
    m = len(g[0])
    syz = syzygies(g, ring)
    for h in syz:
        for pos in range(m):
            total = ring.zero()
            for hi, gi in zip(h.entries, g):
                total = total + hi * gi[pos]
            if total:
                return False, "returned vector is not a syzygy"
    unknowns = []
    for i, gi in enumerate(g):
        deg = max((e.total_degree() for e in gi if e), default=0)
        for mono in _monomials_up_to(ring.nvars, D - deg):
            unknowns.append((i, mono))
    equations: dict = {}
    for col, (i, mono) in enumerate(unknowns):
        for pos, e in enumerate(g[i]):
            for mm, c in e.terms.items():
                key = (pos, tuple(a + b for a, b in zip(mm, mono)))
                equations.setdefault(key, {})[col] = c
    null = _nullspace(ring.field, list(equations.values()), len(unknowns))
    mod = ring.field.characteristic
    if syz:
        basis_ = gb.groebner([_vector_to_kernel(h.entries) for h in syz], ring.order, mod, module=True)
        red = gb.reducer_for(basis_, ring.order, mod)
    for vec in null:
        entries = [{} for _ in g]
        for col, c in vec.items():
            i, mono = unknowns[col]
            entries[i][mono] = c
        kern = {(i, *mono): c for i, d in enumerate(entries) for mono, c in d.items()}
        if not kern:
            continue
        if not syz or red.reduce(kern):
            return False, "a low-degree syzygy is missing from the computed module"
    return True, f"{len(null)} low-degree syzygies checked"


def random_koszul_element(ring: PolyRing, r: int, rng: random.Random, degree: int | None = None):
    d = rng.randint(0, r) if degree is None else degree
    subsets = basis(r, d)
    terms = {}
    for S in rng.sample(subsets, rng.randint(1, len(subsets))):
        terms[S] = random_poly(ring, rng, max_deg=2, min_deg=0)
    return KoszulElement(ring, r, terms)


def koszul_identities(count: int = 100, seed: int = 7) -> list[str]:
    rng = random.Random(seed)
    ring = PolyRing(QQ, ["x", "y", "z"])
    bad = []
    for n in range(count):
        r = rng.randint(2, 4)
        f = [random_poly(ring, rng) for _ in range(r)]
        a = random_koszul_element(ring, r, rng)
        b = random_koszul_element(ring, r, rng)
        if differential(differential(a, f), f):
            bad.append(f"d2:{n}")
        da, db = differential(a, f), differential(b, f)
        sign_a = a.scale(ring.const(-1)) if a.degree() % 2 else a
        left = differential(wedge(a, b), f)
        right = wedge(da, b) + wedge(sign_a, db)
        if left != right:
            bad.append(f"leibniz:{n}")
    return bad


def brute_force_dimension(n: int, gens: list[tuple]) -> int:
    """Largest variable set containing the support of no generator (-1 for the unit ideal)."""
    if any(not any(g) for g in gens):
        return -1
    supports = [{i for i, e in enumerate(g) if e} for g in gens]
    best = 0
    for mask in range(1 << n):
        chosen = {i for i in range(n) if mask >> i & 1}
        if all(not s <= chosen for s in supports):
            best = max(best, len(chosen))
    return best


def random_monomial_ideals(count: int = 20, seed: int = 11):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, 4)
        ring = PolyRing(QQ, [f"v{i}" for i in range(n)])
        gens = []
        for _ in range(rng.randint(1, 4)):
            e = [0] * n
            for _ in range(rng.randint(1, 3)):
                e[rng.randrange(n)] += 1
            gens.append(tuple(e))
        out.append((ring, gens))
    return out


def criterion_8() -> CriterionResult:
    res = CriterionResult(8, "kernel correctness", budget=300)
    t0 = time.perf_counter()
    # Buchberger criterion on the bases behind the corpus computations
    ok = True
    for inp in kitt_corpus(20):
        for I in (inp.I(), inp.a_ideal(), kitt(inp), colon(inp.a_ideal(), inp.I())):
            if I.is_zero():
                continue
            basis_ = [_to_kernel(g) for g in I.groebner()]
            ok = ok and gb.is_groebner(basis_, I.ring.order, I.ring.field.characteristic)
    res.parts["spolys_reduce_to_zero"] = ok

    rng = random.Random(3)
    ring = PolyRing(QQ, ["x", "y", "z"])
    complete = True
    for _ in range(8):
        k = rng.randint(2, 3)
        g = [[random_poly(ring, rng, max_deg=3)] for _ in range(k)]
        complete = complete and syzygy_completeness(g, 6)[0]
    vec = [[random_poly(ring, rng, max_deg=2), random_poly(ring, rng, max_deg=2)] for _ in range(3)]
    complete = complete and syzygy_completeness(vec, 5)[0]
    res.parts["syzygies_complete_to_degree_6"] = complete

    res.parts["koszul_d2_and_leibniz"] = not koszul_identities(100)

    dims_ok = True
    for R, gens in random_monomial_ideals(20):
        I = Ideal(R, [R.monomial(e) for e in gens])
        dims_ok = dims_ok and dimension(I).dim == brute_force_dimension(R.nvars, gens)
    res.parts["dimension_matches_brute_force"] = dims_ok
    return _finish(res, t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8]


def run_all(slow: bool = False, log=print) -> list[CriterionResult]:
    results = []
    for fn in CRITERIA:
        r = fn(slow=slow) if fn in (criterion_3, criterion_4) else fn()
        log(r.line())
        results.append(r)
    return results
