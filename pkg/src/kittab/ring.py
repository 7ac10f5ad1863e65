"""Exact coefficient fields, monomial orders and sparse multivariate polynomials.

Monomials are plain tuples of nonnegative exponents, one per ring variable.
A polynomial stores a dict ``{exponent_tuple: coefficient}`` that never holds a
zero coefficient; the dict itself is order-independent, so switching monomial
orders (as elimination does) only changes how terms are ranked.

Every monomial order exposes ``key(m)``: sorting ascending by this key lists
monomials in *descending* order, so ``min(terms, key=order.key)`` is the
leading monomial.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Union

Monomial = tuple  # tuple[int, ...]
Coefficient = Union[int, Fraction]


class StructuralError(ValueError):
    """Operands live in incompatible rings or have inconsistent shapes."""


class DomainError(ValueError):
    """An operation was applied outside of its mathematical domain."""


class PreconditionError(ValueError):
    """Input data violates a hypothesis that the operation checks before running."""


class PolyParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


# ---------------------------------------------------------------------------
# fields


class Field:
    """The rationals (``characteristic == 0``) or a prime field F_p.

    Rational coefficients are ``int`` or ``fractions.Fraction`` (always
    reduced, positive denominator); prime-field coefficients are ints in
    ``[0, p)``.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic < 0:
            raise DomainError("characteristic must be 0 or a prime")
        if characteristic:
            if characteristic >= 2**31 or not _is_prime(characteristic):
                raise DomainError(f"{characteristic} is not a prime below 2^31")
        self.characteristic = characteristic

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if not self.characteristic else f"ZZ/{self.characteristic}"

    __str__ = __repr__

    def __call__(self, value) -> Coefficient:
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise DomainError(f"denominator divisible by {p}")
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        if isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else value
        if isinstance(value, int):
            return value
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def inv(self, a: Coefficient) -> Coefficient:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        q = Fraction(1) / a
        return q.numerator if q.denominator == 1 else q

    def neg(self, a: Coefficient) -> Coefficient:
        return (-a) % self.characteristic if self.characteristic else -a

    def add(self, a, b):
        return (a + b) % self.characteristic if self.characteristic else a + b

    def mul(self, a, b):
        if self.characteristic:
            return a * b % self.characteristic
        c = a * b
        if isinstance(c, Fraction) and c.denominator == 1:
            return c.numerator
        return c

    def signed(self, a: Coefficient) -> Coefficient:
        """Symmetric representative used for printing prime-field residues."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# monomial orders


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _grevlex_key(m):
    return (-sum(m), *m[::-1])


def _lex_key(m):
    return tuple(-e for e in m)


class MonomialOrder:
    """``grevlex``, ``lex`` or ``block(k)``.

    ``block(k)`` eliminates the first ``k`` variables: the blocks are compared
    lexicographically and each block internally by grevlex.
    """

    __slots__ = ("kind", "k", "_key")

    def __init__(self, kind: str = "grevlex", k: int = 0):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and k < 0:
            raise ValueError("block size must be nonnegative")
        self.kind = kind
        self.k = k if kind == "block" else 0
        self._key = _cached_key(self.kind, self.k)

    def key(self, m: Monomial):
        return self._key(m)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


@lru_cache(maxsize=None)
def _cached_key(kind: str, k: int) -> Callable:
    if kind == "grevlex":
        raw = _grevlex_key
    elif kind == "lex":
        raw = _lex_key
    else:
        def raw(m):
            head, tail = m[:k], m[k:]
            return (-sum(head), *head[::-1], -sum(tail), *tail[::-1])
    cache: dict = {}

    def key(m):
        r = cache.get(m)
        if r is None:
            r = cache[m] = raw(m)
        return r

    key.cache = cache
    return key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


def monomial_compare(order: MonomialOrder, m1: Monomial, m2: Monomial) -> Ordering:
    if len(m1) != len(m2):
        raise StructuralError("monomials of different length")
    k1, k2 = order.key(tuple(m1)), order.key(tuple(m2))
    if k1 == k2:
        return Ordering.EQ
    # smaller key = larger monomial
    return Ordering.GT if k1 < k2 else Ordering.LT


# ---------------------------------------------------------------------------
# rings and polynomials

_NAME_RE = re.compile(r"[A-Za-z_@][A-Za-z0-9_]*\Z")


class PolyRing:
    """A polynomial ring ``field[variables]`` with a monomial order."""

    __slots__ = ("field", "variables", "order", "_index")

    def __init__(self, field: Field, variables: Sequence[str], order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise StructuralError(f"duplicate variable names in {variables}")
        for v in variables:
            if not _NAME_RE.match(v):
                raise StructuralError(f"invalid variable name {v!r}")
        self.field = field
        self.variables = variables
        self.order = order
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def same_space(self, other: "PolyRing") -> bool:
        """Same field and variables; the monomial order may differ."""
        return self.field == other.field and self.variables == other.variables

    def __repr__(self):
        return f"{self.field}[{','.join(self.variables)}]"

    def describe(self) -> str:
        return repr(self) if self.order == GREVLEX else f"{self!r} ({self.order!r})"

    # constructors -------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise StructuralError(f"unknown variable {name!r} in {self}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(v) for v in self.variables]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise StructuralError("exponent vector has wrong length")
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: Mapping) -> "Polynomial":
        out = {}
        f = self.field
        for m, c in terms.items():
            if len(m) != self.nvars:
                raise StructuralError("exponent vector has wrong length")
            c = f(c)
            if c:
                out[tuple(m)] = c
        return Polynomial(self, out)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring.same_space(self):
                return Polynomial(self, value.terms)
            raise StructuralError(f"{value.ring} is not {self}")
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    # derived rings -------------------------------------------------------

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.field, self.variables, order)

    def extend(self, names: Sequence[str], prepend: bool = False, order=None) -> "PolyRing":
        names = tuple(names)
        vars_ = names + self.variables if prepend else self.variables + names
        return PolyRing(self.field, vars_, order or self.order)

    # text ----------------------------------------------------------------

    def parse(self, text: str) -> "Polynomial":
        return _PolyParser(self, text).parse_all()


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # basic queries ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        return min(self.terms, key=self.ring.order.key)

    def leading_term(self) -> tuple[Monomial, Coefficient]:
        m = self.leading_monomial()
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def sorted_terms(self) -> list[tuple[Monomial, Coefficient]]:
        key = self.ring.order.key
        return [(m, self.terms[m]) for m in sorted(self.terms, key=key)]

    # arithmetic --------------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if not self.ring.same_space(other.ring):
            raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: f.mul(a, c) for m, a in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=1) -> "Polynomial":
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): f.mul(v, c) for m, v in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = get(m, 0) + ca * cb
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: _norm_q(c) for m, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # comparisons -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.same_space(other.ring) and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.variables, frozenset(self.terms.items())))

    # substitution ----------------------------------------------------------

    def substitute(self, target: PolyRing, images: Sequence["Polynomial"]) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (polynomials in ``target``)."""
        if len(images) != self.ring.nvars:
            raise StructuralError("need one image per variable")
        powers: list[dict] = [{} for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            return cache[e]

        acc = target.zero()
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            acc = acc + t
        return acc

    def embed(self, target: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Rename variables: variable i of self becomes variable ``positions[i]`` of target."""
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[positions[i]] = k
            out[tuple(e)] = c
        return Polynomial(target, out)

    # printing ----------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _norm_q(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """Dispatcher over ``add``, ``sub``, ``mul`` and ``scalar_mul``."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        if not isinstance(g, Polynomial):
            raise StructuralError("mul expects two polynomials")
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def leading_term(f: Polynomial) -> tuple[Monomial, Coefficient]:
    return f.leading_term()


# ---------------------------------------------------------------------------
# text format


def format_monomial(ring: PolyRing, m: Monomial) -> str:
    parts = []
    for name, e in zip(ring.variables, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    field = f.ring.field
    pieces = []
    for m, c in f.sorted_terms():
        c = field.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(f.ring, m)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(pieces)


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_@][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


class _PolyParser:
    """poly := ['-'] term (('+'|'-') term)* ; term := coeff ('*' varpow)* | varpow ('*' varpow)*"""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text_len = len(text)
        while pos < text_len:
            if text[pos:].strip() == "":
                break
            mt = _TOKEN_RE.match(text, pos)
            if not mt or mt.end() == pos:
                raise PolyParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
            kind = mt.lastgroup
            start = mt.start(kind)
            self.tokens.append((kind, mt.group(kind), start))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise PolyParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def parse_all(self) -> Polynomial:
        if not self.tokens:
            raise PolyParseError("empty polynomial", 0)
        f = self.parse_poly()
        tok = self.peek()
        if tok[0] is not None:
            raise PolyParseError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def parse_poly(self) -> Polynomial:
        field = self.ring.field
        terms: dict = {}
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek()[:2] == ("op", "+"):
            self.take()
        while True:
            mono, c = self.parse_term()
            c = field(c * sign)
            p = field.characteristic
            v = terms.get(mono, 0) + c
            if p:
                v %= p
            if v:
                terms[mono] = _norm_q(v)
            else:
                terms.pop(mono, None)
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = 1 if tok[1] == "+" else -1
                continue
            return Polynomial(self.ring, terms)

    def parse_term(self):
        exps = [0] * self.ring.nvars
        coeff = Fraction(1)
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            coeff = Fraction(int(tok[1]))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.expect("num")
                if int(den[1]) == 0:
                    raise PolyParseError("zero denominator", den[2])
                coeff /= int(den[1])
            if self.peek()[:2] != ("op", "*"):
                return tuple(exps), coeff
            self.take()
        self.parse_varpow(exps)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.parse_varpow(exps)
        return tuple(exps), coeff

    def parse_varpow(self, exps):
        tok = self.expect("name")
        idx = self.ring._index.get(tok[1])
        if idx is None:
            raise PolyParseError(f"unknown variable {tok[1]!r}", tok[2])
        e = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            e = int(self.expect("num")[1])
        exps[idx] += e


def polys(ring: PolyRing, texts: Iterable[str]) -> list[Polynomial]:
    return [ring.parse(t) for t in texts]
