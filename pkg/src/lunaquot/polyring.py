"""Exact multivariate polynomials over Q or F_p with grading-group bookkeeping.

Coefficients over Q are `fractions.Fraction`; over F_p they are ints in
[0, p) for a machine-word prime p < 2^31.  Monomials are exponent tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .abelian import GradingGroup, GroupElement


class AmbientMismatch(ValueError):
    """Operands live in different polynomial rings."""


# ---------------------------------------------------------------------------
# Base fields
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


@dataclass(frozen=True)
class BaseField:
    kind: str  # "rational" | "prime_field"
    p: int = 0

    def __post_init__(self):
        if self.kind == "prime_field":
            if not (2 <= self.p < 2 ** 31):
                raise ValueError("prime field characteristic must be a machine-word prime")
            if not _is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")
        elif self.kind != "rational":
            raise ValueError(f"unknown field kind {self.kind!r}")

    # scalar operations -----------------------------------------------------
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    def from_int(self, n: int):
        return Fraction(n) if self.kind == "rational" else n % self.p

    def from_fraction(self, num: int, den: int):
        if self.kind == "rational":
            return Fraction(num, den)
        return num * pow(den, self.p - 2, self.p) % self.p

    def add(self, a, b):
        return a + b if self.kind == "rational" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "rational" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "rational" else a * b % self.p

    def neg(self, a):
        return -a if self.kind == "rational" else (-a) % self.p

    def inv(self, a):
        if self.kind == "rational":
            return 1 / a
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a / b if self.kind == "rational" else self.mul(a, self.inv(b))

    def format(self, a) -> str:
        return str(a)

    def __str__(self):
        return "Q" if self.kind == "rational" else f"F{self.p}"


QQ = BaseField("rational")

_gf_cache: dict[int, BaseField] = {}


def GF(p: int) -> BaseField:
    if p not in _gf_cache:
        _gf_cache[p] = BaseField("prime_field", p)
    return _gf_cache[p]


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

def _grevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials, compatible with products, with 1 minimal.

    kind is one of "grevlex", "lex", "block"; a block order compares the
    first `split` exponents grevlex-first, which makes it an elimination
    order for those variables.
    """

    kind: str
    split: int = 0

    def key(self, exps: tuple[int, ...]):
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        if self.kind == "lex":
            return exps
        return (_grevlex_key(exps[: self.split]), _grevlex_key(exps[self.split:]))

    def greater(self, a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        return self.key(a) > self.key(b)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


# ---------------------------------------------------------------------------
# Monomial helpers (exponent tuples)
# ---------------------------------------------------------------------------

def mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Polynomial ring and polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyRing:
    field: BaseField
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.field.one())

    def constant(self, c) -> "Polynomial":
        if c == self.field.zero():
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, i: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.field.one()})

    def monomial(self, exps: Sequence[int], coeff=None) -> "Polynomial":
        if coeff is None:
            coeff = self.field.one()
        if coeff == self.field.zero():
            return self.zero()
        return Polynomial(self, {tuple(int(e) for e in exps): coeff})

    def from_terms(self, terms: dict) -> "Polynomial":
        zero = self.field.zero()
        return Polynomial(self, {m: c for m, c in terms.items() if c != zero})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __str__(self):
        return f"{self.field}[{','.join(self.names)}]"


class Polynomial:
    """Immutable polynomial; terms map exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise AmbientMismatch(f"polynomials in {self.ring} and {other.ring}")

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.ring.field
        zero = fld.zero()
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(out.get(m, zero), c)
            if s == zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    def __neg__(self) -> "Polynomial":
        fld = self.ring.field
        return Polynomial(self.ring, {m: fld.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        fld = self.ring.field
        zero = fld.zero()
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = fld.add(out.get(m, zero), fld.mul(c1, c2))
                if s == zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    def scalar_mul(self, c) -> "Polynomial":
        fld = self.ring.field
        if c == fld.zero():
            return self.ring.zero()
        return Polynomial(self.ring, {m: fld.mul(c, v) for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    def leading(self, order: MonomialOrder = GREVLEX):
        """(monomial, coefficient) of the largest term; None for zero."""
        if not self.terms:
            return None
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        lt = self.leading(order)
        if lt is None:
            return self
        return self.scalar_mul(self.ring.field.inv(lt[1]))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def evaluate(self, values: Sequence):
        fld = self.ring.field
        acc = fld.zero()
        for m, c in self.terms.items():
            term = c
            for e, v in zip(m, values):
                for _ in range(e):
                    term = fld.mul(term, v)
            acc = fld.add(acc, term)
        return acc

    def derivative(self, i: int) -> "Polynomial":
        fld = self.ring.field
        zero = fld.zero()
        out: dict = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            coeff = fld.mul(c, fld.from_int(m[i]))
            if coeff == zero:
                continue
            mm = list(m)
            mm[i] -= 1
            out[tuple(mm)] = coeff
        return Polynomial(self.ring, out)

    def compose(self, target: PolyRing, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute images[i] for variable i; result lives in `target`."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable required")
        acc = target.zero()
        for m, c in self.terms.items():
            term = target.constant(c)
            for e, img in zip(m, images):
                if e:
                    term = term * img ** e
            acc = acc + term
        return acc

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def __str__(self):
        if not self.terms:
            return "0"
        fld = self.ring.field
        parts = []
        for m, c in self.sorted_terms(GREVLEX):
            factors = []
            for name, e in zip(self.ring.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            neg = fld.kind == "rational" and c < 0
            mag = -c if neg else c
            if not body:
                piece = fld.format(mag)
            elif mag == fld.one():
                piece = body
            else:
                piece = f"{fld.format(mag)}*{body}"
            if not parts:
                parts.append(f"-{piece}" if neg else piece)
            else:
                parts.append(f"- {piece}" if neg else f"+ {piece}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


# ---------------------------------------------------------------------------
# Arithmetic entry point matching the operation table
# ---------------------------------------------------------------------------

def poly_arith(op: str, p: Polynomial, q=None) -> Polynomial:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "scalar_mul":
        return p.scalar_mul(q)
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# Degree bookkeeping
# ---------------------------------------------------------------------------

class AnyDegree:
    """Degree of the zero polynomial: it belongs to every graded piece."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = AnyDegree()


def monomial_degree(exps: Sequence[int], degs: Sequence[GroupElement],
                    group: GradingGroup) -> GroupElement:
    """phi(a) = sum a_i * deg_i in the grading group."""
    acc = group.zero()
    for e, d in zip(exps, degs):
        if e:
            acc = acc + d.scale(e)
    return acc


def is_homogeneous(p: Polynomial, degs: Sequence[GroupElement],
                   group: GradingGroup) -> Union[GroupElement, AnyDegree, None]:
    """Common degree of all terms, ANY_DEGREE for 0, None if mixed."""
    if p.is_zero():
        return ANY_DEGREE
    it = iter(p.terms)
    deg = monomial_degree(next(it), degs, group)
    for m in it:
        if monomial_degree(m, degs, group) != deg:
            return None
    return deg


def homogeneous_components(p: Polynomial, degs: Sequence[GroupElement],
                           group: GradingGroup) -> dict[GroupElement, Polynomial]:
    buckets: dict[GroupElement, dict] = {}
    for m, c in p.terms.items():
        buckets.setdefault(monomial_degree(m, degs, group), {})[m] = c
    return {d: Polynomial(p.ring, t) for d, t in buckets.items()}


# ---------------------------------------------------------------------------
# Parser: identifiers, ^ powers, * products, +/-, rational literals 3/4
# ---------------------------------------------------------------------------

class PolyParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} (at offset {pos})")
        self.pos = pos


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    def __init__(self, toks, ring: PolyRing):
        self.toks = toks
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok.kind != kind:
            raise PolyParseError(f"expected {kind}, found {tok.kind}", tok.pos)
        self.i += 1
        return tok

    def parse_expr(self) -> Polynomial:
        sign = 1
        while self.peek().kind in ("+", "-"):
            if self.take().kind == "-":
                sign = -sign
        acc = self.parse_term()
        if sign < 0:
            acc = -acc
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            term = self.parse_term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_term(self) -> Polynomial:
        acc = self.parse_factor()
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        if self.peek().kind == "^":
            self.take()
            e = self.take("int").value
            base = base ** e
        return base

    def parse_base(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            num = tok.value
            if self.peek().kind == "/":
                self.take()
                den = self.take("int").value
                if den == 0:
                    raise PolyParseError("zero denominator", tok.pos)
                return self.ring.constant(self.ring.field.from_fraction(num, den))
            return self.ring.constant(self.ring.field.from_int(num))
        if tok.kind == "ident":
            self.take()
            if tok.value not in self.ring.names:
                raise PolyParseError(f"unknown variable {tok.value!r}", tok.pos)
            return self.ring.variable(self.ring.index(tok.value))
        if tok.kind == "(":
            self.take()
            inner = self.parse_expr()
            self.take(")")
            return inner
        if tok.kind == "-":
            self.take()
            return -self.parse_base()
        raise PolyParseError(f"unexpected token {tok.kind}", tok.pos)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    toks = _tokenize(text)
    parser = _Parser(toks, ring)
    p = parser.parse_expr()
    end = parser.peek()
    if end.kind != "end":
        raise PolyParseError(f"trailing input {end.kind}", end.pos)
    return p
