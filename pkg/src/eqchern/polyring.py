"""Exact sparse multivariate polynomials over the integers.

Polynomials live in Z[x1, ..., xn]. Terms are stored as a mapping from
exponent tuples to nonzero Python ints, so coefficients never overflow.
Monomials are ordered graded-lexicographically with x1 > x2 > ... > xn, and
every public view of the terms (iteration, printing, leading term) follows
that order.
"""

from __future__ import annotations

import heapq
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import intmat
from .errors import (
    ArityMismatch,
    ExactButNonIntegral,
    NotDivisible,
    RankMismatch,
    SingularMatrix,
)

Monomial = tuple  # tuple[int, ...] of exponents, one per variable


def grlex_key(m: Monomial):
    """Sort key realising the graded lexicographic order (larger is greater)."""
    return (sum(m), m)


def _heap_key(m):
    return (-sum(m), tuple(-e for e in m))


class Polynomial:
    """Immutable polynomial in ``rank`` variables with integer coefficients."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping | Iterable = ()):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != rank or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for rank {rank}")
            if isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise ValueError("coefficients must be integers")
                coeff = coeff.numerator
            acc[mono] = acc.get(mono, 0) + int(coeff)
        self.rank = rank
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        # trusted constructor: terms already canonical (no zero coefficients)
        obj = cls.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, rank: int) -> "Polynomial":
        return cls._raw(rank, {})

    @classmethod
    def constant(cls, rank: int, c: int) -> "Polynomial":
        return cls._raw(rank, {(0,) * rank: int(c)} if c else {})

    @classmethod
    def one(cls, rank: int) -> "Polynomial":
        return cls.constant(rank, 1)

    @classmethod
    def variable(cls, rank: int, k: int) -> "Polynomial":
        """The generator x_{k+1} (``k`` is zero-based)."""
        if not 0 <= k < rank:
            raise IndexError(k)
        return cls._raw(rank, {tuple(int(i == k) for i in range(rank)): 1})

    # views

    @property
    def terms(self) -> tuple:
        """``(monomial, coefficient)`` pairs in decreasing grlex order."""
        return tuple(sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True))

    def as_dict(self) -> dict:
        return dict(self._terms)

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(tuple(mono), 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    @property
    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    @property
    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def constant_value(self) -> int:
        """The value of a constant polynomial; raises if not constant."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.rank, 0)

    def __call__(self, *point):
        """Evaluate at an integer (or rational) point."""
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.rank:
            raise RankMismatch(f"expected {self.rank} values, got {len(point)}")
        total = 0
        for m, c in self._terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.rank != self.rank:
                raise RankMismatch(f"rank {self.rank} vs {other.rank}")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.rank, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                del out[m]
        return Polynomial._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Polynomial.zero(self.rank)
            return Polynomial._raw(self.rank, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple([x + y for x, y in zip(ma, mb)])
                out[m] = get(m, 0) + ca * cb
        return Polynomial._raw(self.rank, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        return poly_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.rank == other.rank and self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({(0,) * self.rank: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_terms(self._terms, self.rank)

    def __repr__(self):
        return f"Polynomial({self.rank}, {str(self)!r})"


def _check_rank(a: Polynomial, b: Polynomial):
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"}; ranks must agree."""
    _check_rank(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_pow(a: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    result = Polynomial.one(a.rank)
    base = a
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def linear_form(vec: Sequence[int]) -> Polynomial:
    """The degree-1 polynomial sum(vec[k] * x_{k+1})."""
    n = len(vec)
    terms = {}
    for k, c in enumerate(vec):
        if c:
            terms[tuple(int(i == k) for i in range(n))] = int(c)
    return Polynomial._raw(n, terms)


def substitute_linear(a: Polynomial, matrix: Sequence[Sequence[int]]) -> Polynomial:
    """Replace each x_k by the linear form read off column k of ``matrix``.

    The map extends multiplicatively, so it is a ring homomorphism and
    ``substitute_linear(substitute_linear(p, A), B) == substitute_linear(p, B @ A)``.
    """
    n = a.rank
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise RankMismatch(f"expected a {n}x{n} matrix")
    if intmat.det(matrix) == 0:
        raise SingularMatrix("substitution matrix is singular")
    images = [linear_form([matrix[i][k] for i in range(n)]) for k in range(n)]
    powers: dict = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = poly_pow(images[k], e)
        return powers[key]

    result = Polynomial.zero(n)
    for m, c in a._terms.items():
        term = Polynomial.constant(n, c)
        for k, e in enumerate(m):
            if e:
                term = term * power(k, e)
        result = result + term
    return result


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """Return ``q`` with ``q * den == num``.

    Uses reduction by the grlex leading term of ``den``; a single divisor is a
    Groebner basis of the ideal it generates, so a nonzero remainder proves
    non-divisibility.

    Raises ``ZeroDivisionError`` for ``den == 0``, ``NotDivisible`` when a
    remainder is left, and ``ExactButNonIntegral`` when the rational quotient
    has a non-integer coefficient.
    """
    _check_rank(num, den)
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero:
        return Polynomial.zero(num.rank)
    lm, lc = den.leading_term
    tail = [(m, c) for m, c in den._terms.items() if m != lm]
    rem = dict(num._terms)
    heap = [_heap_key(m) + (m,) for m in rem]
    heapq.heapify(heap)
    quot: dict = {}
    leftover: dict = {}
    while heap:
        m = heapq.heappop(heap)[-1]
        c = rem.pop(m, 0)
        if not c:
            continue
        if any(x < y for x, y in zip(m, lm)):
            leftover[m] = c
            continue
        qm = tuple([x - y for x, y in zip(m, lm)])
        if isinstance(c, Fraction) or c % lc:
            qc = Fraction(c) / lc
        else:
            qc = c // lc
        quot[qm] = qc
        for dm, dc in tail:
            t = tuple([x + y for x, y in zip(qm, dm)])
            old = rem.get(t)
            v = (old or 0) - qc * dc
            if v:
                rem[t] = v
                if old is None:
                    heapq.heappush(heap, _heap_key(t) + (t,))
            elif old is not None:
                del rem[t]
    if leftover:
        raise NotDivisible(leftover)
    if any(isinstance(c, Fraction) and c.denominator != 1 for c in quot.values()):
        raise ExactButNonIntegral(quot)
    return Polynomial._raw(num.rank, {m: int(c) for m, c in quot.items()})


def _check_weights(weights):
    weights = [tuple(w) for w in weights]
    if not weights:
        raise ArityMismatch("no weights given")
    n = len(weights[0])
    if len(weights) != n or any(len(w) != n for w in weights):
        raise ArityMismatch(f"expected {n} weights of length {n}")
    return weights, n


def elementary_symmetric_all(weights: Sequence[Sequence[int]]) -> list:
    """[sigma_1, ..., sigma_n] of the linear forms given by ``weights``.

    Expands prod(1 + w_i t) one factor at a time.
    """
    weights, n = _check_weights(weights)
    e = [Polynomial.one(n)] + [Polynomial.zero(n)] * n
    for k, w in enumerate(weights, start=1):
        lf = linear_form(w)
        for j in range(k, 0, -1):
            e[j] = e[j] + lf * e[j - 1]
    return e[1:]


def elementary_symmetric(weights: Sequence[Sequence[int]], j: int) -> Polynomial:
    weights, n = _check_weights(weights)
    if not 1 <= j <= n:
        raise ValueError(f"j must lie in 1..{n}")
    return elementary_symmetric_all(weights)[j - 1]


def power_sum_2(weights: Sequence[Sequence[int]]) -> Polynomial:
    weights, n = _check_weights(weights)
    total = Polynomial.zero(n)
    for w in weights:
        lf = linear_form(w)
        total = total + lf * lf
    return total


# text form

def _format_coeff_term(mono, coeff):
    factors = []
    for k, e in enumerate(mono, start=1):
        if e == 1:
            factors.append(f"x{k}")
        elif e > 1:
            factors.append(f"x{k}^{e}")
    mag = abs(coeff)
    if not factors:
        return str(mag)
    if mag == 1:
        return "*".join(factors)
    return f"{mag}*" + "*".join(factors)


def format_terms(terms: Mapping, rank: int) -> str:
    """Canonical text: terms in decreasing grlex order, e.g. ``2*x1^2*x2 - 3*x2 + 1``.

    Coefficients may be ints or Fractions.
    """
    items = sorted(((m, c) for m, c in terms.items() if c),
                   key=lambda t: grlex_key(t[0]), reverse=True)
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        body = _format_coeff_term(m, c)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TERM_RE = re.compile(r"([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def parse_poly(text: str, rank: int) -> Polynomial:
    """Inverse of the canonical text form (accepts any term order)."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict = {}
    pos = 0
    for match in _TERM_RE.finditer(s):
        if s[pos:match.start()].strip():
            raise ValueError(f"cannot parse {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coeff = 1
        mono = [0] * rank
        for factor in match.group(2).split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            k = int(fm.group(1))
            if not 1 <= k <= rank:
                raise ValueError(f"variable x{k} out of range for rank {rank}")
            mono[k - 1] += int(fm.group(2) or 1)
        m = tuple(mono)
        terms[m] = terms.get(m, 0) + sign * coeff
    if s[pos:].strip():
        raise ValueError(f"cannot parse {text!r}")
    return Polynomial(rank, terms)
