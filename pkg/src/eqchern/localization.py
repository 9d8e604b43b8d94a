"""Equivariant Chern numbers by fixed-point localization.

For a multi-index omega = (i_1, ..., i_n) the Chern number is

    c_omega = sum_p  sigma_1(p)^i_1 ... sigma_n(p)^i_n / e(p),
    e(p)    = sign(p) * sigma_n(p),

which regroups over weight multisets as
sum_sigma m_sigma * sigma_1^i_1 ... sigma_n^(i_n - 1).
Both forms are implemented; the first is evaluated over a common
denominator and finished with exact polynomial division.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .errors import (
    ExactButNonIntegral,
    IndexRequiresDivision,
    NotDivisible,
    RankMismatch,
)
from .fixedpoint import Dataset, multiplicity_table, require_valid
from .polyring import (
    Polynomial,
    elementary_symmetric_all,
    exact_divide,
    format_terms,
    linear_form,
    poly_pow,
)


def weighted_degree(omega) -> int:
    """deg(omega) = sum_j j * i_j (the cohomological degree halved)."""
    return sum(j * i for j, i in enumerate(omega, start=1))


def multi_indices(n: int, cap: int):
    """All omega of length n with weighted_degree(omega) <= cap, in lexicographic order."""
    ranges = [range(cap // j + 1) for j in range(1, n + 1)]
    for omega in product(*ranges):
        if weighted_degree(omega) <= cap:
            yield omega


def format_omega(omega) -> str:
    return "(" + ",".join(str(i) for i in omega) + ")"


@dataclass(frozen=True)
class ChernNumberResult:
    omega: tuple
    value: Polynomial | None
    detail: str = ""

    @property
    def is_polynomial(self) -> bool:
        return self.value is not None

    def __str__(self):
        return "NONPOLY" if self.value is None else str(self.value)


def _normalize(w):
    """Split a weight into (+-1, w') with the first nonzero entry of w' positive."""
    for x in w:
        if x:
            return (1, tuple(w)) if x > 0 else (-1, tuple(-y for y in w))
    raise ValueError("zero weight")


class _Prepared:
    """Per-dataset data for the common-denominator evaluation.

    The denominator is the least common multiple of the sigma_n(p), kept as a
    list of normalized linear factors. Each point contributes
    sign * unit * (lcm / sigma_n(p)) * sigma(p)^omega to the numerator.
    """

    def __init__(self, d: Dataset):
        n = d.rank
        self.rank = n
        mults = []
        units = []
        lcm: dict = {}
        for p in d.points:
            counts: dict = {}
            unit = 1
            for w in p.weights:
                s, nw = _normalize(w)
                unit *= s
                counts[nw] = counts.get(nw, 0) + 1
            mults.append(counts)
            units.append(unit)
            for f, k in counts.items():
                lcm[f] = max(lcm.get(f, 0), k)
        self.factors = [linear_form(f) for f in sorted(lcm) for _ in range(lcm[f])]
        forms = {f: linear_form(f) for f in lcm}
        self.prefactors = []
        for p, counts, unit in zip(d.points, mults, units):
            pre = Polynomial.constant(n, p.sign * unit)
            for f, k in lcm.items():
                extra = k - counts.get(f, 0)
                if extra:
                    pre = pre * poly_pow(forms[f], extra)
            self.prefactors.append(pre)
        self.sigmas = [p.sigma for p in d.points]
        self._powers: dict = {}

    def _power(self, i, j, e):
        key = (i, j, e)
        val = self._powers.get(key)
        if val is None:
            val = poly_pow(self.sigmas[i][j], e)
            self._powers[key] = val
        return val

    def numerator(self, omega) -> Polynomial:
        total = Polynomial.zero(self.rank)
        for i, pre in enumerate(self.prefactors):
            term = pre
            for j, e in enumerate(omega):
                if e:
                    term = term * self._power(i, j, e)
            total = total + term
        return total


@lru_cache(maxsize=512)
def _prepare(d: Dataset) -> _Prepared:
    return _Prepared(d)


def _check_omega(d: Dataset, omega) -> tuple:
    omega = tuple(int(i) for i in omega)
    if len(omega) != d.rank:
        raise RankMismatch(f"omega has length {len(omega)}, dataset rank is {d.rank}")
    if any(i < 0 for i in omega):
        raise ValueError("omega entries must be non-negative")
    return omega


def chern_number_rational(d: Dataset, omega) -> ChernNumberResult:
    """Sum of sigma(p)^omega / e(p) over the fixed points, as a polynomial if it is one."""
    require_valid(d)
    omega = _check_omega(d, omega)
    prep = _prepare(d)
    num = prep.numerator(omega)
    for f in prep.factors:
        try:
            num = exact_divide(num, f)
        except NotDivisible as exc:
            lead = max(exc.remainder.items(), key=lambda t: (sum(t[0]), t[0]))
            return ChernNumberResult(
                omega, None,
                f"not divisible by {f}; remainder leading term {format_terms(dict([lead]), d.rank)}",
            )
        except ExactButNonIntegral:
            return ChernNumberResult(omega, None, f"non-integral quotient by {f}")
    return ChernNumberResult(omega, num)


def chern_number_multiplicity(d: Dataset, omega) -> Polynomial:
    """sum_sigma m_sigma * sigma_1^i_1 ... sigma_n^(i_n - 1); needs i_n >= 1."""
    omega = _check_omega(d, omega)
    if omega[-1] < 1:
        raise IndexRequiresDivision("the multiplicity form needs i_n >= 1")
    exps = omega[:-1] + (omega[-1] - 1,)
    total = Polynomial.zero(d.rank)
    for key, m in multiplicity_table(d).items():
        sig = elementary_symmetric_all(key)
        term = Polynomial.constant(d.rank, m)
        for s, e in zip(sig, exps):
            if e:
                term = term * poly_pow(s, e)
        total = total + term
    return total


@dataclass
class OmegaCheck:
    omega: tuple
    result: ChernNumberResult
    failures: list = field(default_factory=list)

    def line(self) -> str:
        checks = "pass" if not self.failures else "fail:" + ";".join(self.failures)
        return f"omega={format_omega(self.omega)} value={self.result} checks={checks}"


@dataclass
class ConsistencyReport:
    rank: int
    cap: int
    checks: list

    @property
    def violations(self) -> list:
        return [c for c in self.checks if c.failures]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list:
        return [c.line() for c in self.checks]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "cap": self.cap,
            "ok": self.ok,
            "checks": [
                {"omega": list(c.omega), "value": str(c.result), "failures": list(c.failures)}
                for c in self.checks
            ],
        }


def consistency_suite(d: Dataset, degree_cap: int | None = None, fail_fast: bool = False) -> ConsistencyReport:
    """Necessary conditions for the data to come from a manifold.

    For every omega with deg(omega) <= degree_cap (default 2n): the rational
    sum must be a polynomial, it must vanish when deg(omega) < n, and when
    i_n >= 1 it must equal the multiplicity form. With ``fail_fast`` the scan
    stops at the first violating omega.
    """
    require_valid(d)
    n = d.rank
    cap = 2 * n if degree_cap is None else int(degree_cap)
    if cap < n:
        raise ValueError(f"degree cap {cap} is below the rank {n}")
    checks = []
    for omega in multi_indices(n, cap):
        res = chern_number_rational(d, omega)
        fails = []
        if not res.is_polynomial:
            fails.append("nonpolynomial")
        else:
            if weighted_degree(omega) < n and not res.value.is_zero:
                fails.append("low-degree-nonzero")
            if omega[-1] >= 1 and chern_number_multiplicity(d, omega) != res.value:
                fails.append("route-mismatch")
        checks.append(OmegaCheck(omega, res, fails))
        if fail_fast and fails:
            break
    return ConsistencyReport(n, cap, checks)


def is_consistent(d: Dataset, degree_cap: int | None = None) -> bool:
    return consistency_suite(d, degree_cap, fail_fast=True).ok
