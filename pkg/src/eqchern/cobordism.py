"""Deciding equivariant null-cobordism from fixed-point data."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import EmptyInput, NonRealizableData
from .fixedpoint import Dataset, multiplicity_table, partition_summary, require_valid
from .localization import chern_number_rational, format_omega, multi_indices

ROUTES = ("multiplicity", "c1c2_vandermonde", "exhaustive")


def format_key(key) -> str:
    return "{" + ",".join(format_omega(w) for w in key) + "}"


@dataclass(frozen=True)
class Verdict:
    bounds: bool
    route: str
    witness: object = None
    witness_value: object = None

    def __post_init__(self):
        if self.bounds != (self.witness is None):
            raise ValueError("a witness is present exactly when the data does not bound")

    def witness_text(self) -> str:
        if self.witness is None:
            return ""
        if self.route == "multiplicity":
            return f"{format_key(self.witness)}={self.witness_value}"
        return f"{format_omega(self.witness)}={self.witness_value}"

    def __str__(self):
        if self.bounds:
            return f"BOUNDS route={self.route}"
        return f"NONBOUNDING witness={self.witness_text()} route={self.route}"

    def to_json(self) -> dict:
        out = {"bounds": self.bounds, "route": self.route}
        if not self.bounds:
            out["witness"] = [list(w) for w in self.witness] if self.route == "multiplicity" else list(self.witness)
            out["witness_value"] = str(self.witness_value)
        return out


def bounds_via_multiplicities(d: Dataset) -> Verdict:
    table = multiplicity_table(d)
    if not table:
        return Verdict(True, "multiplicity")
    key = next(iter(table))  # table is sorted, so this is the smallest key
    return Verdict(False, "multiplicity", key, table[key])


def _c1c2_omega(n: int, i: int, j: int) -> tuple:
    if n == 1:
        return (i,)
    return (i, j) + (0,) * (n - 2)


def c1c2_number(d: Dataset, i: int, j: int):
    """<c_1^i c_2^j, [M]>; raises NonRealizableData if it is not a polynomial."""
    omega = _c1c2_omega(d.rank, i, j)
    res = chern_number_rational(d, omega)
    if not res.is_polynomial:
        raise NonRealizableData(omega, res.detail)
    return res.value


def bounds_via_c1_c2(d: Dataset) -> Verdict:
    """Decide bounding from <c_1^i c_2^j> with i < s and j < u.

    s and u count the distinct sigma_1 and sigma_2 values. Distinct sigma_1
    values give an invertible Vandermonde system in i, then distinct sigma_2
    values one in j, which isolates each m_sigma. For rank 1 only powers of
    c_1 are scanned. The witness is the least (i, j) with a nonzero number.
    """
    require_valid(d)
    summary = partition_summary(d)
    j_range = range(summary.u) if d.rank >= 2 else range(1)
    for i in range(summary.s):
        for j in j_range:
            value = c1c2_number(d, i, j)
            if not value.is_zero:
                return Verdict(False, "c1c2_vandermonde", (i, j) if d.rank >= 2 else (i,), value)
    return Verdict(True, "c1c2_vandermonde")


def bounds_exhaustive(d: Dataset, degree_cap: int | None = None) -> Verdict:
    """Check every c_omega up to a degree cap directly.

    The default cap is large enough to include every <c_1^i c_2^j> used by
    the Vandermonde route, so the answer is a full decision.
    """
    require_valid(d)
    n = d.rank
    if degree_cap is None:
        summary = partition_summary(d)
        degree_cap = max(2 * n, (summary.s - 1) + (2 * (summary.u - 1) if n >= 2 else 0))
    for omega in multi_indices(n, degree_cap):
        res = chern_number_rational(d, omega)
        if not res.is_polynomial:
            raise NonRealizableData(omega, res.detail)
        if not res.value.is_zero:
            return Verdict(False, "exhaustive", omega, res.value)
    return Verdict(True, "exhaustive")


def decide(d: Dataset, route: str = "multiplicity") -> Verdict:
    if route in ("multiplicity", "multiplicities"):
        return bounds_via_multiplicities(d)
    if route in ("c1c2", "c1c2_vandermonde"):
        return bounds_via_c1_c2(d)
    if route == "exhaustive":
        return bounds_exhaustive(d)
    raise ValueError(f"unknown route {route!r}")


class Sufficiency(enum.Enum):
    FORCED_TO_BOUND = "ForcedToBound"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


def sufficiency_partition_condition(d: Dataset) -> Sufficiency:
    """Partition-size test that forces bounding for consistent data.

    Forced when s + 2 max|A_k| - 3 < n or 2u + max|B_l| - 3 < n.
    """
    ps = partition_summary(d)
    n = d.rank
    if ps.s + 2 * ps.max_A - 3 < n or 2 * ps.u + ps.max_B - 3 < n:
        return Sufficiency.FORCED_TO_BOUND
    return Sufficiency.INCONCLUSIVE


def min_fixed_points(n: int) -> int:
    """ceil(n/2) + 1: fewer fixed points force bounding."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n + 1) // 2 + 1


class PartitionInequality(NamedTuple):
    lhs: int
    rhs: int
    holds: bool


def partition_inequality(parts: Sequence[int]) -> PartitionInequality:
    """r + 2 max(a) <= 2 sum(a) + 1 for positive integers a_1..a_r."""
    parts = list(parts)
    if not parts:
        raise EmptyInput("need at least one part")
    if any(a < 1 for a in parts):
        raise ValueError("parts must be positive")
    lhs = len(parts) + 2 * max(parts)
    rhs = 2 * sum(parts) + 1
    return PartitionInequality(lhs, rhs, lhs <= rhs)
