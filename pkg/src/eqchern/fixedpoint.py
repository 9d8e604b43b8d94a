"""Fixed-point data of a unitary torus manifold.

A fixed point is recorded by its n tangent weights (integer vectors in the
character lattice of T^n, i.e. linear forms in H^2(BT^n)) and an orientation
sign. The sign compares the orientation of the tangent space inherited from
the manifold with its complex orientation, so the equivariant Euler class at
the point is ``sign * prod(weights)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

from . import intmat
from .errors import InvalidDataset, RankMismatch
from .polyring import Polynomial, elementary_symmetric_all

LatticeVector = tuple  # tuple[int, ...]
SigmaClassKey = tuple  # sorted tuple of LatticeVector


@dataclass(frozen=True)
class FixedPointDatum:
    weights: tuple
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(int(x) for x in w) for w in self.weights))
        object.__setattr__(self, "sign", int(self.sign))

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def key(self) -> SigmaClassKey:
        """The weight multiset, sorted lexicographically."""
        return tuple(sorted(self.weights))

    @cached_property
    def sigma(self) -> tuple:
        return tuple(elementary_symmetric_all(self.weights))

    def reversed(self) -> "FixedPointDatum":
        return FixedPointDatum(self.weights, -self.sign)

    def transformed(self, matrix) -> "FixedPointDatum":
        """Apply the lattice automorphism ``w -> matrix @ w`` to every weight."""
        return FixedPointDatum(
            tuple(tuple(sum(a * x for a, x in zip(row, w)) for row in matrix) for w in self.weights),
            self.sign,
        )


@dataclass(frozen=True)
class Dataset:
    rank: int
    points: tuple

    def __post_init__(self):
        pts = tuple(p if isinstance(p, FixedPointDatum) else FixedPointDatum(*p) for p in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "rank", int(self.rank))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def reversed(self) -> "Dataset":
        """Global orientation reversal."""
        return Dataset(self.rank, tuple(p.reversed() for p in self.points))

    def transformed(self, matrix) -> "Dataset":
        return Dataset(self.rank, tuple(p.transformed(matrix) for p in self.points))

    def __add__(self, other: "Dataset") -> "Dataset":
        """Disjoint union."""
        if other.rank != self.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")
        return Dataset(self.rank, self.points + other.points)

    def canonical(self) -> "Dataset":
        """Sort weights inside each point, then sort points by (key, sign)."""
        pts = sorted((FixedPointDatum(p.key, p.sign) for p in self.points),
                     key=lambda p: (p.weights, p.sign))
        return Dataset(self.rank, tuple(pts))


# validation

@dataclass
class PointReport:
    index: int
    errors: list = field(default_factory=list)
    det: int | None = None

    @property
    def ok(self) -> bool:
        return not self.errors


@dataclass
class ValidationReport:
    rank: int
    points: list

    @property
    def valid(self) -> bool:
        return self.rank >= 1 and bool(self.points) and all(p.ok for p in self.points)

    def first_error(self):
        """``(point_index, reason)`` of the first failure, or None."""
        if self.rank < 1:
            return (None, "rank must be positive")
        if not self.points:
            return (None, "no fixed points")
        for p in self.points:
            if p.errors:
                return (p.index, p.errors[0])
        return None


def validate_point(p: FixedPointDatum, rank: int, index: int = 0) -> PointReport:
    rep = PointReport(index)
    if p.sign not in (1, -1):
        rep.errors.append(f"sign must be +1 or -1, got {p.sign}")
    if len(p.weights) != rank:
        rep.errors.append(f"expected {rank} weights, got {len(p.weights)}")
    if any(len(w) != rank for w in p.weights):
        rep.errors.append(f"weight vectors must have length {rank}")
    if any(not any(w) for w in p.weights):
        rep.errors.append("zero weight")
    if len(p.weights) == rank and all(len(w) == rank for w in p.weights):
        rep.det = intmat.det(p.weights)
        if abs(rep.det) != 1:
            rep.errors.append(f"non-unimodular (det = {rep.det})")
    return rep


def validate_dataset(d: Dataset) -> ValidationReport:
    return ValidationReport(d.rank, [validate_point(p, d.rank, i) for i, p in enumerate(d.points)])


def require_valid(d: Dataset) -> None:
    rep = validate_dataset(d)
    if not rep.valid:
        idx, reason = rep.first_error()
        where = "dataset" if idx is None else f"point {idx}"
        raise InvalidDataset(f"{where}: {reason}")


# sigma data

def sigma_collection(p: FixedPointDatum) -> tuple:
    """(sigma_1(p), ..., sigma_n(p))."""
    return p.sigma


def euler_class(p: FixedPointDatum) -> Polynomial:
    return p.sigma[-1] * p.sign


def multiplicity_table(d: Dataset) -> dict:
    """Signed count of points per weight multiset, zero entries dropped.

    Returns a dict ordered by key.
    """
    require_valid(d)
    counts: dict = {}
    for p in d.points:
        counts[p.key] = counts.get(p.key, 0) + p.sign
    return {k: counts[k] for k in sorted(counts) if counts[k]}


def _group_by(values):
    classes: dict = {}
    for i, v in enumerate(values):
        classes.setdefault(v, []).append(i)
    return tuple((v, tuple(ix)) for v, ix in classes.items())


@dataclass(frozen=True)
class PartitionSummary:
    """Grouping of the fixed points by sigma_1 and by sigma_2.

    ``classes_A[k] = (tau_k, indices)`` and ``classes_B[l] = (eta_l, indices)``;
    ``L[k]`` lists the l with A_k and B_l intersecting, ``K[l]`` the converse.
    For rank 1 there is no sigma_2: every point is its own B class, eta is
    None and ``degenerate_sigma2`` is set.
    """

    classes_A: tuple
    classes_B: tuple
    L: tuple
    K: tuple
    degenerate_sigma2: bool = False

    @property
    def s(self) -> int:
        return len(self.classes_A)

    @property
    def u(self) -> int:
        return len(self.classes_B)

    @property
    def max_A(self) -> int:
        return max(len(ix) for _, ix in self.classes_A)

    @property
    def max_B(self) -> int:
        return max(len(ix) for _, ix in self.classes_B)


def partition_summary(d: Dataset) -> PartitionSummary:
    require_valid(d)
    classes_A = _group_by(p.sigma[0] for p in d.points)
    if d.rank >= 2:
        classes_B = _group_by(p.sigma[1] for p in d.points)
        degenerate = False
    else:
        classes_B = tuple((None, (i,)) for i in range(len(d.points)))
        degenerate = True
    a_sets = [set(ix) for _, ix in classes_A]
    b_sets = [set(ix) for _, ix in classes_B]
    L = tuple(tuple(l for l, b in enumerate(b_sets) if a & b) for a in a_sets)
    K = tuple(tuple(k for k, a in enumerate(a_sets) if a & b) for b in b_sets)
    return PartitionSummary(classes_A, classes_B, L, K, degenerate)


def change_of_basis(p: FixedPointDatum, q: FixedPointDatum) -> list:
    """Integer matrix A with W_p = W_q A, where W has the weights as columns.

    Equivalently each weight of p is the A-combination of the weights of q:
    lambda_p[i] = sum_j lambda_q[j] * A[j][i].
    """
    if p.rank != q.rank:
        raise RankMismatch(f"rank {p.rank} vs {q.rank}")
    w_p = intmat.transpose(p.weights)
    w_q = intmat.transpose(q.weights)
    return intmat.matmul(intmat.integer_inverse(w_q), w_p)


def is_signed_permutation(a: Sequence[Sequence[int]]) -> bool:
    n = len(a)
    if any(len(row) != n for row in a):
        return False
    for line in list(a) + intmat.transpose(a):
        nonzero = [x for x in line if x != 0]
        if len(nonzero) != 1 or abs(nonzero[0]) != 1:
            return False
    return True


# JSON schema: {"rank": n, "points": [{"weights": [[...], ...], "sign": 1|-1}, ...]}

_SAFE = 2 ** 53


def _encode_int(x: int):
    return str(x) if abs(x) >= _SAFE else x


class SchemaError(InvalidDataset):
    def __init__(self, location: str, message: str, path=None):
        self.location = location
        self.path = path
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{location}: {message}")


def _decode_int(x, location):
    if isinstance(x, bool):
        raise SchemaError(location, "expected integer, got boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError:
            pass
    raise SchemaError(location, f"expected integer, got {x!r}")


def dataset_to_json(d: Dataset) -> dict:
    return {
        "rank": d.rank,
        "points": [
            {"weights": [[_encode_int(x) for x in w] for w in p.weights], "sign": p.sign}
            for p in d.points
        ],
    }


def dataset_from_json(obj, path=None) -> Dataset:
    """Decode the JSON schema without checking unimodularity."""
    if not isinstance(obj, dict):
        raise SchemaError("$", "expected an object", path)
    if "rank" not in obj or "points" not in obj:
        raise SchemaError("$", "missing 'rank' or 'points'", path)
    rank = _decode_int(obj["rank"], "$.rank")
    if not isinstance(obj["points"], list):
        raise SchemaError("$.points", "expected a list", path)
    points = []
    for i, pt in enumerate(obj["points"]):
        loc = f"$.points[{i}]"
        if not isinstance(pt, dict) or "weights" not in pt:
            raise SchemaError(loc, "expected an object with 'weights'", path)
        ws = pt["weights"]
        if not isinstance(ws, list) or not all(isinstance(w, list) for w in ws):
            raise SchemaError(f"{loc}.weights", "expected a list of integer lists", path)
        weights = tuple(
            tuple(_decode_int(x, f"{loc}.weights[{j}][{k}]") for k, x in enumerate(w))
            for j, w in enumerate(ws)
        )
        sign = _decode_int(pt.get("sign", 1), f"{loc}.sign")
        points.append(FixedPointDatum(weights, sign))
    return Dataset(rank, tuple(points))


def dumps_dataset(d: Dataset) -> str:
    return json.dumps(dataset_to_json(d), separators=(",", ":"))


def load_dataset(path) -> Dataset:
    """Read and decode a dataset file (validation is left to the caller)."""
    path = Path(path)
    with path.open() as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {exc.lineno}", exc.msg, path) from exc
    return dataset_from_json(obj, path)


def save_dataset(d: Dataset, path) -> None:
    """Write one point per line."""
    obj = dataset_to_json(d)
    rows = ",\n".join("    " + json.dumps(p) for p in obj["points"])
    Path(path).write_text(f'{{\n  "rank": {obj["rank"]},\n  "points": [\n{rows}\n  ]\n}}\n')
