"""Enumeration of candidate fixed-point datasets and the hunt for small non-bounding ones.

Candidates are multisets of (basis, sign) items. Two datasets are identified
when a signed permutation of the coordinates, possibly combined with global
orientation reversal, carries one onto the other. Each orbit is emitted once,
as its lexicographically least sorted item tuple (orderly generation: the
first item of a canonical multiset is the least element of its orbit, and
only group elements moving some item onto it can produce a smaller image).
"""

from __future__ import annotations

import json
import logging
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations, islice, permutations, product
from pathlib import Path

from . import intmat
from .cobordism import Verdict, bounds_via_multiplicities, min_fixed_points
from .errors import ConfigInvalid
from .fixedpoint import Dataset, FixedPointDatum, dataset_from_json, dataset_to_json
from .localization import consistency_suite
from .polyring import elementary_symmetric_all

log = logging.getLogger(__name__)


@dataclass
class SearchConfig:
    rank: int
    point_count: int
    weight_bound: int = 1
    structural_filter: bool = False
    seed: int = 0
    mode: str = "exhaustive"
    samples: int = 10_000
    workers: int = 1
    hits_path: str | None = None
    progress_path: str | None = None
    checkpoint_every: int = 100_000
    resume: bool = False
    max_candidates: int | None = None  # stream position to stop at; a later run can resume

    def validate(self) -> None:
        if self.rank < 1:
            raise ConfigInvalid("rank must be >= 1")
        if self.point_count < 1:
            raise ConfigInvalid("point count must be >= 1")
        if self.weight_bound < 1:
            raise ConfigInvalid("weight bound must be >= 1")
        if self.mode not in ("exhaustive", "random"):
            raise ConfigInvalid(f"unknown mode {self.mode!r}")
        if self.workers < 1 or self.checkpoint_every < 1 or self.samples < 0:
            raise ConfigInvalid("workers, checkpoint interval and samples must be positive")

    @property
    def filter_active(self) -> bool:
        """Whether the structural filter (all sigma_1 equal, all sigma_2 distinct) applies.

        It is only used at the minimal point count, and never in rank 1, where
        CP^1 is a non-bounding example with two distinct sigma_1 values.
        """
        return (self.structural_filter and self.rank >= 2
                and self.point_count == min_fixed_points(self.rank))


@dataclass
class Hit:
    index: int
    dataset: Dataset
    verdict: Verdict

    def to_json(self) -> dict:
        return {"index": self.index, "dataset": dataset_to_json(self.dataset),
                "verdict": self.verdict.to_json(), "label": "consistent-nonbounding"}


@dataclass
class SearchOutcome:
    candidates_examined: int = 0
    consistent_count: int = 0
    nonbounding_hits: list = field(default_factory=list)
    pruned_by_structure: int = 0
    pruned_by_canonical_form: int = 0
    gl_classes: list | None = None

    def counters(self) -> dict:
        return {
            "candidates_examined": self.candidates_examined,
            "consistent_count": self.consistent_count,
            "hits": len(self.nonbounding_hits),
            "pruned_by_structure": self.pruned_by_structure,
            "pruned_by_canonical_form": self.pruned_by_canonical_form,
        }

    def to_json(self) -> dict:
        out = self.counters()
        out["nonbounding_hits"] = [h.to_json() for h in self.nonbounding_hits]
        if self.gl_classes is not None:
            out["gl_classes"] = self.gl_classes
        return out


# unimodular bases

def enumerate_unimodular_bases(n: int, bound: int):
    """Sorted n-tuples of nonzero vectors in [-bound, bound]^n with determinant +-1."""
    if n < 1 or bound < 1:
        raise ConfigInvalid("need n >= 1 and bound >= 1")
    vectors = sorted(v for v in product(range(-bound, bound + 1), repeat=n) if any(v))
    for basis in combinations(vectors, n):
        if abs(intmat.det(basis)) == 1:
            yield basis


# symmetry group

def signed_permutations(n: int):
    """All (perm, signs) acting on vectors by v -> (signs[i] * v[perm[i]])_i."""
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            yield perm, signs


def _act_vector(g, v):
    perm, signs = g
    return tuple(s * v[i] for s, i in zip(signs, perm))


def _act_item(g, reverse, item):
    basis, sign = item
    return (tuple(sorted(_act_vector(g, w) for w in basis)), -sign if reverse else sign)


def _items_of(d: Dataset) -> list:
    return [(p.key, p.sign) for p in d.points]


def _dataset_of(rank, items) -> Dataset:
    return Dataset(rank, tuple(FixedPointDatum(b, s) for b, s in items))


def canonical_form(d: Dataset) -> Dataset:
    """Least sorted item tuple over signed coordinate permutations and reversal."""
    items = _items_of(d)
    best = None
    for g in signed_permutations(d.rank):
        for reverse in (False, True):
            image = sorted(_act_item(g, reverse, it) for it in items)
            if best is None or image < best:
                best = image
    return _dataset_of(d.rank, best)


class _ItemSpace:
    """Indexed (basis, sign) items with the group action tabulated."""

    def __init__(self, n: int, bound: int):
        self.rank = n
        bases = list(enumerate_unimodular_bases(n, bound))
        self.items = sorted((b, s) for b in bases for s in (-1, 1))
        index = {it: i for i, it in enumerate(self.items)}
        self.maps = []
        for g in signed_permutations(n):
            for reverse in (False, True):
                self.maps.append([index[_act_item(g, reverse, it)] for it in self.items])
        size = len(self.items)
        self.orbit_min = [min(m[i] for m in self.maps) for i in range(size)]
        self.transporters = [
            [m for m in self.maps if m[i] == self.orbit_min[i]] for i in range(size)
        ]
        sig = [elementary_symmetric_all(b) for b, _ in self.items]
        self.sigma1 = [s[0] for s in sig]
        self.sigma2 = [s[1] if n >= 2 else None for s in sig]

    def __len__(self):
        return len(self.items)

    def is_canonical(self, combo) -> bool:
        first = combo[0]
        for x in set(combo):
            if self.orbit_min[x] != first:
                continue
            for m in self.transporters[x]:
                if tuple(sorted(m[y] for y in combo)) < combo:
                    return False
        return True

    def canonical(self, combo) -> tuple:
        return min(tuple(sorted(m[y] for y in combo)) for m in self.maps)

    def dataset(self, combo) -> Dataset:
        return _dataset_of(self.rank, [self.items[i] for i in combo])


def _passes_structure(space: _ItemSpace, combo) -> bool:
    s1 = {space.sigma1[i] for i in combo}
    s2 = {space.sigma2[i] for i in combo}
    return len(s1) == 1 and len(s2) == len(combo)


def _exhaustive_combos(space: _ItemSpace, cfg: SearchConfig, outcome: SearchOutcome):
    k = cfg.point_count
    size = len(space)
    structural = cfg.filter_active
    for a in range(size):
        if space.orbit_min[a] != a:
            outcome.pruned_by_canonical_form += 1
            continue
        pool = [b for b in range(a, size) if space.orbit_min[b] >= a]
        outcome.pruned_by_canonical_form += (size - a) - len(pool)
        if structural:
            kept = [b for b in pool if space.sigma1[b] == space.sigma1[a]]
            outcome.pruned_by_structure += len(pool) - len(kept)
            pool = kept
        yield from _extend(space, (a,), pool, 0, k, structural, outcome)


def _extend(space, prefix, pool, start, k, structural, outcome):
    if len(prefix) == k:
        if space.is_canonical(prefix):
            yield prefix
        else:
            outcome.pruned_by_canonical_form += 1
        return
    for pos in range(start, len(pool)):
        b = pool[pos]
        if structural and any(space.sigma2[b] == space.sigma2[x] for x in prefix):
            outcome.pruned_by_structure += 1
            continue
        yield from _extend(space, prefix + (b,), pool, pos, k, structural, outcome)


def _random_combos(space: _ItemSpace, cfg: SearchConfig, outcome: SearchOutcome):
    rng = random.Random(cfg.seed)
    seen = set()
    size = len(space)
    for _ in range(cfg.samples):
        combo = space.canonical(tuple(sorted(rng.randrange(size) for _ in range(cfg.point_count))))
        if combo in seen:
            outcome.pruned_by_canonical_form += 1
            continue
        seen.add(combo)
        if cfg.filter_active and not _passes_structure(space, combo):
            outcome.pruned_by_structure += 1
            continue
        yield combo


def _combos(cfg: SearchConfig, outcome: SearchOutcome):
    space = _ItemSpace(cfg.rank, cfg.weight_bound)
    gen = _exhaustive_combos if cfg.mode == "exhaustive" else _random_combos
    for combo in gen(space, cfg, outcome):
        yield space.dataset(combo)


def enumerate_datasets(cfg: SearchConfig, outcome: SearchOutcome | None = None):
    """Stream canonical datasets for ``cfg``; prune counters go to ``outcome``."""
    cfg.validate()
    if outcome is None:
        outcome = SearchOutcome()
    yield from _combos(cfg, outcome)


# evaluation

def evaluate_candidate(d: Dataset):
    """(consistent, verdict or None) for one candidate."""
    if not consistency_suite(d, 2 * d.rank, fail_fast=True).ok:
        return False, None
    return True, bounds_via_multiplicities(d)


def _evaluated(stream, workers: int):
    if workers <= 1:
        for d in stream:
            yield d, evaluate_candidate(d)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        while True:
            chunk = list(islice(stream, 1024 * workers))
            if not chunk:
                return
            yield from zip(chunk, pool.map(evaluate_candidate, chunk, chunksize=64))


def _write_progress(path, index, outcome: SearchOutcome, cfg: SearchConfig):
    state = {"config": {k: v for k, v in asdict(cfg).items() if k not in ("resume", "max_candidates")},
             "index": index, "counters": outcome.counters()}
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps(state, sort_keys=True) + "\n")
    tmp.replace(path)


_STREAM_KEYS = ("rank", "point_count", "weight_bound", "structural_filter", "mode", "seed", "samples")


def _load_resume(cfg: SearchConfig, outcome: SearchOutcome) -> int:
    path = Path(cfg.progress_path)
    if not path.exists():
        return 0
    state = json.loads(path.read_text())
    for key in _STREAM_KEYS:
        if state["config"].get(key) != getattr(cfg, key):
            raise ConfigInvalid(f"progress file was written with a different {key}")
    index = int(state["index"])
    outcome.consistent_count = int(state["counters"]["consistent_count"])
    if cfg.hits_path and Path(cfg.hits_path).exists():
        kept = []
        for line in Path(cfg.hits_path).read_text().splitlines():
            rec = json.loads(line)
            if rec["index"] < index:
                kept.append(line)
                verdict = bounds_via_multiplicities(dataset_from_json(rec["dataset"]))
                outcome.nonbounding_hits.append(Hit(rec["index"], dataset_from_json(rec["dataset"]), verdict))
        Path(cfg.hits_path).write_text("".join(line + "\n" for line in kept))
    return index


def gl_equivalent(d1: Dataset, d2: Dataset) -> bool:
    """Whether some A in GL(n, Z), optionally with reversal, maps d1 onto d2."""
    if d1.rank != d2.rank or len(d1) != len(d2):
        return False
    target = Counter(_items_of(d2))
    target_rev = Counter(_items_of(d2.reversed()))
    p = d1.points[0]
    w_p_inv = intmat.integer_inverse(intmat.transpose(p.weights))
    for q in d2.points:
        for order in set(permutations(q.weights)):
            a = intmat.matmul(intmat.transpose(order), w_p_inv)
            image = Counter(_items_of(d1.transformed(a)))
            if image == target or image == target_rev:
                return True
    return False


def _gl_classes(hits) -> list:
    classes: list = []
    for i, h in enumerate(hits):
        for cls in classes:
            if gl_equivalent(hits[cls[0]].dataset, h.dataset):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def hunt_nonbounding_minimal(cfg: SearchConfig) -> SearchOutcome:
    """Examine every emitted candidate: consistency gate, then the bounding decision.

    Any point count is accepted; at counts below ceil(n/2) + 1 a hit would
    contradict the lower bound and signals a bug.
    """
    cfg.validate()
    outcome = SearchOutcome()
    start = _load_resume(cfg, outcome) if (cfg.resume and cfg.progress_path) else 0
    hits_fh = open(cfg.hits_path, "a") if cfg.hits_path else None
    try:
        stream = enumerate_datasets(cfg, outcome)
        stop = cfg.max_candidates
        if start or stop is not None:
            stream = islice(stream, start, stop)
        index = start
        for d, (consistent, verdict) in _evaluated(stream, cfg.workers):
            index += 1
            if consistent:
                outcome.consistent_count += 1
                if not verdict.bounds:
                    hit = Hit(index - 1, d, verdict)
                    outcome.nonbounding_hits.append(hit)
                    if hits_fh:
                        hits_fh.write(json.dumps(hit.to_json(), sort_keys=True) + "\n")
                        hits_fh.flush()
            if cfg.progress_path and index % cfg.checkpoint_every == 0:
                outcome.candidates_examined = index
                _write_progress(cfg.progress_path, index, outcome, cfg)
        outcome.candidates_examined = index
        if cfg.progress_path:
            _write_progress(cfg.progress_path, index, outcome, cfg)
    finally:
        if hits_fh:
            hits_fh.close()
    if len(outcome.nonbounding_hits) <= 50:
        outcome.gl_classes = _gl_classes(outcome.nonbounding_hits)
    if len(outcome.nonbounding_hits) and cfg.point_count < min_fixed_points(cfg.rank):
        log.error("non-bounding hit below the fixed-point lower bound: n=%d, points=%d",
                  cfg.rank, cfg.point_count)
    return outcome


# randomized lemma checks

@dataclass
class LemmaReport:
    n: int
    trials: int
    seed: int
    top_sigma_hypothesis: int = 0
    top_sigma_vacuous: int = 0
    sigma2_hypothesis: int = 0
    sigma2_vacuous: int = 0
    orthogonal_seen: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list:
        return [
            f"n={self.n} trials={self.trials} seed={self.seed}",
            f"sigma1+sigman lemma: hypothesis={self.top_sigma_hypothesis} vacuous={self.top_sigma_vacuous}",
            f"sigma1+sigma2 lemma: hypothesis={self.sigma2_hypothesis} vacuous={self.sigma2_vacuous}",
            f"orthogonal integer matrices checked={self.orthogonal_seen}",
            f"violations={len(self.violations)}",
        ] + [f"  {v}" for v in self.violations]

    def to_json(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def verify_lemmas_randomized(n: int, trials: int, seed: int = 0, bound: int = 3) -> LemmaReport:
    """Randomized check of the sigma-separation lemmas on unimodular pairs.

    The second basis is either independent, a signed rearrangement of the
    first (so sigma_n agrees up to sign) or a plain rearrangement (so all
    sigma agree). Each trial also draws a random small integer matrix and
    checks that A A^T = I forces a signed permutation.
    """
    from .fixedpoint import change_of_basis, is_signed_permutation
    from .samples import random_basis

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    rep = LemmaReport(n, trials, seed)

    def check_orthogonal(a, what):
        if intmat.is_identity(intmat.matmul(a, intmat.transpose(a))):
            rep.orthogonal_seen += 1
            if not is_signed_permutation(a):
                rep.violations.append(f"{what}: A A^T = I but A={a} is not a signed permutation")

    for t in range(trials):
        wp = random_basis(rng, n, bound)
        mode = rng.randrange(3)
        if mode == 0:
            wq = random_basis(rng, n, bound)
        else:
            order = list(wp)
            rng.shuffle(order)
            if mode == 1:
                flips = [rng.choice((1, -1)) for _ in order]
                order = [tuple(f * x for x in w) for f, w in zip(flips, order)]
            wq = tuple(order)
        p, q = FixedPointDatum(wp), FixedPointDatum(wq)
        sp, sq = p.sigma, q.sigma
        same_sigma = sp == sq

        if sp[0] == sq[0] and (sp[-1] == sq[-1] or sp[-1] == -sq[-1]):
            rep.top_sigma_hypothesis += 1
            if not same_sigma or p.key != q.key:
                rep.violations.append(f"trial {t}: sigma_1, +-sigma_n agree but sigma differs: {wp} vs {wq}")
        else:
            rep.top_sigma_vacuous += 1

        if n >= 2 and sp[0] == sq[0] and sp[1] == sq[1]:
            rep.sigma2_hypothesis += 1
            if not same_sigma or p.key != q.key:
                rep.violations.append(f"trial {t}: sigma_1, sigma_2 agree but sigma differs: {wp} vs {wq}")
            a = change_of_basis(p, q)
            if not is_signed_permutation(a):
                rep.violations.append(f"trial {t}: change of basis {a} is not a signed permutation")
        else:
            rep.sigma2_vacuous += 1

        check_orthogonal(change_of_basis(p, q), f"trial {t} change of basis")
        check_orthogonal([[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)], f"trial {t} random")
    return rep
