"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""
import contextlib
import io
import json
import random
import time

import pytest

from eqchern import samples
from eqchern.cli import main
from eqchern.cobordism import (
    Sufficiency,
    bounds_via_c1_c2,
    bounds_via_multiplicities,
    partition_inequality,
    sufficiency_partition_condition,
)
from eqchern.fixedpoint import dataset_from_json, partition_summary
from eqchern.localization import (
    chern_number_multiplicity,
    chern_number_rational,
    is_consistent,
    multi_indices,
)
from eqchern.polyring import substitute_linear
from eqchern.search import SearchConfig, gl_equivalent, hunt_nonbounding_minimal

from helpers import CP1, corpus


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def datasets_500():
    return corpus(500)


@pytest.fixture(scope="module")
def consistent_500(datasets_500):
    return [d for d in datasets_500 if is_consistent(d)]


def test_criterion_01_cp1_golden(report):
    t = time.perf_counter()
    one = cli("chern", "--omega", "1", "cp1.json")
    zero = cli("chern", "--omega", "0", "cp1.json")
    dt = time.perf_counter() - t
    ok = one == (0, "2\n") and zero == (0, "0\n") and dt < 1
    report(1, ok, f"c_(1)={one[1].strip()} c_(0)={zero[1].strip()} in {dt:.3f}s")


def test_criterion_02_cp2_golden(report):
    t = time.perf_counter()
    c11 = cli("chern", "--omega", "2,0", "cp2.json")
    c2 = cli("chern", "--omega", "0,1", "cp2.json")
    dt = time.perf_counter() - t
    ok = c11 == (0, "9\n") and c2 == (0, "3\n") and dt < 1
    report(2, ok, f"c_(2,0)={c11[1].strip()} c_(0,1)={c2[1].strip()} in {dt:.3f}s")


def test_criterion_03_route_agreement(report, datasets_500):
    t = time.perf_counter()
    checked = failures = 0
    for d in datasets_500:
        for omega in multi_indices(d.rank, 2 * d.rank):
            if omega[-1] < 1:
                continue
            checked += 1
            res = chern_number_rational(d, omega)
            if not res.is_polynomial or res.value != chern_number_multiplicity(d, omega):
                failures += 1
    dt = time.perf_counter() - t
    ok = failures == 0 and checked > 0 and dt < 300
    report(3, ok, f"{len(datasets_500)} datasets, {checked} (dataset, omega) pairs, "
                  f"{failures} failures in {dt:.1f}s")


def test_criterion_04_decision_routes(report, consistent_500):
    disagree = 0
    tally = {True: 0, False: 0}
    for d in consistent_500:
        m = bounds_via_multiplicities(d).bounds
        tally[m] += 1
        if bounds_via_c1_c2(d).bounds != m:
            disagree += 1
    ok = disagree == 0 and tally[True] > 0 and tally[False] > 0
    report(4, ok, f"{len(consistent_500)} consistent datasets "
                  f"(bounding={tally[True]} nonbounding={tally[False]}), {disagree} disagreements")


def test_criterion_05_lemma_verifier(report):
    t = time.perf_counter()
    code, out = cli("verify", "--n", "3", "--trials", "10000", "--seed", "0", "--json")
    dt = time.perf_counter() - t
    rep = json.loads(out)
    ok = code == 0 and rep["ok"] and not rep["violations"] and rep["orthogonal_seen"] > 0 and dt < 60
    report(5, ok, f"violations={len(rep['violations'])} "
                  f"orthogonal matrices checked={rep['orthogonal_seen']} in {dt:.1f}s")


def test_criterion_06_no_small_nonbounding(report):
    parts = []
    hits = 0
    for n, k, b in [(2, 1, 2), (3, 1, 1), (3, 2, 1)]:
        out = hunt_nonbounding_minimal(SearchConfig(n, k, b))
        hits += len(out.nonbounding_hits)
        parts.append(f"(n={n},points={k},B={b}): {out.candidates_examined} cand, "
                     f"{out.consistent_count} consistent, {len(out.nonbounding_hits)} hits")
    report(6, hits == 0, "; ".join(parts))


def test_criterion_07_sufficiency_sound(report, consistent_500):
    forced = wrong = 0
    for d in consistent_500:
        if sufficiency_partition_condition(d) is Sufficiency.FORCED_TO_BOUND:
            forced += 1
            if not bounds_via_multiplicities(d).bounds:
                wrong += 1
    ok = wrong == 0 and forced > 0
    report(7, ok, f"{forced} consistent datasets forced to bound, {wrong} nonbounding among them")


def compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def test_criterion_08_partition_inequality(report):
    t = time.perf_counter()
    seen = bad = 0
    for total in range(1, 13):
        for parts in compositions(total):
            seen += 1
            lhs, rhs, holds = partition_inequality(parts)
            if not holds or (lhs == rhs) != (len(parts) == 1):
                bad += 1
    dt = time.perf_counter() - t
    ok = bad == 0 and seen == 2 ** 12 - 1 and dt < 1
    report(8, ok, f"{seen} compositions, {bad} failures in {dt:.3f}s")


def test_criterion_09_symmetry_invariance(report, datasets_500):
    rng = random.Random(9)
    picks = rng.sample(range(len(datasets_500)), 100)
    bad = []
    compared = 0
    for i in picks:
        d = datasets_500[i]
        a = samples.random_unimodular(rng, d.rank, 2)
        image, rev = d.transformed(a), d.reversed()
        if bounds_via_multiplicities(image).bounds != bounds_via_multiplicities(d).bounds:
            bad.append((i, "verdict"))
        for omega in multi_indices(d.rank, 2 * d.rank):
            r, ri, rr = (chern_number_rational(x, omega) for x in (d, image, rev))
            if not (r.is_polynomial == ri.is_polynomial == rr.is_polynomial):
                bad.append((i, omega, "status"))
            elif r.is_polynomial:
                compared += 1
                if ri.value != substitute_linear(r.value, a):
                    bad.append((i, omega, "substitution"))
                if rr.value != -r.value:
                    bad.append((i, omega, "reversal"))
    ok = not bad and compared > 0
    report(9, ok, f"100 pairs, {compared} polynomial values compared, {len(bad)} failures {bad[:3]}")


def test_criterion_10_minimal_hits(report, tmp_path):
    t = time.perf_counter()
    hits_file = tmp_path / "hits.jsonl"
    code, out = cli("search", "--rank", "1", "--points", "2", "--weight-bound", "1",
                    "--hits", str(hits_file))
    found = [dataset_from_json(json.loads(line)["dataset"]) for line in hits_file.read_text().splitlines()]
    cp1_found = code == 0 and any(gl_equivalent(d, CP1) for d in found)
    even = hunt_nonbounding_minimal(SearchConfig(2, 2, 2))
    s_values = [partition_summary(h.dataset).s for h in even.nonbounding_hits]
    dt = time.perf_counter() - t
    ok = cp1_found and all(s == 1 for s in s_values) and dt < 10
    report(10, ok, f"n=1: {len(found)} hit(s), CP1-type={cp1_found}; "
                   f"n=2 minimal: {len(s_values)} hit(s), s values {s_values}; {dt:.2f}s")
