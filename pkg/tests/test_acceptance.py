"""One test per acceptance criterion; each records a PASS or FAIL line.

The lines appear in the pytest terminal summary, and are printed directly
when this file is run as a script.
"""

from __future__ import annotations

import contextlib
import functools
import json
import subprocess
import sys
import time

import numpy as np

from divide_kh import build_complex, check_d_squared, divide_homology, validate, w_statesum
from divide_kh import HalfLaurent, apply_move
from divide_kh.complex import UnsupportedSaddle, check_bidegrees, chain_summands, cone_of_split
from divide_kh.gf2 import BitMatrix, differential_matrix, naive_rank, rank
from divide_kh.moves import MoveKind, MoveSpec
from divide_kh.polynomial import check_euler_relation
from divide_kh.states import enumerate_enhanced
from battery import holds, identities
from conftest import CRITERIA
from support import (
    FIGURE_EIGHT_H, TREFOIL_H, fixture, fixtures, invariance_cases, invariants, random_suite,
    slide_location, slide_suite,
)

PERF_SEED, PERF_POINTS, PERF_STRANDS = 2, 14, 4
PERF_SECONDS, PERF_MB = 60.0, 2048.0


@contextlib.contextmanager
def criterion(number: int, title: str):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
    except BaseException as exc:
        CRITERIA[number] = f"criterion {number:2d} FAIL  {title}: {type(exc).__name__}: {exc}"
        raise
    elapsed = time.perf_counter() - start
    extra = f" ({'; '.join(notes)})" if notes else ""
    CRITERIA[number] = f"criterion {number:2d} PASS  {title} [{elapsed:.1f}s]{extra}"


@functools.lru_cache(maxsize=None)
def suite_results() -> list[dict]:
    """One pass over the 200-divide random suite, shared by several criteria."""
    out = []
    for d in random_suite(200, 10):
        row = {"name": d.name}
        try:
            cx = build_complex(d)
        except UnsupportedSaddle as exc:
            row["saddle"] = str(exc)
            out.append(row)
            continue
        row["d2"] = check_d_squared(cx)
        row["bidegrees"] = check_bidegrees(cx)
        table = divide_homology(d)
        row["euler"] = check_euler_relation(d, table)
        small = [key for key in cx.d
                 if 0 < len(cx.basis[key]) <= 64 and 0 < len(cx.basis.get((key[0] + 1, key[1]), ())) <= 64]
        row["small_blocks"] = len(small)
        row["rank_mismatch"] = sum(
            rank(differential_matrix(cx, key)) != naive_rank(differential_matrix(cx, key).to_dense())
            for key in small)
        out.append(row)
    return out


def failures(key: str) -> list[str]:
    return [r["name"] for r in suite_results() if "saddle" in r or not r[key]]


def test_criterion_01_trefoil_homology():
    with criterion(1, "trefoil homology table") as notes:
        start = time.perf_counter()
        table = divide_homology(fixture("trefoil"))
        elapsed = time.perf_counter() - start
        assert table == TREFOIL_H, table.entries
        assert elapsed < 1.0, f"{elapsed:.2f}s"
        notes.append(f"{elapsed * 1000:.0f} ms")


def test_criterion_02_figure_eight_homology():
    with criterion(2, "figure-eight homology table") as notes:
        start = time.perf_counter()
        table = divide_homology(fixture("figure_eight"))
        elapsed = time.perf_counter() - start
        assert table == FIGURE_EIGHT_H, table.entries
        assert elapsed < 1.0, f"{elapsed:.2f}s"
        notes.append(f"{elapsed * 1000:.0f} ms")


def test_criterion_03_chain_group_shape():
    with criterion(3, "chain-group summands of both fixtures"):
        # (i, k, op, cl, count); op and cl count A and B factors.
        trefoil = {(0, 3, 2, 0, 1), (1, 5, 2, 0, 1), (1, 4, 1, 0, 1), (2, 6, 1, 1, 1)}
        figure_eight = {(-1, -2, 3, 0, 1), (0, 0, 3, 0, 1), (0, -1, 2, 0, 2), (1, 1, 2, 0, 2),
                        (1, 0, 1, 0, 1), (2, 2, 1, 1, 1)}
        for name, expected in (("trefoil", trefoil), ("figure_eight", figure_eight)):
            got = {(i, *s) for i, parts in chain_summands(fixture(name)).items() for s in parts}
            assert got == expected, (name, got)
        level_dims = {}
        for (i, _), n in build_complex(fixture("trefoil")).dims().items():
            level_dims[i] = level_dims.get(i, 0) + n
        assert level_dims == {0: 4, 1: 6, 2: 4}


def test_criterion_04_polynomials():
    with criterion(4, "W of fixtures and the Euler relation") as notes:
        assert w_statesum(fixture("trefoil")) == HalfLaurent.from_t({1: 1, 3: -1, 4: 1})
        assert w_statesum(fixture("figure_eight")) == HalfLaurent.from_t({2: 1, 1: -1, 0: 1, -1: 1, -2: -1})
        for name, d in fixtures().items():
            assert check_euler_relation(d), name
        bad = failures("euler")
        assert not bad, bad
        notes.append(f"{len(suite_results())} random divides")


def test_criterion_05_differential_soundness():
    with criterion(5, "d squared, bidegrees, no unsupported saddle") as notes:
        for name, d in fixtures().items():
            cx = build_complex(d)
            assert check_d_squared(cx) and check_bidegrees(cx), name
        saddles = [r["name"] for r in suite_results() if "saddle" in r]
        assert not saddles, saddles
        bad = sorted(set(failures("d2")) | set(failures("bidegrees")))
        assert not bad, bad
        notes.append(f"{len(suite_results())} random divides")


def test_criterion_06_frobenius_battery():
    with criterion(6, "algebra identity battery") as notes:
        start = time.perf_counter()
        bad = [label for label, left, right in identities() if not holds(left, right)]
        elapsed = time.perf_counter() - start
        assert not bad, bad
        assert elapsed < 1.0, f"{elapsed:.2f}s"
        notes.append(f"{len(identities())} identities")


def test_criterion_07_cone_reconstruction():
    with criterion(7, "cone of split pieces equals the built complex") as notes:
        suite = list(fixtures().values()) + random_suite(60, 8, first_seed=7000)
        points = 0
        for d in suite:
            direct = build_complex(d)
            for t in range(validate(d).n):
                rebuilt = cone_of_split(d, t)
                assert rebuilt.dims() == direct.dims(), (d.name, t)
                assert rebuilt.labeled() == direct.labeled(), (d.name, t)
                points += 1
        notes.append(f"{len(suite)} divides, {points} points")


def test_criterion_08_move_invariance():
    with criterion(8, "move invariance of homology and W") as notes:
        cases = invariance_cases()
        for d, m in cases:
            assert invariants(apply_move(d, m)) == invariants(d), (d.signed_word(), str(m))
        slides = slide_suite()
        for d in slides:
            moved = apply_move(d, MoveSpec(MoveKind.BRAID_SLIDE, slide_location(d)))
            assert invariants(moved) == invariants(d), d.name
        notes.append(f"{len(cases)} insert/cancel/commute cases, {len(slides)} slides")


def test_criterion_09_bounds_and_parity():
    with criterion(9, "grading bounds and j parity") as notes:
        count = 0
        for d in random_suite(200, 10):
            prof = validate(d)
            np_, nm, n0 = prof.n_plus, prof.n_minus, prof.n_zero
            half = prof.endpoints // 2
            for s in enumerate_enhanced(d):
                assert -nm <= s.i <= np_ + n0, (d.name, s)
                assert 2 * np_ - 4 * nm + n0 <= s.k <= 4 * np_ - 2 * nm + 2 * n0, (d.name, s)
                assert (s.j - half) % 2 == 0, (d.name, s)
                count += 1
        notes.append(f"{count} enhanced states")


PERF_SCRIPT = """
import json, resource, sys, time
from divide_kh import divide_homology, random_divide
d = random_divide(*map(int, sys.argv[1:4]))
start = time.perf_counter()
table = divide_homology(d)
elapsed = time.perf_counter() - start
rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
print(json.dumps({"seconds": elapsed, "mb": rss, "total": table.total()}))
"""


def test_criterion_10_performance():
    with criterion(10, "14-point divide in time and memory; rank vs reference") as notes:
        proc = subprocess.run([sys.executable, "-c", PERF_SCRIPT, str(PERF_SEED), str(PERF_POINTS),
                               str(PERF_STRANDS)], capture_output=True, text=True, timeout=600)
        assert proc.returncode == 0, proc.stderr
        perf = json.loads(proc.stdout)
        assert perf["seconds"] < PERF_SECONDS, perf
        assert perf["mb"] < PERF_MB, perf
        notes.append(f"{perf['seconds']:.1f}s, {perf['mb']:.0f} MB peak")
        mismatches = sum(r.get("rank_mismatch", 0) for r in suite_results())
        blocks = sum(r.get("small_blocks", 0) for r in suite_results())
        rng = np.random.default_rng(10)
        for _ in range(300):
            rows, cols = rng.integers(1, 65, size=2)
            dense = (rng.random((rows, cols)) < rng.choice([0.05, 0.2, 0.5])).astype(int).tolist()
            mismatches += rank(BitMatrix.from_dense(dense)) != naive_rank(dense)
            blocks += 1
        assert mismatches == 0, f"{mismatches} of {blocks} matrices disagree"
        notes.append(f"{blocks} matrices up to 64x64")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except BaseException:
                failed += 1
    for number in sorted(CRITERIA):
        print(CRITERIA[number])
    sys.exit(1 if failed else 0)
