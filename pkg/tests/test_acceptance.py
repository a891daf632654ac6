"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import json
import time

import numpy as np
import pytest

from distvar import io
from distvar.cli import main
from distvar.config import BOUNDARY_RADIUS
from distvar.moduli import (
    gauge_orbit_sample,
    invariants,
    palindrome_residuals,
    reconstruct_Q,
    same_variety,
)
from distvar.numerics import haar_unitary, multiset_match, op_norm
from distvar.transfer import defect_residual, find_gauge_W, transfer_equal
from distvar.variety import is_distinguished, lemma_residual, variety_poly

from conftest import BLASCHKE_Q, FLIP_Q, SWAP_Q, haar_block

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        return ok

    return emit


def test_reconstruction_oracle(report):
    start = time.perf_counter()
    worst, used, seed = 0.0, 0, 0
    while used < 1000:
        U = haar_block(seed)
        seed += 1
        inv = invariants(U)
        if abs(inv.detA) <= 1e-4:
            continue
        used += 1
        worst = max(worst, reconstruct_Q(inv).deviation(variety_poly(U)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 5.0
    assert report(1, ok, f"{used} unitaries, worst relative error {worst:.2e} (<= 1e-8), {elapsed:.2f}s (< 5s)")


def test_defect_identity(report):
    rng = np.random.default_rng(1)
    worst = 0.0
    for seed in range(1000):
        z = 0.99 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        worst = max(worst, defect_residual(haar_block(seed), z))
    assert report(2, worst <= 1e-10, f"1000 pairs, worst residual {worst:.2e} (<= 1e-10)")


def test_distinguished_boundary(report):
    failures, worst = [], 0.0
    for seed in range(200):
        rep = is_distinguished(haar_block(seed), 64, 1e-4, radius=BOUNDARY_RADIUS)
        dev = max(c.worst_residual for c in rep.checks)
        worst = max(worst, dev)
        if not rep.passed:
            failures.append((seed, dev))
    detail = f"200 unitaries x 64 samples at r = 1 - 1e-6, worst deviation {worst:.3e} (<= 1e-4)"
    if failures:
        detail += f"; failing seeds {failures}"
    assert report(3, not failures, detail)


def test_gauge_equivalence(report):
    worst_W, worst_Q, count, seed = 0.0, 0.0, 0, 0
    misses = []
    while count < 200:
        U = haar_block(seed)
        W0 = haar_unitary(2, 50_000 + seed)
        seed += 1
        if op_norm(U.A) > 1 - 1e-6:
            continue
        count += 1
        U1 = U.conjugate_by(W=W0)
        match = find_gauge_W(U, U1)
        if not transfer_equal(U, U1) or match is None:
            misses.append(seed - 1)
            continue
        worst_W = max(worst_W, float(np.max(np.abs(match.W - W0))))
        worst_Q = max(worst_Q, variety_poly(U).max_abs_difference(variety_poly(U1)))
    ok = not misses and worst_W <= 1e-8 and worst_Q <= 1e-9
    assert report(4, ok, f"200 pairs, misses {misses}, worst |W - W0| {worst_W:.2e} (<= 1e-8), "
                         f"worst polynomial gap {worst_Q:.2e} (<= 1e-9)")


def test_moduli_discrimination(report):
    false_same = [s for s in range(1000) if same_variety(haar_block(s), haar_block(100_000 + s))]
    orbit_miss, worst = [], 0.0
    for s in range(1000):
        U = haar_block(s)
        U1 = gauge_orbit_sample(U, 200_000 + s)
        if not same_variety(U, U1):
            orbit_miss.append(s)
        worst = max(worst, variety_poly(U).max_abs_difference(variety_poly(U1)))
    ok = not false_same and not orbit_miss and worst <= 1e-8
    assert report(5, ok, f"independent pairs judged same {len(false_same)}/1000, orbit pairs judged "
                         f"different {len(orbit_miss)}/1000, worst orbit polynomial gap {worst:.2e} (<= 1e-8)")


def test_functional_equation(report):
    rng = np.random.default_rng(6)
    worst_lemma, worst_pal, used, seed = 0.0, 0.0, 0, 0
    while used < 500:
        U = haar_block(seed)
        seed += 1
        z = rng.uniform(0.1, 0.9) * np.exp(2j * np.pi * rng.uniform())
        Q = variety_poly(U)
        if abs(np.polyval(Q.p(2)[::-1], z)) <= 1e-3:
            continue
        used += 1
        worst_lemma = max(worst_lemma, lemma_residual(U, z, Q=Q))
        res = palindrome_residuals(U, Q=Q)
        worst_pal = max(worst_pal, res["b0"], res["b1"])
    ok = worst_lemma <= 1e-9 and worst_pal <= 1e-9
    assert report(6, ok, f"500 pairs, worst functional-equation residual {worst_lemma:.2e} (<= 1e-9), "
                         f"worst palindrome residual {worst_pal:.2e} (<= 1e-9)")


def test_closed_form_fixtures(report, swap, flip, blaschke):
    cases = [
        (swap, SWAP_Q, ([0, 0], [0, 0], 2)),
        (flip, FLIP_Q, ([0, 0], [0, 0], 0)),
        (blaschke, BLASCHKE_Q, ([0.6, 0.6], [0.6, 0.6], -1.28)),
    ]
    worst, triples_ok = 0.0, True
    for U, expected, (eA, eD, t) in cases:
        worst = max(worst, float(np.max(np.abs(variety_poly(U).coeff - expected))))
        inv = invariants(U)
        triples_ok &= multiset_match(inv.eigA, eA, 1e-12) and multiset_match(inv.eigD, eD, 1e-12)
        triples_ok &= abs(inv.trBC - t) <= 1e-12
    ok = worst <= 1e-12 and triples_ok
    assert report(7, ok, f"worst coefficient error {worst:.2e} (<= 1e-12), invariant triples match: {triples_ok}")


def test_cli_contract(report, tmp_path, swap, flip, capsys):
    problems = []
    worst = 0.0
    for seed in range(5):
        u, q, inv, r = (str(tmp_path / f"{seed}_{f}") for f in ("u.json", "q.json", "inv.json", "r.json"))
        codes = [
            main(["gen", "2", "2", "--seed", str(seed), "--out", u]),
            main(["poly", u, "--out", q]),
            main(["invariants", u, "--out", inv]),
            main(["reconstruct", inv, "--out", r]),
        ]
        if codes != [0, 0, 0, 0]:
            problems.append(f"pipeline seed {seed} exit codes {codes}")
            continue
        worst = max(worst, io.poly_from_dict(io.read_json(r)).deviation(io.poly_from_dict(io.read_json(q))))
    if worst > 1e-8:
        problems.append(f"round trip error {worst:.2e}")

    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["gen", "2", "2", "--seed", "7", "--out", str(a)])
    main(["gen", "2", "2", "--seed", "7", "--out", str(b)])
    if a.read_bytes() != b.read_bytes():
        problems.append("gen not byte-deterministic")

    sw, fl = tmp_path / "swap.json", tmp_path / "flip.json"
    io.write_text(sw, io.dumps(io.unitary_to_dict(swap)))
    io.write_text(fl, io.dumps(io.unitary_to_dict(flip)))
    tampered = io.unitary_to_dict(haar_block(3))
    tampered["U"][0][1] = [0.9, 0.0]
    bad = tmp_path / "bad.json"
    io.write_text(bad, io.dumps(tampered))
    degenerate = tmp_path / "deg.json"
    degenerate.write_text(json.dumps({"eigA": [[0, 0], [0, 0]], "eigD": [[0, 0], [0, 0]], "trBC": [2, 0]}))
    rank23 = tmp_path / "r23.json"
    main(["gen", "2", "3", "--seed", "1", "--out", str(rank23)])
    expected = {
        "same-variety self": (["same-variety", str(a), str(a)], 0),
        "same-variety swap/flip": (["same-variety", str(sw), str(fl)], 1),
        "same-variety missing": (["same-variety", str(a), str(tmp_path / "none.json")], 2),
        "verify haar": (["verify", str(a), "--samples", "16"], 0),
        "verify tampered": (["verify", str(bad), "--samples", "16"], 1),
        "poly tampered": (["poly", str(bad)], 2),
        "invariants rank (2,3)": (["invariants", str(rank23)], 2),
        "reconstruct degenerate": (["reconstruct", str(degenerate)], 2),
    }
    for label, (argv, code) in expected.items():
        got = main(argv)
        if got != code:
            problems.append(f"{label}: exit {got}, expected {code}")
    capsys.readouterr()
    assert report(8, not problems, f"round trip worst {worst:.2e} (<= 1e-8), "
                                   f"{len(expected)} exit-code cases, problems: {problems or 'none'}")
