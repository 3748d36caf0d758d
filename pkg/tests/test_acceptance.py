"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""

import csv
import time
from decimal import Decimal
from fractions import Fraction

import numpy as np
import pytest

from spinwitness.cli import main
from spinwitness.closed_forms import catalan_triangle, d_half_closed, mult_via_magnetization
from spinwitness.decidability import estimate_f_infinity, fraction, fraction_series
from spinwitness.fitting import fit
from spinwitness.multiplicity import Backend, degeneracy_rows_stream, mult_row
from spinwitness.paths import list_paths
from spinwitness.spinsim import (
    SpinOperators,
    commutator_check,
    product_state_witness_value,
    random_product_state,
    separable_bound_mc,
    witness_spectrum,
)

SEQUENCES = {
    ("3/2", 18): "0, 1, 0, 4, 0, 34, 0, 364, 0, 4269, 0, 52844, 0, 679172, 0, 8976188, 0, 121223668",
    ("2", 13): "0, 1, 1, 5, 16, 65, 260, 1085, 4600, 19845, 86725, 383251, 1709566",
    ("3", 13): "0, 1, 1, 7, 31, 175, 981, 5719, 33922, 204687, 1251460, 7737807, 48297536",
}


def load_table1(path):
    with open(path) as fh:
        return [(int(Fraction(r["s"]) * 2), Decimal(r["f"]), Decimal(r["half_width"])) for r in csv.DictReader(fh)]


def test_c01_sequences(capsys, criterion):
    t0 = time.perf_counter()
    bad = []
    for (spin, n_max), expected in SEQUENCES.items():
        main(["seq", "--spin", spin, "--j", "0", "--n-max", str(n_max)])
        got = capsys.readouterr().out.strip()
        if got != expected:
            bad.append(spin)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1
    criterion(1, ok, f"3 printed sequences verbatim, mismatches={bad}, {dt:.2f}s (< 1 s)")
    assert ok


def test_c02_figure_values(criterion):
    t0 = time.perf_counter()
    half, one = mult_row(1, 6), mult_row(2, 6)
    vals = (half[0], half[2], one[0])
    counts = (len(list_paths(1, 6, 0, 100)), len(list_paths(2, 6, 0, 100)))
    dt = time.perf_counter() - t0
    ok = vals == (5, 9, 15) and counts == (5, 15) and dt < 1
    criterion(2, ok, f"m values {vals} == (5, 9, 15), listed paths {counts} == (5, 15), {dt:.2f}s")
    assert ok


def test_c03_closed_forms(criterion):
    t0 = time.perf_counter()
    mismatches = 0
    checked = 0
    for row in degeneracy_rows_stream(1, 60):
        N = row.N
        if N % 2:
            continue
        for j in range(0, N + 1):
            d = (j + 1) * row[j]
            mismatches += d != d_half_closed(N, j)
            mismatches += row[j] != mult_via_magnetization(1, N, j)
            if j % 2 == 0:
                mismatches += row[j] != catalan_triangle(N // 2 + j // 2, N // 2 - j // 2)
            checked += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 10
    criterion(3, ok, f"{checked} (N, j) pairs, even N <= 60, {mismatches} mismatches, {dt:.2f}s (< 10 s)")
    assert ok


def test_c04_dimension_conservation(criterion):
    t0 = time.perf_counter()
    bad = [
        (s, row.N)
        for s in (1, 2, 3, 4, 5, 6)
        for row in degeneracy_rows_stream(s, 40)
        if row.total_dimension() != (s + 1) ** row.N
    ]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    criterion(4, ok, f"sum (2j+1) m = (2s+1)^N for s <= 3, N <= 40; failures={bad}, {dt:.2f}s")
    assert ok


def test_c05_reference_fractions(criterion):
    t0 = time.perf_counter()
    series = fraction_series(1, 9939, 9943, Backend.NORMALIZED)
    f40, f42 = series.at(9940), series.at(9942)
    dt = time.perf_counter() - t0
    ok = abs(f40 - 0.42169) <= 5e-6 and abs(f42 - 0.43338) <= 5e-6 and dt < 120
    criterion(5, ok, f"f(9940)={f40:.7f} vs 0.42169, f(9942)={f42:.7f} vs 0.43338 (tol 5e-6), {dt:.1f}s")
    assert ok
    assert fraction(1, 9940) == f40


def _two_sig_match(lo: float, hi: float, quoted: Decimal) -> tuple[bool, Decimal]:
    """Half-width from the bracket values at the 5-decimal precision f is quoted at, compared
    with the tabulated half-width to within half a unit of its second significant digit."""
    q = Decimal("0.00001")
    hw = (Decimal(repr(hi)).quantize(q) - Decimal(repr(lo)).quantize(q)) / 2
    unit = Decimal(1).scaleb(quoted.adjusted() - 1)
    return abs(hw - quoted) <= unit / 2, hw


def test_c06_table1(table1_path, criterion):
    t0 = time.perf_counter()
    lines, all_ok = [], True
    for s, center, hw in load_table1(table1_path):
        est = estimate_f_infinity(s, 10000, Backend.NORMALIZED)
        c_ok = abs(Decimal(repr(est.center)) - center) <= hw
        h_ok, hw5 = _two_sig_match(est.f_lo, est.f_hi, hw)
        all_ok &= c_ok and h_ok
        lines.append(
            f"s={s}/2 bracket ({est.N_lo},{est.N_hi}) center {est.center:.5f} vs {center}"
            f" hw {est.half_width:.6f} ({hw5}) vs {hw} {'ok' if c_ok and h_ok else 'BAD'}"
        )
    dt = time.perf_counter() - t0
    ok = all_ok and dt < 3600
    print("\n".join(lines))
    criterion(6, ok, f"10 rows, centers within quoted half-widths and half-widths to 2 s.f.; {dt:.1f}s (< 1 h)")
    assert ok, "\n".join(lines)


def test_c07_fit(table1_path, criterion):
    t0 = time.perf_counter()
    pts = [(float(Fraction(s, 2)), float(f)) for s, f, _ in load_table1(table1_path)]
    p = fit(pts, seed=0).params
    dt = time.perf_counter() - t0
    rel = [abs(x - y) / y for x, y in zip((p.a, p.b, p.c), (1.36273, 1.26448, 1.7738))]
    ok = max(rel) <= 0.01 and p.ssr <= 1e-5 and dt < 10
    criterion(7, ok, f"a={p.a:.5f} b={p.b:.5f} c={p.c:.5f} (max rel dev {max(rel):.1e}), ssr={p.ssr:.2e}, {dt:.2f}s")
    assert ok


def test_c08_quantum_oracle(criterion):
    t0 = time.perf_counter()
    bad, worst = [], 0.0
    for s, n_max in ((1, 8), (2, 5), (3, 4), (4, 4)):
        for N in range(1, n_max + 1):
            counts, resid = witness_spectrum(s, N)
            row = mult_row(s, N)
            dp = {j: d for j, d in zip(row.twice_js(), row.degeneracies()) if d}
            worst = max(worst, resid)
            if counts != dp:
                bad.append((s, N))
    dt = time.perf_counter() - t0
    ok = not bad and worst <= 1e-6 and dt < 300
    criterion(8, ok, f"spectrum == DP on all configs, mismatches={bad}, max residual {worst:.1e}, {dt:.2f}s")
    assert ok


def test_c09_separable_bound(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    margins, dev = [], 0.0
    for s in (1, 2, 3):
        for N in (2, 4, 6):
            m, _ = separable_bound_mc(s, N, 10**5, seed=100 * s + N)
            margins.append(m - N * s / 2)
            W = SpinOperators.build(s, N).witness()
            for _ in range(100):
                st = random_product_state(s, N, rng)
                psi = st.vector()
                dense = float(np.vdot(psi, W @ psi).real)
                dev = max(dev, abs(dense - product_state_witness_value(st)))
    dt = time.perf_counter() - t0
    ok = min(margins) >= -1e-9 and dev <= 1e-10 and dt < 60
    criterion(9, ok, f"min(<W> - Ns) = {min(margins):.3e} over 9 configs x 1e5; identity dev {dev:.1e}; {dt:.1f}s")
    assert ok


def test_c10_commutator(criterion):
    t0 = time.perf_counter()
    reports = [commutator_check(1, N, seed=N) for N in (3, 4, 5)]
    dt = time.perf_counter() - t0
    identity_ok = all(r.identity_deviation <= 1e-10 for r in reports)
    probe_ok = all(r.ground_norm < r.random_norm for r in reports)
    ok = identity_ok and probe_ok and dt < 60
    norms = ", ".join(f"N={r.N}: ground {r.ground_norm:.1e} random {r.random_norm:.1e}" for r in reports)
    criterion(
        10, ok,
        f"identity dev <= 1e-10: {identity_ok}; ground < random: {probe_ok} ({norms}; "
        f"max |[H_L, W]| = {max(r.commutator_max_entry for r in reports):.1e})",
    )
    assert identity_ok
    assert probe_ok, f"[H_L, W] vanishes identically, so no state separates the norms: {norms}"


def _interleave_gap(f: np.ndarray) -> np.ndarray:
    """Distance of each sample from the midpoint of its two opposite-parity neighbours."""
    return np.abs(f[1:-1] - (f[:-2] + f[2:]) / 2)


def test_c11_parity_structure(criterion):
    t0 = time.perf_counter()
    odd_zero = all(row[0] == 0 for row in degeneracy_rows_stream(3, 41) if row.N % 2)
    split, smooth = {}, {}
    for s in (1, 3, 5, 7):
        split[s] = float(_interleave_gap(fraction_series(s, 1, 99).f).max())
    for s in (2, 4, 6, 8):
        smooth[s] = float(np.median(_interleave_gap(fraction_series(s, 1, 99).f)))
    dt = time.perf_counter() - t0
    ok = odd_zero and min(split.values()) > 1e-3 and max(smooth.values()) < 1e-3 and dt < 60
    criterion(
        11, ok,
        f"odd-N singlets of s=3/2 vanish: {odd_zero}; half-integer max gap "
        f"{min(split.values()):.3f} > 1e-3; integer median gap {max(smooth.values()):.1e} < 1e-3; {dt:.1f}s",
    )
    assert ok
