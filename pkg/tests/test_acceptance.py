"""Acceptance criteria 1-11, each at its stated tolerance.

Every test prints one ``criterion k: PASS/FAIL`` line (collected again in
the session summary) before asserting.  Run this file directly to print
the lines without pytest.
"""
import math
import time

import numpy as np

from dd_metrology import noise, oracles, pulses, qfi, spin, squeezing
from dd_metrology.noise import DephasingRecord, NoiseSpec

LIMIT_200 = 0.030411


def test_c01_free_closed_forms(report):
    start = time.perf_counter()
    ns = NoiseSpec(0.1, 1.0, 0.0)
    worst_om = worst_r = 0.0
    for t in np.logspace(-2, math.log10(50.0), 50):
        seq = pulses.free_sequence(t)
        om = noise.twisting_Omega(ns, seq)
        r = noise.decoherence_R(ns, seq)
        worst_om = max(worst_om, abs(om / noise.free_Omega_closed(ns, t) - 1))
        worst_r = max(worst_r, abs(r / noise.free_R_closed(ns, t) - 1))
    elapsed = time.perf_counter() - start
    ok = worst_om <= 1e-8 and worst_r <= 1e-8 and elapsed < 5
    assert report(1, ok, f"max rel err Omega {worst_om:.1e}, R {worst_r:.1e} (<= 1e-8); {elapsed:.2f} s (< 5 s)")


def test_c02_kernel_oracle(report):
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    for n in (0, 1, 2, 5):
        for k in range(10):
            w, t = rng.uniform(0.1, 8.0), rng.uniform(0.5, 5.0)
            seq = pulses.make_sequence("UDD" if k % 2 else "PDD", n, t)
            worst = max(worst, abs(pulses.f_kernel(seq, w) - oracles.f_kernel_brute(seq, w)))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-6 and elapsed < 60
    assert report(2, ok, f"max abs err {worst:.1e} (<= 1e-6) over 40 points; {elapsed:.1f} s (< 60 s)")


def test_c03_pdd_closed_form(report):
    rng = np.random.default_rng(7)
    w = rng.uniform(0.01, 50.0, 100)
    t = rng.uniform(0.1, 20.0, 100)
    worst, used = 0.0, 0
    for n in range(1, 11):
        x = w * t / (2 * n + 2)
        away = np.abs(np.mod(x, np.pi) - np.pi / 2) > 1e-3
        for wi, ti in zip(w[away], t[away]):
            ref = pulses.filter_function(pulses.pdd_times(n, ti), wi)
            got = pulses.pdd_filter_closed(n, wi, ti)
            worst = max(worst, abs(got - ref) / abs(ref))
            used += 1
    ok = worst <= 1e-10
    assert report(3, ok, f"max rel err {worst:.1e} (<= 1e-10) on {used} of 1000 grid points away from poles")


def test_c04_squeezing_oracle_pair(report):
    ns = NoiseSpec(0.01, 1.0, 1.0)
    recs = [noise.dephasing_record(ns, "UDD", 20, t) for t in np.linspace(1.0, 20.0, 20)]
    worst = 0.0
    for n_atoms in (10, 40, 100):
        css = spin.css_state(n_atoms)
        for rec in recs:
            num = squeezing.squeezing_numeric(spin.evolve(css, rec)).xi2
            worst = max(worst, abs(num - squeezing.squeezing_analytic(n_atoms, rec).xi2))
    ok = worst <= 1e-8
    assert report(4, ok, f"max |numeric - analytic| {worst:.1e} (<= 1e-8)")


def test_c05_squeezing_limit(report):
    start = time.perf_counter()
    # (a) no decoherence: one-axis twisting alone, minimised over the twist angle
    _, pure_min = squeezing.minimize_on_grid(lambda th: squeezing.squeezing_from_twist(200, th).xi2, 0.0, 0.2)
    # (b) UDD n = 50, alpha = 0.01, T = omega_c: minimised over omega_c t in [0, 20]
    ns = NoiseSpec(0.01, 1.0, 1.0)

    def xi2(t):
        return squeezing.squeezing_analytic(200, noise.dephasing_record(ns, "UDD", 50, t)).xi2

    t_best, udd_min = squeezing.minimize_on_grid(xi2, 0.0, 20.0)
    elapsed = time.perf_counter() - start
    rel_a = abs(pure_min / LIMIT_200 - 1)
    rel_b = abs(udd_min / LIMIT_200 - 1)
    ok = rel_a <= 0.05 and rel_b <= 0.10 and elapsed < 120
    assert report(5, ok, f"R=0 min {pure_min:.6f} ({rel_a:.1%}, <= 5%); UDD50 min {udd_min:.4f} at t={t_best:.2f} "
                         f"({rel_b:.0%}, <= 10%); {elapsed:.1f} s (< 120 s)")


def test_c06_no_twist_no_squeeze(report):
    rng = np.random.default_rng(6)
    worst = 0.0
    for r, n_atoms in zip(rng.uniform(0.0, 10.0, 1000), rng.integers(2, 401, 1000)):
        worst = max(worst, abs(squeezing.squeezing_from_twist(int(n_atoms), 0.0, r).xi2 - 1.0))
    ok = worst <= 1e-12
    assert report(6, ok, f"max |xi2 - 1| {worst:.1e} (<= 1e-12) over 1000 random R in [0, 10]")


def test_c07_qfi_oracle_chain(report):
    twists = np.linspace(0.0, 3.0, 20)
    worst_a = worst_b = 0.0
    for n_atoms in (2, 5, 10, 25, 50):
        for th in twists:
            st = spin.evolve(spin.css_state(n_atoms), DephasingRecord(0.0, th, 0.0, 1.0))
            c_pure = qfi.c_matrix_pure(st)
            worst_a = max(worst_a, float(np.max(np.abs(qfi.c_matrix_mixed(st) - c_pure))))
            worst_b = max(worst_b, abs(qfi.qfi_max(c_pure).f_max - qfi.qfi_pure_closed(n_atoms, th).f_max))
    worst_c = max(abs(qfi.qfi_state(spin.css_state(n)).f_max - n) / n for n in (2, 10, 100, 200))
    ok = worst_a <= 1e-8 and worst_b <= 1e-8 and worst_c <= 1e-10
    assert report(7, ok, f"(a) {worst_a:.1e} (b) {worst_b:.1e} (<= 1e-8); (c) |F-N|/N {worst_c:.1e} (<= 1e-10)")


def test_c08_amplification_scaling(report):
    start = time.perf_counter()
    rec = noise.dephasing_record(NoiseSpec(0.05, 1.0, 1.0), "UDD", 50, 5.0)
    sizes = np.array([50, 100, 150, 200])
    eta = np.array([qfi.qfi_state(spin.evolve(spin.css_state(int(n)), rec)).eta for n in sizes])
    slope = np.polyfit(sizes, eta, 1)[0]
    elapsed = time.perf_counter() - start
    ok = 0.45 <= slope <= 0.55 and 90 <= eta[-1] <= 110 and elapsed < 300
    assert report(8, ok, f"slope {slope:.4f} (in [0.45, 0.55]); eta(200) {eta[-1]:.3f} (in [90, 110]); "
                         f"Omega(t=5) = {rec.omega_twist:.3e}; {elapsed:.1f} s (< 300 s)")


def test_c09_state_map_properties(report):
    rng = np.random.default_rng(9)
    worst = {"herm": 0.0, "trace": 0.0, "eig": 0.0, "diag": 0.0, "casimir": 0.0}
    for _ in range(200):
        n_atoms = int(rng.integers(1, 61))
        rec = DephasingRecord(rng.uniform(0, 5), rng.uniform(-np.pi, np.pi), rng.uniform(-10, 10), 1.0)
        css = spin.css_state(n_atoms)
        rho = spin.evolve(css, rec).rho
        ops = spin.collective_ops(n_atoms)
        j = n_atoms / 2
        casimir = sum(np.einsum("ij,ji->", rho, a @ a).real for a in ops)
        worst["herm"] = max(worst["herm"], float(np.max(np.abs(rho - rho.conj().T))))
        worst["trace"] = max(worst["trace"], abs(np.trace(rho).real - 1.0))
        worst["eig"] = max(worst["eig"], -float(np.linalg.eigvalsh(rho).min()))
        worst["diag"] = max(worst["diag"], float(np.max(np.abs(np.diag(rho) - np.diag(css.rho)))))
        worst["casimir"] = max(worst["casimir"], abs(casimir - j * (j + 1)))
    ok = (worst["herm"] <= 1e-10 and worst["trace"] <= 1e-10 and worst["eig"] <= 1e-10
          and worst["diag"] <= 1e-10 and worst["casimir"] <= 1e-10)
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    assert report(9, ok, f"200 random maps: {detail} (all <= 1e-10)")


def _last_time_above(times, purity, level=0.99):
    above = np.nonzero(purity > level)[0]
    return times[above[-1]] if above.size else -math.inf


def test_c10_purity(report):
    n_atoms = 200
    css = spin.css_state(n_atoms)
    ns = NoiseSpec(0.05, 1.0, 1.0)
    times = np.linspace(0.0, 20.0, 400)
    lo, hi = 1.0 / (n_atoms + 1), 1.0
    in_bounds = True
    last = {}
    for fam in ("UDD", "PDD", "FREE"):
        pur = np.array([spin.purity(spin.evolve(css, noise.dephasing_record(ns, fam, 50, t))) for t in times])
        in_bounds &= bool(np.all((pur >= lo - 1e-12) & (pur <= hi + 1e-12)))
        last[fam] = _last_time_above(times, pur)
    pure_dev = max(abs(spin.purity(spin.evolve(spin.css_state(n), DephasingRecord(0.0, th, ph, 1.0))) - 1.0)
                   for n, th, ph in ((10, 0.3, 1.0), (200, 0.05, -2.0), (57, 2.0, 0.4)))
    ok = in_bounds and pure_dev <= 1e-12 and last["UDD"] > last["PDD"]
    assert report(10, ok, f"bounds {'ok' if in_bounds else 'violated'}; R=0 |P-1| {pure_dev:.1e} (<= 1e-12); "
                          f"purity > 0.99 until t={last['UDD']:.2f} (UDD50) vs t={last['PDD']:.2f} (PDD50)")


def test_c11_cramer_rao_endpoints(report):
    worst = 0.0
    for n in (2, 10, 100, 200, 1000):
        worst = max(worst, abs(qfi.qcr_bound(n, 1) - 1 / math.sqrt(n)),
                    abs(qfi.qcr_bound(n * n / 2, 1) - math.sqrt(2) / n))
    ok = worst <= 1e-12
    assert report(11, ok, f"max abs err {worst:.1e} (<= 1e-12)")


if __name__ == "__main__":
    def _print(number, passed, detail):
        print(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
        return True
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c"):
            fn(_print)
