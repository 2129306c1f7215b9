"""Fast self-tests behind ``dd-metrology check``: closed forms vs quadrature and oracle pairs."""
from dataclasses import dataclass
import math

import numpy as np

from . import noise, oracles, pulses, qfi, spin, squeezing


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _free_closed_forms():
    worst = 0.0
    for t in np.logspace(-2, math.log10(50), 12):
        ns = noise.NoiseSpec(0.1)
        seq = pulses.free_sequence(t)
        for got, ref in ((noise.twisting_Omega(ns, seq), noise.free_Omega_closed(ns, t)),
                         (noise.decoherence_R(ns, seq), noise.free_R_closed(ns, t))):
            worst = max(worst, abs(got - ref) / abs(ref))
    return worst <= 1e-8, f"max relative error {worst:.2e} (tol 1e-8)"


def _kernel_oracle():
    worst = 0.0
    for n in (0, 1, 2, 5):
        seq = pulses.udd_times(n, 2.5) if n else pulses.free_sequence(2.5)
        for w in (0.4, 3.3):
            worst = max(worst, abs(pulses.f_kernel(seq, w) - oracles.f_kernel_brute(seq, w)))
    return worst <= 1e-6, f"max abs error {worst:.2e} (tol 1e-6)"


def _omega_time_domain():
    seq = pulses.udd_times(20, 10.0)
    got = noise.twisting_Omega(noise.NoiseSpec(0.1, 1.0, 1.0), seq)
    ref = oracles.omega_time_domain(seq, 0.1)
    err = abs(got - ref)
    return err <= 1e-10, f"abs error {err:.2e} (tol 1e-10)"


def _pdd_closed():
    worst = 0.0
    for n in (1, 4, 9):
        seq = pulses.pdd_times(n, 3.0)
        w = np.linspace(0.05, 20.0, 40)
        ref = pulses.filter_function(seq, w)
        got = pulses.pdd_filter_closed(n, w, 3.0)
        worst = max(worst, float(np.max(np.abs(got - ref) / np.maximum(np.abs(ref), 1e-300))))
    return worst <= 1e-10, f"max relative error {worst:.2e} (tol 1e-10)"


def _squeezing_pair():
    ns = noise.NoiseSpec(0.01, 1.0, 1.0)
    worst = 0.0
    for n_atoms in (10, 40):
        for t in (2.0, 8.0, 15.0):
            rec = noise.dephasing_record(ns, "UDD", 20, t)
            num = squeezing.squeezing_numeric(spin.evolve(spin.css_state(n_atoms), rec)).xi2
            worst = max(worst, abs(num - squeezing.squeezing_analytic(n_atoms, rec).xi2))
    return worst <= 1e-8, f"max abs difference {worst:.2e} (tol 1e-8)"


def _qfi_pair():
    worst = 0.0
    for n_atoms in (6, 30):
        for twist in (0.02, 0.3, 1.1):
            rec = noise.DephasingRecord(0.0, twist, 0.0, 1.0)
            state = spin.evolve(spin.css_state(n_atoms), rec)
            mixed = qfi.c_matrix_mixed(state)
            pure = qfi.c_matrix_pure(state)
            worst = max(worst, float(np.max(np.abs(mixed - pure))))
            worst = max(worst, abs(qfi.qfi_max(pure).f_max - qfi.qfi_pure_closed(n_atoms, twist).f_max))
    return worst <= 1e-8, f"max abs difference {worst:.2e} (tol 1e-8)"


def _css_qfi():
    worst = max(abs(qfi.qfi_state(spin.css_state(n)).f_max - n) / n for n in (2, 10, 100))
    return worst <= 1e-10, f"max |F - N| / N {worst:.2e} (tol 1e-10)"


def _qcr():
    n = 200
    err = max(abs(qfi.qcr_bound(n) - 1 / math.sqrt(n)), abs(qfi.qcr_bound(n * n / 2) - math.sqrt(2) / n))
    return err <= 1e-12, f"abs error {err:.2e} (tol 1e-12)"


CHECKS = (
    ("free closed forms vs quadrature", _free_closed_forms),
    ("twisting kernel vs 2-D quadrature", _kernel_oracle),
    ("Omega vs time-domain integral", _omega_time_domain),
    ("PDD closed filter vs generic sum", _pdd_closed),
    ("squeezing numeric vs analytic", _squeezing_pair),
    ("QFI mixed/pure/closed routes", _qfi_pair),
    ("QFI of coherent state = N", _css_qfi),
    ("Cramer-Rao endpoints", _qcr),
)


def run_checks():
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, bool(ok), detail))
    return out
