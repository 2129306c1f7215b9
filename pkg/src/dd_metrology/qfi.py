"""Quantum Fisher information for SU(2) rotations of a collective spin state.

F(n) = n^T C n, so the best rotation axis is the top eigenvector of the
3x3 matrix C and F_max its eigenvalue.  C comes either from the spectral
decomposition of rho (any state) or from covariances (pure states only).
"""
from dataclasses import dataclass
import math

import numpy as np

from . import spin
from .errors import InvalidArgument, NumericFailure

# pairs with p_i + p_j or |p_i - p_j| below this contribute nothing
EIG_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class QfiResult:
    f_max: float
    eta: float
    c_matrix: np.ndarray
    optimal_axis: np.ndarray


def c_matrix_mixed(state, ops=None):
    """C_kl = sum_{i != j} (p_i - p_j)^2 / (p_i + p_j) 2 Re(<i|J_k|j><j|J_l|i>)."""
    ops = ops or spin.collective_ops(state.n_atoms)
    try:
        p, v = np.linalg.eigh(state.rho)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"eigendecomposition of rho failed: {exc}") from exc
    ps = np.add.outer(p, p)
    pd = np.subtract.outer(p, p)
    live = (ps >= EIG_FLOOR) & (np.abs(pd) >= EIG_FLOOR)
    w = np.zeros_like(ps)
    w[live] = pd[live] ** 2 / ps[live]
    rot = [v.conj().T @ a @ v for a in ops]
    c = np.empty((3, 3))
    for k in range(3):
        for l in range(k, 3):
            c[k, l] = c[l, k] = 2.0 * np.sum(w * np.real(rot[k] * rot[l].conj()))
    return c


def c_matrix_pure(state, ops=None, purity_tol=1e-10):
    """C_kl = 2 <J_k J_l + J_l J_k> - 4 <J_k><J_l>, valid for pure states only."""
    if spin.purity(state) < 1.0 - purity_tol:
        raise InvalidArgument("c_matrix_pure needs a pure state")
    ops = ops or spin.collective_ops(state.n_atoms)
    mats = list(ops)
    mean = [spin.expectation(state, a) for a in mats]
    c = np.empty((3, 3))
    for k in range(3):
        for l in range(k, 3):
            sym = spin.expectation(state, mats[k] @ mats[l] + mats[l] @ mats[k])
            c[k, l] = c[l, k] = 2.0 * sym - 4.0 * mean[k] * mean[l]
    return c


def sym3_eigh(c, sweeps=32):
    """Eigenvalues (descending) and eigenvectors (columns) of a real symmetric 3x3 matrix.

    Cyclic Jacobi rotations; accurate to rounding even for (near-)degenerate
    spectra such as that of a coherent spin state.
    """
    a = np.array(c, dtype=float)
    v = np.eye(3)
    scale = float(np.max(np.abs(a))) or 1.0
    for _ in range(sweeps):
        off = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
        if off <= (1e-18 * scale) ** 2:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            if a[p, q] == 0.0:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
            t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
            cs = 1.0 / math.hypot(t, 1.0)
            rot = np.eye(3)
            rot[p, p] = rot[q, q] = cs
            rot[p, q] = t * cs
            rot[q, p] = -t * cs
            a = rot.T @ a @ rot
            a[p, q] = a[q, p] = 0.0
            v = v @ rot
    w = np.diag(a).copy()
    order = np.argsort(w)[::-1]
    v = v[:, order]
    # fix each vector's sign for reproducible output
    for k in range(3):
        if v[int(np.argmax(np.abs(v[:, k]))), k] < 0:
            v[:, k] = -v[:, k]
    return w[order], v


def qfi_max(c, n_atoms=None):
    c = np.asarray(c, dtype=float)
    if c.shape != (3, 3) or not np.allclose(c, c.T, rtol=0, atol=1e-12 * max(1.0, np.abs(c).max())):
        raise InvalidArgument("C must be a symmetric 3x3 matrix")
    c = 0.5 * (c + c.T)
    w, v = sym3_eigh(c)
    lam = float(w[0])
    eta = lam / n_atoms if n_atoms else float("nan")
    return QfiResult(lam, eta, c, v[:, 0])


def qfi_state(state, ops=None):
    """Maximal QFI of any state via the mixed-state route."""
    return qfi_max(c_matrix_mixed(state, ops), state.n_atoms)


def amplification_closed(n_atoms, twist):
    """Pure-state amplification rate eta(N, twist) = F_max / N."""
    if n_atoms < 2:
        raise InvalidArgument("closed form needs N >= 2")
    n = n_atoms
    c2 = spin._pow_cos(2 * twist, n - 2)
    a_minus = 1.0 - c2
    a_plus = 1.0 + c2
    b = -4.0 * math.sin(twist) * spin._pow_cos(twist, n - 2)
    # transverse (y-z block) branch and mean-spin-axis branch
    transverse = 1.0 + (n - 1) / 4.0 * (a_minus + math.hypot(a_minus, b))
    along = 1.0 + (n - 1) / 2.0 * a_plus - n * spin._pow_cos(twist, 2 * n - 2)
    return max(transverse, along)


def qfi_pure_closed(n_atoms, twist):
    mom = spin.pure_expectations_closed(n_atoms, twist)
    cov_yz = 0.5 * mom.jplus_2jz1.imag
    c = 4.0 * np.array([
        [mom.jx2 - mom.jx ** 2, 0.0, 0.0],
        [0.0, mom.jy2, cov_yz],
        [0.0, cov_yz, mom.jz2],
    ])
    eta = amplification_closed(n_atoms, twist)
    f = n_atoms * eta
    return QfiResult(f, eta, c, sym3_eigh(c)[1][:, 0])


def qcr_bound(f, n_m=1):
    """Quantum Cramer-Rao bound 1 / sqrt(n_m F)."""
    if not f > 0:
        raise InvalidArgument("Fisher information must be positive")
    if n_m < 1:
        raise InvalidArgument("need at least one measurement")
    return 1.0 / math.sqrt(n_m * f)
