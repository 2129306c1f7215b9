"""Kitagawa-Ueda spin squeezing: closed form under pure dephasing and from a density matrix."""
from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize

from . import spin
from .errors import DegenerateDirection, InvalidArgument


@dataclass(frozen=True)
class SqueezingResult:
    xi2: float
    psi_opt: float


def squeezing_params(n_atoms, twist, r):
    """A and B of the dephased one-axis-twisting formula."""
    c2 = spin._pow_cos(2 * twist, n_atoms - 2)
    c1 = spin._pow_cos(twist, n_atoms - 2)
    a = 1.0 - c2 * math.exp(-4.0 * r)
    b = -4.0 * math.sin(twist) * c1 * math.exp(-r)
    return a, b


def squeezing_from_twist(n_atoms, twist, r=0.0):
    if n_atoms < 2:
        raise InvalidArgument("squeezing needs N >= 2")
    j = n_atoms / 2
    a, b = squeezing_params(n_atoms, twist, r)
    xi2 = 1.0 + (2 * j - 1) / 4 * (a - math.hypot(a, b))
    psi = (math.pi + math.atan2(b, a)) / 2 % math.pi
    return SqueezingResult(xi2, psi)


def squeezing_analytic(n_atoms, rec, chi=0.0):
    """Squeezing of the dephased, twisted coherent state described by ``rec``.

    Exact for records with zero phase integral (mean spin stays on +x).
    """
    return squeezing_from_twist(n_atoms, rec.omega_twist - chi * rec.t, rec.r)


def _perp_frame(axis):
    z = np.array([0.0, 0.0, 1.0])
    e2 = np.cross(z, axis)
    if np.linalg.norm(e2) < 1e-8:
        e2 = np.cross(np.array([1.0, 0.0, 0.0]), axis)
    e2 /= np.linalg.norm(e2)
    e3 = np.cross(axis, e2)
    return e2, e3


def squeezing_numeric(state, ops=None):
    """Minimum normalised variance perpendicular to the mean spin, from rho.

    psi_opt is measured from the in-plane axis z x <J> towards <J> x (z x <J>);
    for a mean spin along +x these are the y and z axes.
    """
    ops = ops or spin.collective_ops(state.n_atoms)
    mats = list(ops)
    mean = np.array([spin.expectation(state, a) for a in mats])
    norm = np.linalg.norm(mean)
    if norm < 1e-10:
        raise DegenerateDirection("mean spin vanishes; squeezing plane undefined")
    e2, e3 = _perp_frame(mean / norm)
    j2 = sum(c * a for c, a in zip(e2, mats))
    j3 = sum(c * a for c, a in zip(e3, mats))
    m2, m3 = spin.expectation(state, j2), spin.expectation(state, j3)
    cov = np.empty((2, 2))
    cov[0, 0] = spin.expectation(state, j2 @ j2) - m2 * m2
    cov[1, 1] = spin.expectation(state, j3 @ j3) - m3 * m3
    cov[0, 1] = cov[1, 0] = 0.5 * spin.expectation(state, j2 @ j3 + j3 @ j2) - m2 * m3
    w, v = np.linalg.eigh(cov)
    psi = math.atan2(v[1, 0], v[0, 0]) % math.pi
    return SqueezingResult(2.0 * w[0] / state.j, psi)


def squeezing_limit(n_atoms):
    """Large-N, short-time optimum (3 / 4j) (2j / 3)^(1/3) of one-axis twisting."""
    if n_atoms < 2:
        raise InvalidArgument("squeezing needs N >= 2")
    j = n_atoms / 2
    return 3.0 / (4.0 * j) * (2.0 * j / 3.0) ** (1.0 / 3.0)


def minimize_on_grid(fn, lo, hi, points=400):
    """Coarse grid search followed by golden-section refinement; returns (x, fn(x))."""
    xs = np.linspace(lo, hi, points)
    ys = np.array([fn(x) for x in xs])
    i = int(np.argmin(ys))
    if 0 < i < points - 1 and ys[i] < ys[i - 1] and ys[i] < ys[i + 1]:
        res = optimize.minimize_scalar(fn, bracket=(xs[i - 1], xs[i], xs[i + 1]),
                                       method="golden", tol=1e-10)
        if res.fun <= ys[i]:
            return float(res.x), float(res.fun)
    return float(xs[i]), float(ys[i])
