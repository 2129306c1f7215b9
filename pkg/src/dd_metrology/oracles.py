"""Slow, independent reference computations used by the self-checks and tests.

Nothing here shares code with the production kernels: the twisting kernel
is integrated as a 2-D double integral with scipy, and the ohmic twisting
strength is computed in the time domain from the bath correlation kernel.
"""
import math

import numpy as np
from scipy import integrate


def _pieces(seq):
    e = np.concatenate([[0.0], seq.times_array, [seq.duration]])
    return e, [(-1.0) ** k for k in range(len(e) - 1)]


def f_kernel_brute(seq, omega, tol=1e-12):
    """f = int_0^t ds int_0^s ds' eps(s) eps(s') sin(omega (s - s')) by 2-D quadrature."""
    e, sg = _pieces(seq)
    w = float(omega)
    total = 0.0
    for a in range(len(e) - 1):
        for b in range(a + 1):
            if a == b:
                v, _ = integrate.dblquad(lambda sp, s: math.sin(w * (s - sp)), e[a], e[a + 1],
                                         lambda s: e[a], lambda s: s, epsabs=tol, epsrel=tol)
            else:
                v, _ = integrate.dblquad(lambda sp, s: math.sin(w * (s - sp)), e[a], e[a + 1],
                                         e[b], e[b + 1], epsabs=tol, epsrel=tol)
            total += sg[a] * sg[b] * v
    return total


def omega_time_domain(seq, alpha, omega_c=1.0):
    """Omega for the ohmic bath from its time kernel int J(w) sin(w u) dw.

    With J = alpha w exp(-w / omega_c) that kernel is
    2 alpha omega_c^3 u / (1 + omega_c^2 u^2)^2, whose s'-integral is elementary.
    """
    e, sg = _pieces(seq)
    c = omega_c
    total = 0.0
    for a in range(len(e) - 1):
        for b in range(a + 1):
            lo, hi = e[b], e[b + 1]

            def inner(s, lo=lo, hi=hi):
                top = min(hi, s)
                return alpha * c * (1.0 / (1.0 + (c * (s - top)) ** 2) - 1.0 / (1.0 + (c * (s - lo)) ** 2))

            v, _ = integrate.quad(inner, e[a], e[a + 1], epsabs=1e-14, epsrel=1e-12, limit=200)
            total += sg[a] * sg[b] * v
    return total
