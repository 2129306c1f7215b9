"""Ohmic dephasing bath: decoherence function R(t) and induced twisting Omega(t)."""
from dataclasses import dataclass
import math

import numpy as np

from . import pulses
from .errors import InvalidArgument, NumericFailure
from .quadrature import QuadratureSpec, integrate_semi_infinite


@dataclass(frozen=True)
class NoiseSpec:
    """Ohmic bath J(omega) = alpha omega exp(-omega / omega_c) at temperature T (units of omega_c)."""

    alpha: float
    omega_c: float = 1.0
    temperature: float = 0.0

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InvalidArgument(f"alpha must be >= 0, got {self.alpha}")
        if not self.omega_c > 0:
            raise InvalidArgument(f"omega_c must be > 0, got {self.omega_c}")
        if not self.temperature >= 0:
            raise InvalidArgument(f"temperature must be >= 0, got {self.temperature}")


@dataclass(frozen=True)
class DephasingRecord:
    r: float
    omega_twist: float
    phi_integral: float
    t: float

    def __post_init__(self):
        if self.r < 0:
            raise InvalidArgument(f"decoherence function must be non-negative, got {self.r}")


def spectral_density(noise, omega):
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise InvalidArgument("frequencies must be non-negative")
    out = noise.alpha * w * np.exp(-w / noise.omega_c)
    return float(out) if out.ndim == 0 else out


def interacting_spectrum(noise, omega):
    """G(omega) = J(omega) coth(omega / 2T); equals J at T = 0 and tends to 2 alpha T at omega -> 0."""
    w = np.asarray(omega, dtype=float)
    j = spectral_density(noise, w)
    if noise.temperature == 0:
        return j
    w1 = np.atleast_1d(w)
    out = np.atleast_1d(np.array(j, dtype=float))
    x = w1 / (2.0 * noise.temperature)
    small = x < 1e-6
    # series of omega coth(omega / 2T) about omega = 0
    out[small] = (2.0 * noise.alpha * noise.temperature * (1.0 + x[small] ** 2 / 3.0)
                  * np.exp(-w1[small] / noise.omega_c))
    big = ~small
    out[big] = out[big] / np.tanh(x[big])
    return float(out[0]) if w.ndim == 0 else out


def _domain_cap(noise, seq):
    return 50.0 * max(noise.omega_c, 2.0 * math.pi * (seq.n + 1) / seq.duration)


def _integrate(integrand, noise, seq, quad):
    try:
        res = integrate_semi_infinite(integrand, noise.omega_c, seq.duration, quad,
                                      upper=_domain_cap(noise, seq))
    except NumericFailure as exc:
        exc.point = exc.point or {"t": seq.duration, "n": seq.n, "family": seq.family}
        raise
    return res.value


def decoherence_R(noise, seq, quad=None):
    """R(t) = int_0^inf G(omega) F(omega, t) d omega for the sequence's duration t."""
    if noise.alpha == 0:
        return 0.0
    val = _integrate(lambda w: interacting_spectrum(noise, w) * pulses.filter_function(seq, w),
                     noise, seq, quad or QuadratureSpec())
    return max(val, 0.0)


def twisting_Omega(noise, seq, quad=None, kernel="exact"):
    """Omega(t) = int_0^inf J(omega) f(omega, t) d omega; independent of temperature.

    ``kernel`` selects the twisting-kernel convention (see pulses.f_kernel).
    """
    if noise.alpha == 0:
        return 0.0
    return _integrate(lambda w: spectral_density(noise, w) * pulses.f_kernel(seq, w, kernel),
                      noise, seq, quad or QuadratureSpec())


def free_Omega_closed(noise, t):
    x = noise.omega_c * t
    return noise.alpha * (x - math.atan(x))


def _log_sinhc(x):
    # ln(sinh(x) / x)
    if x < 1e-3:
        return x * x / 6.0 - x ** 4 / 180.0
    return x + math.log1p(-math.exp(-2.0 * x)) - math.log(2.0 * x)


def free_R_closed(noise, t):
    """Closed form of R(t) without pulses; thermal term is exact only for T << omega_c."""
    if t < 0:
        raise InvalidArgument("t must be >= 0")
    vac = 0.5 * math.log1p((noise.omega_c * t) ** 2)
    if noise.temperature == 0:
        return noise.alpha * vac
    return noise.alpha * (vac + _log_sinhc(math.pi * t * noise.temperature))


def dephasing_record(noise, family, n, t, quad=None, kernel="exact"):
    """R, Omega and the phase integral for an n-pulse sequence of the given family at time t."""
    if t < 0:
        raise InvalidArgument("t must be >= 0")
    if t == 0:
        return DephasingRecord(0.0, 0.0, 0.0, 0.0)
    seq = pulses.make_sequence(family, n, t)
    return record_for(noise, seq, quad, kernel)


def record_for(noise, seq, quad=None, kernel="exact"):
    return DephasingRecord(
        r=decoherence_R(noise, seq, quad),
        omega_twist=twisting_Omega(noise, seq, quad, kernel),
        phi_integral=pulses.epsilon_integral(seq),
        t=seq.duration,
    )
