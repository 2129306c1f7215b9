"""Dynamical-decoupling pulse sequences and their spectral kernels.

Times are in units of 1/omega_c, frequencies in units of omega_c.  A
sequence is a set of instantaneous pi pulses at ``times`` inside
``(0, duration)``; the modulation epsilon(s) flips sign at every pulse.
"""
from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np
from scipy import special

from . import kernels
from .errors import InvalidArgument, OutOfRange

FAMILIES = ("FREE", "PDD", "UDD", "CUSTOM")
# "exact": the ordered double integral itself.  "flipped": the same closed
# expression with the sign of the single pulse sum reversed; it differs
# from the double integral for every sequence with pulses.
KERNEL_CONVENTIONS = ("exact", "flipped")

# below this value of omega*t the exact expressions lose precision to 0/0
SMALL_OMEGA_T = 1e-4
POLE_GUARD = 1e-6


@dataclass(frozen=True)
class PulseSequence:
    times: tuple
    duration: float
    family: str = "CUSTOM"

    def __post_init__(self):
        times = tuple(float(x) for x in self.times)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "duration", float(self.duration))
        if self.family not in FAMILIES:
            raise InvalidArgument(f"unknown sequence family {self.family!r}")
        if not (math.isfinite(self.duration) and self.duration > 0):
            raise InvalidArgument(f"duration must be positive, got {self.duration}")
        prev = 0.0
        for x in times:
            if not math.isfinite(x) or x <= prev:
                raise InvalidArgument("pulse times must be finite, strictly increasing and > 0")
            prev = x
        if times and times[-1] >= self.duration:
            raise InvalidArgument("last pulse must precede the end of the sequence")

    @property
    def n(self):
        return len(self.times)

    @cached_property
    def times_array(self):
        return np.array(self.times, dtype=float)

    @cached_property
    def _edges(self):
        # t_0 = 0, t_1..t_n, t_{n+1} = duration
        return np.concatenate([[0.0], self.times_array, [self.duration]])

    @cached_property
    def _interval_signs(self):
        return np.where(np.arange(self.n + 1) % 2 == 0, 1.0, -1.0)

    @cached_property
    def _moments(self):
        # M_k = int_0^t s^k eps(s) ds, k = 0..4
        e, sg = self._edges, self._interval_signs
        return np.array([
            np.sum(sg * (e[1:] ** (k + 1) - e[:-1] ** (k + 1))) / (k + 1)
            for k in range(5)
        ])

    @cached_property
    def _ordered_moments(self):
        # K_p = double integral over s' < s of eps(s) eps(s') (s - s')^p, p = 1, 3
        e, sg = self._edges, self._interval_signs
        lo, hi = e[:-1], e[1:]
        out = []
        for p in (1, 3):
            norm = (p + 1) * (p + 2)
            diag = np.sum((hi - lo) ** (p + 2)) / norm
            # pairs b < a
            a_hi, b_lo = np.meshgrid(hi, lo, indexing="ij")
            a_lo, b_hi = np.meshgrid(lo, hi, indexing="ij")
            block = (
                (a_hi - b_lo) ** (p + 2) - (a_hi - b_hi) ** (p + 2)
                - (a_lo - b_lo) ** (p + 2) + (a_lo - b_hi) ** (p + 2)
            ) / norm
            sgn = np.outer(sg, sg)
            off = np.sum(np.tril(sgn * block, k=-1))
            out.append(diag + off)
        return tuple(out)


def _check_count(n, t):
    if int(n) != n or n < 0:
        raise InvalidArgument(f"pulse count must be a non-negative integer, got {n}")
    if not t > 0:
        raise InvalidArgument(f"duration must be positive, got {t}")


def free_sequence(t):
    return PulseSequence((), t, "FREE")


def pdd_times(n, t):
    """Periodic DD: n pulses at equal spacing t/(n+1)."""
    _check_count(n, t)
    n = int(n)
    times = tuple(j * t / (n + 1) for j in range(1, n + 1))
    return PulseSequence(times, t, "PDD" if n else "FREE")


def udd_times(n, t):
    """Uhrig DD: pulse j at t sin^2(j pi / (2n + 2))."""
    _check_count(n, t)
    n = int(n)
    times = tuple(t * math.sin(j * math.pi / (2 * n + 2)) ** 2 for j in range(1, n + 1))
    return PulseSequence(times, t, "UDD" if n else "FREE")


def make_sequence(family, n, t):
    family = family.upper()
    if family == "FREE" or n == 0:
        return free_sequence(t)
    if family == "PDD":
        return pdd_times(n, t)
    if family == "UDD":
        return udd_times(n, t)
    raise InvalidArgument(f"cannot generate timings for family {family!r}")


def modulation(seq, s):
    """Sign of the modulation field at time ``s`` (right-continuous at pulses)."""
    if not 0.0 <= s <= seq.duration:
        raise OutOfRange(f"s={s} outside [0, {seq.duration}]")
    flips = int(np.searchsorted(seq.times_array, s, side="right"))
    return -1 if flips % 2 else 1


def epsilon_integral(seq):
    """Exact integral of the modulation over the whole sequence."""
    e = seq._edges
    return float(np.sum(seq._interval_signs * np.diff(e)))


def _as_omega(omega):
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0) or np.any(np.isnan(w)):
        raise InvalidArgument("frequencies must be non-negative")
    return w


def _filter_series(seq, w):
    m = seq._moments
    iw = 1j * w
    eps = m[0] + iw * m[1] + iw ** 2 * m[2] / 2 + iw ** 3 * m[3] / 6 + iw ** 4 * m[4] / 24
    return 0.5 * np.abs(eps) ** 2


def _kernel_series(seq, w):
    k1, k3 = seq._ordered_moments
    return w * k1 - w ** 3 * k3 / 6.0


def _guarded(seq, omega, raw, series):
    w = _as_omega(omega)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.empty_like(w)
    small = w * seq.duration < SMALL_OMEGA_T
    if np.any(small):
        out[small] = series(seq, w[small])
    big = ~small
    if np.any(big):
        out[big] = raw(seq.times_array, seq.duration, w[big])
    return float(out[0]) if scalar else out


def filter_function(seq, omega):
    """Filter function |eps(omega, t)|^2 / 2 of the sequence (scalar or array omega).

    Continuous at omega = 0, where it equals epsilon_integral(seq)**2 / 2.
    """
    return _guarded(seq, omega, kernels.filter_raw, _filter_series)


def _flipped_shift(seq, w):
    # flipped minus exact: -4 sum_m (-1)^m sin(omega t_m) / omega^2
    tm = seq.times_array
    if tm.size == 0:
        return np.zeros_like(w)
    sg = np.where(np.arange(1, tm.size + 1) % 2 == 0, 1.0, -1.0)
    out = np.empty_like(w)
    small = w * seq.duration < SMALL_OMEGA_T
    s1, s3 = np.sum(sg * tm), np.sum(sg * tm ** 3)
    out[small] = -4.0 * s1 / w[small] + 2.0 * w[small] * s3 / 3.0
    big = ~small
    out[big] = -4.0 * (np.sin(np.multiply.outer(w[big], tm)) @ sg) / w[big] ** 2
    return out


def f_kernel(seq, omega, convention="exact"):
    """Twisting kernel: the ordered double integral of eps(s) eps(s') sin(omega (s - s')).

    ``convention="flipped"`` reverses the sign of the single pulse sum in the
    closed expression (diverges like 1/omega at omega -> 0 when pulses are present).
    """
    if convention not in KERNEL_CONVENTIONS:
        raise InvalidArgument(f"unknown kernel convention {convention!r}")
    out = _guarded(seq, omega, kernels.kernel_raw, _kernel_series)
    if convention == "flipped" and seq.n:
        w = np.atleast_1d(_as_omega(omega))
        shift = _flipped_shift(seq, w)
        out = out + (float(shift[0]) if np.ndim(omega) == 0 else shift)
    return out


def pdd_filter_closed(n, omega, t):
    """Closed-form periodic-DD filter; falls back to the generic sum near tangent poles."""
    _check_count(n, t)
    w = _as_omega(omega)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    x = w * t / (2 * n + 2)
    pole_dist = np.abs(np.mod(x, np.pi) - np.pi / 2)
    fallback = (pole_dist < POLE_GUARD) | (w * t < SMALL_OMEGA_T)
    out = np.empty_like(w)
    ok = ~fallback
    sign = 1.0 if n % 2 == 0 else -1.0
    out[ok] = np.tan(x[ok]) ** 2 * (1.0 + sign * np.cos(w[ok] * t)) / w[ok] ** 2
    if np.any(fallback):
        out[fallback] = filter_function(pdd_times(n, t), w[fallback])
    return float(out[0]) if scalar else out


def udd_filter_approx(n, omega, t):
    """Bessel-function approximation 8 (n+1)^2 J_{n+1}(omega t / 2)^2 / omega^2 of the UDD filter."""
    _check_count(n, t)
    w = _as_omega(omega)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    out = np.empty_like(w)
    zero = w == 0
    out[zero] = t * t / 2 if n == 0 else 0.0
    nz = ~zero
    out[nz] = 8.0 * (n + 1) ** 2 * special.jv(n + 1, w[nz] * t / 2) ** 2 / w[nz] ** 2
    return float(out[0]) if scalar else out
