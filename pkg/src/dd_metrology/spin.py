"""Collective spin j = N/2 in the Dicke basis.

Index k of every vector/matrix corresponds to m = k - j, so row 0 is
m = -j and the last row is m = +j.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import InvalidArgument


@dataclass(frozen=True, eq=False)
class CollectiveState:
    n_atoms: int
    rho: np.ndarray

    def __post_init__(self):
        if self.n_atoms < 1:
            raise InvalidArgument("need at least one atom")
        d = self.n_atoms + 1
        if self.rho.shape != (d, d):
            raise InvalidArgument(f"rho must be {d}x{d}, got {self.rho.shape}")
        self.rho.setflags(write=False)

    @property
    def j(self):
        return self.n_atoms / 2

    @property
    def m(self):
        return m_values(self.n_atoms)


@dataclass(frozen=True, eq=False)
class CollectiveOps:
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    def __iter__(self):
        return iter((self.jx, self.jy, self.jz))


def m_values(n_atoms):
    j = n_atoms / 2
    return np.arange(n_atoms + 1) - j


@lru_cache(maxsize=16)
def collective_ops(n_atoms):
    """Jx, Jy, Jz for spin N/2 (cached; the arrays are read-only)."""
    m = m_values(n_atoms)
    j = n_atoms / 2
    # <m+1| J+ |m> = sqrt(j(j+1) - m(m+1))
    jp = np.diag(np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1)), -1).astype(complex)
    ops = CollectiveOps(
        jx=(jp + jp.conj().T) / 2,
        jy=(jp - jp.conj().T) / 2j,
        jz=np.diag(m).astype(complex),
    )
    for a in ops:
        a.setflags(write=False)
    return ops


def css_amplitudes(n_atoms):
    """Binomial amplitudes 2^-j sqrt(C(2j, j+m)) of the coherent state along +x."""
    if n_atoms < 1:
        raise InvalidArgument("need at least one atom")
    k = np.arange(n_atoms + 1)
    logc = 0.5 * (gammaln(n_atoms + 1) - gammaln(k + 1) - gammaln(n_atoms - k + 1))
    return np.exp(logc - 0.5 * n_atoms * np.log(2.0))


def css_state(n_atoms):
    c = css_amplitudes(n_atoms).astype(complex)
    return CollectiveState(n_atoms, np.outer(c, c.conj()))


def state_from_vector(psi):
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return CollectiveState(psi.size - 1, np.outer(psi, psi.conj()))


def maximally_mixed(n_atoms):
    d = n_atoms + 1
    return CollectiveState(n_atoms, np.eye(d, dtype=complex) / d)


def evolution_factors(n_atoms, r, twist, phase):
    """Element-wise map exp(-i(m-n) phase + i(m^2-n^2) twist - (m-n)^2 r)."""
    m = m_values(n_atoms)
    diff = np.subtract.outer(m, m)
    sq = np.subtract.outer(m * m, m * m)
    return np.exp(-1j * diff * phase + 1j * sq * twist - diff * diff * r)


def evolve(state0, rec, lam=1.0, chi=0.0):
    """Apply pure-dephasing evolution with record ``rec`` (R, Omega, Phi, t).

    The effective twist is Omega(t) - chi t; ``lam`` multiplies the
    modulation integral in the linear phase.
    """
    twist = rec.omega_twist - chi * rec.t
    k = evolution_factors(state0.n_atoms, rec.r, twist, lam * rec.phi_integral)
    return CollectiveState(state0.n_atoms, state0.rho * k)


def expectation(state, op, hermitian=True):
    op = np.asarray(op)
    if op.shape != state.rho.shape:
        raise InvalidArgument(f"operator shape {op.shape} does not match state {state.rho.shape}")
    val = np.einsum("ij,ji->", state.rho, op)
    if not hermitian:
        return complex(val)
    scale = max(1.0, abs(val))
    if abs(val.imag) > 1e-10 * scale:
        raise InvalidArgument(f"expectation of Hermitian operator has imaginary part {val.imag:.3g}")
    return float(val.real)


def purity(state):
    # Tr(rho^2) = sum |rho_mn|^2 for Hermitian rho
    return float(np.sum(np.abs(state.rho) ** 2))


def _pow_cos(x, p):
    # cos(x)**p without underflow trouble for large p
    c = np.cos(x)
    if c == 0.0:
        return 0.0
    return float(np.sign(c) ** p * np.exp(p * np.log(abs(c))))


@dataclass(frozen=True)
class PureMoments:
    jx: float
    jx2: float
    jy2: float
    jz2: float
    jplus_2jz1: complex
    jplus2: complex


def pure_expectations_closed(n_atoms, twist):
    """Closed-form moments of the twisted coherent state exp(i twist Jz^2)|CSS>."""
    if n_atoms < 2:
        raise InvalidArgument("closed forms need N >= 2")
    j = n_atoms / 2
    c2 = _pow_cos(2 * twist, n_atoms - 2)
    c1 = _pow_cos(twist, n_atoms - 2)
    return PureMoments(
        jx=j * _pow_cos(twist, n_atoms - 1),
        jx2=j / 4 * (2 * j + 1) + j / 4 * (2 * j - 1) * c2,
        jy2=j / 4 * (2 * j + 1) - j / 4 * (2 * j - 1) * c2,
        jz2=j / 2,
        jplus_2jz1=-2.0j * j * (j - 0.5) * np.sin(twist) * c1,
        jplus2=j * (j - 0.5) * c2,
    )
