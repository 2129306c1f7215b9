import math

import numpy as np
import pytest
from scipy.linalg import expm

from dd_metrology import spin
from dd_metrology.errors import InvalidArgument
from dd_metrology.noise import DephasingRecord


@pytest.mark.parametrize("n_atoms", [1, 2, 7, 30])
def test_angular_momentum_algebra(n_atoms):
    jx, jy, jz = spin.collective_ops(n_atoms)
    j = n_atoms / 2
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    assert np.allclose(jy @ jz - jz @ jy, 1j * jx, atol=1e-12)
    casimir = jx @ jx + jy @ jy + jz @ jz
    assert np.allclose(casimir, j * (j + 1) * np.eye(n_atoms + 1), atol=1e-10)


def test_ops_read_only():
    with pytest.raises(ValueError):
        spin.collective_ops(3).jx[0, 0] = 1.0


@pytest.mark.parametrize("n_atoms", [2, 11, 200])
def test_css_moments(n_atoms):
    st = spin.css_state(n_atoms)
    jx, jy, jz = spin.collective_ops(n_atoms)
    assert np.trace(st.rho).real == pytest.approx(1.0, abs=1e-13)
    assert spin.expectation(st, jx) == pytest.approx(n_atoms / 2, rel=1e-12)
    assert spin.expectation(st, jy @ jy) == pytest.approx(n_atoms / 4, rel=1e-12)
    assert spin.expectation(st, jz @ jz) == pytest.approx(n_atoms / 4, rel=1e-12)


def test_css_is_jx_eigenstate():
    n = 9
    psi = spin.css_amplitudes(n)
    jx = spin.collective_ops(n).jx
    assert np.allclose(jx @ psi, n / 2 * psi, atol=1e-12)


def test_css_large_n_normalised():
    amp = spin.css_amplitudes(1000)
    assert np.all(np.isfinite(amp))
    assert np.sum(amp ** 2) == pytest.approx(1.0, abs=1e-12)


def test_lindblad_oracle_two_atoms():
    # exp(L t) with L rho = -i[H, rho] + g (Jz rho Jz - {Jz^2, rho} / 2) and H = phi Jz - theta Jz^2
    # reproduces rho_mn exp(-i(m-n) phi t + i(m^2-n^2) theta t - (m-n)^2 g t / 2)
    n = 2
    d = n + 1
    jz = spin.collective_ops(n).jz
    g, phi, theta, t = 0.3, 0.7, 0.45, 1.3
    h = phi * jz - theta * jz @ jz
    eye = np.eye(d)
    # column-stacking vec: vec(A X B) = (B^T kron A) vec(X)
    lind = (-1j * (np.kron(eye, h) - np.kron(h.T, eye))
            + g * (np.kron(jz.T, jz) - 0.5 * np.kron(eye, jz @ jz) - 0.5 * np.kron((jz @ jz).T, eye)))
    rho0 = spin.css_state(n).rho
    ref = (expm(lind * t) @ rho0.reshape(-1, order="F")).reshape(d, d, order="F")
    rec = DephasingRecord(g * t / 2, theta * t, phi * t, t)
    got = spin.evolve(spin.css_state(n), rec).rho
    assert np.allclose(got, ref, atol=1e-12)


def test_evolution_factors_chi_and_lambda():
    n = 4
    rec = DephasingRecord(0.1, 0.5, 0.8, 2.0)
    a = spin.evolve(spin.css_state(n), rec, lam=0.5, chi=0.1).rho
    b = spin.css_state(n).rho * spin.evolution_factors(n, 0.1, 0.5 - 0.2, 0.4)
    assert np.array_equal(a, b)


def test_purity_dephasing_closed():
    n, r = 6, 0.2
    c = spin.css_amplitudes(n)
    m = spin.m_values(n)
    ref = np.sum(np.outer(c ** 2, c ** 2) * np.exp(-2 * np.subtract.outer(m, m) ** 2 * r))
    rec = DephasingRecord(r, 0.3, 0.0, 1.0)
    assert spin.purity(spin.evolve(spin.css_state(n), rec)) == pytest.approx(ref, rel=1e-13)


def test_purity_bounds():
    assert spin.purity(spin.maximally_mixed(5)) == pytest.approx(1 / 6)
    assert spin.purity(spin.css_state(5)) == pytest.approx(1.0, abs=1e-14)


def test_closed_moments_match_matrices():
    for n, twist in ((2, 0.4), (7, 0.37), (20, 1.9), (40, 0.05)):
        st = spin.evolve(spin.css_state(n), DephasingRecord(0.0, twist, 0.0, 1.0))
        jx, jy, jz = spin.collective_ops(n)
        jp = jx + 1j * jy
        mom = spin.pure_expectations_closed(n, twist)
        assert mom.jx == pytest.approx(spin.expectation(st, jx), abs=1e-11)
        assert mom.jx2 == pytest.approx(spin.expectation(st, jx @ jx), abs=1e-10)
        assert mom.jy2 == pytest.approx(spin.expectation(st, jy @ jy), abs=1e-10)
        assert mom.jz2 == pytest.approx(spin.expectation(st, jz @ jz), abs=1e-10)
        ref = spin.expectation(st, jp @ (2 * jz + np.eye(n + 1)), hermitian=False)
        assert abs(mom.jplus_2jz1 - ref) < 1e-10
        assert abs(mom.jplus2 - spin.expectation(st, jp @ jp, hermitian=False)) < 1e-10


def test_state_validation():
    with pytest.raises(InvalidArgument):
        spin.CollectiveState(3, np.eye(3))
    with pytest.raises(InvalidArgument):
        spin.expectation(spin.css_state(3), np.eye(2))
    with pytest.raises(InvalidArgument):
        spin.expectation(spin.css_state(2), 1j * np.eye(3))


def test_state_from_vector_normalises():
    st = spin.state_from_vector([1.0, 1.0j, 0.0])
    assert st.n_atoms == 2
    assert spin.purity(st) == pytest.approx(1.0)
    assert math.isclose(np.trace(st.rho).real, 1.0)
