import numpy as np
import pytest

from lindblad_ode import MasterEqParams, generate_gell_mann

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)


@pytest.fixture(scope="session")
def basis2():
    return generate_gell_mann(2)


@pytest.fixture(scope="session")
def basis3():
    return generate_gell_mann(3)


def random_meq(d, rng, psd=False):
    """Random master-equation data; a is PSD when psd=True."""
    j = d * d - 1
    h = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    h = (h + h.conj().T) / 2
    m = rng.normal(size=(j, j)) + 1j * rng.normal(size=(j, j))
    a = m @ m.conj().T if psd else (m + m.conj().T) / 2
    return MasterEqParams(hamiltonian=h, rates=a)


def random_density(d, rng):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = m @ m.conj().T
    return rho / np.trace(rho)


# --- golden qubit dephasing (rate 2*gamma on the z channel) ---------------


def dephasing_a(gamma=1.0):
    return np.diag([0.0, 0.0, 2.0 * gamma]).astype(complex)


def dephasing_g(gamma=1.0):
    return np.diag([-2.0 * gamma, -2.0 * gamma, 0.0])


# --- golden qubit amplitude damping ----------------------------------------


def amplitude_damping_a(gamma=1.0):
    return np.array(
        [[gamma, -1j * gamma, 0.0], [1j * gamma, gamma, 0.0], [0.0, 0.0, 0.0]]
    )


def amplitude_damping_h(omega=1.0):
    return omega * np.diag([1.0, -1.0]).astype(complex)


def amplitude_damping_q(omega=1.0):
    return np.array([[0.0, -2.0 * omega, 0.0], [2.0 * omega, 0.0, 0.0], [0.0, 0.0, 0.0]])


def amplitude_damping_r(gamma=1.0):
    return np.diag([-gamma, -gamma, -2.0 * gamma])


def amplitude_damping_c(gamma=1.0):
    return np.array([0.0, 0.0, SQRT2 * gamma])


# --- golden qutrit amplitude damping between the two lowest levels ---------


def qutrit_ad_a():
    a = np.zeros((8, 8), dtype=complex)
    a[0, 0] = a[1, 1] = 1.0
    a[0, 1] = -1j
    a[1, 0] = 1j
    return a


def qutrit_ad_r():
    return np.array(
        [
            [-1 / 4, 0, 0, 0, -1 / 4, 0, 0, 0],
            [0, -1 / 4, 0, 1 / 4, 0, 0, 0, 0],
            [0, 0, -1 / 2, 0, 0, 0, 0, 0],
            [0, -3 / 4, 0, -5 / 4, 0, 0, 0, 0],
            [3 / 4, 0, 0, 0, -5 / 4, 0, 0, 0],
            [0, 0, 0, 0, 0, -1 / 2, 1 / 4, 1 / (4 * SQRT3)],
            [0, 0, 0, 0, 0, -3 / 4, -5 / 4, -SQRT3 / 4],
            [0, 0, 0, 0, 0, -SQRT3 / 4, -SQRT3 / 4, -3 / 4],
        ]
    )


def qutrit_ad_c():
    c = np.zeros(8)
    c[5] = SQRT2 / 3.0
    return c


# --- golden qutrit antisymmetric G and its Hamiltonian decomposition --------


def qutrit_antisym_g():
    g = np.zeros((8, 8))
    g[0, 4] = -1 / 4
    g[1, 3] = 1 / 4
    g[3, 1] = -1 / 4
    g[4, 0] = 1 / 4
    g[5, 6] = 1 / 4
    g[5, 7] = -SQRT3 / 4
    g[6, 5] = -1 / 4
    g[6, 7] = SQRT3 / 4
    g[7, 5] = SQRT3 / 4
    g[7, 6] = -SQRT3 / 4
    return g


def qutrit_antisym_h():
    h = np.zeros((3, 3), dtype=complex)
    h[1, 2] = h[2, 1] = 1.0 / 6.0
    return h


def qutrit_antisym_q():
    return np.array(
        [
            [0, 0, 0, 0, 1 / 6, 0, 0, 0],
            [0, 0, 0, 1 / 6, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0, 0],
            [0, -1 / 6, 0, 0, 0, 0, 0, 0],
            [-1 / 6, 0, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1 / 6, -1 / (2 * SQRT3)],
            [0, 0, 0, 0, 0, -1 / 6, 0, 0],
            [0, 0, 0, 0, 0, 1 / (2 * SQRT3), 0, 0],
        ]
    )
