"""Independent reference computations used only by the tests.

Nothing here imports the package's eigensolver or concurrence code.
"""
import numpy as np

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def concurrence_R(rho):
    """Wootters via eigenvalues of the non-Hermitian R = rho rho~ (LAPACK geev)."""
    yy = np.kron(SY, SY)
    R = rho @ yy @ rho.conj() @ yy
    ev = np.sort(np.sqrt(np.abs(np.linalg.eigvals(R).real)))[::-1]
    return max(0.0, ev[0] - ev[1] - ev[2] - ev[3])


def eigvals_desc(m):
    return np.linalg.eigvalsh(m)[::-1]


def partial_trace_loops(rho, over):
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                if over == "A":
                    out[i, j] += rho[2 * k + i, 2 * k + j]
                else:
                    out[i, j] += rho[2 * i + k, 2 * j + k]
    return out


SWAP = np.eye(4)[[0, 2, 1, 3]]


def omega_matrix(lam, tau=(0.0, 0.0, 0.0)):
    """Singlet image written entry by entry, shift on the second factor.

    Equal to SWAP @ singlet_image @ SWAP; same spectrum and concurrence.
    """
    lx, ly, lz = lam
    tx, ty, tz = tau
    A = (1 - lz) / 4
    B = (1 + lz) / 4
    C = -(ly + lx) / 4
    D = (ly - lx) / 4
    F = (tx - 1j * ty) / 4
    t = tz / 4
    return np.array([[A + t, F, 0, D],
                     [np.conj(F), B - t, C, 0],
                     [0, C, B + t, F],
                     [D, 0, np.conj(F), A - t]], dtype=complex)


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_rotation(rng):
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] *= -1
    return q


# Analytic trajectories of the three semigroups acting on the singlet.

def decoherence_closed(t, T):
    e = np.exp(-t / T)
    return 0.5 * (1 + e ** 2), e


def depolarization_closed(t, T):
    q = np.exp(-t / T)
    return 0.25 * (1 + 3 * q ** 2), np.maximum(0.0, (3 * q - 1) / 2)


def homogenization_closed(t, T1, T2, w):
    e1 = np.exp(-t / T1)
    e2 = np.exp(-t / T2)
    P = 0.25 * (1 + 2 * e2 ** 2 + e1 ** 2 + w ** 2 * (1 - e1) ** 2)
    C = np.maximum(0.0, e2 - 0.5 * (1 - e1) * np.sqrt(1 - w ** 2))
    return P, C


def homogenization_w0_closed(t, T1, T2):
    e1 = np.exp(-t / T1)
    e2 = np.exp(-t / T2)
    return 0.25 * (1 + e1 ** 2 + 2 * e2 ** 2), np.maximum(0.0, e2 + 0.5 * (e1 - 1))


def homogenization_w1_closed(t, T1, T2):
    e1 = np.exp(-t / T1)
    e2 = np.exp(-t / T2)
    return 0.5 * (1 + e1 ** 2 + e2 ** 2 - e1), e2
