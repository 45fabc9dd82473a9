"""Concurrence of two-qubit states.

:func:`concurrence_wootters` is the general algorithm and serves as the
oracle; :func:`concurrence_bell_diagonal` and :func:`concurrence_shifted`
are closed forms for images of the singlet under canonical channels.
"""
from dataclasses import dataclass

import numpy as np

from .channels import is_cp_unital, shifted_eigenvalues
from .linalg import SIGMA_Y, TOL, hermitian_eigen, clamp_spectrum, kron, sqrt_psd
from .states import validate

YY = kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class ConcurrenceResult:
    concurrence: float
    mu: np.ndarray  # descending


def spin_flip(rho):
    """(s_y x s_y) rho* (s_y x s_y)."""
    return YY @ np.conj(rho) @ YY


def wootters_mu(rho, tol=TOL):
    """Square roots of the eigenvalues of rho * spin_flip(rho), descending.

    Computed as the spectrum of sqrt(sqrt(rho) rho~ sqrt(rho)), which is
    Hermitian and shares its eigenvalues with sqrt(R).  Accepts stacks.
    """
    root = sqrt_psd(rho, tol)
    m = root @ spin_flip(rho) @ root
    evals, _ = hermitian_eigen(m, tol)
    return np.sqrt(clamp_spectrum(evals, tol))


def _from_mu(mu):
    return np.maximum(0.0, 2.0 * mu[..., 0] - np.sum(mu, axis=-1))


def concurrence_wootters(rho, tol=TOL, check=True):
    if check:
        validate(rho, tol)
    mu = wootters_mu(rho, tol)
    return ConcurrenceResult(float(_from_mu(mu)), mu)


def concurrence_batch(rhos, tol=TOL):
    """Wootters concurrence for a stack of states, no validation."""
    return _from_mu(wootters_mu(rhos, tol))


def concurrence(rho, tol=TOL):
    return concurrence_wootters(rho, tol).concurrence


def tangle(rho, tol=TOL):
    return concurrence(rho, tol) ** 2


def concurrence_bell_diagonal(lam, tol=TOL):
    """Concurrence of (I - sum_i lam_i s_i x s_i)/4 from its signed diagonal.

    ``lam`` may be a single triple or an array (..., 3).
    """
    lam = np.asarray(lam, dtype=float)
    if not np.all(is_cp_unital(lam, tol)):
        raise ValueError(f"lambda {lam} violates the unital CP inequalities")
    x, y, z = lam[..., 0], lam[..., 1], lam[..., 2]
    cands = np.stack([x + y + z - 1, x - y - z - 1, -x + y - z - 1, -x - y + z - 1,
                      np.zeros_like(x)], axis=-1)
    return 0.5 * np.max(cands, axis=-1)


def _radical(v, tol):
    if np.any(v < -tol):
        raise ValueError(f"negative radicand {np.min(v):.3g}: inconsistent channel parameters")
    return np.sqrt(np.maximum(v, 0.0))


def concurrence_shifted(lam, tau_z, tol=TOL):
    """Closed-form concurrence for a canonical channel with shift (0, 0, tau_z)."""
    lam = np.asarray(lam, dtype=float)
    tau_z = np.asarray(tau_z, dtype=float)
    if np.any(shifted_eigenvalues(lam, tau_z) < -tol):
        raise ValueError("channel parameters are not completely positive")
    x, y, z = lam[..., 0], lam[..., 1], lam[..., 2]
    first = np.abs(y - x) - _radical((1 + z) ** 2 - tau_z ** 2, tol)
    second = np.abs(x + y) - _radical((1 - z) ** 2 - tau_z ** 2, tol)
    return 0.5 * np.maximum(0.0, np.maximum(first, second))
