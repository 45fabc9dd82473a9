"""Single-qubit channels in the affine Bloch representation r -> T r + t.

A channel on qubit A transforms the Pauli coefficients of a two-qubit state
row-wise: r[i, j] -> sum_k T[i, k] r[k, j] + t[i] r[0, j] for i >= 1.
Applied to the singlet, whose correlation block is -I, a canonical channel
(diagonal T = diag(lam), shift tau) gives

    Omega = [I + (tau . s) x I - sum_i lam_i s_i x s_i] / 4,

which is also (up to a local unitary on B) the channel's Choi operator.
"""
from dataclasses import dataclass, field

import numpy as np

from .linalg import TOL, hermitian_eigen
from .states import from_pauli, singlet, to_pauli, validate

TETRAHEDRON = np.array([[1.0, 1.0, 1.0],
                        [1.0, -1.0, -1.0],
                        [-1.0, 1.0, -1.0],
                        [-1.0, -1.0, 1.0]])

MAX_ATTEMPTS = 10**6


class NotCompletelyPositiveError(ValueError):
    pass


@dataclass(frozen=True)
class AffineChannel:
    T: np.ndarray
    t: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        T = np.asarray(self.T, dtype=float)
        t = np.asarray(self.t, dtype=float)
        if T.shape != (3, 3) or t.shape != (3,):
            raise ValueError("AffineChannel needs a 3x3 matrix and a 3-vector")
        if not (np.all(np.isfinite(T)) and np.all(np.isfinite(t))):
            raise ValueError("AffineChannel entries must be finite")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "t", t)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))

    def compose(self, other):
        """self after other: r -> T_self (T_other r + t_other) + t_self."""
        return AffineChannel(self.T @ other.T, self.T @ other.t + self.t)


@dataclass(frozen=True)
class CanonicalChannel:
    lam: np.ndarray
    tau: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "lam", np.asarray(self.lam, dtype=float).reshape(3))
        object.__setattr__(self, "tau", np.asarray(self.tau, dtype=float).reshape(3))

    @property
    def is_unital(self):
        return bool(np.linalg.norm(self.tau) <= TOL)

    def as_affine(self):
        return AffineChannel(np.diag(self.lam), self.tau)


def canonicalize(ch):
    """Signed singular-value form T = U diag(lam) V^T with U, V in SO(3).

    A reflection (det T < 0) is absorbed into the smallest-magnitude entry of
    ``lam``.  Returns ``(CanonicalChannel(lam, U^T t), U, V)``.
    """
    u, sv, vt = np.linalg.svd(ch.T)
    v = vt.T
    lam = sv.copy()
    k = int(np.argmin(np.abs(sv)))
    if np.linalg.det(u) < 0:
        u[:, k] *= -1
        lam[k] *= -1
    if np.linalg.det(v) < 0:
        v[:, k] *= -1
        lam[k] *= -1
    return CanonicalChannel(lam, u.T @ ch.t), u, v


def is_cp_unital(lam, tol=TOL):
    """The four tetrahedron inequalities; vectorised over (..., 3)."""
    lam = np.asarray(lam, dtype=float)
    x, y, z = lam[..., 0], lam[..., 1], lam[..., 2]
    faces = np.stack([1 + x - y - z, 1 - x + y - z, 1 - x - y + z, 1 + x + y + z], axis=-1)
    return np.all(faces >= -tol, axis=-1)


def shifted_eigenvalues(lam, tau_z):
    """Closed-form spectrum of the singlet image for tau = (0, 0, tau_z).

    May be negative; that is how non-CP parameters show up.
    """
    lam = np.asarray(lam, dtype=float)
    tau_z = np.asarray(tau_z, dtype=float)
    x, y, z = lam[..., 0], lam[..., 1], lam[..., 2]
    r_minus = np.sqrt((x - y) ** 2 + tau_z ** 2)
    r_plus = np.sqrt((x + y) ** 2 + tau_z ** 2)
    return 0.25 * np.stack([1 - z + r_minus, 1 - z - r_minus,
                            1 + z + r_plus, 1 + z - r_plus], axis=-1)


def singlet_image(lam, tau=None):
    """Omega for canonical parameters; vectorised over (..., 3)."""
    lam = np.asarray(lam, dtype=float)
    tau = np.zeros_like(lam) if tau is None else np.asarray(tau, dtype=float)
    r = np.zeros(lam.shape[:-1] + (4, 4))
    r[..., 0, 0] = 1.0
    r[..., 1:, 0] = tau
    idx = np.arange(1, 4)
    r[..., idx, idx] = -lam
    return from_pauli(r)


def _affine_parts(ch):
    if isinstance(ch, CanonicalChannel):
        return np.diag(ch.lam), ch.tau
    if isinstance(ch, AffineChannel):
        return ch.T, ch.t
    raise TypeError(f"not a channel: {type(ch).__name__}")


def choi_spectrum(ch, tol=TOL):
    """Eigenvalues (descending) of the channel applied to half of the singlet."""
    T, t = _affine_parts(ch)
    rho = _apply_pauli(T, t, singlet())
    evals, _ = hermitian_eigen(rho, tol)
    return evals


def _cp_numeric(lam, tau, tol):
    evals, _ = hermitian_eigen(singlet_image(lam, tau), tol)
    return evals[..., -1] >= -tol


def is_cp(ch, tol=TOL):
    """Complete positivity via positivity of the singlet image.

    Canonical channels with tau along z use the closed-form eigenvalues.
    """
    if isinstance(ch, CanonicalChannel) and abs(ch.tau[0]) <= tol and abs(ch.tau[1]) <= tol:
        return bool(np.min(shifted_eigenvalues(ch.lam, ch.tau[2])) >= -tol)
    return bool(choi_spectrum(ch, tol)[-1] >= -tol)


def is_cp_batch(lam, tau, tol=TOL):
    """Vectorised CP test for arrays of canonical parameters (N, 3)."""
    lam = np.asarray(lam, dtype=float)
    tau = np.asarray(tau, dtype=float)
    # Bell-basis diagonal of Omega is independent of tau, so the tetrahedron
    # is necessary; only its survivors need a spectrum.
    ok = is_cp_unital(lam, tol)
    if np.any(ok):
        ok[ok] = _cp_numeric(lam[ok], tau[ok], tol)
    return ok


def _apply_pauli(T, t, rho):
    r = to_pauli(rho)
    out = r.copy()
    out[..., 1:, :] = np.einsum("ik,...kj->...ij", T, r[..., 1:, :]) + t[:, None] * r[..., :1, :]
    return from_pauli(out)


def apply(ch, rho, tol=TOL, check=True):
    """(E x I)[rho] for a channel acting on qubit A."""
    T, t = _affine_parts(ch)
    if check:
        if not is_cp(ch, tol):
            raise NotCompletelyPositiveError("channel is not completely positive")
        validate(rho, tol)
    return _apply_pauli(T, t, rho)


def purity_of_image(ch, tol=TOL):
    """(1 + |lam|^2 + |tau|^2) / 4, the purity of the singlet image."""
    if not is_cp(ch, tol):
        raise NotCompletelyPositiveError("channel is not completely positive")
    return 0.25 * (1.0 + ch.lam @ ch.lam + ch.tau @ ch.tau)


def sample_tetrahedron(rng, size):
    """Uniform points in the unital tetrahedron, shape (size, 3).

    Barycentric weights are the spacings of sorted uniforms, i.e. a flat
    Dirichlet(1, 1, 1, 1).
    """
    u = np.sort(rng.uniform(size=(size, 3)), axis=1)
    edges = np.concatenate([np.zeros((size, 1)), u, np.ones((size, 1))], axis=1)
    weights = np.diff(edges, axis=1)
    return weights @ TETRAHEDRON


def sample_unital(rng):
    return CanonicalChannel(sample_tetrahedron(rng, 1)[0], np.zeros(3))


def _propose_ball(rng, size):
    d = rng.normal(size=(size, 3))
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    return d * rng.uniform(size=(size, 1)) ** (1.0 / 3.0)


def sample_nonunital_batch(rng, size, tol=TOL, max_attempts=MAX_ATTEMPTS, chunk=4096):
    """Rejection sampler: lam ~ U[-1, 1]^3, tau ~ U(unit ball), keep CP pairs.

    Returns ``(lam, tau, acceptance_rate)``.  ``max_attempts`` bounds the
    proposals spent per requested sample.
    """
    lams, taus = [], []
    have = proposals = 0
    budget = max_attempts * max(size, 1)
    while have < size:
        if proposals >= budget:
            raise RuntimeError(f"rejection sampler exhausted {budget} proposals")
        n = min(chunk, budget - proposals)
        lam = rng.uniform(-1.0, 1.0, size=(n, 3))
        tau = _propose_ball(rng, n)
        proposals += n
        ok = is_cp_batch(lam, tau, tol)
        lams.append(lam[ok])
        taus.append(tau[ok])
        have += int(np.count_nonzero(ok))
    lam = np.concatenate(lams)[:size]
    tau = np.concatenate(taus)[:size]
    return lam, tau, have / proposals


def sample_nonunital(rng, tol=TOL, max_attempts=MAX_ATTEMPTS):
    lam, tau, _ = sample_nonunital_batch(rng, 1, tol, max_attempts, chunk=64)
    return CanonicalChannel(lam[0], tau[0])
