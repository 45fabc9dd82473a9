"""Small dense complex linear algebra for 2x2 and 4x4 operators.

Every routine accepts either a single matrix or a stack of matrices with
shape ``(..., n, n)``; the Monte-Carlo scans push 10^5 states through the
same code path, so the eigensolver loops over the leading axes in compiled
code.
"""
import numba
import numpy as np

TOL = 1e-10

# Eigenvalues at or below this magnitude are numerical zeros (a few ulps of a
# unit-trace operator).  Without the snap, sqrt() turns 1e-17 noise into 3e-9.
SPECTRAL_FLOOR = 1e-14

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)


def _as_square(m, dims=None):
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected square matrix, got shape {m.shape}")
    if dims is not None and m.shape[-1] not in dims:
        raise ValueError(f"matrix dimension {m.shape[-1]} not in {dims}")
    return m


def dagger(m):
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(m, -1, -2))


def multiply(a, b):
    a = _as_square(a)
    b = _as_square(b)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"dimension mismatch: {a.shape[-1]} vs {b.shape[-1]}")
    return a @ b


def kron(a, b):
    """Kronecker product of two 2x2 operators; ``a`` acts on the first qubit."""
    a = _as_square(a, dims=(2,))
    b = _as_square(b, dims=(2,))
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(out.shape[:-4] + (4, 4))


def hermiticity_error(m):
    m = np.asarray(m)
    return np.max(np.abs(m - dagger(m)), axis=(-1, -2))


def is_hermitian(m, tol=TOL):
    return bool(np.all(hermiticity_error(m) <= tol))


@numba.njit(cache=True, nogil=True)
def _jacobi_kernel(a, v, max_sweeps):
    """In-place cyclic Jacobi on a stack ``a`` of shape (N, n, n).

    Returns the number of matrices that failed to converge.
    """
    nmat, n, _ = a.shape
    failures = 0
    for k in range(nmat):
        converged = False
        for _sweep in range(max_sweeps):
            off = 0.0
            scale = 0.0
            for i in range(n):
                for j in range(n):
                    sq = a[k, i, j].real ** 2 + a[k, i, j].imag ** 2
                    scale += sq
                    if i != j:
                        off += sq
            if off <= 1e-30 * scale + 1e-300:
                converged = True
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[k, p, q]
                    mag = abs(apq)
                    app = a[k, p, p].real
                    aqq = a[k, q, q].real
                    if mag <= 1e-20 * (abs(app) + abs(aqq)) + 1e-300:
                        a[k, p, q] = 0.0
                        a[k, q, p] = 0.0
                        continue
                    phase = apq / mag
                    theta = (aqq - app) / (2.0 * mag)
                    sign = 1.0 if theta >= 0.0 else -1.0
                    t = sign / (abs(theta) + np.sqrt(1.0 + theta * theta))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                    g00 = c + 0j
                    g01 = s + 0j
                    g10 = -s * np.conj(phase)
                    g11 = c * np.conj(phase)
                    for i in range(n):
                        x = a[k, i, p]
                        y = a[k, i, q]
                        a[k, i, p] = x * g00 + y * g10
                        a[k, i, q] = x * g01 + y * g11
                    for j in range(n):
                        x = a[k, p, j]
                        y = a[k, q, j]
                        a[k, p, j] = np.conj(g00) * x + np.conj(g10) * y
                        a[k, q, j] = np.conj(g01) * x + np.conj(g11) * y
                    a[k, p, q] = 0.0
                    a[k, q, p] = 0.0
                    for i in range(n):
                        x = v[k, i, p]
                        y = v[k, i, q]
                        v[k, i, p] = x * g00 + y * g10
                        v[k, i, q] = x * g01 + y * g11
        if not converged:
            failures += 1
    return failures


def hermitian_eigen(m, tol=TOL, max_sweeps=60):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Parameters
    ----------
    m : array_like, shape (..., n, n)
        Hermitian within ``tol`` (max-abs entrywise).
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    evals : ndarray, shape (..., n)
        Real eigenvalues, descending.
    evecs : ndarray, shape (..., n, n)
        Orthonormal eigenvectors as columns, ordered like ``evals``.
    """
    m = _as_square(m)
    if not is_hermitian(m, tol):
        raise ValueError(
            f"matrix is not Hermitian within tol={tol:g} "
            f"(max |m - m^dag| = {np.max(hermiticity_error(m)):.3g})")
    batch_shape, n = m.shape[:-2], m.shape[-1]
    a = np.ascontiguousarray((0.5 * (m + dagger(m))).reshape(-1, n, n))
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    if _jacobi_kernel(a, v, max_sweeps):
        raise RuntimeError("Jacobi iteration did not converge")
    a = a.reshape(batch_shape + (n, n))
    v = v.reshape(batch_shape + (n, n))
    evals = np.diagonal(a, axis1=-2, axis2=-1).real
    order = np.argsort(-evals, axis=-1, kind="stable")
    evals = np.take_along_axis(evals, order, axis=-1)
    evecs = np.take_along_axis(v, order[..., None, :], axis=-1)
    return evals, evecs


def clamp_spectrum(evals, tol=TOL):
    """Snap numerically-zero eigenvalues to 0; reject clearly negative ones."""
    evals = np.asarray(evals, dtype=float)
    if np.any(evals < -tol):
        raise ValueError(
            f"eigenvalue {np.min(evals):.3g} below -tol={tol:g}: not positive semidefinite")
    return np.where(evals <= max(SPECTRAL_FLOOR, 0.0), 0.0, evals)


def psd_sqrt_eigvals(m, tol=TOL):
    """Square roots of the (clamped) spectrum of a PSD matrix, descending."""
    evals, _ = hermitian_eigen(m, tol)
    return np.sqrt(clamp_spectrum(evals, tol))


def sqrt_psd(m, tol=TOL):
    """Principal square root of a Hermitian positive semidefinite matrix."""
    evals, evecs = hermitian_eigen(m, tol)
    root = np.sqrt(clamp_spectrum(evals, tol))
    return (evecs * root[..., None, :]) @ dagger(evecs)
