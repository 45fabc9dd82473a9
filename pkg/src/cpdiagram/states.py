"""Two-qubit density operators.

States are plain ``(4, 4)`` complex arrays (or stacks ``(..., 4, 4)``) in the
computational basis |00>, |01>, |10>, |11>.  The first tensor factor is
qubit A, the one local channels act on.  Validity is checked explicitly with
:func:`validate`, never on construction.
"""
import numpy as np

from .linalg import PAULIS, TOL, dagger, hermitian_eigen, hermiticity_error, kron

_PAULI_PRODUCTS = np.array([[kron(si, sj) for sj in PAULIS] for si in PAULIS])


class InvalidStateError(ValueError):
    """Raised when a matrix fails one of the density-operator predicates."""

    def __init__(self, predicate, detail):
        self.predicate = predicate
        super().__init__(f"{predicate}: {detail}")


def ket(*amplitudes):
    psi = np.asarray(amplitudes, dtype=complex)
    return psi / np.linalg.norm(psi)


def projector(psi):
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def validate(rho, tol=TOL):
    """Raise :class:`InvalidStateError` naming the first violated predicate."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise InvalidStateError("shape", f"expected (..., 4, 4), got {rho.shape}")
    herm = np.max(hermiticity_error(rho))
    if herm > tol:
        raise InvalidStateError("hermiticity", f"max |rho - rho^dag| = {herm:.3g} > {tol:g}")
    tr_err = np.max(np.abs(np.trace(rho, axis1=-2, axis2=-1) - 1.0))
    if tr_err > tol:
        raise InvalidStateError("trace", f"|Tr rho - 1| = {tr_err:.3g} > {tol:g}")
    evals, _ = hermitian_eigen(rho, tol)
    lowest = np.min(evals)
    if lowest < -tol:
        raise InvalidStateError("positivity", f"eigenvalue {lowest:.3g} < -{tol:g}")
    return rho


def is_state(rho, tol=TOL):
    try:
        validate(rho, tol)
    except InvalidStateError:
        return False
    return True


def singlet():
    """(|01> - |10>)/sqrt(2), i.e. (I - xx - yy - zz)/4."""
    return projector(ket(0, 1, -1, 0))


def phi_plus():
    return projector(ket(1, 0, 0, 1))


def bell_basis():
    """The four Bell states (s_k x I) singlet (s_k x I), k = 0..3."""
    psi = singlet()
    out = []
    for s in PAULIS:
        u = kron(s, np.eye(2))
        out.append(u @ psi @ dagger(u))
    return out


def werner(q):
    """q * singlet + (1 - q) * I/4, valid for -1/3 <= q <= 1."""
    if not -1.0 / 3.0 - TOL <= q <= 1.0 + TOL:
        raise ValueError(f"Werner weight q={q} outside [-1/3, 1]")
    return q * singlet() + (1.0 - q) * np.eye(4, dtype=complex) / 4.0


def mems(p):
    """Maximally entangled mixed state with |phi+> weight ``p`` in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"MEMS parameter p={p} outside [0, 1]")
    basis = np.eye(4, dtype=complex)
    p00, p01, p11 = (projector(basis[i]) for i in (0, 1, 3))
    if p >= 2.0 / 3.0:
        return p * phi_plus() + (1.0 - p) * p01
    return p * phi_plus() + p01 / 3.0 + (1.0 / 3.0 - p / 2.0) * (p00 + p11)


def purity(rho):
    """Tr[rho^2]; works on stacks."""
    rho = np.asarray(rho)
    return np.real(np.einsum("...ij,...ji->...", rho, rho))


def partial_trace(rho, over):
    """Trace out qubit ``"A"`` (first factor) or ``"B"`` and return 2x2."""
    r = np.asarray(rho, dtype=complex).reshape(np.shape(rho)[:-2] + (2, 2, 2, 2))
    if over == "A":
        return np.einsum("...ajak->...jk", r)
    if over == "B":
        return np.einsum("...iaja->...ij", r)
    raise ValueError(f"subsystem must be 'A' or 'B', got {over!r}")


def linear_entropy_pure(rho, tol=TOL):
    """2[1 - P(Tr_B psi)] for a pure state; equals the tangle."""
    if purity(rho) < 1.0 - tol:
        raise ValueError("linear_entropy_pure needs a pure state")
    return 2.0 * (1.0 - purity(partial_trace(rho, "B")))


def to_pauli(rho):
    """Coefficients r[i, j] = Tr[rho (s_i x s_j)], s_0 = I."""
    rho = np.asarray(rho, dtype=complex)
    return np.real(np.einsum("ijab,...ba->...ij", _PAULI_PRODUCTS, rho))


def from_pauli(r):
    r = np.asarray(r, dtype=float)
    return np.einsum("...ij,ijab->...ab", r, _PAULI_PRODUCTS) / 4.0


def random_state(rng):
    """Random full-rank-ish state: a Gaussian pure state mixed with I/4.

    Not a canonical measure; only meant to cover the state space in tests.
    """
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi /= np.linalg.norm(psi)
    w = rng.uniform()
    return w * projector(psi) + (1.0 - w) * np.eye(4, dtype=complex) / 4.0
