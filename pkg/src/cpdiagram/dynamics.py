"""Markovian semigroups acting on qubit A of the singlet.

Channels are used in their solved affine form; no master equation is
integrated.  Trajectories are computed numerically (channel image plus the
Wootters algorithm) so that the analytic curves remain an independent check.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channels import AffineChannel, choi_spectrum
from .entanglement import concurrence_batch
from .linalg import TOL
from .states import from_pauli, purity


class Process(str, Enum):
    DECOHERENCE = "decoherence"
    DEPOLARIZATION = "depolarization"
    HOMOGENIZATION = "homogenization"


@dataclass(frozen=True)
class SemigroupProcess:
    """One of the three semigroups.

    ``T`` is the time constant of decoherence and depolarization; ``T1``
    (decay), ``T2`` (decoherence) and ``w`` (length of the fixed-point Bloch
    vector) parametrise homogenization.  ``omega`` is the rotation frequency
    of the unitary part (decoherence and homogenization).
    """

    kind: Process
    T: float = 1.0
    T1: float = 1.0
    T2: float = 1.0
    omega: float = 0.0
    w: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Process(self.kind))
        for name in ("T", "T1", "T2"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be positive and finite, got {value}")
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f"w must lie in [0, 1], got {self.w}")
        if not math.isfinite(self.omega):
            raise ValueError("omega must be finite")
        # complete positivity of the homogenization map for every t and w
        if self.kind is Process.HOMOGENIZATION and self.T2 > 2.0 * self.T1 * (1 + 1e-12):
            raise ValueError(f"homogenization needs T2 <= 2*T1, got T1={self.T1}, T2={self.T2}")

    @classmethod
    def decoherence(cls, T, omega=0.0):
        return cls(Process.DECOHERENCE, T=T, omega=omega)

    @classmethod
    def depolarization(cls, T):
        return cls(Process.DEPOLARIZATION, T=T)

    @classmethod
    def homogenization(cls, T1, T2, w, omega=0.0):
        return cls(Process.HOMOGENIZATION, T1=T1, T2=T2, w=w, omega=omega)

    @property
    def time_scale(self):
        if self.kind is Process.HOMOGENIZATION:
            return max(self.T1, self.T2)
        return self.T


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    purity: np.ndarray
    concurrence: np.ndarray

    def __len__(self):
        return len(self.t)

    def points(self):
        return list(zip(self.t.tolist(), self.purity.tolist(), self.concurrence.tolist()))


def _rotation_xy(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 0.0]])


def channel_at(p, t):
    if t < 0:
        raise ValueError(f"time must be non-negative, got {t}")
    if p.kind is Process.DECOHERENCE:
        T = math.exp(-t / p.T) * _rotation_xy(p.omega * t)
        T[2, 2] = 1.0
        return AffineChannel(T, np.zeros(3))
    if p.kind is Process.DEPOLARIZATION:
        return AffineChannel(math.exp(-t / p.T) * np.eye(3), np.zeros(3))
    decay = math.exp(-t / p.T1)
    T = math.exp(-t / p.T2) * _rotation_xy(p.omega * t)
    T[2, 2] = decay
    return AffineChannel(T, np.array([0.0, 0.0, p.w * (1.0 - decay)]))


def _singlet_images(p, times):
    mats, shifts = [], []
    for t in times:
        ch = channel_at(p, float(t))
        mats.append(ch.T)
        shifts.append(ch.t)
    T = np.array(mats)
    shift = np.array(shifts)
    # singlet Pauli block: r[0, 0] = 1, r[k, k] = -1
    r = np.zeros((len(times), 4, 4))
    r[:, 0, 0] = 1.0
    r[:, 1:, 0] = shift
    r[:, 1:, 1:] = -T
    return from_pauli(r)


def _concurrence_at(p, times, tol=TOL):
    return concurrence_batch(_singlet_images(p, np.atleast_1d(times)), tol)


def trajectory(p, t_grid, tol=TOL):
    """Purity and concurrence of (E_t x I)[singlet] on a sorted time grid."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) == 0:
        raise ValueError("time grid must be a non-empty 1-d array")
    if np.any(t_grid < 0) or np.any(np.diff(t_grid) <= 0):
        raise ValueError("time grid must be non-negative and strictly increasing")
    for t in t_grid:
        if choi_spectrum(channel_at(p, float(t)), tol)[-1] < -tol:
            raise RuntimeError(f"{p.kind.value} channel at t={t} is not completely positive")
    rhos = _singlet_images(p, t_grid)
    return Trajectory(t_grid, purity(rhos), concurrence_batch(rhos, tol))


def default_grid(p, n=200):
    s = p.time_scale
    return np.geomspace(1e-3 * s, 10.0 * s, n)


def entanglement_breaking_time(p, n_grid=2001, resolved_floor=1e-6, tol=TOL):
    """First time the concurrence reaches zero, or ``math.inf``.

    The concurrence is scanned up to 50 time scales.  A curve that falls
    below ``resolved_floor`` through an exponential tail (log-decrement
    constant within 10% over the decade above the floor) never breaks.
    Otherwise the first zero crossing is refined by bisection.

    ``resolved_floor`` sits well above the ~1e-7 level at which Wootters
    concurrence of a rank-deficient state stops being resolvable.
    """
    scale = p.time_scale
    t_max = 50.0 * scale
    grid = np.linspace(0.0, t_max, n_grid)
    c = _concurrence_at(p, grid, tol)
    zero_floor = 1e-13

    below = np.nonzero(c <= resolved_floor)[0]
    if len(below) == 0:
        return math.inf
    tail = np.nonzero((c > resolved_floor) & (c <= 10 * resolved_floor))[0]
    tail = tail[tail < below[0]]
    if len(tail) >= 3 and np.all(np.diff(tail) == 1):
        decrements = np.log(c[tail[:-1]] / c[tail[1:]])
        if np.all(decrements > 0) and decrements.max() <= 1.1 * decrements.min():
            return math.inf

    zeros = np.nonzero(c <= zero_floor)[0]
    if len(zeros) == 0:
        return math.inf
    hi_idx = zeros[0]
    if hi_idx == 0:
        return 0.0
    lo, hi = grid[hi_idx - 1], grid[hi_idx]
    for _ in range(200):
        if hi - lo <= 1e-9 * scale:
            break
        mid = 0.5 * (lo + hi)
        if _concurrence_at(p, mid, tol)[0] > zero_floor:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def verify_semigroup(p, t, s, tol=1e-10):
    """Check E_t E_s == E_{t+s} entrywise on the affine matrices."""
    if t < 0 or s < 0:
        raise ValueError("times must be non-negative")
    composed = channel_at(p, t).compose(channel_at(p, s))
    direct = channel_at(p, t + s)
    return bool(np.max(np.abs(composed.T - direct.T)) <= tol
                and np.max(np.abs(composed.t - direct.t)) <= tol)
