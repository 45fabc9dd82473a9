"""Concurrence-purity diagram: boundary curves, regions and Monte-Carlo scans."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .channels import sample_nonunital_batch, sample_tetrahedron, singlet_image
from .entanglement import concurrence_batch, concurrence_wootters
from .linalg import TOL as LINALG_TOL
from .states import mems, partial_trace, purity

TOL = 1e-9
MEMS_TOL = 1e-6
BLOCK = 10_000
DEFAULT_MEMS_POINTS = 2001


class Region(str, Enum):
    NON_PHYSICAL = "NonPhysical"
    NON_UNITAL_BAND = "NonUnitalBand"
    UNITAL_REGION = "UnitalRegion"
    BELOW_UNITAL_BOUND = "BelowUnitalBound"


@dataclass(frozen=True)
class CPPoint:
    purity: float
    concurrence: float


@dataclass
class RegionReport:
    n_samples: int
    seed: int
    min_margin_lower: float
    max_margin_upper: float
    max_margin_mems: float
    violations: list = field(default_factory=list)
    acceptance_rate: float = 1.0
    points: np.ndarray = None  # (n, 2) purity, concurrence
    params: np.ndarray = None  # (n, 6) lam, tau


def _check_purity(P, tol=TOL):
    P = np.asarray(P, dtype=float)
    if np.any(P < 0.25 - tol) or np.any(P > 1.0 + tol):
        raise ValueError(f"purity outside [1/4, 1]: {P}")
    return np.clip(P, 0.25, 1.0)


def c_max_unital(P):
    """Werner line, the upper edge of the unital region."""
    P = _check_purity(P)
    return np.maximum(0.0, 0.5 * (np.sqrt(3.0 * (4.0 * P - 1.0)) - 1.0))


def c_min_unital(P):
    """Decoherence line, the lower edge of the unital region."""
    P = _check_purity(P)
    return np.sqrt(np.maximum(0.0, 2.0 * P - 1.0))


c_werner = c_max_unital
c_decoherence = c_min_unital


class MemsCurve:
    """MEMS boundary sampled by sweeping the MEMS parameter.

    Each node is evaluated with the Wootters algorithm; between nodes the
    curve is interpolated linearly in purity.  Below the smallest node purity
    (1/3) every state is separable and the curve is 0.
    """

    def __init__(self, points):
        pts = sorted(points, key=lambda p: p.purity)
        if len(pts) < 2:
            raise ValueError("MEMS curve needs at least two points")
        self.points = pts
        self.purity = np.array([p.purity for p in pts])
        self.concurrence = np.array([p.concurrence for p in pts])

    def __call__(self, P):
        return np.interp(P, self.purity, self.concurrence, left=0.0)

    def __len__(self):
        return len(self.points)


def mems_boundary(n_points=DEFAULT_MEMS_POINTS):
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    ps = np.linspace(0.0, 1.0, n_points)
    rhos = np.array([mems(p) for p in ps])
    conc = concurrence_batch(rhos)
    pur = purity(rhos)
    pts = [CPPoint(float(a), float(b)) for a, b in zip(pur, conc)]
    return sorted(pts, key=lambda p: p.purity)


_default_curve = None


def default_mems_curve():
    global _default_curve
    if _default_curve is None:
        _default_curve = MemsCurve(mems_boundary())
    return _default_curve


def _as_curve(mems_curve):
    if mems_curve is None:
        return default_mems_curve()
    if isinstance(mems_curve, MemsCurve):
        return mems_curve
    return MemsCurve(mems_curve)


def classify(pt, mems_curve=None, tol=TOL):
    """Region of a C-P point.  Boundaries are inclusive; the unital region
    owns both of its edges.
    """
    curve = _as_curve(mems_curve)
    P = float(_check_purity(pt.purity, tol))
    C = pt.concurrence
    if C > curve(P) + tol:
        return Region.NON_PHYSICAL
    if C > c_max_unital(P) + tol:
        return Region.NON_UNITAL_BAND
    if C >= c_min_unital(P) - tol:
        return Region.UNITAL_REGION
    return Region.BELOW_UNITAL_BOUND


def classify_many(P, C, mems_curve=None, tol=TOL):
    curve = _as_curve(mems_curve)
    P = _check_purity(P, tol)
    C = np.asarray(C, dtype=float)
    out = np.full(P.shape, Region.BELOW_UNITAL_BOUND.value, dtype=object)
    out[C >= c_min_unital(P) - tol] = Region.UNITAL_REGION.value
    out[C > c_max_unital(P) + tol] = Region.NON_UNITAL_BAND.value
    out[C > curve(P) + tol] = Region.NON_PHYSICAL.value
    return out


def cp_points(lam, tau=None):
    """Purity and Wootters concurrence of singlet images, shape (n,)."""
    rhos = singlet_image(lam, tau)
    return purity(rhos), concurrence_batch(rhos, LINALG_TOL)


def _blocks(n):
    return [min(BLOCK, n - start) for start in range(0, n, BLOCK)]


def _run_blocks(seed, n, draw, workers):
    """Draw samples in fixed-size blocks, block b from stream (seed, b).

    The result depends on ``seed`` and ``n`` only, not on ``workers``.
    """
    sizes = _blocks(n)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(np.random.default_rng(ss), size) for ss, size in zip(streams, sizes)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda job: draw(*job), jobs))
    return [draw(*job) for job in jobs]


def scan_unital(n, seed, tol=TOL, mems_tol=MEMS_TOL, workers=1, mems_curve=None):
    """Map ``n`` uniform tetrahedron channels to the diagram and check the
    unital bounds c_min <= C <= c_max.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def draw(rng, size):
        lam = sample_tetrahedron(rng, size)
        P, C = cp_points(lam)
        return lam, np.zeros_like(lam), P, C

    parts = _run_blocks(seed, n, draw, workers)
    return _report(parts, seed, tol, mems_tol, mems_curve, acceptance=1.0,
                   upper_is_violation=True)


def scan_nonunital(n, seed, tol=TOL, mems_tol=MEMS_TOL, workers=1, mems_curve=None):
    """Map ``n`` random CP channels with a shift to the diagram.

    Collected as evidence for the decoherence line bounding non-unital
    images from below; exceeding the Werner line is expected and is not a
    violation.  Violations are C < c_min - tol and C > C_MEMS + mems_tol.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def draw(rng, size):
        lam, tau, rate = sample_nonunital_batch(rng, size)
        P, C = cp_points(lam, tau)
        return lam, tau, P, C, rate

    parts = _run_blocks(seed, n, draw, workers)
    acceptance = sum(len(p[2]) * p[4] for p in parts) / n
    return _report(parts, seed, tol, mems_tol, mems_curve, acceptance=acceptance,
                   upper_is_violation=False)


def _report(parts, seed, tol, mems_tol, mems_curve, acceptance, upper_is_violation):
    curve = _as_curve(mems_curve)
    lam = np.concatenate([p[0] for p in parts])
    tau = np.concatenate([p[1] for p in parts])
    P = np.concatenate([p[2] for p in parts])
    C = np.concatenate([p[3] for p in parts])
    lower = C - c_min_unital(P)
    upper = C - c_max_unital(P)
    over_mems = C - curve(P)

    bad = lower < -tol
    if upper_is_violation:
        bad |= upper > tol
    bad |= over_mems > mems_tol
    violations = []
    for i in np.nonzero(bad)[0]:
        margin = min(lower[i], -upper[i] if upper_is_violation else np.inf, -over_mems[i])
        violations.append((np.concatenate([lam[i], tau[i]]),
                           CPPoint(float(P[i]), float(C[i])), float(margin)))
    return RegionReport(
        n_samples=len(P), seed=seed,
        min_margin_lower=float(lower.min()),
        max_margin_upper=float(upper.max()),
        max_margin_mems=float(over_mems.max()),
        violations=violations,
        acceptance_rate=float(acceptance),
        points=np.column_stack([P, C]),
        params=np.column_stack([lam, tau]),
    )


def reduced_distance(rho):
    """Max-norm distance of both reduced states from I/2; returns the smaller."""
    half = np.eye(2) / 2.0
    da = np.max(np.abs(partial_trace(rho, "A") - half), axis=(-1, -2))
    db = np.max(np.abs(partial_trace(rho, "B") - half), axis=(-1, -2))
    return np.minimum(da, db)


def mems_unreachable_check(p):
    """Distance of the MEMS reduced states from I/2; positive for p < 1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    return float(reduced_distance(mems(p)))


def point_of(rho):
    return CPPoint(float(purity(rho)), concurrence_wootters(rho).concurrence)
