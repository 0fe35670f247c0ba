"""Orbit simulation, cycle detection, itineraries and attractor-band counts.

The x coordinate of the canonical system evolves autonomously, so the
bifurcation scan and cobweb helpers work on the 1D map while trajectory
and cycle detection handle the full (m+1)-dimensional state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycle_solver import CanonicalSystem
from .errors import DivergenceError
from .skew_tent import SkewTentParams, iterate_1d

__all__ = [
    "DEFAULT_STEPS",
    "DEFAULT_TRANSIENT",
    "DIVERGENCE_THRESHOLD",
    "DEFAULT_MAX_PERIOD",
    "DEFAULT_CYCLE_TOL",
    "DEFAULT_GAP_FACTOR",
    "Orbit",
    "DetectedCycle",
    "trajectory",
    "detect_cycle",
    "itinerary",
    "band_count",
    "cobweb_data",
    "bifurcation_scan",
]

DEFAULT_STEPS = 10_000
DEFAULT_TRANSIENT = 1_000
DIVERGENCE_THRESHOLD = 1e12
DEFAULT_MAX_PERIOD = 64
DEFAULT_CYCLE_TOL = 1e-7
DEFAULT_GAP_FACTOR = 10.0


@dataclass(frozen=True)
class Orbit:
    """Recorded tail of a trajectory.

    states has shape (steps - transient, m + 1) and holds the states
    after the first `transient` map applications were discarded.
    """

    states: np.ndarray
    transient: int

    @property
    def x_values(self) -> np.ndarray:
        return self.states[:, 0]


@dataclass(frozen=True)
class DetectedCycle:
    """A numerically detected periodic attractor.

    points has shape (period, m + 1); method is 'convergence' or 'floyd'.
    """

    period: int
    points: np.ndarray
    tol_used: float
    method: str


def trajectory(
    sys: CanonicalSystem,
    steps: int = DEFAULT_STEPS,
    transient: int = DEFAULT_TRANSIENT,
    z0=None,
    divergence_threshold: float = DIVERGENCE_THRESHOLD,
) -> Orbit:
    """Iterate the canonical map and record states transient..steps-1.

    z0 defaults to (mu_hat / 2, 0, ..., 0), which sits inside the
    absorbing interval whenever an attractor exists. Raises
    DivergenceError (carrying the application count and the offending
    state) as soon as any coordinate exceeds divergence_threshold.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if not 0 <= transient < steps:
        raise ValueError("need 0 <= transient < steps")
    m = sys.m
    if z0 is None:
        z0 = np.zeros(m + 1)
        z0[0] = sys.mu_hat / 2.0
    else:
        z0 = np.asarray(z0, dtype=float)
        if z0.shape != (m + 1,):
            raise ValueError(f"z0 must have shape ({m + 1},)")
        if not np.all(np.isfinite(z0)):
            raise ValueError("z0 must be finite")

    out = np.empty((steps - transient, m + 1))
    if m == 0:
        # scalar fast path; the ndarray loop costs ~20x more per step
        a, d, mu = sys.a, sys.d, sys.mu_hat
        x = float(z0[0])
        if transient == 0:
            out[0, 0] = x
        for k in range(1, steps):
            x = a * x + mu if x <= 0.0 else d * x + mu
            if abs(x) > divergence_threshold:
                raise DivergenceError(k, np.array([x]))
            if k >= transient:
                out[k - transient, 0] = x
        return Orbit(states=out, transient=transient)

    A, b, e, h = sys.A_block, sys.b_vec, sys.e_vec, sys.h_Y
    z = z0.copy()
    if transient == 0:
        out[0] = z
    for k in range(1, steps):
        x = z[0]
        if x <= 0.0:
            z = np.concatenate(([sys.a * x + sys.mu_hat], b * x + A @ z[1:] + h))
        else:
            z = np.concatenate(([sys.d * x + sys.mu_hat], e * x + A @ z[1:] + h))
        if np.max(np.abs(z)) > divergence_threshold:
            raise DivergenceError(k, z)
        if k >= transient:
            out[k - transient] = z
    return Orbit(states=out, transient=transient)


def detect_cycle(
    orbit: Orbit,
    max_period: int = DEFAULT_MAX_PERIOD,
    tol: float = DEFAULT_CYCLE_TOL,
    method: str = "convergence",
) -> DetectedCycle | None:
    """Detect a periodic attractor in the orbit tail, or return None.

    'convergence' compares the last p states against the p before them
    for p = 1..max_period and reports the smallest p that matches within
    tol. 'floyd' runs the tortoise-and-hare scheme over the recorded
    states and then extracts the minimal period at the meeting point.
    Chaotic orbits and periods above max_period yield None.
    """
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    states = orbit.states
    n_rec = states.shape[0]

    if method == "convergence":
        for p in range(1, max_period + 1):
            if 2 * p > n_rec:
                break
            if np.max(np.abs(states[-p:] - states[-2 * p : -p])) <= tol:
                return DetectedCycle(
                    period=p, points=states[-p:].copy(), tol_used=tol,
                    method="convergence",
                )
        return None

    if method == "floyd":
        meet = None
        for k in range(1, n_rec // 2):
            if np.max(np.abs(states[k] - states[2 * k])) <= tol:
                meet = k
                break
        if meet is None:
            return None
        for p in range(1, max_period + 1):
            if meet + p >= n_rec:
                break
            if np.max(np.abs(states[meet] - states[meet + p])) <= tol:
                return DetectedCycle(
                    period=p, points=states[meet : meet + p].copy(),
                    tol_used=tol, method="floyd",
                )
        return None

    raise ValueError(f"method must be 'convergence' or 'floyd', got {method!r}")


def itinerary(orbit: Orbit, zero_tol: float = 1e-9) -> str:
    """Symbol string of the recorded x-values: R (x > 0), L (x < 0), 0."""
    letters = np.where(
        orbit.x_values > zero_tol, "R", np.where(orbit.x_values < -zero_tol, "L", "0")
    )
    return "".join(letters)


def band_count(orbit: Orbit, gap_factor: float = DEFAULT_GAP_FACTOR) -> int:
    """Number of attractor bands covered by the recorded x-values.

    Sorts the x-values and looks at the largest inter-point gaps. A gap
    qualifies as a candidate band boundary when it exceeds gap_factor
    times the median gap; walking the candidates from largest down, the
    boundary set ends at the first gap_factor-fold drop between
    consecutive gap sizes (the frontier is compared against the largest
    non-candidate gap). Without such a drop the gap spectrum is smooth,
    which is how a single chaotic band looks, so the count is 1.
    """
    if gap_factor <= 1:
        raise ValueError("gap_factor must be > 1")
    xs = np.sort(orbit.x_values)
    gaps = np.diff(xs)
    if gaps.size == 0:
        return 1
    cutoff = gap_factor * float(np.median(gaps))
    cand_mask = gaps > cutoff
    if not cand_mask.any():
        return 1
    cand = np.sort(gaps[cand_mask])[::-1]
    noncand = gaps[~cand_mask]
    frontier = float(noncand.max()) if noncand.size else 0.0
    series = np.append(cand, frontier)
    for i in range(series.size - 1):
        nxt = series[i + 1]
        if nxt <= 0.0 or series[i] / nxt > gap_factor:
            return i + 2
    return 1


def cobweb_data(p: SkewTentParams, x0: float, steps: int) -> np.ndarray:
    """Vertex list of a cobweb plot path for the 1D map.

    Starts at (x0, 0); each step appends the vertical segment endpoint
    (x, f(x)) and the diagonal endpoint (f(x), f(x)). Shape is
    (2 * steps + 1, 2).
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    pts = np.empty((2 * steps + 1, 2))
    pts[0] = (x0, 0.0)
    x = float(x0)
    for k in range(steps):
        fx = iterate_1d(p, x)
        pts[2 * k + 1] = (x, fx)
        pts[2 * k + 2] = (fx, fx)
        x = fx
    return pts


def bifurcation_scan(
    a: float,
    mu_hat: float,
    d_min: float,
    d_max: float,
    d_steps: int,
    steps: int = DEFAULT_STEPS,
    transient: int = DEFAULT_TRANSIENT,
    x0: float | None = None,
    divergence_threshold: float = DIVERGENCE_THRESHOLD,
) -> list:
    """Sweep d over an inclusive grid and record the x attractor per value.

    Returns one dict per d with keys 'd', 'xs' (recorded tail values,
    empty when diverged), 'diverged', and 'diverged_at' (application
    count, None when bounded). Divergence is reported per row instead of
    raised so a sweep across an exploding region still completes.
    """
    if d_steps < 1:
        raise ValueError("d_steps must be >= 1")
    rows = []
    for d in np.linspace(d_min, d_max, d_steps):
        sys = CanonicalSystem.from_skew_tent(
            SkewTentParams(a=a, d=float(d), mu_hat=mu_hat)
        )
        z0 = None if x0 is None else np.array([x0])
        try:
            orb = trajectory(
                sys,
                steps=steps,
                transient=transient,
                z0=z0,
                divergence_threshold=divergence_threshold,
            )
        except DivergenceError as err:
            rows.append(
                {
                    "d": float(d),
                    "xs": np.empty(0),
                    "diverged": True,
                    "diverged_at": err.step,
                }
            )
            continue
        rows.append(
            {
                "d": float(d),
                "xs": orb.x_values.copy(),
                "diverged": False,
                "diverged_at": None,
            }
        )
    return rows
