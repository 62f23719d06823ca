"""Fringes, visibility decay and critical time for dephased NOON interferometry.

The exposure dosage is modelled through the extreme coherence only:
``dosage(phi) = 1 + 2 Re(exp(i N phi) rho[N, 0])``. For a balanced NOON state
dephasing at ``gamma1 = gamma2 = gamma`` this is ``1 + exp(-N^2 gamma t) cos(N phi)``.
Intermediate coherences (|k - m| < N) are ignored by design.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .dephasing import DephasingParams, evolve_analytic
from .errors import EmptyGrid, InvalidN, InvalidRate, InvalidVCrit, NegativeTime, UndersampledPhase

REFINE_XATOL = 1e-10


@dataclass(frozen=True)
class FringeCurve:
    phi_grid: np.ndarray
    values: np.ndarray
    t: float


@dataclass(frozen=True)
class VisibilityRecord:
    t: float
    v: float
    dosage_max: float
    dosage_min: float


def fringe(s_t, phi):
    n = s_t.n_total
    return 1.0 + 2.0 * float(np.real(np.exp(1j * n * phi) * s_t.rho[n, 0]))


def phase_grid(phi_samples):
    return 2.0 * math.pi * np.arange(phi_samples) / phi_samples


def fringe_curve(s_t, phi_samples, t=0.0):
    grid = phase_grid(phi_samples)
    n = s_t.n_total
    values = 1.0 + 2.0 * np.real(np.exp(1j * n * grid) * s_t.rho[n, 0])
    return FringeCurve(grid, values, float(t))


def _refine(f, grid, j, sign):
    """Polish the sampled extremum at ``grid[j]`` inside its neighbouring cells."""
    step = grid[1] - grid[0]
    lo, hi = grid[j] - step, grid[j] + step
    res = minimize_scalar(lambda x: sign * f(x), bounds=(lo, hi), method="bounded",
                          options={"xatol": REFINE_XATOL})
    return sign * float(res.fun)


def visibility(s_t, phi_samples=None, t=0.0):
    """Fringe contrast ``(max - min)/(max + min)`` from a phase scan.

    The scan uses ``phi_samples`` uniform points on [0, 2 pi) (default 8N,
    at least 4N required); each sampled extremum is then polished by a bounded
    1-D search in its two neighbouring cells, so the result equals
    ``2 |rho[N, 0]|`` whatever the fringe offset.
    """
    n = s_t.n_total
    if phi_samples is None:
        phi_samples = 8 * n
    if phi_samples < 4 * n:
        raise UndersampledPhase(f"need >= {4 * n} phase samples for N={n}, got {phi_samples}")
    curve = fringe_curve(s_t, phi_samples, t)
    vals = curve.values
    j_max = int(np.argmax(vals))
    j_min = int(np.argmin(vals))
    f = lambda x: fringe(s_t, x)  # noqa: E731
    d_max = max(float(vals[j_max]), _refine(f, curve.phi_grid, j_max, -1.0))
    d_min = min(float(vals[j_min]), _refine(f, curve.phi_grid, j_min, 1.0))
    total = d_max + d_min
    v = (d_max - d_min) / total if total > 0.0 else 0.0
    return VisibilityRecord(float(t), float(v), d_max, d_min)


def t_crit(n_total, gamma, v_crit):
    """Time for the NOON visibility ``exp(-N^2 gamma t)`` to fall to ``v_crit``."""
    if int(n_total) != n_total or n_total < 1:
        raise InvalidN(f"photon number must be an integer >= 1, got {n_total!r}")
    if not (0.0 < v_crit < 1.0):
        raise InvalidVCrit(f"v_crit must lie in (0, 1), got {v_crit!r}")
    if not (math.isfinite(gamma) and gamma > 0.0):
        raise InvalidRate(f"gamma must be finite and > 0, got {gamma!r}")
    return -math.log(v_crit) / (gamma * n_total * n_total)


def _check_grid(t_grid):
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise EmptyGrid("t_grid is empty")
    if any(t < 0.0 for t in t_grid):
        raise NegativeTime("t_grid contains negative times")
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise EmptyGrid("t_grid must be strictly increasing")
    return t_grid


def visibility_curve(s0, p, t_grid, phi_samples=None):
    if not isinstance(p, DephasingParams):
        p = DephasingParams(*p)
    return [visibility(evolve_analytic(s0, p, t), phi_samples, t) for t in _check_grid(t_grid)]


def crossing_time(s0, p, v_crit, t_grid, phi_samples=None, tol=1e-13):
    """First time the visibility drops to ``v_crit``.

    Brackets the crossing on ``t_grid`` and refines it by bisection. Returns
    None when the curve never crosses inside the grid.
    """
    if not (0.0 < v_crit < 1.0):
        raise InvalidVCrit(f"v_crit must lie in (0, 1), got {v_crit!r}")
    records = visibility_curve(s0, p, t_grid, phi_samples)

    def v_at(t):
        return visibility(evolve_analytic(s0, p, t), phi_samples, t).v

    for a, b in zip(records, records[1:]):
        if a.v >= v_crit > b.v:
            lo, hi = a.t, b.t
            while hi - lo > tol * max(1.0, hi):
                mid = 0.5 * (lo + hi)
                if v_at(mid) >= v_crit:
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
    return None
