"""Pure dephasing of two-mode N-photon states.

Coherence ``rho[k, m]`` decays at rate ``(k - m)**2 * (gamma1 + gamma2) / 2``;
populations are untouched. :func:`evolve_analytic` is the closed form and
:func:`evolve_numeric` integrates the same generator with classic RK4 so the
two can be checked against each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidRate, NegativeTime, StepTooLarge
from .state_core import TwoModeNState

# StepTooLarge above this; the default policy stays well inside it
MAX_STEP_RATE = 0.1
DEFAULT_STEP_RATE = 0.025


@dataclass(frozen=True)
class DephasingParams:
    gamma1: float
    gamma2: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2"):
            g = getattr(self, name)
            if not (math.isfinite(g) and g >= 0.0):
                raise InvalidRate(f"{name} must be finite and >= 0, got {g!r}")
        object.__setattr__(self, "gamma1", float(self.gamma1))
        object.__setattr__(self, "gamma2", float(self.gamma2))

    @property
    def total(self):
        return self.gamma1 + self.gamma2

    @property
    def gamma_eff(self):
        """Single-rate equivalent: the symmetric case gamma1 = gamma2 = gamma_eff."""
        return 0.5 * self.total


def decay_rates(n_total, p):
    """Matrix of rates ``(k - m)**2 * (gamma1 + gamma2) / 2``; zero on the diagonal."""
    k = np.arange(n_total + 1)
    return 0.5 * p.total * (k[:, None] - k[None, :]) ** 2.0


def max_rate(n_total, p):
    return 0.5 * n_total**2 * p.total


def _check_time(t):
    if not t >= 0.0:
        raise NegativeTime(f"time must be >= 0, got {t!r}")


def evolve_analytic(s0, p, t):
    """State at time ``t``: each coherence scaled by ``exp(-rate_km * t)``."""
    _check_time(t)
    kernel = np.exp(-decay_rates(s0.n_total, p) * t)
    return TwoModeNState(s0.n_total, s0.rho * kernel)


def generator_apply(s, p):
    """Time derivative ``d rho / dt`` of the dephasing flow at state ``s``."""
    rho = s.rho if isinstance(s, TwoModeNState) else np.asarray(s)
    return -decay_rates(rho.shape[0] - 1, p) * rho


def default_steps(n_total, p, t):
    return max(1, math.ceil(t * max_rate(n_total, p) / DEFAULT_STEP_RATE))


def evolve_numeric(s0, p, t, steps=None):
    """Integrate the dephasing generator with fixed-step RK4.

    ``steps`` defaults to ``ceil(t * r_max / 0.025)``. Any explicit choice with
    ``(t / steps) * r_max > 0.1`` raises StepTooLarge.
    """
    _check_time(t)
    n = s0.n_total
    r_max = max_rate(n, p)
    if steps is None:
        steps = default_steps(n, p, t)
    if steps < 1:
        raise StepTooLarge(f"steps must be >= 1, got {steps}")
    h = t / steps
    if h * r_max > MAX_STEP_RATE * (1.0 + 1e-12):
        raise StepTooLarge(f"h * r_max = {h * r_max:.4g} exceeds {MAX_STEP_RATE}")
    if t == 0.0:
        return TwoModeNState(n, s0.rho)

    rates = decay_rates(n, p)

    def f(y):
        return -rates * y

    y = np.array(s0.rho)
    for _ in range(steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return TwoModeNState(n, y)
