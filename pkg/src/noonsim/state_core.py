"""Density matrices of N photons shared between two modes.

Basis index ``k`` (0..N) labels the Fock state ``|N-k, k>``: mode 1 holds
``N-k`` photons and mode 2 holds ``k``. ``rho[k, m] = <N-k,k| rho |N-m,m>``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidN, NotNormalized, ValidationFailed
from .linalg import hermitian_eigenvalues, hermiticity_residual

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
CS_TOL = 1e-10
NORM_TOL = 1e-12


def _check_n(n_total):
    if int(n_total) != n_total or n_total < 1:
        raise InvalidN(f"photon number must be an integer >= 1, got {n_total!r}")
    return int(n_total)


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TwoModeNState:
    """Immutable (N+1)x(N+1) density matrix in the ``|N-k, k>`` basis.

    Construction only checks the shape; use :meth:`from_matrix` (or
    :func:`validate`) when the matrix comes from outside.
    """

    n_total: int
    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = _check_n(self.n_total)
        rho = _frozen(self.rho)
        if rho.shape != (n + 1, n + 1):
            raise InvalidN(f"rho has shape {rho.shape}, expected {(n + 1, n + 1)} for N={n}")
        object.__setattr__(self, "n_total", n)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self):
        return self.n_total + 1

    @classmethod
    def from_matrix(cls, rho):
        """Build a state from an explicit matrix, rejecting unphysical input."""
        rho = np.asarray(rho, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise InvalidN(f"need a square matrix of size >= 2, got shape {rho.shape}")
        state = cls(rho.shape[0] - 1, rho)
        report = validate(state)
        if not report.ok:
            raise ValidationFailed(report)
        return state

    def purity(self):
        return float(np.real(np.sum(self.rho * self.rho.T)))

    def coherences(self):
        """Yield ``(k, m, rho[k, m])`` for every upper-triangle pair k < m."""
        for k in range(self.dim):
            for m in range(k + 1, self.dim):
                yield k, m, self.rho[k, m]


@dataclass(frozen=True)
class PureCoefficients:
    """Amplitudes ``c_k`` of ``|N-k, k>`` for a pure state."""

    n_total: int
    coeffs: tuple

    def __post_init__(self):
        n = _check_n(self.n_total)
        coeffs = tuple(complex(c) for c in self.coeffs)
        if len(coeffs) != n + 1:
            raise InvalidN(f"need {n + 1} coefficients for N={n}, got {len(coeffs)}")
        object.__setattr__(self, "n_total", n)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def norm_sq(self):
        return float(sum(abs(c) ** 2 for c in self.coeffs))


def make_noon(n_total, phase=0.0):
    """``(|N,0> + exp(i N phase)|0,N>)/sqrt(2)`` as a density matrix."""
    n = _check_n(n_total)
    rho = np.zeros((n + 1, n + 1), dtype=np.complex128)
    rho[0, 0] = rho[n, n] = 0.5
    rho[n, 0] = 0.5 * np.exp(1j * n * phase)
    rho[0, n] = np.conj(rho[n, 0])
    return TwoModeNState(n, rho)


def from_pure(c, auto_normalize=False):
    """Projector ``rho[k, m] = c_k conj(c_m)`` of a pure state.

    Raises NotNormalized when ``sum |c_k|^2`` is off by more than 1e-12,
    unless ``auto_normalize`` is set.
    """
    if not isinstance(c, PureCoefficients):
        c = PureCoefficients(len(c) - 1, tuple(c))
    vec = np.array(c.coeffs, dtype=np.complex128)
    norm_sq = float(np.sum(np.abs(vec) ** 2))
    if abs(norm_sq - 1.0) > NORM_TOL:
        if not auto_normalize:
            raise NotNormalized(f"sum |c_k|^2 = {norm_sq!r}")
        if norm_sq == 0.0:
            raise NotNormalized("all coefficients are zero")
        vec = vec / np.sqrt(norm_sq)
    return TwoModeNState(c.n_total, np.outer(vec, vec.conj()))


def random_state(n_total, rng, rank=None):
    """Random mixed state ``G G^H / tr`` from a complex Ginibre matrix."""
    n = _check_n(n_total)
    rank = n + 1 if rank is None else rank
    g = rng.normal(size=(n + 1, rank)) + 1j * rng.normal(size=(n + 1, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    rho = 0.5 * (rho + rho.conj().T)
    return TwoModeNState(n, rho)


def random_pure(n_total, rng):
    n = _check_n(n_total)
    vec = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    vec /= np.linalg.norm(vec)
    return from_pure(PureCoefficients(n, tuple(vec)))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def summary(self):
        return "; ".join(
            f"{c.name} {'ok' if c.passed else 'FAIL'} (residual {c.residual:.3e})"
            for c in self.checks
        )


def validate(s):
    """Check Hermiticity, unit trace, positivity and Cauchy-Schwarz.

    Residuals: max |rho - rho^H|; |tr rho - 1|; max(0, -lambda_min);
    max(0, |rho_km| - sqrt(rho_kk rho_mm)).
    """
    rho = s.rho if isinstance(s, TwoModeNState) else np.asarray(s, dtype=np.complex128)
    herm = hermiticity_residual(rho)
    trace = abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag)

    if herm <= HERMITIAN_TOL:
        lam_min = hermitian_eigenvalues(rho).eigenvalues[0]
    else:
        # eigenvalues of the Hermitian part still say something useful
        lam_min = hermitian_eigenvalues(0.5 * (rho + rho.conj().T)).eigenvalues[0]
    psd = max(0.0, -float(lam_min))

    diag = np.clip(rho.diagonal().real, 0.0, None)
    bound = np.sqrt(np.outer(diag, diag))
    cs = max(0.0, float(np.max(np.abs(rho) - bound)))

    return ValidationReport((
        Check("hermitian", herm <= HERMITIAN_TOL, herm),
        Check("trace", trace <= TRACE_TOL, trace),
        Check("psd", psd <= PSD_TOL, psd),
        Check("cauchy_schwarz", cs <= CS_TOL, cs),
    ))
