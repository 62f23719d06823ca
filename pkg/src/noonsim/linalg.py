"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays. The eigensolver is a cyclic
Jacobi iteration for complex Hermitian matrices, kept deliberately independent
of LAPACK so it can serve as a cross-check on closed-form spectra.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonHermitianInput

HERMITIAN_TOL = 1e-12
CONVERGENCE_RTOL = 1e-14
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending) and the largest off-diagonal magnitude left."""

    eigenvalues: np.ndarray
    residual: float
    sweeps: int = 0

    def __len__(self):
        return len(self.eigenvalues)


def as_matrix(m):
    """Return ``m`` as a square complex128 array, or raise DimensionMismatch."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def hermiticity_residual(m):
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(m, tol=HERMITIAN_TOL):
    return hermiticity_residual(m) <= tol


def frobenius_distance(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def _rotate(a, p, q):
    """Annihilate a[p, q] with a two-sided unitary rotation, in place.

    The column/row ``q`` is first rephased so the pivot becomes real and
    positive, then a real Givens rotation finishes the job.
    """
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    a[:, q] *= phase.conjugate()
    a[q, :] *= phase

    app = a[p, p].real
    aqq = a[q, q].real
    theta = (aqq - app) / (2.0 * mag)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q

    a[p, p] = app - t * mag
    a[q, q] = aqq + t * mag
    a[p, q] = 0.0
    a[q, p] = 0.0


def hermitian_eigenvalues(m, max_sweeps=MAX_SWEEPS):
    """Eigenvalues of a complex Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian to within ``1e-12`` absolute.
    max_sweeps : int
        Hard cap on full sweeps over the upper triangle.

    Returns
    -------
    Spectrum
        Sorted eigenvalues. Iteration stops once the off-diagonal Frobenius
        norm drops below ``1e-14`` times the initial Frobenius norm.

    Raises
    ------
    NonHermitianInput
        If ``m`` is not Hermitian within tolerance.
    NoConvergence
        If the sweep cap is hit first.
    """
    a = as_matrix(m)
    herm_res = hermiticity_residual(a)
    if not herm_res <= HERMITIAN_TOL:
        raise NonHermitianInput(f"max |m - m^H| = {herm_res:.3e} exceeds {HERMITIAN_TOL}")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]

    norm0 = float(np.linalg.norm(a))
    target = CONVERGENCE_RTOL * norm0
    # pairs below this cannot push the off-diagonal norm above target
    skip = target / n
    iu = np.triu_indices(n, 1)

    def off_norm():
        return float(np.sqrt(2.0 * np.sum(np.abs(a[iu]) ** 2)))

    sweeps = 0
    while off_norm() >= target and norm0 > 0.0:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"off-diagonal norm {off_norm():.3e} above {target:.3e} after {sweeps} sweeps"
            )
        upper = np.abs(np.triu(a, 1))
        rows, cols = np.nonzero(upper > skip)
        for p, q in zip(rows.tolist(), cols.tolist()):
            if abs(a[p, q]) > skip:
                _rotate(a, p, q)
        sweeps += 1

    residual = float(np.max(np.abs(a[iu]))) if n > 1 else 0.0
    return Spectrum(np.sort(a.diagonal().real), residual, sweeps)
