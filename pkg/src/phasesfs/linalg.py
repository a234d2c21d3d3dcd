"""
Dense real/complex linear-algebra kernels shared by the rest of the package.

Every matrix inverse appearing in phase-type formulas is realised as an LU
factorisation followed by a solve.
"""

import warnings
from typing import Callable

import numpy as np
from scipy import linalg as sla

#: Pivots smaller than this fraction of the largest absolute entry are treated as zero.
SINGULAR_RTOL = 1e-12


class SingularMatrix(np.linalg.LinAlgError):
    """Raised when a matrix is (numerically) singular."""


def _as_square(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def lu_factor(A):
    """
    LU-factorise ``A`` with partial pivoting and reject near-singular input.

    :param A: Square real or complex matrix.
    :return: Factorisation usable with :func:`lu_solve`.
    :raises SingularMatrix: if a pivot is below ``SINGULAR_RTOL`` times the matrix scale.
    """
    A = _as_square(A)
    scale = np.max(np.abs(A)) if A.size else 0.0
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    with warnings.catch_warnings():
        # exactly singular input is reported through SingularMatrix below
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=False)
    if np.min(np.abs(np.diag(lu))) <= SINGULAR_RTOL * scale:
        raise SingularMatrix("pivot below singularity tolerance")
    return lu, piv


def lu_solve(factor, B) -> np.ndarray:
    return sla.lu_solve(factor, B, check_finite=False)


def solve(A, B) -> np.ndarray:
    """
    Solve ``A X = B``.

    The scalar kind of the result follows numpy promotion, so a complex ``A``
    or ``B`` gives a complex ``X``.
    """
    B = np.asarray(B)
    return lu_solve(lu_factor(A), B)


def solve_left(b, A) -> np.ndarray:
    """Solve the row-vector system ``x A = b``."""
    A = _as_square(A)
    return solve(A.T, np.asarray(b).T).T


def inv(A) -> np.ndarray:
    """Explicit inverse, reserved for the Green matrix which is reused many times."""
    A = _as_square(A)
    return solve(A, np.eye(A.shape[0], dtype=A.dtype))


def matrix_exponential(S, t: float = 1.0) -> np.ndarray:
    """
    Return ``exp(S t)``.

    Uses scaling-and-squaring with a Pade approximant (``scipy.linalg.expm``).
    """
    S = _as_square(S)
    if t < 0:
        raise ValueError("t must be nonnegative")
    return sla.expm(S * t)


def matrix_power(A, k: int) -> np.ndarray:
    """Integer power of a square matrix by repeated squaring."""
    return np.linalg.matrix_power(_as_square(A), k)


def resolvent_derivative(V, U_of_z: Callable, z: float, dU_of_z: Callable = None, h: float = 1e-6) -> np.ndarray:
    """
    Derivative of ``(V + U(z))^{-1}`` with respect to the scalar ``z``.

    Evaluated via the identity ``-(V+U)^{-1} U'(z) (V+U)^{-1}``. If ``dU_of_z``
    is not supplied, ``U'(z)`` is taken from a central difference of ``U_of_z``.

    :param V: Constant matrix.
    :param U_of_z: Callable returning ``U(z)``.
    :param z: Evaluation point.
    :param dU_of_z: Optional callable returning ``U'(z)`` exactly.
    :param h: Step for the central difference of ``U`` when ``dU_of_z`` is missing.
    """
    V = np.asarray(V)
    U = np.asarray(U_of_z(z))
    if dU_of_z is not None:
        dU = np.asarray(dU_of_z(z))
    else:
        dU = (np.asarray(U_of_z(z + h)) - np.asarray(U_of_z(z - h))) / (2 * h)
    if not np.any(dU):
        return np.zeros_like(V + U, dtype=np.result_type(V, U, float))
    factor = lu_factor(V + U)
    right = lu_solve(factor, np.eye(U.shape[0]))
    return -lu_solve(factor, dU @ right)


# alias matching the operation name used in tests and docs
resolvent_derivative_check = resolvent_derivative


def spectral_radius(A) -> float:
    A = _as_square(A)
    if A.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(A))))
