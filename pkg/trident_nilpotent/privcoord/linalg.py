"""
Small dense inversion: partial-pivot Gauss-Jordan and the lower block-triangular shortcut
"""

import numpy as np

from ..core.config import CFG
from ..core.errors import SingularFrameError


def gauss_jordan_inverse(matrix: np.ndarray, tol: float = CFG.rank_tol) -> np.ndarray:
    """
    Inverse by Gauss-Jordan elimination with partial pivoting

    Raises:
        SingularFrameError: a pivot falls below ``tol`` times the largest entry
    """
    a = np.array(matrix, dtype=float)
    n, m = a.shape
    if n != m:
        raise SingularFrameError(f"cannot invert a {n}x{m} matrix")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        raise SingularFrameError("cannot invert the zero matrix")
    augmented = np.hstack([a, np.eye(n)])
    for k in range(n):
        pivot = k + int(np.argmax(np.abs(augmented[k:, k])))
        if abs(augmented[pivot, k]) <= tol * scale:
            raise SingularFrameError(f"singular matrix: no pivot in column {k + 1}")
        if pivot != k:
            augmented[[k, pivot]] = augmented[[pivot, k]]
        augmented[k] /= augmented[k, k]
        for i in range(n):
            if i != k and augmented[i, k] != 0.0:
                augmented[i] -= augmented[i, k] * augmented[k]
    return augmented[:, n:]


def has_zero_upper_right(matrix: np.ndarray, split: int, tol: float = 0.0) -> bool:
    return bool(np.all(np.abs(np.asarray(matrix)[:split, split:]) <= tol))


def block_lower_inverse(matrix: np.ndarray, split: int, tol: float = CFG.rank_tol) -> np.ndarray:
    """
    Inverse of G = [[P, 0], [A, B]] as [[P^-1, 0], [-B^-1 A P^-1, B^-1]]

    When P is exactly the identity the upper-left block of the result is the
    identity bit for bit.
    """
    g = np.asarray(matrix, dtype=float)
    if not has_zero_upper_right(g, split):
        raise SingularFrameError("upper-right block is not zero")
    n = g.shape[0]
    P, A, B = g[:split, :split], g[split:, :split], g[split:, split:]
    P_inv = np.eye(split) if np.array_equal(P, np.eye(split)) else gauss_jordan_inverse(P, tol)
    B_inv = gauss_jordan_inverse(B, tol)
    inverse = np.zeros((n, n))
    inverse[:split, :split] = P_inv
    inverse[split:, split:] = B_inv
    inverse[split:, :split] = -B_inv @ A @ P_inv
    return inverse
