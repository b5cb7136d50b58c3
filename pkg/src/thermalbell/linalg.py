"""Dense symmetric eigensolvers: cyclic Jacobi and a closed-form 3x3 path."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, ParameterError

MAX_JACOBI_DIM = 4096


class SpectralDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _round_robin(n):
    """Yield the ``n - 1`` (or ``n``) rounds of a round-robin pairing of ``range(n)``.

    Each round is a pair of index arrays ``(p, q)`` with disjoint entries, and
    every unordered pair appears exactly once per sweep.
    """
    m = n + (n % 2)
    players = list(range(m))
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        yield np.array(p, dtype=int), np.array(q, dtype=int)
        players = [players[0], players[-1]] + players[1:-1]


def symmetric_eigendecomposition(m, *, tol=1e-12, max_sweeps=100) -> SpectralDecomposition:
    """Diagonalise a real symmetric matrix by cyclic Jacobi rotations.

    A sweep visits every off-diagonal pair once, in round-robin order so that
    the ``n/2`` rotations of one round act on disjoint rows and can be applied
    together.  Iteration stops once every off-diagonal magnitude is below
    ``tol`` times the Frobenius norm.

    Returns eigenvalues in ascending order with matching eigenvector columns.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_JACOBI_DIM:
        raise ParameterError(f"dimension {n} exceeds {MAX_JACOBI_DIM}")
    if np.max(np.abs(a - a.T), initial=0.0) > 1e-12 * max(1.0, np.abs(a).max(initial=0.0)):
        raise ParameterError("matrix is not symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    if n < 2:
        return SpectralDecomposition(np.diag(a).copy(), v)

    threshold = tol * np.linalg.norm(a)
    rounds = list(_round_robin(n))
    off = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if np.max(np.abs(a[off])) <= threshold:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            # tan of the rotation angle, 1 / (|th| + sqrt(th^2 + 1)) with
            # th = d / (2 apq) multiplied through so tiny apq cannot overflow
            d = a[q, q] - a[p, p]
            two_apq = 2.0 * apq
            t = np.sign(d) * two_apq / (np.abs(d) + np.hypot(d, two_apq))
            t[d == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = a[q, p] = 0.0

            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    else:
        if np.max(np.abs(a[off])) > threshold:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order], v[:, order])


def symmetric_eigvals_3x3(m) -> np.ndarray:
    """Eigenvalues of a real symmetric 3x3 matrix, descending.

    Uses the trigonometric solution of the characteristic cubic.  Near a
    repeated root the arccos argument approaches +-1 and loses digits, so
    that case is handed to the Jacobi solver instead.
    """
    a = np.asarray(m, dtype=float)
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(a))[::-1].copy()
    q = np.trace(a) / 3.0
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    r = np.linalg.det((a - q * np.eye(3)) / p) / 2.0
    if abs(r) > 1.0 - 1e-6:
        return symmetric_eigendecomposition(a).eigenvalues[::-1].copy()
    phi = math.acos(r) / 3.0
    e1 = q + 2.0 * p * math.cos(phi)
    e3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return np.array([e1, e2, e3])
