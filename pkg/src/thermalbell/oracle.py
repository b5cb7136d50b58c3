"""Brute-force reference: the full 2^N Hamiltonian, its Gibbs state and partial traces.

Nothing here uses the collective-spin structure, so it serves as an
independent check of :mod:`thermalbell.collective` and
:mod:`thermalbell.reduced`.  Only total ``S_z`` conservation is exploited,
to diagonalise block by block.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

import numpy as np

from .collective import ModelParams
from .errors import ParameterError
from .linalg import SpectralDecomposition, symmetric_eigendecomposition

MAX_ORACLE_QUBITS = 12


@dataclass(frozen=True)
class FullHamiltonian:
    n_qubits: int
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def magnetization(self) -> np.ndarray:
        """``2 S_z`` eigenvalue (sum of ``+-1``) of every computational basis state."""
        return _z_sum(self.n_qubits)


def _bits(n):
    idx = np.arange(2 ** n)
    # qubit 0 is the most significant bit, matching kron(q0, q1, ...)
    return (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1


def _z_sum(n):
    return (1 - 2 * _bits(n)).sum(axis=1)


def build_full_hamiltonian(params: ModelParams) -> FullHamiltonian:
    """``(J/4) sum_{i!=j} (XX + YY + Delta ZZ) + (B/2) sum_i Z`` in the computational basis."""
    n = params.n_qubits
    if n > MAX_ORACLE_QUBITS:
        raise ParameterError(f"oracle limited to N <= {MAX_ORACLE_QUBITS}, got {n}")
    j, delta, b = params.coupling, params.anisotropy, params.field
    dim = 2 ** n
    bits = _bits(n)
    zsum = _z_sum(n).astype(float)
    # sum_{i != j} z_i z_j = (sum z)^2 - N
    h = np.diag(0.25 * j * delta * (zsum ** 2 - n) + 0.5 * b * zsum)
    idx = np.arange(dim)
    for p in range(n):
        for q in range(p + 1, n):
            differ = bits[:, p] != bits[:, q]
            src = idx[differ]
            dst = src ^ ((1 << (n - 1 - p)) | (1 << (n - 1 - q)))
            # XX + YY maps |01> -> 2|10>; the ordered sum counts the pair twice
            h[dst, src] += j
    return FullHamiltonian(n, h)


def spin_squared(n_qubits: int) -> np.ndarray:
    """Total ``S^2`` as a dense matrix."""
    unit = build_full_hamiltonian(ModelParams(n_qubits, 1.0, 1.0, 0.0, 1.0)).matrix
    return unit + 0.75 * n_qubits * np.eye(2 ** n_qubits)


def block_eigendecomposition(h: FullHamiltonian, method: str = "lapack") -> SpectralDecomposition:
    """Diagonalise ``h`` one magnetization block at a time.

    ``method`` is ``"lapack"`` (``numpy.linalg.eigh``) or ``"jacobi"``.
    """
    if method == "lapack":
        solve = np.linalg.eigh
    elif method == "jacobi":
        solve = symmetric_eigendecomposition
    else:
        raise ParameterError(f"unknown eigensolver {method!r}")
    mag = h.magnetization()
    values = np.empty(h.dim)
    vectors = np.zeros((h.dim, h.dim))
    col = 0
    for m in np.unique(mag):
        members = np.flatnonzero(mag == m)
        w, v = solve(h.matrix[np.ix_(members, members)])
        size = len(members)
        values[col:col + size] = w
        vectors[members, col:col + size] = v
        col += size
    order = np.argsort(values, kind="stable")
    return SpectralDecomposition(values[order], vectors[:, order])


def thermal_state(h: FullHamiltonian, beta: float, method: str = "lapack") -> np.ndarray:
    """Gibbs state ``exp(-beta H) / Z`` with the ground energy shifted out."""
    if not (math.isfinite(beta) and beta > 0):
        raise ParameterError(f"beta must be positive and finite, got {beta!r}")
    w, v = block_eigendecomposition(h, method)
    p = np.exp(-beta * (w - w[0]))
    p /= p.sum()
    return (v * p) @ v.T


def thermal_partition_function(h: FullHamiltonian, beta: float, method: str = "lapack") -> float:
    """Unshifted ``tr exp(-beta H)``."""
    w, _ = block_eigendecomposition(h, method)
    return float(math.exp(-beta * w[0]) * np.exp(-beta * (w - w[0])).sum())


def partial_trace_to_pair(rho_full, qubit_i: int, qubit_j: int) -> np.ndarray:
    """Reduce an ``N``-qubit state to qubits ``i < j`` (4x4, basis ``|q_i q_j>``)."""
    rho_full = np.asarray(rho_full)
    dim = rho_full.shape[0]
    n = dim.bit_length() - 1
    if 2 ** n != dim or rho_full.shape != (dim, dim):
        raise ParameterError(f"expected a 2^N square matrix, got shape {rho_full.shape}")
    if not (0 <= qubit_i < qubit_j < n):
        raise IndexError(f"need 0 <= i < j < {n}, got ({qubit_i}, {qubit_j})")
    letters = string.ascii_letters
    rows = list(letters[:n])
    cols = list(letters[:n])
    cols[qubit_i], cols[qubit_j] = "Y", "Z"
    rows[qubit_i], rows[qubit_j] = "W", "X"
    spec = "".join(rows) + "".join(cols) + "->WXYZ"
    return np.einsum(spec, rho_full.reshape((2,) * (2 * n))).reshape(4, 4)


def oracle_expectations(params: ModelParams, method: str = "lapack") -> tuple[float, float, float]:
    """``<S_z>``, ``<S_z^2>`` and ``<S_x^2 + S_y^2>`` from the full Gibbs state."""
    h = build_full_hamiltonian(params)
    rho = thermal_state(h, params.inverse_temperature, method)
    sz = 0.5 * h.magnetization()
    diag = np.diag(rho)
    mean_sz = float(diag @ sz)
    mean_sz2 = float(diag @ sz ** 2)
    s2 = float(np.sum(rho * spin_squared(params.n_qubits)))
    return mean_sz, mean_sz2, s2 - mean_sz2


def oracle_pair_state(params: ModelParams, qubit_i=0, qubit_j=1, method="lapack") -> np.ndarray:
    h = build_full_hamiltonian(params)
    return partial_trace_to_pair(thermal_state(h, params.inverse_temperature, method), qubit_i, qubit_j)
