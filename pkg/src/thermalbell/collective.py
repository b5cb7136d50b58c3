"""Collective-spin solution of the all-to-all Heisenberg model.

The Hamiltonian ``J (Sx^2 + Sy^2 + Delta Sz^2) + B Sz`` is diagonal in the
total-spin basis ``|s, m>``.  Each spin ``s = N/2 - k`` occurs with
multiplicity ``N_k = C(N, k) - C(N, k - 1)``, so thermal averages reduce to
a double sum over ``(k, m)`` with at most ``(N/2 + 1)^2`` terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ParameterError

MAX_QUBITS = 20


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of one thermal state (``k_B = 1``).

    Parameters
    ----------
    n_qubits : int
        Number of qubits ``N >= 2``.
    coupling : float
        Exchange constant ``J``; positive is antiferromagnetic.
    anisotropy : float
        Dimensionless ``Delta`` multiplying the zz coupling.
    field : float
        Magnetic field ``B`` along z.
    inverse_temperature : float
        ``beta = 1 / T``, strictly positive and finite.
    """

    n_qubits: int
    coupling: float
    anisotropy: float
    field: float
    inverse_temperature: float

    def __post_init__(self):
        if isinstance(self.n_qubits, bool) or int(self.n_qubits) != self.n_qubits:
            raise ParameterError(f"n_qubits must be an integer, got {self.n_qubits!r}")
        object.__setattr__(self, "n_qubits", int(self.n_qubits))
        if self.n_qubits < 2:
            raise ParameterError(f"n_qubits must be >= 2, got {self.n_qubits}")
        if self.n_qubits > MAX_QUBITS:
            raise ParameterError(f"n_qubits must be <= {MAX_QUBITS}, got {self.n_qubits}")
        for name in ("coupling", "anisotropy", "field"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        beta = self.inverse_temperature
        if not (math.isfinite(beta) and beta > 0):
            raise ParameterError(f"inverse_temperature must be positive and finite, got {beta!r}")

    @classmethod
    def from_temperature(cls, n_qubits, coupling, anisotropy, field, temperature):
        if not (math.isfinite(temperature) and temperature > 0):
            raise ParameterError(f"temperature must be positive and finite, got {temperature!r}")
        return cls(n_qubits, coupling, anisotropy, field, 1.0 / temperature)

    @property
    def temperature(self) -> float:
        return 1.0 / self.inverse_temperature


class SectorLevel(NamedTuple):
    k: int
    degeneracy: int
    spin: float
    m_z: float
    energy: float


@dataclass(frozen=True)
class SectorTable:
    """All ``(s, m_z)`` levels of the collective Hamiltonian.

    Energies omit the constant dropped when rewriting the pair sum in terms
    of collective operators; it cancels in every observable.
    """

    n_qubits: int
    entries: tuple[SectorLevel, ...]
    ground_energy: float
    # column views used by the thermal sums
    _deg: np.ndarray = field(repr=False, compare=False)
    _spin: np.ndarray = field(repr=False, compare=False)
    _mz: np.ndarray = field(repr=False, compare=False)
    _energy: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_entries(cls, n_qubits, entries, ground_energy=None):
        entries = tuple(SectorLevel(*e) for e in entries)
        energy = np.array([e.energy for e in entries], dtype=float)
        if ground_energy is None:
            ground_energy = float(energy.min())
        return cls(
            n_qubits=n_qubits,
            entries=entries,
            ground_energy=float(ground_energy),
            _deg=np.array([e.degeneracy for e in entries], dtype=float),
            _spin=np.array([e.spin for e in entries], dtype=float),
            _mz=np.array([e.m_z for e in entries], dtype=float),
            _energy=energy,
        )

    def shifted(self, constant: float) -> "SectorTable":
        """Return a copy with ``constant`` added to every energy."""
        return SectorTable.from_entries(
            self.n_qubits,
            [e._replace(energy=e.energy + constant) for e in self.entries],
            self.ground_energy + constant,
        )

    @property
    def dimension(self) -> int:
        return sum(e.degeneracy for e in self.entries)

    def __len__(self):
        return len(self.entries)


def sector_degeneracy(n_qubits: int, k: int) -> int:
    """Multiplicity of total spin ``N/2 - k`` among ``N`` spin-1/2."""
    if k < 0 or 2 * k > n_qubits:
        raise ParameterError(f"sector index k={k} out of range for N={n_qubits}")
    lower = math.comb(n_qubits, k - 1) if k >= 1 else 0
    return math.comb(n_qubits, k) - lower


def level_energy(params: ModelParams, spin: float, m_z: float) -> float:
    j, delta, b = params.coupling, params.anisotropy, params.field
    return j * spin * (spin + 1.0) + j * (delta - 1.0) * m_z * m_z + b * m_z


def build_sector_table(params: ModelParams) -> SectorTable:
    n = params.n_qubits
    entries = []
    for k in range(n // 2 + 1):
        deg = sector_degeneracy(n, k)
        spin = n / 2 - k
        for m in range(n - 2 * k + 1):
            m_z = m - n / 2 + k
            entries.append(SectorLevel(k, deg, spin, m_z, level_energy(params, spin, m_z)))
    return SectorTable.from_entries(n, entries)


def boltzmann_weights(table: SectorTable, beta: float) -> np.ndarray:
    """Unnormalised ``N_k exp(-beta (E - E_0))`` for every table entry."""
    if not (math.isfinite(beta) and beta > 0):
        raise ParameterError(f"beta must be positive and finite, got {beta!r}")
    excitation = table._energy - table.ground_energy
    return table._deg * np.exp(-beta * excitation)


def _average(weights, values, z):
    # exactly rounded so that mirrored +-m_z terms cancel exactly
    return math.fsum(weights * values) / z


def partition_function(table: SectorTable, beta: float) -> float:
    """Ground-shifted partition function ``sum N_k exp(-beta (E - E_0))``.

    Multiply by ``exp(-beta * table.ground_energy)`` for the unshifted value,
    or use :func:`unshifted_partition_function`.
    """
    return math.fsum(boltzmann_weights(table, beta))


def unshifted_partition_function(table: SectorTable, beta: float) -> float:
    return partition_function(table, beta) * math.exp(-beta * table.ground_energy)


def expectation_sz_moments(table: SectorTable, beta: float) -> tuple[float, float]:
    """Thermal ``<S_z>`` and ``<S_z^2>``."""
    w = boltzmann_weights(table, beta)
    z = math.fsum(w)
    mz = table._mz
    return _average(w, mz, z), _average(w, mz * mz, z)


def expectation_transverse(table: SectorTable, beta: float) -> float:
    """Thermal ``<S_x^2 + S_y^2> = <s(s+1) - m_z^2>``."""
    w = boltzmann_weights(table, beta)
    s = table._spin
    return _average(w, s * (s + 1.0) - table._mz ** 2, math.fsum(w))


def thermal_expectation(table: SectorTable, beta: float, func) -> float:
    """Thermal average of an arbitrary function of ``S_z`` (vectorised ``func``)."""
    w = boltzmann_weights(table, beta)
    return _average(w, np.asarray(func(table._mz), dtype=float), math.fsum(w))
