import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thermalbell.collective import (
    ModelParams,
    build_sector_table,
    expectation_sz_moments,
    expectation_transverse,
    partition_function,
    sector_degeneracy,
    thermal_expectation,
    unshifted_partition_function,
)
from thermalbell.errors import ParameterError
from thermalbell.oracle import build_full_hamiltonian, oracle_expectations, spin_squared


def sectors(table):
    return sorted({(e.k, e.degeneracy, e.spin) for e in table.entries})


def test_two_qubits_split_into_triplet_and_singlet():
    table = build_sector_table(ModelParams(2, 1.0, 1.0, 0.0, 1.0))
    assert sectors(table) == [(0, 1, 1.0), (1, 1, 0.0)]
    assert sorted(e.m_z for e in table.entries if e.k == 0) == [-1.0, 0.0, 1.0]
    assert [e.m_z for e in table.entries if e.k == 1] == [0.0]


def test_three_qubits_dimension_count():
    table = build_sector_table(ModelParams(3, 1.0, 1.0, 0.0, 1.0))
    assert sectors(table) == [(0, 1, 1.5), (1, 2, 0.5)]
    assert table.dimension == 8


def test_six_qubit_degeneracies_match_brute_force_spin_squared():
    # count S^2 eigenspaces of the full 64-dim operator: multiplicity = N_k (2s + 1)
    evals = np.linalg.eigvalsh(spin_squared(6))
    s_values = np.round((-1 + np.sqrt(1 + 4 * evals)) / 2, 6)
    brute = {s: int(np.sum(s_values == s)) // int(2 * s + 1) for s in np.unique(s_values)}
    table = build_sector_table(ModelParams(6, 1.0, 1.0, 0.0, 1.0))
    degs = {e.spin: e.degeneracy for e in table.entries}
    assert [degs[s] for s in (3.0, 2.0, 1.0, 0.0)] == [1, 5, 9, 5]
    assert {float(s): d for s, d in brute.items()} == degs


@pytest.mark.parametrize("n", range(2, 21))
def test_dimension_closure(n):
    table = build_sector_table(ModelParams(n, 1.0, 0.3, 0.2, 1.0))
    assert table.dimension == 2 ** n
    assert all(e.degeneracy >= 1 for e in table.entries)
    assert {e.k for e in table.entries} == set(range(n // 2 + 1))


def test_magnetization_index_matches_summation_variable():
    table = build_sector_table(ModelParams(5, 1.0, 1.0, 0.0, 1.0))
    for k in range(3):
        mz = sorted(e.m_z for e in table.entries if e.k == k)
        assert mz == [m - 5 / 2 + k for m in range(5 - 2 * k + 1)]


def test_sector_degeneracy_uses_zero_below_k0():
    assert sector_degeneracy(4, 0) == 1
    assert sector_degeneracy(4, 2) == math.comb(4, 2) - math.comb(4, 1)


@pytest.mark.parametrize("kwargs", [
    dict(n_qubits=1, coupling=1, anisotropy=1, field=0, inverse_temperature=1),
    dict(n_qubits=21, coupling=1, anisotropy=1, field=0, inverse_temperature=1),
    dict(n_qubits=2, coupling=1, anisotropy=1, field=0, inverse_temperature=0),
    dict(n_qubits=2, coupling=1, anisotropy=1, field=0, inverse_temperature=math.inf),
    dict(n_qubits=2.5, coupling=1, anisotropy=1, field=0, inverse_temperature=1),
])
def test_invalid_params_rejected(kwargs):
    with pytest.raises(ParameterError):
        ModelParams(**kwargs)


def _oracle_z_eq10(params):
    # the full Hamiltonian differs from the collective form by -J (2 + Delta) N / 4
    h = build_full_hamiltonian(params).matrix
    const = -params.coupling * (2 + params.anisotropy) * params.n_qubits / 4
    beta = params.inverse_temperature
    return np.sum(np.exp(-beta * (np.linalg.eigvalsh(h) - const)))


def test_partition_function_two_qubits():
    p = ModelParams(2, 1.0, 1.0, 0.0, 1.0)
    z = unshifted_partition_function(build_sector_table(p), 1.0)
    assert z == pytest.approx(3 * math.exp(-2) + 1, rel=1e-14)
    assert z == pytest.approx(1.4060059, abs=1e-7)
    assert z == pytest.approx(_oracle_z_eq10(p), rel=1e-13)


def test_partition_function_two_qubits_with_field():
    p = ModelParams(2, 1.0, 1.0, 2.0, 1.0)
    z = unshifted_partition_function(build_sector_table(p), 1.0)
    assert z == pytest.approx(math.exp(-2) * (math.exp(2) + math.exp(-2) + 1) + 1, rel=1e-14)
    assert z == pytest.approx(_oracle_z_eq10(p), rel=1e-13)


@pytest.mark.parametrize("n", [2, 3, 7, 12])
def test_high_temperature_partition_function_counts_states(n):
    p = ModelParams(n, 1.3, -0.4, 0.8, 1e-8)
    z = unshifted_partition_function(build_sector_table(p), 1e-8)
    assert z == pytest.approx(2 ** n, rel=1e-6)


def test_shifted_partition_function_is_one_at_zero_temperature_limit():
    table = build_sector_table(ModelParams(4, 1.0, 1.0, 0.0, 1.0))
    # nondegenerate singlet ground manifold has N_k = 2 for N = 4
    assert partition_function(table, 200.0) == pytest.approx(2.0)


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_zero_field_gives_zero_magnetization(n):
    table = build_sector_table(ModelParams(n, -0.7, 1.4, 0.0, 2.0))
    assert expectation_sz_moments(table, 2.0)[0] == 0.0


def test_infinite_temperature_moments_two_qubits():
    table = build_sector_table(ModelParams(2, 1.0, 1.0, 0.0, 1.0))
    mz, mz2 = expectation_sz_moments(table, 1e-12)
    assert mz2 == pytest.approx(0.5, abs=1e-10)
    assert expectation_transverse(table, 1e-12) == pytest.approx(1.0, abs=1e-10)


def test_singlet_ground_state_has_no_transverse_spin():
    table = build_sector_table(ModelParams(2, 1.0, 1.0, 0.0, 1.0))
    assert expectation_transverse(table, 60.0) == pytest.approx(0.0, abs=1e-20)


@pytest.mark.parametrize("params", [
    ModelParams(2, 1.0, 1.0, 2.0, 2.0),
    ModelParams(3, -1.0, 0.0, 0.0, 1.0),
])
def test_moments_match_oracle(params):
    table = build_sector_table(params)
    beta = params.inverse_temperature
    mz, mz2 = expectation_sz_moments(table, beta)
    got = (mz, mz2, expectation_transverse(table, beta))
    assert np.allclose(got, oracle_expectations(params), rtol=0, atol=1e-12)


def test_moments_match_oracle_random():
    rng = np.random.default_rng(11)
    for n in range(2, 11):
        for _ in range(50):
            p = ModelParams(n, rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-3, 3), rng.uniform(0.05, 30))
            table = build_sector_table(p)
            mz, mz2 = expectation_sz_moments(table, p.inverse_temperature)
            got = (mz, mz2, expectation_transverse(table, p.inverse_temperature))
            assert np.allclose(got, oracle_expectations(p), rtol=0, atol=1e-10)


def test_shift_independence():
    p = ModelParams(6, -1.2, 0.4, 0.9, 3.0)
    table = build_sector_table(p)
    shifted = table.shifted(7.3)
    beta = p.inverse_temperature
    for f in (expectation_sz_moments, expectation_transverse, partition_function):
        assert np.allclose(f(shifted, beta), f(table, beta), rtol=1e-13, atol=0)


def test_large_beta_does_not_overflow():
    table = build_sector_table(ModelParams(20, 3.0, -2.0, 3.0, 1000.0))
    mz, mz2 = expectation_sz_moments(table, 1000.0)
    assert math.isfinite(mz) and math.isfinite(mz2)


def test_arbitrary_function_of_sz():
    p = ModelParams(4, 1.0, 0.5, 0.3, 1.5)
    table = build_sector_table(p)
    mz, mz2 = expectation_sz_moments(table, 1.5)
    assert thermal_expectation(table, 1.5, lambda m: m) == pytest.approx(mz)
    assert thermal_expectation(table, 1.5, lambda m: m ** 2) == pytest.approx(mz2)


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(2, 20),
    j=st.floats(-3, 3),
    delta=st.floats(-2, 2),
    b=st.floats(-3, 3),
    beta=st.floats(1e-3, 50),
)
def test_moments_are_physical(n, j, delta, b, beta):
    table = build_sector_table(ModelParams(n, j, delta, b, beta))
    mz, mz2 = expectation_sz_moments(table, beta)
    assert abs(mz) <= n / 2 + 1e-12
    assert mz * mz <= mz2 + 1e-9
    assert 0 <= expectation_transverse(table, beta) <= n / 2 * (n / 2 + 1) + 1e-9
