import numpy as np
import pytest

from seqwitness.measurement import BadSharpness, averaged_channel, shrink_factor
from seqwitness.qmath import (
    bell_psi_plus,
    hermitian_eigs,
    ket_density,
    maximally_mixed,
    min_eigenvalue,
    partial_transpose,
    pure_entangled_state,
)
from seqwitness.witness import (
    BadSchedule,
    bell_witness,
    bell_witness_unsharp,
    sample_separable_states,
    stage_witness_value,
    witness_expectation,
)

from seqwitness.qmath import NotHermitian


class TestBellWitness:
    def test_spectrum(self):
        vals, _ = hermitian_eigs(bell_witness())
        assert np.allclose(vals, [-0.5, 0.5, 0.5, 0.5], atol=1e-14)

    def test_bell_state_value(self):
        assert abs(witness_expectation(bell_witness(), bell_psi_plus()) + 0.5) <= 1e-14

    def test_maximally_mixed_value(self):
        assert abs(witness_expectation(bell_witness(), maximally_mixed()) - 0.25) <= 1e-14

    def test_product_state_value(self):
        ket = np.zeros(4, dtype=complex)
        ket[0] = 1.0  # |00>
        assert abs(witness_expectation(bell_witness(), ket_density(ket)) - 0.5) <= 1e-14


class TestUnsharpWitness:
    def test_sharp_limit(self):
        assert np.array_equal(bell_witness_unsharp(1.0), bell_witness())

    def test_bell_value_linear_in_sharpness(self):
        for lam in np.linspace(0.05, 1.0, 25):
            value = witness_expectation(bell_witness_unsharp(lam), bell_psi_plus())
            assert abs(value - 0.25 * (1 - 3 * lam)) <= 1e-14

    def test_zero_at_first_threshold(self):
        value = witness_expectation(bell_witness_unsharp(1 / 3), bell_psi_plus())
        assert abs(value) <= 1e-15

    def test_near_zero_at_second_threshold(self):
        rho = averaged_channel(bell_psi_plus(), 1 / 3)
        value = witness_expectation(bell_witness_unsharp(0.3465), rho)
        assert abs(value) <= 1e-4

    def test_bad_sharpness(self):
        with pytest.raises(BadSharpness):
            bell_witness_unsharp(0.0)

    def test_rejects_non_hermitian_witness(self):
        bad = bell_witness().astype(complex)
        bad[0, 1] = 1e-3
        with pytest.raises(NotHermitian):
            witness_expectation(bad, bell_psi_plus())


class TestStageWitnessValue:
    def test_single_stage_maximal(self):
        for lam in np.linspace(0.05, 1.0, 15):
            assert abs(stage_witness_value(0.5, [lam]) - 0.25 * (1 - 3 * lam)) <= 1e-15

    def test_single_stage_general(self):
        for ab in (0.0, 0.1, 0.31, 0.5):
            for lam in (0.2, 0.7, 1.0):
                expected = 0.25 * (1 - (1 + 4 * ab) * lam)
                assert abs(stage_witness_value(ab, [lam]) - expected) <= 1e-15

    def test_two_stages_closed_form(self):
        # 1/4 [1 - (1 + 2 sqrt(1-lam1^2)) lam2] for the maximally entangled start
        for lam1, lam2 in [(1 / 3, 0.3465), (0.4, 0.5), (0.5, 0.9)]:
            expected = 0.25 * (1 - (1 + 2 * np.sqrt(1 - lam1**2)) * lam2)
            assert abs(stage_witness_value(0.5, [lam1, lam2]) - expected) <= 1e-15

    def test_matches_matrix_simulation(self, rng):
        for _ in range(100):
            ab = rng.uniform(0, 0.5)
            n = int(rng.integers(1, 8))
            schedule = rng.uniform(0.05, 1.0, size=n)
            a2 = (1 + np.sqrt(1 - 4 * ab * ab)) / 2
            rho = pure_entangled_state(a2)
            for lam in schedule[:-1]:
                rho = averaged_channel(rho, lam)
            simulated = witness_expectation(bell_witness_unsharp(schedule[-1]), rho)
            assert abs(stage_witness_value(ab, schedule) - simulated) <= 1e-12

    def test_strictly_decreasing_in_final_sharpness(self):
        prefix = [0.4, 0.45]
        values = [stage_witness_value(0.3, prefix + [lam]) for lam in np.linspace(0.1, 1.0, 40)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_zero_exactly_at_threshold_product(self):
        ab = 0.42
        prefix = [0.5, 0.6]
        attenuation = shrink_factor(0.5) * shrink_factor(0.6)
        lam_n = 1.0 / ((1 + 4 * ab) * attenuation)
        assert lam_n <= 1.0
        assert abs(stage_witness_value(ab, prefix + [lam_n])) <= 1e-12

    def test_bad_inputs(self):
        with pytest.raises(BadSchedule):
            stage_witness_value(0.6, [0.5])
        with pytest.raises(BadSchedule):
            stage_witness_value(0.3, [])
        with pytest.raises(BadSchedule):
            stage_witness_value(0.3, [0.5, 1.2])


class TestSeparableSampler:
    def test_deterministic(self):
        a = sample_separable_states(10, seed=7)
        b = sample_separable_states(10, seed=7)
        assert np.array_equal(a, b)
        c = sample_separable_states(10, seed=8)
        assert not np.array_equal(a, c)

    def test_samples_are_states(self):
        states = sample_separable_states(100, seed=3)
        for rho in states:
            assert abs(np.trace(rho) - 1) <= 1e-12
            assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
            assert min_eigenvalue(rho) >= -1e-12

    def test_samples_are_ppt(self):
        states = sample_separable_states(10_000, seed=11)
        pt = states.reshape(-1, 2, 2, 2, 2).transpose(0, 3, 2, 1, 4).reshape(-1, 4, 4)
        min_eigs = np.linalg.eigvalsh(pt)[:, 0]
        assert min_eigs.min() >= -1e-10

    def test_witness_nonnegative_on_samples(self):
        states = sample_separable_states(10_000, seed=11)
        w = bell_witness()
        values = np.einsum("ij,nji->n", w, states).real
        assert values.min() >= -1e-10

    def test_invalid_count(self):
        with pytest.raises(ValueError):
            sample_separable_states(0, seed=1)


def test_sharp_witness_certifies_bell_state_ppt_consistency():
    # the witness and the PPT criterion agree on the canonical endpoints
    assert witness_expectation(bell_witness(), bell_psi_plus()) < 0
    assert min_eigenvalue(partial_transpose(bell_psi_plus(), "alice")) < 0
    assert witness_expectation(bell_witness(), maximally_mixed()) >= 0
    assert min_eigenvalue(partial_transpose(maximally_mixed(), "alice")) >= 0
