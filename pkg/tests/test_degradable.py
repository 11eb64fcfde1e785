"""Tests for the degradability decision pipeline on small channels."""

import math

import numpy as np
import pytest

from catcodes import (
    ChannelMatrixRep,
    NOISELESS,
    PauliChannel,
    choi_of_map,
    complementary,
    degradability_verdict,
    evaluate_family,
    kraus_from_pauli,
    make_family,
    natural_rep,
    solve_degrading,
)

TWO_PAULI = make_family("two_pauli")

# Environment relabeling between the complement's Kraus-index basis
# (identity, X, Z for a two-Pauli channel) and the basis used by the
# reference matrices below (X, Z, identity).
ENV_PERM = (1, 2, 0)


def reference_natural_rep(p: float) -> np.ndarray:
    """4x4 matrix of the two-Pauli channel on matrix units."""
    return np.array(
        [
            [1 - p / 2, 0, 0, p / 2],
            [0, 1 - 3 * p / 2, p / 2, 0],
            [0, p / 2, 1 - 3 * p / 2, 0],
            [p / 2, 0, 0, 1 - p / 2],
        ]
    )


def reference_complement_rep(p: float) -> np.ndarray:
    """9x4 matrix (transposed action) of the complement in X, Z, identity
    environment order, as a map from 2x2 matrix units to 3x3 matrix units."""
    a = math.sqrt(p * (1 - p) / 2)
    out = np.zeros((4, 9))
    out[0] = [p / 2, 0, 0, 0, p / 2, a, 0, a, 1 - p]
    out[1] = [0, -p / 2, a, p / 2, 0, 0, a, 0, 0]
    out[2] = [0, p / 2, a, -p / 2, 0, 0, a, 0, 0]
    out[3] = [p / 2, 0, 0, 0, p / 2, -a, 0, -a, 1 - p]
    return out


def reference_degrading_map(p: float) -> np.ndarray:
    """Degrading map for the two-Pauli channel in the same environment
    order, from the closed forms beta = sqrt(p/(2-2p)), gamma = p/(2-4p)."""
    b = math.sqrt(p / (2 - 2 * p))
    g = p / (2 - 4 * p)
    out = np.zeros((4, 9))
    out[0] = [p / 2, 0, 0, 0, p / 2, b, 0, b, 1 - p]
    out[1] = [0, -g, b, g, 0, 0, b, 0, 0]
    out[2] = [0, g, b, -g, 0, 0, b, 0, 0]
    out[3] = [p / 2, 0, 0, 0, p / 2, -b, 0, -b, 1 - p]
    return out


def env_reordered(matrix: np.ndarray) -> np.ndarray:
    """Reorder 9-dim (3x3 matrix-unit) indices from Kraus order to the
    reference order used above."""
    cols = [ENV_PERM[i // 3] * 3 + ENV_PERM[i % 3] for i in range(9)]
    out = np.asarray(matrix)
    if out.shape[-1] == 9:
        out = out[..., cols]
    if out.shape[0] == 9:
        out = out[cols, :]
    return out


class TestKrausFromPauli:
    def test_operator_counts(self):
        assert len(kraus_from_pauli(NOISELESS).ops) == 1
        assert len(kraus_from_pauli(evaluate_family(TWO_PAULI, 0.2)).ops) == 3
        full = PauliChannel(0.25, 0.25, 0.25, 0.25)
        assert len(kraus_from_pauli(full).ops) == 4

    def test_trace_preservation(self, channels20):
        for ch in channels20:
            k = kraus_from_pauli(ch)
            assert k.trace_preservation_residual() <= 1e-14


class TestNaturalRep:
    def test_identity_channel_is_identity_matrix(self):
        rep = natural_rep(kraus_from_pauli(NOISELESS))
        np.testing.assert_allclose(rep.matrix, np.eye(4), atol=1e-15)

    @pytest.mark.parametrize("p", [0.05, 0.2, 0.25, 0.5, 0.8])
    def test_two_pauli_matches_reference(self, p):
        rep = natural_rep(kraus_from_pauli(evaluate_family(TWO_PAULI, p)))
        np.testing.assert_allclose(rep.matrix, reference_natural_rep(p), atol=1e-12)

    def test_reconstructs_kraus_action(self, channels20):
        rng = np.random.default_rng(20260826)
        for ch in channels20[:4]:
            k = kraus_from_pauli(ch)
            rep = natural_rep(k)
            for _ in range(10):
                rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                np.testing.assert_allclose(
                    rep.apply(rho), k.apply(rho), atol=1e-12
                )


class TestComplementary:
    def test_single_kraus_gives_constant_map(self):
        comp = complementary(kraus_from_pauli(NOISELESS))
        rng = np.random.default_rng(7)
        for _ in range(5):
            rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            np.testing.assert_allclose(
                comp.apply(rho), np.trace(rho) * np.ones((1, 1)), atol=1e-12
            )

    @pytest.mark.parametrize("p", [0.25, 0.5])
    def test_two_pauli_matches_reference(self, p):
        comp = complementary(kraus_from_pauli(evaluate_family(TWO_PAULI, p)))
        rep = env_reordered(natural_rep(comp).matrix)
        np.testing.assert_allclose(rep, reference_complement_rep(p), atol=1e-12)

    def test_alpha_entry_at_half(self):
        comp = complementary(kraus_from_pauli(evaluate_family(TWO_PAULI, 0.5)))
        rep = env_reordered(natural_rep(comp).matrix)
        assert rep[0, 5] == pytest.approx(math.sqrt(0.5 * 0.5 / 2), abs=1e-12)
        assert rep[0, 5] == pytest.approx(0.3536, abs=5e-5)

    def test_complement_preserves_trace(self, channels20):
        for ch in channels20[:8]:
            comp = complementary(kraus_from_pauli(ch))
            assert comp.trace_preservation_residual() <= 1e-10


class TestSolveDegrading:
    def test_identity_channel_returns_complement(self):
        k = kraus_from_pauli(NOISELESS)
        n = natural_rep(k)
        nc = natural_rep(complementary(k))
        d, residual = solve_degrading(n, nc)
        assert residual <= 1e-12
        np.testing.assert_allclose(d.matrix, nc.matrix, atol=1e-12)

    def test_planted_solution_recovered(self):
        rng = np.random.default_rng(20260826)
        for _ in range(20):
            n_mat = rng.normal(size=(4, 4))
            n_mat += 4 * np.eye(4)  # keep it comfortably invertible
            d0 = rng.normal(size=(4, 9))
            n = ChannelMatrixRep(n_mat, 2, 2)
            nc = ChannelMatrixRep(n_mat @ d0, 2, 3)
            d, residual = solve_degrading(n, nc)
            assert residual <= 1e-10
            np.testing.assert_allclose(d.matrix, d0, atol=1e-10)

    def test_two_pauli_quarter_matches_closed_forms(self):
        k = kraus_from_pauli(evaluate_family(TWO_PAULI, 0.25))
        d, residual = solve_degrading(natural_rep(k), natural_rep(complementary(k)))
        assert residual <= 1e-10
        assert math.sqrt(0.25 / (2 - 2 * 0.25)) == pytest.approx(
            math.sqrt(1 / 6), abs=1e-15
        )
        assert 0.25 / (2 - 4 * 0.25) == pytest.approx(0.25, abs=1e-15)
        np.testing.assert_allclose(
            env_reordered(d.matrix), reference_degrading_map(0.25), atol=1e-10
        )

    def test_dimension_mismatch_rejected(self):
        n = ChannelMatrixRep(np.eye(4), 2, 2)
        bad = ChannelMatrixRep(np.eye(3), 0, 0)
        with pytest.raises(ValueError):
            solve_degrading(n, bad)


class TestChoi:
    def test_identity_map_is_unnormalized_bell_projector(self):
        choi = choi_of_map(natural_rep(kraus_from_pauli(NOISELESS)))
        eigs = np.sort(np.linalg.eigvalsh(choi))
        np.testing.assert_allclose(eigs, [0, 0, 0, 2], atol=1e-12)

    def test_cptp_maps_have_psd_choi(self, channels20):
        for ch in channels20:
            choi = choi_of_map(natural_rep(kraus_from_pauli(ch)))
            assert np.linalg.eigvalsh(choi).min() >= -1e-10

    def test_two_pauli_quarter_subblock(self):
        k = kraus_from_pauli(evaluate_family(TWO_PAULI, 0.25))
        d, _ = solve_degrading(natural_rep(k), natural_rep(complementary(k)))
        choi = choi_of_map(d)
        gamma = 0.25
        hits = np.argwhere(np.isclose(choi.real, -gamma, atol=1e-10))
        assert len(hits) > 0
        i, j = hits[0]
        block = choi[np.ix_([i, j], [i, j])].real
        np.testing.assert_allclose(
            block, [[0.125, -0.25], [-0.25, 0.125]], atol=1e-10
        )
        assert np.linalg.eigvalsh(choi).min() == pytest.approx(-0.125, abs=1e-9)


class TestVerdict:
    @pytest.mark.parametrize("p", [0.1, 0.25, 0.5, 0.75, 0.9])
    def test_two_pauli_not_degradable(self, p):
        verdict = degradability_verdict(
            kraus_from_pauli(evaluate_family(TWO_PAULI, p))
        )
        assert verdict.status == "not_degradable"
        assert verdict.min_choi_eigenvalue < -1e-3
        # At p = 1/2 the natural rep is singular and the degrading equation
        # is infeasible; elsewhere the unique solved map has a tiny residual.
        if p != 0.5:
            assert verdict.residual <= 1e-8

    @pytest.mark.parametrize("p_z", [0.05, 0.1, 0.3, 0.5])
    def test_dephasing_degradable(self, p_z):
        ch = PauliChannel(1 - p_z, 0.0, 0.0, p_z)
        verdict = degradability_verdict(kraus_from_pauli(ch))
        assert verdict.status == "degradable"
        assert verdict.min_choi_eigenvalue >= -1e-8

    def test_noiseless_degradable(self):
        assert degradability_verdict(kraus_from_pauli(NOISELESS)).status == "degradable"

    def test_record_is_json_serializable(self):
        import json

        verdict = degradability_verdict(
            kraus_from_pauli(evaluate_family(TWO_PAULI, 0.25))
        )
        record = verdict.to_record()
        text = json.dumps(record)
        assert "not_degradable" in text
