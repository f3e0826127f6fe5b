import math

import numpy as np
import pytest

from polyrad import (
    EnumerationBudgetError,
    MatrixFamily,
    build_cyclic_root,
    enumerate_candidates,
    make_candidate,
    normalize_family,
    restart_product,
    spectral_radius,
    word_matrix,
)
from polyrad.candidates import RestartFailedError
from polyrad.matrices import MatrixError

from conftest import brute_force_rates

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


class TestEnumeration:
    def test_single_matrix(self):
        fam = MatrixFamily([np.diag([3.0, 1.0])])
        cand = enumerate_candidates(fam, 3, "max")
        assert cand.word == (1,)
        assert cand.rho_per_step == pytest.approx(3.0)

    def test_known_jsr_candidate(self, example_pair_jsr):
        cand = enumerate_candidates(example_pair_jsr, 4, "max")
        assert cand.word == (2, 1)
        # Known averaged radius sqrt(9/10) * golden mean.
        assert cand.rho_per_step == pytest.approx(
            math.sqrt(0.9) * GOLDEN, abs=1e-12)

    def test_known_lsr_candidate(self, example_pair_lsr):
        cand = enumerate_candidates(example_pair_lsr, 8, "min")
        assert cand.word == (2, 1, 2, 1, 1, 2, 1, 1)
        assert cand.rho_per_step == pytest.approx(6.009313489, abs=1e-8)

    def test_brackets_brute_force(self):
        rng = np.random.default_rng(17)
        fam = MatrixFamily([rng.random((3, 3)) for _ in range(2)])
        hi, lo = brute_force_rates(fam, 5)
        cmax = enumerate_candidates(fam, 5, "max")
        cmin = enumerate_candidates(fam, 5, "min")
        assert cmax.rho_per_step == pytest.approx(hi, rel=1e-10)
        assert cmin.rho_per_step == pytest.approx(lo, rel=1e-10)

    def test_nilpotent_short_circuits_min(self):
        N = np.array([[0.0, 1.0], [0.0, 0.0]])
        fam = MatrixFamily([N, np.eye(2)])
        cand = enumerate_candidates(fam, 3, "min")
        assert cand.rho == 0.0

    def test_budget_enforced(self):
        fam = MatrixFamily([np.eye(2), np.eye(2)])
        with pytest.raises(EnumerationBudgetError):
            enumerate_candidates(fam, 10, "max", budget=100)

    def test_candidate_word_is_primitive_and_canonical(self):
        fam = MatrixFamily([np.diag([2.0, 1.0]), np.diag([1.0, 2.0])])
        cand = enumerate_candidates(fam, 4, "max")
        assert len(cand.word) == 1

    def test_bad_sense(self):
        with pytest.raises(ValueError):
            enumerate_candidates(MatrixFamily([np.eye(2)]), 2, "best")


class TestNormalization:
    def test_identity_scale(self):
        fam = MatrixFamily([np.diag([2.0, 1.0])])
        assert np.allclose(normalize_family(fam, 1.0).matrix(1),
                           fam.matrix(1))

    def test_candidate_product_unit_radius(self, example_pair_jsr):
        cand = enumerate_candidates(example_pair_jsr, 2, "max")
        scaled = normalize_family(example_pair_jsr, cand.rho_per_step)
        assert spectral_radius(word_matrix(scaled, cand.word)) == pytest.approx(
            1.0, abs=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(MatrixError):
            normalize_family(MatrixFamily([np.eye(2)]), 0.0)


class TestCyclicRoot:
    def test_root_vertices_of_known_pair(self, example_pair_jsr):
        cand = enumerate_candidates(example_pair_jsr, 2, "max")
        scaled = normalize_family(example_pair_jsr, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=True)
        assert len(root.vertices) == 2
        v1 = root.vertices[0] / root.vertices[0][0]
        # Known root vertex v_1 = (1, (sqrt(5)-1)/2) up to normalization.
        assert v1[1] == pytest.approx((math.sqrt(5.0) - 1.0) / 2.0, abs=1e-10)
        # The successor vertex (0.586318522, 0.948683298).
        v2 = root.vertices[1] * (1.0 / root.vertices[0][0])
        assert v2 == pytest.approx(
            np.array([0.586318522, 0.948683298]), abs=1e-8)

    def test_chain_consistency(self, example_pair_lsr):
        cand = enumerate_candidates(example_pair_lsr, 8, "min")
        scaled = normalize_family(example_pair_lsr, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=True)
        n = len(cand.word)
        assert len(root.vertices) == n
        for i in range(1, n):
            expected = scaled.matrix(cand.word[i - 1]) @ root.vertices[i - 1]
            assert np.allclose(root.vertices[i], expected, atol=1e-12)

    def test_duals_pair_to_one(self, example_pair_lsr):
        cand = enumerate_candidates(example_pair_lsr, 8, "min")
        scaled = normalize_family(example_pair_lsr, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=True)
        for dual, vertex in zip(root.duals, root.vertices):
            assert float(dual @ vertex) == pytest.approx(1.0, abs=1e-10)

    def test_single_matrix_root(self):
        fam = MatrixFamily([np.diag([2.0, 1.0])])
        cand = enumerate_candidates(fam, 1, "max")
        scaled = normalize_family(fam, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=False)
        assert len(root.vertices) == 1
        assert root.duals is None


class TestRestart:
    def test_restart_improves_candidate(self):
        # Both generators alone have radius 1, but A_1 A_2 has averaged
        # radius equal to the golden mean, so a violation at the root of
        # the length-1 candidate must produce the length-2 word.
        A1 = np.array([[1.0, 1.0], [0.0, 1.0]])
        A2 = np.array([[1.0, 0.0], [1.0, 1.0]])
        fam = MatrixFamily([A1, A2])
        cand = enumerate_candidates(fam, 1, "max")
        assert cand.word == (1,)
        scaled = normalize_family(fam, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=True)
        better = restart_product(fam, cand, root, (1, (2,)), "max")
        assert better.rho_per_step > cand.rho_per_step
        exhaustive = enumerate_candidates(fam, 2, "max")
        assert better.rho_per_step <= exhaustive.rho_per_step + 1e-12

    def test_restart_requires_improvement(self, example_pair_jsr):
        cand = enumerate_candidates(example_pair_jsr, 2, "max")
        scaled = normalize_family(example_pair_jsr, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=True)
        # The candidate is already optimal; no restart can improve on it.
        with pytest.raises(RestartFailedError):
            restart_product(example_pair_jsr, cand, root, (1, (1,)), "max",
                            r_max=10)

    def test_empty_path_rejected(self, example_pair_jsr):
        cand = enumerate_candidates(example_pair_jsr, 2, "max")
        scaled = normalize_family(example_pair_jsr, cand.rho_per_step)
        root = build_cyclic_root(scaled, cand, with_duals=True)
        with pytest.raises(RestartFailedError):
            restart_product(example_pair_jsr, cand, root, (1, ()), "max")


class TestMakeCandidate:
    def test_canonicalizes(self, example_pair_jsr):
        a = make_candidate(example_pair_jsr, (2, 1))
        b = make_candidate(example_pair_jsr, (1, 2))
        assert a.word == b.word
        assert a.rho == pytest.approx(b.rho, rel=1e-12)

    def test_power_reduced(self, example_pair_jsr):
        a = make_candidate(example_pair_jsr, (2, 1, 2, 1))
        assert len(a.word) == 2
