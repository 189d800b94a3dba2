import numpy as np
import pytest

from robwit import certify, maps, states, witnesses
from robwit.linalg import min_eigenvalue


@pytest.fixture(scope="module")
def canonical_witness():
    return witnesses.choi(maps.phi_u(1, maps.canonical_u0(1)))


class TestDetect:
    def test_ppt_state(self, canonical_witness):
        state = states.ppt_entangled_state(1, canonical_witness)
        assert certify.detect(canonical_witness, state) == pytest.approx(-1 / 320, abs=1e-12)

    def test_maximally_mixed(self, canonical_witness):
        mixed = states.DensityOperator(np.eye(16, dtype=complex) / 16, 4, "mixed")
        assert certify.detect(canonical_witness, mixed) == pytest.approx(1 / 16, abs=1e-12)

    def test_maximally_entangled(self, canonical_witness):
        plus = states.DensityOperator(witnesses.max_entangled(4), 4, "p+")
        assert certify.detect(canonical_witness, plus) == pytest.approx(-1 / 4, abs=1e-12)

    def test_dimension_mismatch(self, canonical_witness):
        small = states.DensityOperator(np.eye(4, dtype=complex) / 4, 2, "small")
        with pytest.raises(ValueError, match="mismatch"):
            certify.detect(canonical_witness, small)


class TestPositivity:
    def test_canonical(self):
        report = certify.verify_positivity(maps.phi_u(1, maps.canonical_u0(1)), trials=300, seed=1)
        assert report.passed

    def test_random_u_n2(self):
        u = maps.random_antisymmetric_unitary(2, seed=2, mode="complex-unitary")
        report = certify.verify_positivity(maps.phi_u(2, u), trials=200, seed=3)
        assert report.passed

    def test_conjugated(self):
        m = maps.conjugated_phi(
            1, maps.canonical_u0(1), maps.random_unitary(4, seed=4), maps.random_unitary(4, seed=5)
        )
        report = certify.verify_positivity(m, trials=200, seed=6)
        assert report.passed

    @pytest.mark.parametrize("a", [0.0, 1.0])
    def test_split_endpoints_give_half_identity_blocks(self, a):
        # oracle: the image of a projector concentrated in one half-space
        rng = np.random.default_rng(7)
        n = 2
        m = maps.phi_u(n, maps.canonical_u0(n))
        half = 2 * n
        part = rng.standard_normal(half) + 1j * rng.standard_normal(half)
        part /= np.linalg.norm(part)
        psi = np.concatenate([np.sqrt(a) * part, np.sqrt(1 - a) * part])
        image = maps.apply_map(m, np.outer(psi, psi.conj()))
        expected = np.zeros((4 * n, 4 * n), dtype=complex)
        if a == 0.0:
            expected[:half, :half] = np.eye(half) / half
        else:
            expected[half:, half:] = np.eye(half) / half
        np.testing.assert_allclose(image, expected, atol=1e-12)


class TestNondecomposability:
    def test_n1_canonical(self):
        report = certify.verify_nondecomposability(1, maps.canonical_u0(1))
        assert report.passed
        assert report.measured == pytest.approx(-1 / 320, abs=1e-12)

    def test_n2_canonical(self):
        report = certify.verify_nondecomposability(2, maps.canonical_u0(2))
        assert report.passed
        assert report.measured == pytest.approx(-1 / 9216, abs=1e-12)

    def test_n1_random(self):
        report = certify.verify_nondecomposability(1, maps.random_antisymmetric_unitary(1, seed=8))
        assert report.passed

    def test_conjugated(self):
        report = certify.verify_nondecomposability(
            1,
            maps.canonical_u0(1),
            maps.random_unitary(4, seed=9),
            maps.random_unitary(4, seed=10),
        )
        assert report.passed
        assert report.measured == pytest.approx(-1 / 320, abs=1e-12)


class TestSpanningFamily:
    @pytest.mark.parametrize("n,count", [(1, 16), (2, 64)])
    def test_counts(self, n, count):
        family = certify.spanning_family(n)
        assert len(family.generators) == count
        assert len(family.vectors) == count

    def test_first_pair_sum_vector(self):
        family = certify.spanning_family(1)
        np.testing.assert_array_equal(family.generators[4], np.array([1, 1, 0, 0], dtype=complex))

    def test_phase_vector_tensor_convention(self):
        # dim-2 analog of e_m + i e_n mapped to psi (x) psi*
        g = np.array([1.0, 1.0j])
        np.testing.assert_allclose(np.kron(g, g.conj()), [1.0, -1.0j, 1.0j, 1.0], atol=1e-15)

    def test_spans(self):
        from robwit.linalg import numerical_rank

        assert numerical_rank(certify.spanning_family(2).vectors) == 64


class TestOptimality:
    def test_canonical(self, canonical_witness):
        report = certify.verify_optimality(canonical_witness, 1)
        assert report.passed and report.measured < 1e-12

    def test_n2(self):
        w = witnesses.choi(maps.phi_u(2, maps.canonical_u0(2)))
        assert certify.verify_optimality(w, 2).passed

    def test_transformed(self, canonical_witness):
        out = witnesses.transform_witness(
            canonical_witness, maps.random_unitary(4, seed=11), maps.random_unitary(4, seed=12)
        )
        assert certify.verify_optimality(out, 1).passed


class TestNdOptimality:
    def test_canonical(self, canonical_witness):
        assert certify.verify_nd_optimality(canonical_witness).passed

    def test_random_u(self):
        u = maps.random_antisymmetric_unitary(1, seed=13, mode="complex-unitary")
        w = witnesses.choi(maps.phi_u(1, u))
        assert certify.verify_nd_optimality(w, u).passed

    def test_conjugated(self, canonical_witness):
        out = witnesses.transform_witness(
            canonical_witness, maps.random_unitary(4, seed=14), maps.random_unitary(4, seed=15)
        )
        assert certify.verify_nd_optimality(out).passed

    def test_rejects_foreign_u(self, canonical_witness):
        with pytest.raises(ValueError, match="not built"):
            certify.verify_nd_optimality(
                canonical_witness, maps.random_antisymmetric_unitary(1, seed=16)
            )


class TestSelfDuality:
    def test_identity_pairing(self):
        m = maps.phi_u(2, maps.canonical_u0(2))
        eye = np.eye(8, dtype=complex)
        lhs = complex(np.trace(eye @ maps.apply_map(m, eye)))
        assert lhs.real == pytest.approx(8.0, abs=1e-12)

    def test_canonical(self):
        assert certify.verify_self_duality(maps.phi_u(1, maps.canonical_u0(1))).passed

    def test_breuer_hall_sanity(self):
        assert certify.verify_self_duality(maps.breuer_hall(maps.canonical_u0(2))).passed


class TestSpa:
    def test_endpoints(self, canonical_witness):
        np.testing.assert_allclose(
            certify.spa_witness(canonical_witness, 1.0), np.eye(16) / 16, atol=1e-15
        )
        np.testing.assert_allclose(
            certify.spa_witness(canonical_witness, 0.0), canonical_witness.matrix, atol=1e-15
        )

    def test_threshold_degeneracy(self, canonical_witness):
        assert abs(min_eigenvalue(certify.spa_witness(canonical_witness, 0.8))) <= 1e-10

    def test_rejects_out_of_range(self, canonical_witness):
        with pytest.raises(ValueError, match="outside"):
            certify.spa_witness(canonical_witness, 1.5)

    def test_closed_form(self):
        assert certify.spa_threshold_closed_form(1) == pytest.approx(0.8)
        assert certify.spa_threshold_closed_form(2) == pytest.approx(8 / 9)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_threshold_coincides_with_isotropic_boundary(self, n):
        # the exact coincidence the entanglement-breaking argument relies on
        assert certify.spa_threshold_closed_form(n) == states.isotropic_entanglement_threshold(n)

    def test_bisect_agrees(self, canonical_witness):
        assert certify.spa_threshold_bisect(canonical_witness, tol=1e-10) == pytest.approx(
            0.8, abs=1e-9
        )

    def test_bisect_rejects_positive_input(self, canonical_witness):
        fake = witnesses.Witness(np.eye(16, dtype=complex) / 16, 4, canonical_witness.source)
        with pytest.raises(ValueError, match="already positive"):
            certify.spa_threshold_bisect(fake)

    def test_min_eigenvalue_affine_in_noise(self, canonical_witness):
        # the smallest-eigenvalue branch is affine, so second differences vanish
        p0 = 0.8
        values = [
            min_eigenvalue(certify.spa_witness(canonical_witness, p))
            for p in (p0 - 0.05, p0, p0 + 0.05)
        ]
        assert abs(values[0] + values[2] - 2 * values[1]) <= 1e-9
        assert values[0] < -1e-9 < 1e-9 < values[2]


class TestIsotropicDetection:
    def test_closed_form_values(self):
        assert certify.isotropic_detection_value(1, 0.0) == pytest.approx(-0.25)
        assert certify.isotropic_detection_value(1, 0.8) == pytest.approx(0.0, abs=1e-15)
        assert certify.isotropic_detection_value(1, 1.0) == pytest.approx(1 / 16)

    @pytest.mark.parametrize("n", [1, 2])
    def test_matches_numeric_detect(self, n):
        w = witnesses.choi(maps.phi_u(n, maps.canonical_u0(n)))
        for lam in (0.0, 0.25, 0.5, 0.8, 1.0):
            numeric = certify.detect(w, states.isotropic_state(4 * n, lam))
            assert numeric == pytest.approx(certify.isotropic_detection_value(n, lam), abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2])
    def test_detection_sum(self, n):
        m = maps.phi_u(n, maps.canonical_u0(n))
        assert certify.detection_sum(m) == pytest.approx(-4 * n, abs=1e-12)

    def test_detection_sum_equals_entangled_overlap(self):
        # cross-check: sum_kl <k|F(|k><l|)|l> = d^2 Tr(W P+)
        u = maps.random_antisymmetric_unitary(1, seed=17)
        m = maps.phi_u(1, u)
        w = witnesses.choi(m)
        overlap = complex(np.einsum("ij,ji->", w.matrix, witnesses.max_entangled(4))).real
        assert certify.detection_sum(m) == pytest.approx(16 * overlap, abs=1e-12)

    def test_detection_root(self, canonical_witness):
        assert certify.detection_root(canonical_witness, 1) == pytest.approx(0.8, abs=1e-12)


class TestEbCertificate:
    def test_canonical(self):
        assert certify.verify_eb_certificate(maps.phi_u(1, maps.canonical_u0(1))).passed

    def test_conjugated(self):
        m = maps.conjugated_phi(
            1,
            maps.canonical_u0(1),
            maps.random_unitary(4, seed=18),
            maps.random_unitary(4, seed=19),
        )
        assert certify.verify_eb_certificate(m).passed

    def test_rejects_contraction_u(self):
        with pytest.raises(ValueError, match="unitary"):
            certify.verify_eb_certificate(maps.phi_u(1, np.zeros((2, 2))))


class TestRealignment:
    def test_shape_for_unequal_factors(self):
        rng = np.random.default_rng(20)
        g = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        assert certify.realign(g, 2, 4).shape == (4, 16)

    def test_trace_norm_flags_entanglement(self):
        # oracle: ||R(P+)||_1 = d, ||R(I/d^2)||_1 = 1/d
        d = 4
        assert certify.realignment_trace_norm(witnesses.max_entangled(d), d, d) == pytest.approx(d)
        assert certify.realignment_trace_norm(np.eye(d * d) / d ** 2, d, d) == pytest.approx(1 / d)


class TestSeesaw:
    def test_witness_boundary(self, canonical_witness):
        value = certify.block_positivity_seesaw(canonical_witness, restarts=25, seed=21)
        assert -1e-8 <= value <= 1e-6

    def test_positive_matrix(self):
        value = certify.block_positivity_seesaw(np.eye(16) / 16, restarts=5, seed=22)
        assert value >= 1 / 16 - 1e-12

    def test_non_block_positive_matrix(self):
        bad = witnesses.max_entangled(4) - 0.5 * np.eye(16)
        value = certify.block_positivity_seesaw(bad, restarts=10, seed=23)
        assert value < -0.1


class TestFullSuite:
    def test_names_and_verdicts(self):
        reports = certify.run_full_suite(1, maps.canonical_u0(1))
        assert tuple(r.name for r in reports) == certify.SUITE_CHECKS
        assert all(r.passed for r in reports)

    def test_rejects_unknown_tolerance(self):
        with pytest.raises(ValueError, match="unknown check"):
            certify.run_full_suite(1, maps.canonical_u0(1), tolerances={"bogus": 1.0})

    def test_rejects_lone_conjugation_unitary(self):
        with pytest.raises(ValueError, match="together"):
            certify.run_full_suite(1, maps.canonical_u0(1), v1=np.eye(4))
