import math
import random
from fractions import Fraction

import numpy as np
import pytest

from galspin.errors import InputError
from galspin.spin_reps import (
    RealityKind,
    candidate_reality_survey,
    reality_class,
    rotation_matrix,
    spin_rep,
    timereversal_candidate,
    two_pi_sign,
)

F = Fraction
SPINS = [F(0), F(1, 2), F(1), F(3, 2), F(2), F(5, 2), F(3)]


def random_unit_axis(rng):
    while True:
        v = np.array([rng.gauss(0, 1) for _ in range(3)])
        n = np.linalg.norm(v)
        if n > 1e-3:
            return v / n


class TestSpinRep:
    @pytest.mark.parametrize("s", SPINS)
    def test_commutation_relations(self, s):
        rep = spin_rep(s)
        pairs = [(rep.jx, rep.jy, rep.jz), (rep.jy, rep.jz, rep.jx), (rep.jz, rep.jx, rep.jy)]
        for a, b, c in pairs:
            err = np.max(np.abs((a @ b - b @ a) - 1j * c))
            assert err < 1e-12

    @pytest.mark.parametrize("s", SPINS)
    def test_casimir(self, s):
        rep = spin_rep(s)
        total = rep.jx @ rep.jx + rep.jy @ rep.jy + rep.jz @ rep.jz
        expect = float(s * (s + 1)) * np.eye(rep.dimension)
        assert np.max(np.abs(total - expect)) < 1e-12

    @pytest.mark.parametrize("s", SPINS)
    def test_jz_diagonal(self, s):
        rep = spin_rep(s)
        expect = np.diag([float(s - k) for k in range(rep.dimension)])
        assert np.max(np.abs(rep.jz - expect)) < 1e-15

    def test_bad_spin(self):
        with pytest.raises(InputError):
            spin_rep(F(1, 3))
        with pytest.raises(InputError):
            spin_rep(-1)


class TestRotations:
    def test_zero_angle(self):
        rep = spin_rep(F(3, 2))
        assert np.max(np.abs(rotation_matrix(rep, (0, 0, 1.0), 0.0) - np.eye(4))) < 1e-15

    def test_spinor_double_cover(self):
        rep = spin_rep(F(1, 2))
        d = rotation_matrix(rep, (0, 0, 1.0), 2 * math.pi)
        assert np.max(np.abs(d + np.eye(2))) < 1e-12

    def test_vector_single_cover(self):
        rep = spin_rep(1)
        d = rotation_matrix(rep, (0, 0, 1.0), 2 * math.pi)
        assert np.max(np.abs(d - np.eye(3))) < 1e-12

    def test_non_unit_axis_rejected(self):
        with pytest.raises(InputError):
            rotation_matrix(spin_rep(1), (1.0, 1.0, 0.0), 1.0)

    def test_unitarity_and_inverse(self):
        rng = random.Random(41)
        for s in SPINS:
            rep = spin_rep(s)
            for _ in range(5):
                axis = random_unit_axis(rng)
                angle = rng.uniform(-7, 7)
                d = rotation_matrix(rep, axis, angle)
                eye = np.eye(rep.dimension)
                assert np.max(np.abs(d @ d.conj().T - eye)) < 1e-10
                dinv = rotation_matrix(rep, axis, -angle)
                assert np.max(np.abs(dinv - d.conj().T)) < 1e-10

    def test_group_law_same_axis(self):
        rng = random.Random(43)
        for _ in range(10):
            rep = spin_rep(F(3, 2))
            axis = random_unit_axis(rng)
            a1, a2 = rng.uniform(-3, 3), rng.uniform(-3, 3)
            lhs = rotation_matrix(rep, axis, a1) @ rotation_matrix(rep, axis, a2)
            rhs = rotation_matrix(rep, axis, a1 + a2)
            assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_group_law_composed_axes(self):
        # D(R1) D(R2) = D(R1 R2) via the spin-1 rep against the vector action
        from galspin.galilei import axis_angle_rotation, matmul

        rng = random.Random(47)
        rep = spin_rep(1)
        for _ in range(8):
            ax1, ax2 = random_unit_axis(rng), random_unit_axis(rng)
            t1, t2 = rng.uniform(0, 5), rng.uniform(0, 5)
            r1 = axis_angle_rotation(ax1, t1).rotation
            r2 = axis_angle_rotation(ax2, t2).rotation
            r12 = matmul(r1, r2)
            # recover axis-angle of the product from its rotation data
            tr = r12[0][0] + r12[1][1] + r12[2][2]
            angle = math.acos(max(-1.0, min(1.0, (float(tr) - 1) / 2)))
            if abs(angle) < 1e-6 or abs(angle - math.pi) < 1e-6:
                continue
            w = np.array(
                [
                    float(r12[2][1] - r12[1][2]),
                    float(r12[0][2] - r12[2][0]),
                    float(r12[1][0] - r12[0][1]),
                ]
            ) / (2 * math.sin(angle))
            lhs = rotation_matrix(rep, ax1, t1) @ rotation_matrix(rep, ax2, t2)
            rhs = rotation_matrix(rep, w, angle)
            assert np.max(np.abs(lhs - rhs)) < 1e-9


class TestTwoPiSign:
    @pytest.mark.parametrize("s", SPINS)
    def test_matches_spin_parity(self, s):
        sign = two_pi_sign(spin_rep(s))
        assert sign == (-1) ** int((2 * s) % 2)


class TestRealityClass:
    def test_identity_real(self):
        assert reality_class(np.eye(3)).kind is RealityKind.REAL

    def test_i_identity_imaginary(self):
        assert reality_class(1j * np.eye(3)).kind is RealityKind.IMAGINARY

    def test_mixed_with_witness(self):
        cls = reality_class(np.array([[1, 1j], [0, 1]]))
        assert cls.kind is RealityKind.NEITHER
        assert cls.witness == (0, 1)

    def test_scaling_by_i_flips(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m = rng.normal(size=(4, 4))
            assert reality_class(m).kind is RealityKind.REAL
            assert reality_class(1j * m).kind is RealityKind.IMAGINARY

    def test_classification_is_involution_consistent(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            m = rng.normal(size=(3, 3)) * (1j if rng.random() < 0.5 else 1)
            cls = reality_class(m)
            sign = 1 if cls.is_real else -1
            assert np.max(np.abs(m.conj().conj() - m)) < 1e-15
            assert np.max(np.abs(m.conj() - sign * m)) < 1e-12


class TestTimeReversalCandidates:
    def test_spin_half_plain_phase(self):
        d = timereversal_candidate(spin_rep(F(1, 2)), 1.0)
        expect = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert np.max(np.abs(d - expect)) < 1e-12
        assert reality_class(d, tol=1e-10).kind is RealityKind.REAL

    def test_spin_half_i_phase(self):
        d = timereversal_candidate(spin_rep(F(1, 2)), 1j)
        assert reality_class(d, tol=1e-10).kind is RealityKind.IMAGINARY

    def test_spin_one_plain_phase(self):
        d = timereversal_candidate(spin_rep(1), 1.0)
        assert reality_class(d, tol=1e-10).kind is RealityKind.REAL

    def test_survey_shape(self):
        survey = candidate_reality_survey()
        assert survey["s=1/2"] == {"1": "real", "i": "imaginary"}
        assert survey["s=1"] == {"1": "real", "i": "imaginary"}

    def test_non_unimodular_phase_rejected(self):
        with pytest.raises(InputError):
            timereversal_candidate(spin_rep(1), 2.0)
