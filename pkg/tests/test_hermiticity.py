import random
from fractions import Fraction

import pytest

from galspin.errors import InputError
from galspin.exact import ExactScalar
from galspin.galilei import boost, gamma, rotation_quarter_turn, translation
from galspin.hermiticity import (
    TransformLaw,
    decompose_hermitian_pair,
    doubled_mass_analysis,
    hermitian_pair_report,
    hermiticity_compatible,
    phases_agree,
    transform_law,
)
from galspin.lattice_field import FieldSpec, LatticeSpec
from galspin.op_algebra import Statistics, adjoint
from galspin.spin_reps import spin_rep
from galspin.verdict import Status

F = Fraction


class TestTransformLaw:
    def test_dimension_validation(self):
        with pytest.raises(InputError):
            TransformLaw(F(1), F(1), spin_rep(F(1, 2)))
        law = transform_law(F(1), F(1, 2))
        assert law.rep.dimension == 2


class TestHermiticityCompatible:
    def test_zero_mass_compatible(self):
        for s in (F(0), F(1, 2), F(1)):
            with pytest.raises(InputError):
                # the lattice field layer refuses m=0; the transformation-law
                # layer must not, so only TransformLaw itself is exercised
                FieldSpec(0, 1, 1, LatticeSpec(1, 4))
            verdict = hermiticity_compatible(transform_law(F(0), s), samples=50)
            assert verdict.status is Status.PASS
            assert verdict.details["meaning"] == "compatible"

    @pytest.mark.parametrize("mass", [F(1), F(-1), F(3, 2)])
    @pytest.mark.parametrize("spin", [F(0), F(1, 2), F(1)])
    def test_nonzero_mass_incompatible(self, mass, spin):
        verdict = hermiticity_compatible(transform_law(mass, spin), samples=50)
        assert verdict.status is Status.FAIL
        assert verdict.details["meaning"] == "incompatible"
        assert F(verdict.witness["phase_exponent"]) != 0

    def test_deterministic_witness_is_first(self):
        verdict = hermiticity_compatible(transform_law(F(1), F(0)), samples=1)
        assert verdict.witness["boost"] == ["1", "0", "0"]
        assert verdict.witness["position"] == ["1", "0", "0"]
        assert F(verdict.witness["phase_exponent"]) == 1

    def test_boost_free_sampling_is_inconclusive(self):
        verdict = hermiticity_compatible(
            transform_law(F(1), F(0)), samples=40, include_boosts=False
        )
        assert verdict.status is Status.INCONCLUSIVE_UNDER_RESTRICTION

    def test_witness_condition_matches_gamma_formula(self):
        rng = random.Random(21)
        for _ in range(50):
            g = boost((F(rng.randint(1, 4), 2), 0, 0))
            x = (F(rng.randrange(4), 4), F(0), F(0))
            t = F(rng.randrange(5), 2)
            m = F(rng.randint(-3, 3) or 1)
            exponent = gamma(g, m, x, t)
            assert phases_agree(exponent) == (exponent == 0)

    def test_gamma_free_elements_always_agree(self):
        for g in (translation((1, 2, 3)), rotation_quarter_turn(1)):
            assert phases_agree(gamma(g, F(5), (1, 1, 1), F(2)))


class TestHermitianPair:
    def test_pair_is_hermitian(self):
        spec = FieldSpec(1, 1, 0, LatticeSpec(1, 4))
        point = spec.lattice.site([0])
        for statistics in (Statistics.BOSE, Statistics.FERMI):
            plus, minus = decompose_hermitian_pair(spec, point, statistics)
            assert adjoint(plus, statistics) == plus
            assert adjoint(minus, statistics) == minus

    def test_pair_with_phases(self):
        alpha = ExactScalar.from_rational(F(2, 3)) * ExactScalar.phase(F(1, 6))
        spec = FieldSpec(F(3, 2), alpha, F(1, 2), LatticeSpec(1, 4))
        point = spec.lattice.site([2], time=F(1, 3))
        plus, minus = decompose_hermitian_pair(spec, point)
        assert adjoint(plus, Statistics.BOSE) == plus
        assert adjoint(minus, Statistics.BOSE) == minus

    def test_boost_mixes_the_pair(self):
        spec = FieldSpec(1, 1, F(1, 2), LatticeSpec(1, 4))
        verdict = hermitian_pair_report(spec)
        assert verdict.status is Status.PASS
        assert F(verdict.details["gamma_exponent"]) != 0


class TestDoubledMass:
    @pytest.mark.parametrize("mass", [F(1), F(-2), F(3, 2)])
    def test_analysis_passes(self, mass):
        verdict = doubled_mass_analysis(mass)
        assert verdict.status is Status.PASS
        assert verdict.details["eigenvalues"] == [str(mass), str(-mass)]
        assert verdict.details["eigenvector_weights"] == ["1/2", "1/2"]
        assert verdict.details["coupled_bose_bracket"] == "0"

    def test_zero_mass_rejected(self):
        with pytest.raises(InputError):
            doubled_mass_analysis(0)
