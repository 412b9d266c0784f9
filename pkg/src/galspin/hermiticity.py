"""Incompatibility of hermiticity with Galilean covariance for m != 0.

A massive Galilean field picks up exp(+i m gamma) under a boost while its
adjoint picks up exp(-i m gamma); the two laws agree only where m*gamma
vanishes, so a nonzero-mass field operator cannot be hermitian.  The phase
comparison is exact: gamma is a rational number for rational samples, and
exp(i*q) = exp(-i*q) for rational q forces q = 0 because pi is irrational.

The doubled-component rescue couples particle and antiparticle sectors
through the mass matrix m*sigma_y, whose eigenvectors weight both sectors
equally; with |alpha| = |beta| the commutator vanishes identically, so the
construction silently assumes the crossing symmetry the theory does not
require.
"""

from __future__ import annotations

import random
import time as _time
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, InputError
from .exact import RADIAN, ExactScalar
from .galilei import (
    GalileiElement,
    act,
    boost,
    compose,
    gamma,
    rotation_quarter_turn,
    translation,
    vdot,
)
from .lattice_field import (
    FieldSpec,
    LatticeSpec,
    SpacetimePoint,
    build_field,
    closed_form_bracket,
    equal_time_bracket,
)
from .op_algebra import OperatorExpr, Statistics, add, adjoint, scale
from .spin_reps import SpinRep, spin_rep
from .verdict import Status, Verdict

F = Fraction


@dataclass(frozen=True)
class TransformLaw:
    """Mass, spin, and the rotation representation of a covariant field."""

    mass: Fraction
    spin: Fraction
    rep: SpinRep

    def __post_init__(self):
        object.__setattr__(self, "mass", F(self.mass))
        object.__setattr__(self, "spin", F(self.spin))
        if self.rep.dimension != int(2 * self.spin) + 1:
            raise InputError(
                f"representation dimension {self.rep.dimension} does not "
                f"match spin {self.spin}"
            )


def transform_law(mass, spin) -> TransformLaw:
    return TransformLaw(F(mass), F(spin), spin_rep(spin))


def _phase_of_exponent(angle: Fraction) -> ExactScalar:
    """exp(i*angle) for a rational angle in radians, kept symbolic."""
    return ExactScalar.phase(0, ((RADIAN, angle),))


def phases_agree(m_gamma: Fraction) -> bool:
    """Whether exp(+i m gamma) equals exp(-i m gamma), exactly."""
    plus = _phase_of_exponent(F(m_gamma))
    minus = _phase_of_exponent(-F(m_gamma))
    return (plus - minus).is_zero()


_BOOST_COMPONENTS = (
    F(0), F(1, 2), F(-1, 2), F(3, 4), F(-3, 4), F(1), F(-1), F(3, 2), F(2),
)


def _sample_transformation(rng: random.Random, include_boosts: bool):
    if include_boosts:
        while True:
            v = tuple(rng.choice(_BOOST_COMPONENTS) for _ in range(3))
            norm_sq = vdot(v, v)
            if F(1, 4) <= norm_sq <= F(4):
                break
        g = boost(v)
    else:
        g = translation(tuple(F(rng.randint(-2, 2), 4) for _ in range(3)))
    g = compose(g, rotation_quarter_turn(rng.randrange(3), rng.randrange(4)))
    x = tuple(F(rng.randrange(4), 4) for _ in range(3))
    t = F(rng.randrange(17), 8)
    return g, x, t


_DETERMINISTIC_WITNESS = (boost((1, 0, 0)), (F(1), F(0), F(0)), F(0))


def hermiticity_compatible(
    law: TransformLaw,
    samples: int = 50,
    seed: int = 0,
    include_boosts: bool = True,
    label: str = "S5-hermiticity",
) -> Verdict:
    """Compare the field and adjoint transformation phases over samples.

    FAIL (incompatible) returns the witnessing (g, x, t); PASS means every
    sampled phase pair agreed, which for m = 0 is the hermiticity-friendly
    case.  When no sampled transformation carries a boost the verdict is
    INCONCLUSIVE-UNDER-RESTRICTION, since gamma vanishes identically on
    the boost-free subgroup.
    """
    if samples < 1:
        raise InputError("need at least one sample")
    rng = random.Random(seed)
    candidates = []
    if include_boosts:
        candidates.append(_DETERMINISTIC_WITNESS)
    while len(candidates) < samples:
        candidates.append(_sample_transformation(rng, include_boosts))
    saw_boost = False
    for g, x, t in candidates:
        exponent = gamma(g, law.mass, x, t)
        if any(g.boost):
            saw_boost = True
        if not phases_agree(exponent):
            # independent restatement: exp(2 i m gamma) != 1 exactly
            if 2 * exponent == 0:
                raise ConsistencyError("phase disagreement with zero exponent")
            return Verdict(
                label,
                Status.FAIL,
                details={
                    "meaning": "incompatible",
                    "mass": str(law.mass),
                    "spin": str(law.spin),
                    "samples_checked": samples,
                },
                witness={
                    "boost": [str(c) for c in g.boost],
                    "position": [str(c) for c in x],
                    "time": str(t),
                    "phase_exponent": str(exponent),
                },
            )
    details = {
        "meaning": "compatible",
        "mass": str(law.mass),
        "spin": str(law.spin),
        "samples_checked": samples,
    }
    if not saw_boost:
        details["meaning"] = "no boost sampled; gamma identically zero here"
        return Verdict(label, Status.INCONCLUSIVE_UNDER_RESTRICTION, details)
    return Verdict(label, Status.PASS, details)


# -- hermitian pair decomposition ------------------------------------------


def decompose_hermitian_pair(
    spec: FieldSpec, point: SpacetimePoint, statistics: Statistics = Statistics.BOSE
) -> tuple[OperatorExpr, OperatorExpr]:
    """psi+ = (xi + xi+)/2 and psi- = (xi - xi+)/(2i), both hermitian."""
    xi = build_field(spec, point)
    xi_dag = adjoint(xi, statistics)
    half = ExactScalar.gaussian(F(1, 2), 0)
    minus_half_i = ExactScalar.gaussian(0, F(-1, 2))
    psi_plus = scale(half, add(xi, xi_dag))
    psi_minus = scale(minus_half_i, add(xi, scale(-1, xi_dag)))
    for name, psi in (("psi+", psi_plus), ("psi-", psi_minus)):
        if adjoint(psi, statistics) != psi:
            raise ConsistencyError(f"{name} failed its hermiticity check")
    return psi_plus, psi_minus


def hermitian_pair_report(
    spec: FieldSpec,
    statistics: Statistics = Statistics.BOSE,
    label: str = "S5-hermitian-pair",
) -> Verdict:
    """Hermitian combinations exist, but a boost mixes them for m != 0.

    Applies the spin-zero transformation law with a pure boost at t = 0
    (so the spacetime point is fixed) and verifies exactly that

        U psi+ U^-1 = cos(m gamma) psi+ - sin(m gamma) psi-

    with a nonzero sine coefficient, i.e. the transformed psi+ is not a
    multiple of psi+ alone and covariance of the pair is lost.
    """
    lat = spec.lattice
    point = lat.site((1,) * lat.dimension, 0)
    psi_plus, psi_minus = decompose_hermitian_pair(spec, point, statistics)

    g = boost(tuple(F(1) if i < lat.dimension else F(0) for i in range(3)))
    x3 = tuple(
        point.position[i] if i < lat.dimension else F(0) for i in range(3)
    )
    moved_x, moved_t = act(g, x3, point.time)
    if tuple(moved_x) != x3 or moved_t != point.time:
        raise ConsistencyError("pure boost at t=0 should fix the point")
    exponent = gamma(g, spec.mass, x3, point.time)

    phase = _phase_of_exponent(exponent)
    xi = build_field(spec, point)
    xi_dag = adjoint(xi, statistics)
    half = ExactScalar.gaussian(F(1, 2), 0)
    transformed = scale(
        half, add(scale(phase, xi), scale(phase.conj(), xi_dag))
    )
    cos_part = (phase + phase.conj()) * F(1, 2)
    sin_part = (phase - phase.conj()) * ExactScalar.gaussian(0, F(-1, 2))
    mixture = add(
        scale(cos_part, psi_plus), scale(sin_part * F(-1), psi_minus)
    )
    details = {
        "mass": str(spec.mass),
        "gamma_exponent": str(exponent),
        "cos_coefficient": repr(cos_part),
        "sin_coefficient": repr(sin_part),
    }
    if transformed != mixture:
        return Verdict(
            label, Status.FAIL, details,
            witness={"clause": "mixing identity"},
        )
    if sin_part.is_zero():
        return Verdict(
            label, Status.FAIL, details,
            witness={"clause": "no mixing detected (zero sine coefficient)"},
        )
    return Verdict(label, Status.PASS, details)


# -- doubled components ------------------------------------------------------


def doubled_mass_analysis(
    mass,
    lattice: LatticeSpec | None = None,
    label: str = "S5-doubled-mass",
) -> Verdict:
    """Eigenstructure of the doubled-component mass matrix m*sigma_y and
    the bracket consequences of its forced |alpha| = |beta| mixing."""
    m = F(mass)
    if m == 0:
        raise InputError("the doubled-component analysis needs m != 0")
    lattice = lattice or LatticeSpec(1, 4)

    # M = m * [[0, -i], [i, 0]]; exact eigenpairs (+m, (1, i)/sqrt2) and
    # (-m, (1, -i)/sqrt2), verified entrywise.
    matrix = (
        (ExactScalar.zero(), ExactScalar.gaussian(0, -m)),
        (ExactScalar.gaussian(0, m), ExactScalar.zero()),
    )
    inv_sqrt2 = ExactScalar.sqrt(F(1, 2))
    eigenpairs = [
        (m, (inv_sqrt2, inv_sqrt2 * ExactScalar.gaussian(0, 1))),
        (-m, (inv_sqrt2, inv_sqrt2 * ExactScalar.gaussian(0, -1))),
    ]
    for value, vector in eigenpairs:
        for row in range(2):
            lhs = matrix[row][0] * vector[0] + matrix[row][1] * vector[1]
            rhs = vector[row] * F(value)
            if not (lhs - rhs).is_zero():
                return Verdict(
                    label, Status.FAIL,
                    details={"mass": str(m)},
                    witness={"clause": "eigenpair", "eigenvalue": str(value), "row": row},
                )
        weights = [component.abs2() for component in vector]
        if not all(w == ExactScalar.from_rational(F(1, 2)) for w in weights):
            return Verdict(
                label, Status.FAIL, details={"mass": str(m)},
                witness={"clause": "equal weights", "eigenvalue": str(value)},
            )

    spec = FieldSpec(mass=m, alpha=inv_sqrt2, beta=inv_sqrt2, lattice=lattice)
    sites = [lattice.site(j) for j in lattice.site_indices()]
    for sx in sites:
        for sy in sites:
            bose = equal_time_bracket(spec, sx, sy, Statistics.BOSE)
            if not bose.is_zero():
                return Verdict(
                    label, Status.FAIL, details={"mass": str(m)},
                    witness={
                        "clause": "bose bracket should vanish",
                        "x": [str(c) for c in sx.position],
                        "y": [str(c) for c in sy.position],
                    },
                )
            fermi = equal_time_bracket(spec, sx, sy, Statistics.FERMI)
            expected = (
                ExactScalar.one() if sx.position == sy.position else ExactScalar.zero()
            )
            if not (fermi - expected).is_zero():
                return Verdict(
                    label, Status.FAIL, details={"mass": str(m)},
                    witness={
                        "clause": "fermi bracket should equal delta",
                        "x": [str(c) for c in sx.position],
                        "y": [str(c) for c in sy.position],
                    },
                )
    details = {
        "mass": str(m),
        "eigenvalues": [str(m), str(-m)],
        "eigenvector_weights": ["1/2", "1/2"],
        "coupled_bose_bracket": "0",
        "coupled_fermi_bracket": repr(closed_form_bracket(spec, Statistics.FERMI)),
    }
    return Verdict(label, Status.PASS, details)
