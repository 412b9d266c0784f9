"""Finite-dimensional spin representations and reality classification.

Angular momentum matrices use the Condon-Shortley ladder construction in
the basis |s, lambda> with lambda descending from s to -s, so J_z is
diagonal with entries s, s-1, ..., -s.  Rotation matrices are built with
the scaling-and-squaring Pade exponential; at the dimensions used here
(2s+1 <= 8) that is accurate well below the 1e-12 tolerances the checks
apply.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy.linalg import expm

from .errors import ConsistencyError, InputError

F = Fraction


def _as_spin(s) -> Fraction:
    s = F(s)
    if s < 0 or (2 * s).denominator != 1:
        raise InputError(f"spin must be a non-negative half-integer, got {s}")
    return s


@dataclass(frozen=True)
class SpinRep:
    """Spin s with its three angular momentum matrices."""

    spin: Fraction
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    @property
    def dimension(self) -> int:
        return int(2 * self.spin) + 1

    def j_along(self, axis) -> np.ndarray:
        ax = np.asarray(axis, dtype=float)
        return ax[0] * self.jx + ax[1] * self.jy + ax[2] * self.jz


def spin_rep(s) -> SpinRep:
    s = _as_spin(s)
    dim = int(2 * s) + 1
    lambdas = [s - k for k in range(dim)]
    jz = np.diag([float(lam) for lam in lambdas]).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    for row, lam in enumerate(lambdas[1:], start=1):
        # J+ |s, lam> = sqrt(s(s+1) - lam(lam+1)) |s, lam+1>
        jp[row - 1, row] = math.sqrt(float(s * (s + 1) - lam * (lam + 1)))
    jm = jp.conj().T
    jx = (jp + jm) / 2
    jy = (jp - jm) / 2j
    return SpinRep(s, jx, jy, jz)


def rotation_matrix(rep: SpinRep, axis, angle: float) -> np.ndarray:
    """exp(-i * angle * axis.J) for a unit axis."""
    ax = np.asarray(axis, dtype=float)
    if abs(np.linalg.norm(ax) - 1.0) > 1e-12:
        raise InputError("rotation axis must be a unit vector")
    return expm(-1j * float(angle) * rep.j_along(ax))


def two_pi_sign(rep: SpinRep) -> int:
    """The scalar c with D(2*pi rotation) = c*I; equals (-1)^{2s}."""
    d = rotation_matrix(rep, (0.0, 0.0, 1.0), 2 * math.pi)
    c = d[0, 0]
    if np.max(np.abs(d - c * np.eye(rep.dimension))) > 1e-10:
        raise ConsistencyError("2*pi rotation is not scalar")
    sign = 1 if c.real > 0 else -1
    if abs(c - sign) > 1e-10:
        raise ConsistencyError(f"2*pi rotation scalar {c} is not +-1")
    expected = -1 if (2 * rep.spin) % 2 else 1
    if sign != expected:
        raise ConsistencyError(
            f"2*pi sign {sign} disagrees with (-1)^(2s) for s={rep.spin}"
        )
    return sign


class RealityKind(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NEITHER = "neither"


@dataclass(frozen=True)
class RealityClass:
    """Whether M* = M, M* = -M, or neither (with a witness entry)."""

    kind: RealityKind
    witness: tuple[int, int] | None = None

    @property
    def is_real(self) -> bool:
        return self.kind is RealityKind.REAL

    @property
    def is_imaginary(self) -> bool:
        return self.kind is RealityKind.IMAGINARY


def reality_class(matrix, tol: float = 1e-12) -> RealityClass:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError("reality classification needs a square matrix")
    conj = m.conj()
    real_err = np.abs(conj - m)
    imag_err = np.abs(conj + m)
    if np.max(real_err) <= tol:
        return RealityClass(RealityKind.REAL)
    if np.max(imag_err) <= tol:
        return RealityClass(RealityKind.IMAGINARY)
    # witness: an entry violating whichever class comes closer
    if np.max(real_err) <= np.max(imag_err):
        idx = np.unravel_index(np.argmax(real_err), real_err.shape)
    else:
        idx = np.unravel_index(np.argmax(imag_err), imag_err.shape)
    return RealityClass(RealityKind.NEITHER, (int(idx[0]), int(idx[1])))


def timereversal_candidate(rep: SpinRep, convention_phase: complex = 1.0) -> np.ndarray:
    """A candidate time-reversal representative: phase * exp(-i*pi*J_y).

    No particular convention is asserted; callers classify the candidates
    per spin and per phase and feed the classes into the downstream checks.
    """
    phase = complex(convention_phase)
    if abs(abs(phase) - 1.0) > 1e-12:
        raise InputError("convention phase must be unimodular")
    return phase * rotation_matrix(rep, (0.0, 1.0, 0.0), math.pi)


def candidate_reality_survey(
    spins: Iterable = (0, F(1, 2), 1, F(3, 2), 2),
    phases: Iterable[complex] = (1.0, 1j),
) -> dict:
    """Reality class of each time-reversal candidate, keyed by spin/phase."""
    survey: dict = {}
    for s in spins:
        rep = spin_rep(s)
        for phase in phases:
            cls = reality_class(timereversal_candidate(rep, phase), tol=1e-10)
            key = f"s={F(s)}"
            tag = "1" if complex(phase) == 1 else "i"
            survey.setdefault(key, {})[tag] = cls.kind.value
    return survey
