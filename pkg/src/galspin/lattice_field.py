"""Galilean spin-zero field operators on a periodic momentum lattice.

The continuum mode expansion is regularized on a finite grid: momenta
k = 2*pi*n/L with integer n in [-N/2, N/2)^d, positions x = L*j/N with
j in [0, N)^d, and the measure replaced by a counting sum with an overall
V^{-1/2} normalization (V = N^d), so the lattice delta is exactly 0 or 1.
The dispersion E(k) = k^2/(2m) enters only through phases exp(i*E*t) that
cancel in equal-time brackets; it is carried exactly as a rational
multiple of the pi^2 symbol.

The field is

    xi(x, t) = V^{-1/2} sum_k [ alpha * e^{i(E t - k.x)} a(k)
                                + beta * e^{-i(E t - k.x)} b+(k) ]

and the equal-time bracket with its adjoint collapses to
(|alpha|^2 -+ |beta|^2) * delta(x, y) for commutator/anticommutator.
"""

from __future__ import annotations

import itertools
import time as _time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import ConsistencyError, InputError, UnsupportedCaseError
from .exact import PI_SQUARED, ExactScalar, QQi, phase_term
from .op_algebra import (
    Kind,
    Ladder,
    Mode,
    OperatorExpr,
    Species,
    Statistics,
    add,
    adjoint,
    bracket,
)
from .verdict import Status, Verdict

F = Fraction


@dataclass(frozen=True)
class LatticeSpec:
    """Periodic spatial grid: d dimensions, N points per side, length L."""

    dimension: int
    points_per_side: int
    side_length: Fraction = F(1)

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise InputError(f"dimension must be 1, 2 or 3, got {self.dimension}")
        n = self.points_per_side
        if n < 2 or n % 2:
            raise InputError(f"points_per_side must be even and >= 2, got {n}")
        object.__setattr__(self, "side_length", F(self.side_length))
        if self.side_length <= 0:
            raise InputError("side_length must be positive")

    @property
    def volume(self) -> int:
        return self.points_per_side**self.dimension

    def momenta(self) -> list[tuple[int, ...]]:
        n = self.points_per_side
        return list(
            itertools.product(range(-n // 2, n // 2), repeat=self.dimension)
        )

    def site_indices(self) -> list[tuple[int, ...]]:
        return list(
            itertools.product(range(self.points_per_side), repeat=self.dimension)
        )

    def position(self, indices: Iterable[int]) -> tuple[Fraction, ...]:
        n = self.points_per_side
        return tuple(
            self.side_length * F(int(j) % n, n) for j in indices
        )

    def site(self, indices: Iterable[int], time=0) -> "SpacetimePoint":
        return SpacetimePoint(self.position(indices), F(time))

    def contains(self, position: tuple[Fraction, ...]) -> bool:
        if len(position) != self.dimension:
            return False
        for x in position:
            j = x * self.points_per_side / self.side_length
            if j.denominator != 1 or not 0 <= j < self.points_per_side:
                return False
        return True


@dataclass(frozen=True)
class SpacetimePoint:
    position: tuple[Fraction, ...]
    time: Fraction

    def __post_init__(self):
        object.__setattr__(
            self, "position", tuple(F(x) for x in self.position)
        )
        object.__setattr__(self, "time", F(self.time))


def _coerce_amplitude(value) -> ExactScalar:
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.from_rational(F(value))
    if isinstance(value, complex):
        raise InputError(
            "amplitudes must be exact (int, Fraction, or ExactScalar)"
        )
    raise InputError(f"cannot use {type(value).__name__} as an amplitude")


@dataclass(frozen=True)
class FieldSpec:
    """Mass, spin, particle/antiparticle amplitudes, and the lattice."""

    mass: Fraction
    alpha: ExactScalar
    beta: ExactScalar
    lattice: LatticeSpec
    spin: Fraction = F(0)

    def __post_init__(self):
        object.__setattr__(self, "mass", F(self.mass))
        if self.mass == 0:
            raise InputError("mass must be nonzero")
        object.__setattr__(self, "spin", F(self.spin))
        if self.spin != 0:
            raise InputError("mode expansions are implemented for spin zero")
        object.__setattr__(self, "alpha", _coerce_amplitude(self.alpha))
        object.__setattr__(self, "beta", _coerce_amplitude(self.beta))
        if self.alpha.is_zero() and self.beta.is_zero():
            raise InputError("alpha and beta cannot both vanish")

    def normalization(self) -> ExactScalar:
        return ExactScalar.sqrt(F(1, self.lattice.volume))


def _plane_wave_exponent(
    spec: FieldSpec, n: tuple[int, ...], point: SpacetimePoint
) -> tuple[Fraction, Fraction]:
    """Exponent of e^{i(E t - k.x)} as (pi coefficient, pi^2 coefficient)."""
    lat = spec.lattice
    k_dot_x = sum(F(ni) * xi for ni, xi in zip(n, point.position))
    pi_coeff = -2 * k_dot_x / lat.side_length
    n_sq = sum(ni * ni for ni in n)
    pi2_coeff = 2 * F(n_sq) * point.time / (spec.mass * lat.side_length**2)
    return pi_coeff, pi2_coeff


@lru_cache(maxsize=8192)
def _point_exponent_table(
    mass: Fraction,
    dimension: int,
    points_per_side: int,
    side_length: Fraction,
    position: tuple,
    time: Fraction,
) -> tuple:
    """Per-mode exponents at one grid point, in momenta() order.

    Entries are (m, q): the k.x part of the exponent is pi * 2m/N with m
    integer on the grid, and q is the exact pi^2 coefficient of E(k)t.
    """
    lattice = LatticeSpec(dimension, points_per_side, side_length)
    spec_like = FieldSpec(mass, 1, 0, lattice)
    point = SpacetimePoint(position, time)
    n_side = points_per_side
    table = []
    for n in lattice.momenta():
        pi_coeff, pi2_coeff = _plane_wave_exponent(spec_like, n, point)
        scaled = pi_coeff * n_side / 2
        if scaled.denominator != 1:
            raise ConsistencyError(
                f"plane-wave exponent {pi_coeff} is off the grid scale"
            )
        table.append((int(scaled), pi2_coeff))
    return tuple(table)


def _phase(pi_coeff: Fraction, pi2_coeff: Fraction) -> ExactScalar:
    var_part = ((PI_SQUARED, pi2_coeff),) if pi2_coeff else ()
    return ExactScalar.phase(pi_coeff, var_part)


def build_field(spec: FieldSpec, point: SpacetimePoint) -> OperatorExpr:
    """The field operator xi at one spacetime point, as a canonical sum."""
    lat = spec.lattice
    if not lat.contains(point.position):
        raise InputError(f"position {point.position} is not on the lattice")
    norm = spec.normalization()
    terms = OperatorExpr.zero()
    for n in lat.momenta():
        pi_c, pi2_c = _plane_wave_exponent(spec, n, point)
        wave = _phase(pi_c, pi2_c)
        a_term = OperatorExpr.of(
            Ladder(Mode(n, Species.PARTICLE), Kind.ANNIHILATE),
            spec.alpha * wave * norm,
        )
        b_term = OperatorExpr.of(
            Ladder(Mode(n, Species.ANTIPARTICLE), Kind.CREATE),
            spec.beta * wave.conj() * norm,
        )
        terms = add(terms, add(a_term, b_term))
    return terms


def delta_lattice(lattice: LatticeSpec, x: SpacetimePoint, y: SpacetimePoint) -> int:
    """The regularized delta: 1 at coincident grid points, else 0."""
    return 1 if x.position == y.position else 0


@lru_cache(maxsize=4096)
def _wave_sum_from_counts(n_side: int, counts: tuple) -> ExactScalar:
    """sum over modes of e^{i pi 2r/N} with multiplicities, as a scalar."""
    acc: dict = {}
    one = F(1)
    for residue, count in counts:
        ph, mult = phase_term(F(2 * residue, n_side))
        key = (one, ph)
        value = QQi(count) * mult
        prev = acc.get(key)
        acc[key] = value if prev is None else prev + value
    return ExactScalar.from_accumulator(acc)


def equal_time_bracket(
    spec: FieldSpec,
    x: SpacetimePoint,
    y: SpacetimePoint,
    statistics: Statistics,
    via: str = "mode_pairing",
) -> ExactScalar:
    """[xi(x,t), xi+(y,t)] with commutator (Bose) or anticommutator (Fermi).

    ``via="full_expansion"`` builds both fields and reduces the bracket
    with the generic rewrite engine; ``via="mode_pairing"`` distributes the
    bracket over the mode sums, where only matched annihilator/creator
    pairs survive.  The two routes agree and the slow one is the oracle.
    """
    if x.time != y.time:
        raise UnsupportedCaseError(
            "unequal-time brackets are outside the supported regime"
        )
    lat = spec.lattice
    if not (lat.contains(x.position) and lat.contains(y.position)):
        raise InputError("both points must lie on the lattice")

    if via == "full_expansion":
        f_x = build_field(spec, x)
        f_y_dag = adjoint(build_field(spec, y), statistics)
        result = bracket(f_x, f_y_dag, statistics).prune_exact()
        if not result.is_scalar():
            raise ConsistencyError(
                f"equal-time bracket left operator content: {result!r}"
            )
        return result.scalar_part()
    if via != "mode_pairing":
        raise InputError(f"unknown evaluation route {via!r}")

    # bracket(sum_i c_i m_i, sum_j d_j n_j) = sum_ij c_i d_j bracket(m_i, n_j)
    # with bracket(a(k), a+(k)) = 1 and bracket(b+(k), b(k)) = -sigma the
    # only surviving monomial brackets; the amplitude moduli factor out of
    # the mode sum, and the dispersion phases cancel mode by mode.
    table_x = _point_exponent_table(
        spec.mass, lat.dimension, lat.points_per_side, lat.side_length,
        x.position, x.time,
    )
    table_y = _point_exponent_table(
        spec.mass, lat.dimension, lat.points_per_side, lat.side_length,
        y.position, y.time,
    )
    n_side = lat.points_per_side
    counts: dict = {}
    for (m_x, q_x), (m_y, q_y) in zip(table_x, table_y):
        if q_x != q_y:
            raise ConsistencyError("dispersion phases survived an equal-time bracket")
        residue = (m_x - m_y) % n_side
        counts[residue] = counts.get(residue, 0) + 1
    wave_sum = _wave_sum_from_counts(n_side, tuple(sorted(counts.items())))
    alpha2 = spec.alpha.abs2()
    minus_sigma_beta2 = ExactScalar.from_rational(-statistics.sign) * spec.beta.abs2()
    total = alpha2 * wave_sum + minus_sigma_beta2 * wave_sum.conj()
    return total * F(1, lat.volume)


def closed_form_bracket(spec: FieldSpec, statistics: Statistics) -> ExactScalar:
    """(|alpha|^2 -+ |beta|^2): the coincident-point bracket value."""
    return spec.alpha.abs2() + ExactScalar.from_rational(
        -statistics.sign
    ) * spec.beta.abs2()


def counterexample_report(
    spec: FieldSpec, time=0, label: str = "S2-counterexample"
) -> Verdict:
    """Sweep both statistics over all site pairs against the closed form.

    PASS means every pair reproduced (|alpha|^2 -+ |beta|^2) * delta(x, y)
    exactly, i.e. locality holds for either sign choice, so statistics is
    not fixed by Galilean covariance alone.
    """
    started = _time.perf_counter()
    lat = spec.lattice
    sites = [lat.site(j, time) for j in lat.site_indices()]
    tables: dict = {}
    failure = None
    for statistics in (Statistics.BOSE, Statistics.FERMI):
        expected_coincident = closed_form_bracket(spec, statistics)
        checked = 0
        for sx in sites:
            for sy in sites:
                value = equal_time_bracket(spec, sx, sy, statistics)
                expected = (
                    expected_coincident
                    if delta_lattice(lat, sx, sy)
                    else ExactScalar.zero()
                )
                if not (value - expected).is_zero():
                    failure = {
                        "statistics": statistics.value,
                        "x": [str(v) for v in sx.position],
                        "y": [str(v) for v in sy.position],
                        "value": repr(value),
                        "expected": repr(expected),
                    }
                    break
                checked += 1
            if failure:
                break
        tables[statistics.value] = {
            "coincident_value": repr(expected_coincident),
            "separated_value": "0",
            "pairs_checked": checked,
        }
        if failure:
            break
    details = {
        "lattice": {
            "dimension": lat.dimension,
            "points_per_side": lat.points_per_side,
            "side_length": str(lat.side_length),
        },
        "alpha_sq": repr(spec.alpha.abs2()),
        "beta_sq": repr(spec.beta.abs2()),
        "time": str(F(time)),
        "bracket_tables": tables,
    }
    seconds = _time.perf_counter() - started
    if failure:
        return Verdict(
            label, Status.FAIL, details, witness=failure, seconds=seconds
        )
    return Verdict(label, Status.PASS, details, seconds=seconds)
