"""Shared deterministic random generators for property sweeps."""

import random
from fractions import Fraction

from galspin.exact import ExactScalar
from galspin.op_algebra import (
    Kind,
    Ladder,
    Mode,
    OperatorExpr,
    Species,
    Statistics,
    add,
    scale,
)

F = Fraction


def random_scalar(rng: random.Random, with_phase=True) -> ExactScalar:
    re = F(rng.randint(-3, 3), rng.randint(1, 4))
    im = F(rng.randint(-3, 3), rng.randint(1, 4))
    if re == 0 and im == 0:
        re = F(1)
    c = ExactScalar.gaussian(re, im)
    if with_phase and rng.random() < 0.5:
        c = c * ExactScalar.phase(F(rng.randint(-5, 5), 6))
    return c


def random_mode(rng: random.Random, n_modes=3, dim=1, particles_only=False) -> Mode:
    momentum = tuple(rng.randrange(n_modes) for _ in range(dim))
    if particles_only or rng.random() < 0.7:
        species = Species.PARTICLE
    else:
        species = Species.ANTIPARTICLE
    return Mode(momentum, species)


def random_word(rng: random.Random, max_factors=4, n_modes=3, dim=1, particles_only=False):
    length = rng.randint(0, max_factors)
    return tuple(
        Ladder(
            random_mode(rng, n_modes, dim, particles_only),
            Kind.CREATE if rng.random() < 0.5 else Kind.ANNIHILATE,
        )
        for _ in range(length)
    )


def random_expr(
    rng: random.Random,
    statistics: Statistics,
    max_terms=3,
    max_factors=4,
    n_modes=3,
    particles_only=False,
) -> OperatorExpr:
    out = OperatorExpr.zero()
    for _ in range(rng.randint(1, max_terms)):
        word = random_word(rng, max_factors, n_modes, particles_only=particles_only)
        out = add(
            out, OperatorExpr.from_word(word, statistics, random_scalar(rng))
        )
    return out


def random_rational(rng: random.Random, lo=-4, hi=4, den=6) -> Fraction:
    return F(rng.randint(lo, hi), rng.randint(1, den))
