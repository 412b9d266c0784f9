"""Symbolic algebra of ladder operators over discrete modes.

Expressions are finite sums of normal-ordered monomials: all creation
operators stand left of all annihilation operators, and inside each block
factors are sorted by a fixed total order on modes (species, then spin
component, then momentum index lexicographically).  Products are rewritten
into this canonical form with the relation

    a(k') a'(k) = sigma * a'(k) a(k') + delta_{k'k},   sigma = +1 Bose, -1 Fermi

where distinct species carry no delta term but do pick up the grading sign,
so one uniform statistics choice governs the whole expression.  Coefficients
are :class:`galspin.exact.ExactScalar` values, so plane-wave phases cancel
exactly rather than to rounding error.

Expressions are immutable; every operation returns a fresh value, and the
empty expression is the zero operator.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable

from .errors import StructureError
from .exact import ExactScalar, QQi

_SCALAR_ZERO = ExactScalar.zero()


class Species(enum.IntEnum):
    PARTICLE = 0
    ANTIPARTICLE = 1


class Kind(enum.IntEnum):
    CREATE = 0
    ANNIHILATE = 1


class Statistics(enum.Enum):
    """Bose or Fermi grading; fixes the transposition sign and bracket."""

    BOSE = "bose"
    FERMI = "fermi"

    @property
    def sign(self) -> int:
        """Sign from transposing two distinct ladder factors."""
        return 1 if self is Statistics.BOSE else -1

    @property
    def bracket_sign(self) -> int:
        """bracket(a, b) = a*b - bracket_sign * b*a."""
        return 1 if self is Statistics.BOSE else -1


class Mode:
    """A single-particle mode label: momentum index, species, spin component.

    ``spin2`` stores twice the spin projection so half-integers stay exact.
    """

    __slots__ = ("momentum", "species", "spin2", "_key", "_hash")

    def __init__(self, momentum: Iterable[int], species=Species.PARTICLE, spin2: int = 0):
        momentum = tuple(int(n) for n in momentum)
        self.momentum = momentum
        self.species = Species(species)
        self.spin2 = int(spin2)
        self._key = (int(self.species), self.spin2, momentum)
        self._hash = hash(self._key)

    @property
    def spin_component(self) -> Fraction:
        return Fraction(self.spin2, 2)

    def sort_key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Mode) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        tag = "a" if self.species is Species.PARTICLE else "b"
        spin = f";{self.spin2}/2" if self.spin2 else ""
        return f"{tag}[{','.join(map(str, self.momentum))}{spin}]"


class Ladder:
    """A creation or annihilation operator attached to one mode."""

    __slots__ = ("mode", "kind", "_hash")

    def __init__(self, mode: Mode, kind: Kind):
        self.mode = mode
        self.kind = Kind(kind)
        self._hash = hash((self.kind, mode._key))

    def adjoint(self) -> "Ladder":
        flipped = Kind.ANNIHILATE if self.kind is Kind.CREATE else Kind.CREATE
        return Ladder(self.mode, flipped)

    def __eq__(self, other):
        return (
            isinstance(other, Ladder)
            and self.kind == other.kind
            and self.mode == other.mode
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        dag = "+" if self.kind is Kind.CREATE else ""
        return f"{self.mode!r}{dag}"


def create(momentum, species=Species.PARTICLE, spin2=0) -> Ladder:
    return Ladder(Mode(momentum, species, spin2), Kind.CREATE)


def annihilate(momentum, species=Species.PARTICLE, spin2=0) -> Ladder:
    return Ladder(Mode(momentum, species, spin2), Kind.ANNIHILATE)


def _momentum_dim(word) -> int | None:
    for ladder in word:
        return len(ladder.mode.momentum)
    return None


def _sort_block(factors: list, sigma: int):
    """Sort one creator or annihilator block; returns (sign, tuple) or None.

    Under Fermi grading a repeated ladder operator in a block kills the
    word (nilpotence); under Bose the sort is plain and sign-free.
    """
    sign = 1
    factors = list(factors)
    for i in range(1, len(factors)):
        j = i
        while j > 0 and factors[j - 1].mode.sort_key() > factors[j].mode.sort_key():
            factors[j - 1], factors[j] = factors[j], factors[j - 1]
            sign *= sigma
            j -= 1
    if sigma < 0:
        for i in range(1, len(factors)):
            if factors[i - 1] == factors[i]:
                return None
    return sign, tuple(factors)


def _normal_order_word(word: tuple, sigma: int) -> dict:
    """Rewrite a raw word into canonical form; returns {word: int coeff}."""
    out: dict = {}
    stack = [(1, word)]
    while stack:
        sign, w = stack.pop()
        swap_at = -1
        for i in range(len(w) - 1):
            if w[i].kind is Kind.ANNIHILATE and w[i + 1].kind is Kind.CREATE:
                swap_at = i
                break
        if swap_at >= 0:
            left, right = w[swap_at], w[swap_at + 1]
            swapped = w[:swap_at] + (right, left) + w[swap_at + 2 :]
            stack.append((sign * sigma, swapped))
            if left.mode == right.mode:
                stack.append((sign, w[:swap_at] + w[swap_at + 2 :]))
            continue
        split = 0
        while split < len(w) and w[split].kind is Kind.CREATE:
            split += 1
        creators = _sort_block(w[:split], sigma)
        annihilators = _sort_block(w[split:], sigma)
        if creators is None or annihilators is None:
            continue
        total = sign * creators[0] * annihilators[0]
        key = creators[1] + annihilators[1]
        out[key] = out.get(key, 0) + total
    return {k: v for k, v in out.items() if v}


def _check_compatible(a: "OperatorExpr", b: "OperatorExpr"):
    da, db = a.momentum_dim(), b.momentum_dim()
    if da is not None and db is not None and da != db:
        raise StructureError(
            f"mode momentum dimensions differ: {da} vs {db}"
        )


def _coerce_scalar(c) -> ExactScalar:
    if isinstance(c, ExactScalar):
        return c
    if isinstance(c, (int, Fraction)):
        return ExactScalar.from_rational(c)
    if isinstance(c, QQi):
        return ExactScalar.gaussian(c.re, c.im)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class OperatorExpr:
    """A canonical sum of normal-ordered ladder monomials.

    The term map keys are tuples of :class:`Ladder`; the empty tuple is the
    identity, so a pure number is stored as ``{(): coefficient}``.  Stored
    coefficients are pruned when they cancel syntactically; ``prune_exact``
    applies the full zero decision procedure.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None, _take=False):
        if terms is None:
            self._terms = {}
        elif _take:
            self._terms = terms
        else:
            self._terms = dict(terms)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "OperatorExpr":
        return _EXPR_ZERO

    @staticmethod
    def identity(coeff=1) -> "OperatorExpr":
        c = _coerce_scalar(coeff)
        if c.is_syntactically_zero():
            return _EXPR_ZERO
        return OperatorExpr({(): c}, _take=True)

    @staticmethod
    def of(ladder: Ladder, coeff=1) -> "OperatorExpr":
        c = _coerce_scalar(coeff)
        if c.is_syntactically_zero():
            return _EXPR_ZERO
        return OperatorExpr({(ladder,): c}, _take=True)

    @staticmethod
    def from_word(factors: Iterable[Ladder], statistics: Statistics, coeff=1) -> "OperatorExpr":
        """Build from an arbitrary (not yet ordered) product of ladders."""
        c = _coerce_scalar(coeff)
        word = tuple(factors)
        out: dict = {}
        for w, sign in _normal_order_word(word, statistics.sign).items():
            out[w] = c * sign if sign != 1 else c
        return OperatorExpr(out, _take=True)

    # -- structure --------------------------------------------------------

    def terms(self):
        return self._terms.items()

    def coefficient(self, word: tuple) -> ExactScalar:
        return self._terms.get(word, _SCALAR_ZERO)

    def momentum_dim(self) -> int | None:
        for word in self._terms:
            d = _momentum_dim(word)
            if d is not None:
                return d
        return None

    def is_syntactically_zero(self) -> bool:
        return not self._terms

    def prune_exact(self) -> "OperatorExpr":
        """Drop stored terms whose coefficients are disguised zeros."""
        return OperatorExpr(
            {w: c for w, c in self._terms.items() if not c.is_zero()},
            _take=True,
        )

    def is_scalar(self) -> bool:
        """True when no ladder factors survive exact pruning."""
        return all(not w or c.is_zero() for w, c in self._terms.items())

    def scalar_part(self) -> ExactScalar:
        return self._terms.get((), _SCALAR_ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        try:
            diff = add(self, scale(-1, other))
        except StructureError:
            return False
        return all(c.is_zero() for c in diff._terms.values())

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "0"
        bits = []
        for word in sorted(
            self._terms,
            key=lambda w: (len(w), [(f.kind, f.mode.sort_key()) for f in w]),
        ):
            c = self._terms[word]
            label = " ".join(map(repr, word)) if word else "1"
            bits.append(f"({c!r})*{label}")
        return " + ".join(bits)


_EXPR_ZERO = OperatorExpr({}, _take=True)


def add(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    """Coefficient-wise sum of two expressions."""
    _check_compatible(a, b)
    if not a._terms:
        return b
    if not b._terms:
        return a
    out = dict(a._terms)
    for word, c in b._terms.items():
        acc = out.get(word)
        if acc is None:
            out[word] = c
        else:
            s = acc + c
            if s.is_syntactically_zero():
                del out[word]
            else:
                out[word] = s
    return OperatorExpr(out, _take=True)


def scale(coeff, a: OperatorExpr) -> OperatorExpr:
    c = _coerce_scalar(coeff)
    if c.is_syntactically_zero():
        return _EXPR_ZERO
    return OperatorExpr(
        {w: c * v for w, v in a._terms.items()}, _take=True
    )


def multiply(a: OperatorExpr, b: OperatorExpr, statistics: Statistics) -> OperatorExpr:
    """Normal-ordered product under the given grading."""
    _check_compatible(a, b)
    sigma = statistics.sign
    out: dict = {}
    for wa, ca in a._terms.items():
        for wb, cb in b._terms.items():
            c = ca * cb
            for word, sign in _normal_order_word(wa + wb, sigma).items():
                value = c * sign if sign != 1 else c
                acc = out.get(word)
                if acc is None:
                    out[word] = value
                else:
                    s = acc + value
                    if s.is_syntactically_zero():
                        del out[word]
                    else:
                        out[word] = s
    return OperatorExpr(out, _take=True)


def adjoint(a: OperatorExpr, statistics: Statistics) -> OperatorExpr:
    """Hermitian adjoint: reverse factors, flip kinds, conjugate coefficients.

    Re-normal-ordering the reversed word needs the grading, which supplies
    the transposition signs.
    """
    sigma = statistics.sign
    out: dict = {}
    for word, c in a._terms.items():
        flipped = tuple(f.adjoint() for f in reversed(word))
        cc = c.conj()
        for w, sign in _normal_order_word(flipped, sigma).items():
            value = cc * sign if sign != 1 else cc
            acc = out.get(w)
            if acc is None:
                out[w] = value
            else:
                s = acc + value
                if s.is_syntactically_zero():
                    del out[w]
                else:
                    out[w] = s
    return OperatorExpr(out, _take=True)


def bracket(a: OperatorExpr, b: OperatorExpr, statistics: Statistics) -> OperatorExpr:
    """Commutator (Bose) or anticommutator (Fermi): a*b - sign*b*a."""
    ab = multiply(a, b, statistics)
    ba = multiply(b, a, statistics)
    return add(ab, scale(-statistics.bracket_sign, ba))


def vacuum_expect(a: OperatorExpr) -> ExactScalar:
    """Vacuum expectation value: the coefficient of the empty monomial."""
    return a.scalar_part()
