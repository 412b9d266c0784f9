"""Exact scalar arithmetic over Gaussian rationals, radicals, and unit phases.

A scalar is a finite sum of terms

    c * sqrt(rho) * exp(i * theta),    theta = pi*p + sum_v q_v * v

with c a Gaussian rational, rho a positive square-free rational, p and the
q_v rationals, and v ranging over declared real symbols.  Symbols are
treated as rationally independent of pi and of each other, so two phases
are equal only when their exponents agree exactly.  Sums of roots of unity
(phases with no symbols) are decided by reduction modulo cyclotomic
polynomials, which makes zero-testing exact rather than numerical.

Phases with exponent an integer multiple of pi/2 are folded into the
Gaussian-rational coefficient, so e.g. ``phase(pi=Fraction(1,2))`` and
``gaussian(0, 1)`` are structurally identical.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ConsistencyError, InputError

_ZERO = Fraction(0)
_ONE = Fraction(1)
_TWO = Fraction(2)

# Built-in phase symbols.  PI_SQUARED stands for the real number pi**2 and
# RADIAN for 1, so an exponent q*RADIAN is the plain angle q in radians.
PI_SQUARED = "pi^2"
RADIAN = "rad"

_DEFAULT_SYMBOL_VALUES = {PI_SQUARED: math.pi**2, RADIAN: 1.0}


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction, got {type(x).__name__}")


class QQi:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    def __add__(self, other: "QQi") -> "QQi":
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QQi") -> "QQi":
        return QQi(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QQi") -> "QQi":
        a, b, c, d = self.re, self.im, other.re, other.im
        if not d:
            return QQi(a * c, b * c)
        if not b:
            return QQi(a * c, a * d)
        return QQi(a * c - b * d, a * d + b * c)

    def __neg__(self) -> "QQi":
        return QQi(-self.re, -self.im)

    def conj(self) -> "QQi":
        return QQi(self.re, -self.im)

    def times_i_power(self, k: int) -> "QQi":
        k %= 4
        if k == 0:
            return self
        if k == 1:
            return QQi(-self.im, self.re)
        if k == 2:
            return QQi(-self.re, -self.im)
        return QQi(self.im, -self.re)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __eq__(self, other) -> bool:
        return isinstance(other, QQi) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self):
        return f"QQi({self.re}, {self.im})"


_QQI_ZERO = QQi()
_QQI_ONE = QQi(1)


class Phase:
    """A unit complex number exp(i*(pi*p + sum q_v * v)), exponent exact.

    ``pi_part`` is stored modulo 2 (exp is 2*pi periodic); ``var_part`` is a
    sorted tuple of (symbol, rational coefficient) with no zero entries.
    """

    __slots__ = ("pi_part", "var_part", "_hash")

    def __init__(self, pi_part: Fraction, var_part: tuple):
        self.pi_part = pi_part
        self.var_part = var_part
        self._hash = hash((pi_part, var_part))

    @staticmethod
    def make(pi_part=_ZERO, var_part: Iterable = ()) -> "Phase":
        pi_part = _as_fraction(pi_part)
        if pi_part < 0 or pi_part >= 2:
            pi_part %= _TWO
        cleaned = tuple(
            sorted((str(v), _as_fraction(q)) for v, q in var_part if q)
        )
        return Phase(pi_part, cleaned)

    def mul(self, other: "Phase") -> "Phase":
        pi_part = (self.pi_part + other.pi_part) % _TWO
        if not self.var_part:
            return Phase(pi_part, other.var_part)
        if not other.var_part:
            return Phase(pi_part, self.var_part)
        merged = dict(self.var_part)
        for v, q in other.var_part:
            s = merged.get(v, _ZERO) + q
            if s:
                merged[v] = s
            else:
                del merged[v]
        return Phase(pi_part, tuple(sorted(merged.items())))

    def conj(self) -> "Phase":
        return Phase(
            (-self.pi_part) % _TWO,
            tuple((v, -q) for v, q in self.var_part),
        )

    def is_trivial(self) -> bool:
        return not self.pi_part and not self.var_part

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Phase)
            and self.pi_part == other.pi_part
            and self.var_part == other.var_part
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Phase(pi*{self.pi_part}, {self.var_part})"


_TRIVIAL_PHASE = Phase(_ZERO, ())


def _fold_phase(phase: Phase, coeff: QQi) -> tuple[Phase, QQi]:
    # exp(i*pi*k/2) is a Gaussian rational; absorb it into the coefficient.
    if not phase.var_part:
        den = phase.pi_part.denominator
        if den <= 2:
            quarter_turns = phase.pi_part.numerator * (2 // den)
            return _TRIVIAL_PHASE, coeff.times_i_power(quarter_turns)
    return phase, coeff


def phase_term(pi_part, var_part: Iterable = ()) -> tuple[Phase, QQi]:
    """(phase, coefficient) pair for a unit phase, folding quarter turns."""
    return _fold_phase(Phase.make(pi_part, var_part), _QQI_ONE)


def parse_complex_token(token: str) -> tuple[Fraction, Fraction]:
    """Exact (re, im) from a ``re+imi`` token with rational parts.

    Accepts pure reals ("3", "-1/2"), pure imaginaries ("2i", "-i"), and
    combined forms ("1/2+3/4i", "1-1/3i").
    """
    s = token.strip()
    if not s:
        raise InputError("empty complex token")
    try:
        if s.endswith("i"):
            body = s[:-1]
            idx = max(body.rfind("+"), body.rfind("-"))
            if idx <= 0:
                re_part = Fraction(0)
                im_str = body
            else:
                re_part = Fraction(body[:idx])
                im_str = body[idx:]
            if im_str in ("", "+"):
                im_part = Fraction(1)
            elif im_str == "-":
                im_part = Fraction(-1)
            else:
                im_part = Fraction(im_str)
            return re_part, im_part
        return Fraction(s), Fraction(0)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad complex token {token!r}") from exc


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _square_free_split(r: Fraction) -> tuple[Fraction, Fraction]:
    """Split positive r as (s, f) with r = s**2 * f and f square-free."""
    if r <= 0:
        raise InputError(f"radicand must be positive, got {r}")
    s_num, f_num = 1, 1
    for p, e in _factorize(r.numerator).items():
        s_num *= p ** (e // 2)
        if e % 2:
            f_num *= p
    s_den, f_den = 1, 1
    for p, e in _factorize(r.denominator).items():
        s_den *= p ** (e // 2)
        if e % 2:
            f_den *= p
    # keep the square-free part integral in the numerator sense: sqrt(a/b)
    # with b square-free is normalized as sqrt(a*b)/b.
    s = Fraction(s_num, s_den * f_den)
    f = Fraction(f_num * f_den)
    return s, f


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[Fraction, ...]:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    # Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, by exact polynomial division.
    poly = [Fraction(-1)] + [_ZERO] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_poly(d))
    return tuple(poly)


def _poly_divide_exact(num: list, den: tuple) -> list:
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [_ZERO] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / lead
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    return out


def _poly_mod(coeffs: list, modulus: tuple) -> list:
    dn = len(modulus) - 1
    lead = modulus[-1]
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, dn - 1, -1):
        c = coeffs[i] / lead
        if c:
            for j in range(dn + 1):
                coeffs[i - dn + j] -= c * modulus[j]
    return coeffs[:dn]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _root_of_unity_sum_reduce(terms: list[tuple[Fraction, QQi]]) -> list:
    """Canonical coordinates of sum_j c_j * exp(i*pi*p_j) in Q(zeta_M)."""
    order = 4  # always include i
    for p, _ in terms:
        order = _lcm(order, 2 * p.denominator)
    coeffs = [_ZERO] * order
    quarter = order // 4
    for p, c in terms:
        e = int(p * order / 2) % order
        coeffs[e] += c.re
        coeffs[(e + quarter) % order] += c.im
    return _poly_mod(coeffs, cyclotomic_poly(order))


def _root_of_unity_sum_is_zero(terms: list[tuple[Fraction, QQi]]) -> bool:
    return all(not c for c in _root_of_unity_sum_reduce(terms))


class ExactScalar:
    """A sum of exact terms c * sqrt(rho) * phase; supports ring arithmetic.

    Instances are immutable by convention: no method mutates ``self`` and
    term dictionaries are never shared with callers.  Stored terms merge
    only syntactically; ``is_zero`` and ``==`` apply the full cyclotomic
    decision procedure, so a structurally non-empty scalar can still be
    (and test as) zero.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None, _take=False):
        if terms is None:
            self._terms = {}
        elif _take:
            self._terms = terms
        else:
            self._terms = dict(terms)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "ExactScalar":
        return _SCALAR_ZERO

    @staticmethod
    def one() -> "ExactScalar":
        return _SCALAR_ONE

    @staticmethod
    def from_rational(x) -> "ExactScalar":
        return ExactScalar.gaussian(x, 0)

    @staticmethod
    def gaussian(re, im=0) -> "ExactScalar":
        c = QQi(re, im)
        if c.is_zero():
            return _SCALAR_ZERO
        return ExactScalar({(_ONE, _TRIVIAL_PHASE): c}, _take=True)

    @staticmethod
    def phase(pi_part=_ZERO, var_part: Iterable = ()) -> "ExactScalar":
        """The unit scalar exp(i*(pi*pi_part + sum q_v*v))."""
        ph, c = _fold_phase(Phase.make(pi_part, var_part), _QQI_ONE)
        return ExactScalar({(_ONE, ph): c}, _take=True)

    @staticmethod
    def sqrt(r) -> "ExactScalar":
        """The positive square root of a positive rational."""
        s, f = _square_free_split(_as_fraction(r))
        return ExactScalar({(f, _TRIVIAL_PHASE): QQi(s)}, _take=True)

    @staticmethod
    def _from_term_dict(terms: dict) -> "ExactScalar":
        return ExactScalar(terms, _take=True)

    @staticmethod
    def sum(items: Iterable["ExactScalar"]) -> "ExactScalar":
        """Merge many scalars without quadratic copying."""
        out: dict = {}
        for s in items:
            for key, c in s._terms.items():
                acc = out.get(key)
                if acc is None:
                    out[key] = c
                else:
                    t = acc + c
                    if t.is_zero():
                        del out[key]
                    else:
                        out[key] = t
        return ExactScalar(out, _take=True)

    def mul_into(self, other: "ExactScalar", dst: dict) -> None:
        """Accumulate self*other into a raw term dict.

        Hot-loop companion to :meth:`sum`; ``dst`` must later be wrapped by
        :meth:`from_accumulator`.  Avoids one scalar allocation per product.
        """
        for (rho1, ph1), c1 in self._terms.items():
            for (rho2, ph2), c2 in other._terms.items():
                c = c1 * c2
                if rho1 == rho2:
                    rho = _ONE
                    if rho1 != _ONE:
                        c = c * QQi(rho1)
                elif rho1 == _ONE:
                    rho = rho2
                elif rho2 == _ONE:
                    rho = rho1
                else:
                    extracted, rho = _square_free_split(rho1 * rho2)
                    c = c * QQi(extracted)
                ph, c = _fold_phase(ph1.mul(ph2), c)
                key = (rho, ph)
                acc = dst.get(key)
                dst[key] = c if acc is None else acc + c

    @staticmethod
    def from_accumulator(dst: dict) -> "ExactScalar":
        return ExactScalar(
            {k: v for k, v in dst.items() if not v.is_zero()}, _take=True
        )

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "ExactScalar":
        other = _coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for key, c in other._terms.items():
            acc = out.get(key)
            if acc is None:
                out[key] = c
            else:
                s = acc + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
        return ExactScalar(out, _take=True)

    __radd__ = __add__

    def __sub__(self, other) -> "ExactScalar":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ExactScalar":
        return _coerce(other) + (-self)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(
            {k: -c for k, c in self._terms.items()}, _take=True
        )

    def __mul__(self, other) -> "ExactScalar":
        other = _coerce(other)
        mine, theirs = self._terms, other._terms
        if not mine or not theirs:
            return _SCALAR_ZERO
        out: dict = {}
        for (rho1, ph1), c1 in mine.items():
            for (rho2, ph2), c2 in theirs.items():
                c = c1 * c2
                if rho1 == rho2:
                    rho = _ONE
                    if rho1 != _ONE:
                        c = c * QQi(rho1)
                elif rho1 == _ONE:
                    rho = rho2
                elif rho2 == _ONE:
                    rho = rho1
                else:
                    extracted, rho = _square_free_split(rho1 * rho2)
                    c = c * QQi(extracted)
                ph, c = _fold_phase(ph1.mul(ph2), c)
                key = (rho, ph)
                acc = out.get(key)
                if acc is None:
                    out[key] = c
                else:
                    s = acc + c
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
        return ExactScalar(out, _take=True)

    __rmul__ = __mul__

    def conj(self) -> "ExactScalar":
        out = {}
        for (rho, ph), c in self._terms.items():
            ph2, c2 = _fold_phase(ph.conj(), c.conj())
            key = (rho, ph2)
            acc = out.get(key)
            out[key] = c2 if acc is None else acc + c2
        return ExactScalar(out, _take=True)

    def abs2(self) -> "ExactScalar":
        return self * self.conj()

    # -- predicates -------------------------------------------------------

    def _grouped(self) -> dict:
        """Terms keyed by (radical, symbol form), values (pi exponent, coeff)."""
        groups: dict = {}
        for (rho, ph), c in self._terms.items():
            groups.setdefault((rho, ph.var_part), []).append((ph.pi_part, c))
        return groups

    def is_zero(self) -> bool:
        if not self._terms:
            return True
        return all(
            _root_of_unity_sum_is_zero(terms)
            for terms in self._grouped().values()
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExactScalar, int, Fraction, QQi)):
            return NotImplemented
        return (self - _coerce(other)).is_zero()

    __hash__ = None  # mathematical equality is not hash-compatible

    def is_syntactically_zero(self) -> bool:
        return not self._terms

    # -- conversions -------------------------------------------------------

    def as_fraction(self) -> Fraction:
        """Value as an exact rational; raises if the value is not rational."""
        total = _ZERO
        for (rho, var_part), terms in self._grouped().items():
            if rho == _ONE and not var_part:
                residue = _root_of_unity_sum_reduce(terms)
                if any(residue[1:]):
                    raise ConsistencyError(f"scalar is not rational: {self!r}")
                total += residue[0]
            elif not _root_of_unity_sum_is_zero(terms):
                raise ConsistencyError(f"scalar is not rational: {self!r}")
        return total

    def to_complex(self, symbols: Mapping[str, float] | None = None) -> complex:
        values = dict(_DEFAULT_SYMBOL_VALUES)
        if symbols:
            values.update(symbols)
        total = 0j
        for (rho, ph), c in self._terms.items():
            theta = math.pi * float(ph.pi_part)
            for v, q in ph.var_part:
                theta += float(q) * values[v]
            total += c.to_complex() * math.sqrt(rho) * cmath.exp(1j * theta)
        return total

    def terms(self):
        """Iterate (rho, phase, coefficient) triples of the stored form."""
        for (rho, ph), c in self._terms.items():
            yield rho, ph, c

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (rho, ph), c in sorted(
            self._terms.items(), key=lambda kv: (kv[0][0], kv[0][1].pi_part)
        ):
            bits = []
            if c.im == 0:
                bits.append(str(c.re))
            elif c.re == 0:
                bits.append(f"{c.im}i")
            else:
                bits.append(f"({c.re}{'+' if c.im > 0 else ''}{c.im}i)")
            if rho != _ONE:
                bits.append(f"sqrt({rho})")
            if ph.pi_part:
                bits.append(f"exp(i*pi*{ph.pi_part})")
            for v, q in ph.var_part:
                bits.append(f"exp(i*{q}*{v})")
            parts.append("*".join(bits))
        return " + ".join(parts)


def _coerce(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar.gaussian(x, 0)
    if isinstance(x, QQi):
        return ExactScalar.gaussian(x.re, x.im)
    raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")


_SCALAR_ZERO = ExactScalar({}, _take=True)
_SCALAR_ONE = ExactScalar({(_ONE, _TRIVIAL_PHASE): _QQI_ONE}, _take=True)
