"""Matrix and graded-algebra checks along the spin-statistics proof chain.

The chain is mechanized as property checkers over supplied candidates: a
family of numerical matrices U^mu, a time-reversal representative D, and a
parity assignment for field components.  Each checker validates one
implication on concrete witnesses (and its negation on mutants); no
operator variational calculus is performed.

Checks, in order: anti-hermiticity of the U^mu; reality of their symmetric
and antisymmetric parts; the pairing of symmetric/antisymmetric coupling
with anticommuting/commuting components (via identical vanishing of the
kinetic bilinear in a graded symbol algebra); compatibility of a
time-reversal representative with the U family and its reality class; and
the final spin/statistics/reality consistency verdict.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import ClassificationConflict, InputError
from .exact import parse_complex_token
from .spin_reps import RealityClass, RealityKind, reality_class
from .verdict import Status, Verdict

F = Fraction


class Parity(enum.Enum):
    COMMUTING = "commuting"
    ANTICOMMUTING = "anticommuting"


class FieldClass(enum.Enum):
    FERMI = "fermi"
    BOSE = "bose"


class UMatrixSet:
    """An indexed family {U^0..U^3} of same-dimension complex matrices."""

    def __init__(self, matrices: Mapping[int, np.ndarray]):
        if not matrices:
            raise InputError("a U family needs at least one matrix")
        self.matrices = {}
        dim = None
        for mu, m in sorted(matrices.items()):
            if mu not in (0, 1, 2, 3):
                raise InputError(f"mu index must be 0..3, got {mu}")
            m = np.asarray(m)
            if m.ndim != 2 or m.shape[0] != m.shape[1]:
                raise InputError(f"U^{mu} is not square")
            if dim is None:
                dim = m.shape[0]
            elif m.shape[0] != dim:
                raise InputError("all U matrices must share one dimension")
            self.matrices[mu] = m
        self.dimension = dim

    def items(self):
        return self.matrices.items()


def decompose(matrix):
    """Split into (symmetric, antisymmetric) parts; the sum reconstructs."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError("decompose needs a square matrix")
    sym = (m + m.T) / 2
    antisym = (m - m.T) / 2
    return sym, antisym


def check_T1(u: UMatrixSet, tol: float = 1e-12, label: str = "T1") -> Verdict:
    """Each U^mu must be anti-hermitian."""
    worst = (0.0, None)
    for mu, m in u.items():
        err = np.abs(np.asarray(m, dtype=complex).conj().T + m)
        peak = float(np.max(err))
        if peak > worst[0]:
            idx = np.unravel_index(np.argmax(err), err.shape)
            worst = (peak, (mu, int(idx[0]), int(idx[1])))
    if worst[0] > tol:
        mu, i, j = worst[1]
        return Verdict(
            label, Status.FAIL,
            details={"tolerance": tol},
            residual=worst[0],
            witness={"mu": mu, "entry": [i, j]},
        )
    return Verdict(label, Status.PASS, details={"tolerance": tol}, residual=worst[0])


def check_T2(u: UMatrixSet, tol: float = 1e-12, label: str = "T2") -> Verdict:
    """Symmetric parts imaginary, antisymmetric parts real (given T1)."""
    worst = 0.0
    witness = None
    for mu, m in u.items():
        m = np.asarray(m, dtype=complex)
        sym, antisym = decompose(m)
        sym_err = float(np.max(np.abs(sym.conj() + sym))) if sym.size else 0.0
        anti_err = float(np.max(np.abs(antisym.conj() - antisym))) if antisym.size else 0.0
        for part, err in (("symmetric", sym_err), ("antisymmetric", anti_err)):
            if err > worst:
                worst, witness = err, {"mu": mu, "part": part}
    if worst > tol:
        return Verdict(
            label, Status.FAIL, details={"tolerance": tol},
            residual=worst, witness=witness,
        )
    return Verdict(label, Status.PASS, details={"tolerance": tol}, residual=worst)


@dataclass(frozen=True)
class Classification:
    """Component partition induced by the symmetry sectors of the U family."""

    fermi: tuple[int, ...]
    bose: tuple[int, ...]
    unconstrained: tuple[int, ...]

    def field_class(self) -> FieldClass:
        if self.fermi and not self.bose:
            return FieldClass.FERMI
        if self.bose and not self.fermi:
            return FieldClass.BOSE
        raise InputError("components are not uniformly classified")


def classify(u: UMatrixSet, tol: float = 1e-12) -> Classification:
    """Components coupled through U_S are Fermi, through U_A Bose.

    A component touched by both sectors has no consistent statistics and
    raises :class:`ClassificationConflict`; untouched components are
    reported as unconstrained rather than assigned a class.
    """
    n = u.dimension
    in_sym = [False] * n
    in_anti = [False] * n
    for _, m in u.items():
        sym, antisym = decompose(np.asarray(m, dtype=complex))
        for r in range(n):
            if np.max(np.abs(sym[r])) > tol or np.max(np.abs(sym[:, r])) > tol:
                in_sym[r] = True
            if np.max(np.abs(antisym[r])) > tol or np.max(np.abs(antisym[:, r])) > tol:
                in_anti[r] = True
    conflicted = [r for r in range(n) if in_sym[r] and in_anti[r]]
    if conflicted:
        raise ClassificationConflict(conflicted)
    return Classification(
        fermi=tuple(r for r in range(n) if in_sym[r]),
        bose=tuple(r for r in range(n) if in_anti[r]),
        unconstrained=tuple(r for r in range(n) if not in_sym[r] and not in_anti[r]),
    )


# -- graded symbol algebra ------------------------------------------------


@dataclass(frozen=True)
class GradedSymbol:
    """A field component chi^r or its derivative d_mu chi^r, with parity."""

    index: int
    parity: Parity
    deriv_mu: int | None = None

    def sort_key(self):
        rank = 0 if self.deriv_mu is None else 1 + self.deriv_mu
        return (rank, self.index)

    def __repr__(self):
        head = f"d{self.deriv_mu}." if self.deriv_mu is not None else ""
        tag = "f" if self.parity is Parity.ANTICOMMUTING else "c"
        return f"{head}chi{self.index}{tag}"


def _canonical_word(symbols: tuple):
    """Sort a word; returns (sign, word) or None when it vanishes."""
    sign = 1
    lst = list(symbols)
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1].sort_key() > lst[j].sort_key():
            if (
                lst[j - 1].parity is Parity.ANTICOMMUTING
                and lst[j].parity is Parity.ANTICOMMUTING
            ):
                sign = -sign
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            j -= 1
    for i in range(1, len(lst)):
        if lst[i - 1] == lst[i] and lst[i].parity is Parity.ANTICOMMUTING:
            return None
    return sign, tuple(lst)


class GradedPoly:
    """Canonical sum of ordered words in graded symbols, complex coefficients."""

    def __init__(self, terms: Mapping | None = None):
        self._terms: dict = {}
        if terms:
            for word, coeff in terms.items():
                self.add_word(word, coeff)

    def add_word(self, word, coeff: complex):
        if coeff == 0:
            return
        reduced = _canonical_word(tuple(word))
        if reduced is None:
            return
        sign, canon = reduced
        value = self._terms.get(canon, 0j) + sign * coeff
        if value == 0:
            self._terms.pop(canon, None)
        else:
            self._terms[canon] = value

    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, GradedPoly) and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join(
            f"({c})*{' '.join(map(repr, w))}" for w, c in sorted(
                self._terms.items(), key=lambda kv: [s.sort_key() for s in kv[0]]
            )
        )


def lagrangian_kin(u: UMatrixSet, parities: Sequence[Parity]) -> GradedPoly:
    """Expand (1/2)[chi^r U^mu_{rl} d_mu chi^l - d_mu chi^r U^mu_{rl} chi^l].

    Derivatives are independent symbols with the parity of their field, so
    the expansion probes exactly the grading-driven cancellations: it
    vanishes identically for symmetric U with commuting components and for
    antisymmetric U with anticommuting components.
    """
    n = u.dimension
    if len(parities) != n:
        raise InputError(f"need {n} parities, got {len(parities)}")
    poly = GradedPoly()
    for mu, m in u.items():
        m = np.asarray(m, dtype=complex)
        for r in range(n):
            chi_r = GradedSymbol(r, parities[r])
            dchi_r = GradedSymbol(r, parities[r], mu)
            for l in range(n):
                coeff = m[r, l]
                if coeff == 0:
                    continue
                chi_l = GradedSymbol(l, parities[l])
                dchi_l = GradedSymbol(l, parities[l], mu)
                poly.add_word((chi_r, dchi_l), coeff / 2)
                poly.add_word((dchi_r, chi_l), -coeff / 2)
    return poly


# -- time reversal and the final verdict ----------------------------------


def check_T5(
    d_matrix,
    u: UMatrixSet,
    cls: FieldClass,
    tol: float = 1e-10,
    label: str = "T5",
) -> Verdict:
    """D U^mu D^-1 = (-1)^{delta_mu0} (+-) U^mu, with the sign (+) on the
    antisymmetric and (-) on the symmetric part, and D imaginary for Fermi
    / real for Bose components."""
    d = np.asarray(d_matrix, dtype=complex)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise InputError("D must be square")
    if abs(np.linalg.det(d)) < 1e-12:
        raise InputError("D must be invertible")
    d_inv = np.linalg.inv(d)
    d_class = reality_class(d, tol=tol)
    required = RealityKind.IMAGINARY if cls is FieldClass.FERMI else RealityKind.REAL
    per_mu = {}
    worst = 0.0
    for mu, m in u.items():
        sym, antisym = decompose(np.asarray(m, dtype=complex))
        parity_sign = -1 if mu == 0 else 1
        sym_err = float(np.max(np.abs(d @ sym @ d_inv - parity_sign * (-1) * sym)))
        anti_err = float(np.max(np.abs(d @ antisym @ d_inv - parity_sign * (+1) * antisym)))
        per_mu[mu] = {"symmetric": sym_err, "antisymmetric": anti_err}
        worst = max(worst, sym_err, anti_err)
    details = {
        "per_mu_residuals": per_mu,
        "reality_class": d_class.kind.value,
        "required_class": required.value,
        "tolerance": tol,
    }
    if d_class.kind is not required:
        return Verdict(
            label, Status.FAIL, details,
            witness={"clause": "reality", "found": d_class.kind.value},
        )
    if worst > tol:
        return Verdict(
            label, Status.FAIL, details,
            residual=worst, witness={"clause": "conjugation"},
        )
    return Verdict(label, Status.PASS, details, residual=worst)


def spin_statistics_verdict(
    spin,
    cls: FieldClass,
    d_class: RealityClass | RealityKind,
    label: str = "T7",
) -> Verdict:
    """Half-integer spin needs Fermi statistics and imaginary D; integer
    spin needs Bose statistics and real D."""
    s = F(spin)
    if s < 0 or (2 * s).denominator != 1:
        raise InputError(f"spin must be a non-negative half-integer, got {s}")
    kind = d_class.kind if isinstance(d_class, RealityClass) else d_class
    half_integer = bool((2 * s) % 2)
    expected_cls = FieldClass.FERMI if half_integer else FieldClass.BOSE
    expected_kind = RealityKind.IMAGINARY if half_integer else RealityKind.REAL
    problems = []
    if cls is not expected_cls:
        problems.append(
            f"statistics pairing (T5 side): spin {s} needs {expected_cls.value}, got {cls.value}"
        )
    if kind is not expected_kind:
        problems.append(
            f"reality class (T6 side): spin {s} needs {expected_kind.value} D, got {kind.value}"
        )
    details = {
        "spin": str(s),
        "field_class": cls.value,
        "d_reality": kind.value,
    }
    if problems:
        return Verdict(label, Status.FAIL, details, witness={"violations": problems})
    return Verdict(label, Status.PASS, details)


# -- plain-text matrix file -----------------------------------------------


def parse_rational_complex(token: str) -> complex:
    re_part, im_part = parse_complex_token(token)
    return complex(re_part, im_part)


def load_umatrix_set(text: str) -> UMatrixSet:
    """Parse a matrix family: ``dim n [count k]`` then k*n*n tokens."""
    tokens = []
    header = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if parts[0] != "dim" or len(parts) not in (2, 4):
                raise InputError("header must be 'dim <n> [count <k>]'")
            try:
                n = int(parts[1])
                k = int(parts[3]) if len(parts) == 4 else 4
            except ValueError as exc:
                raise InputError(f"bad header {line!r}") from exc
            if len(parts) == 4 and parts[2] != "count":
                raise InputError("header must be 'dim <n> [count <k>]'")
            header = (n, k)
            continue
        tokens.extend(line.split())
    if header is None:
        raise InputError("missing 'dim' header")
    n, k = header
    if len(tokens) != k * n * n:
        raise InputError(
            f"expected {k * n * n} entries for {k} matrices of dim {n}, got {len(tokens)}"
        )
    matrices = {}
    pos = 0
    for mu in range(k):
        m = np.empty((n, n), dtype=complex)
        for i in range(n):
            for j in range(n):
                m[i, j] = parse_rational_complex(tokens[pos])
                pos += 1
        matrices[mu] = m
    return UMatrixSet(matrices)
