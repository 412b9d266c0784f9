"""Galilei group elements, projective phases, and Lie-algebra tables.

Group elements are (b, a, v, R): time shift, translation, boost, rotation.
Entries may be exact ``Fraction`` values or floats; arithmetic stays exact
whenever every input is rational, and orthogonality/associativity checks
switch between exact equality and a 1e-12 tolerance accordingly.

The projective phase of a massive field picks up gamma(g; x, t) =
|v|^2 t / 2 + v . R x under g, and the group multiplication of the lifted
operators acquires the Bargmann cocycle zeta(g, g') extracted here by
sampling the defining combination of gammas and checking it is a constant
in (x, t).

Algebra tables hold structure constants [X, Y] = sum_Z c * Z over a named
basis with real rational c (anti-hermitian generator normalization), so
Jacobi and centrality checks run in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import ConsistencyError, InputError
from .verdict import Status, Verdict

F = Fraction

_IDENTITY3 = (
    (F(1), F(0), F(0)),
    (F(0), F(1), F(0)),
    (F(0), F(0), F(1)),
)


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction))


def vec3(values) -> tuple:
    out = tuple(F(v) if _is_exact(v) else float(v) for v in values)
    if len(out) != 3:
        raise InputError(f"expected a 3-vector, got {values!r}")
    return out


def vdot(u, w):
    return u[0] * w[0] + u[1] * w[1] + u[2] * w[2]


def vadd(u, w):
    return (u[0] + w[0], u[1] + w[1], u[2] + w[2])


def vsub(u, w):
    return (u[0] - w[0], u[1] - w[1], u[2] - w[2])


def vscale(c, u):
    return (c * u[0], c * u[1], c * u[2])


def matvec(R, x):
    return tuple(vdot(row, x) for row in R)


def matmul(A, B):
    cols = tuple(zip(*B))
    return tuple(tuple(vdot(row, col) for col in cols) for row in A)


def transpose(R):
    return tuple(zip(*R))


def _mat3(rows) -> tuple:
    rows = tuple(vec3(row) for row in rows)
    if len(rows) != 3:
        raise InputError("rotation must be a 3x3 matrix")
    return rows


def _matrix_is_exact(R) -> bool:
    return all(_is_exact(x) for row in R for x in row)


def det3(R):
    return (
        R[0][0] * (R[1][1] * R[2][2] - R[1][2] * R[2][1])
        - R[0][1] * (R[1][0] * R[2][2] - R[1][2] * R[2][0])
        + R[0][2] * (R[1][0] * R[2][1] - R[1][1] * R[2][0])
    )


@dataclass(frozen=True)
class GalileiElement:
    """(b, a, v, R): t' = t + b, x' = R x + v t + a."""

    time_shift: Fraction | float
    translation: tuple
    boost: tuple
    rotation: tuple

    def __post_init__(self):
        b = self.time_shift
        object.__setattr__(
            self, "time_shift", F(b) if _is_exact(b) else float(b)
        )
        object.__setattr__(self, "translation", vec3(self.translation))
        object.__setattr__(self, "boost", vec3(self.boost))
        R = _mat3(self.rotation)
        object.__setattr__(self, "rotation", R)
        gram = matmul(transpose(R), R)
        exact = _matrix_is_exact(R)
        for i in range(3):
            for j in range(3):
                target = 1 if i == j else 0
                err = gram[i][j] - target
                if (exact and err != 0) or (not exact and abs(err) > 1e-12):
                    raise InputError("rotation is not orthogonal")
        d = det3(R) - 1
        if (exact and d != 0) or (not exact and abs(d) > 1e-12):
            raise InputError("rotation must be proper (det = +1)")

    def is_exact(self) -> bool:
        return (
            _is_exact(self.time_shift)
            and all(_is_exact(x) for x in self.translation)
            and all(_is_exact(x) for x in self.boost)
            and _matrix_is_exact(self.rotation)
        )


IDENTITY = GalileiElement(F(0), (0, 0, 0), (0, 0, 0), _IDENTITY3)


def translation(a) -> GalileiElement:
    return GalileiElement(0, a, (0, 0, 0), _IDENTITY3)


def boost(v) -> GalileiElement:
    return GalileiElement(0, (0, 0, 0), v, _IDENTITY3)


def time_shift(b) -> GalileiElement:
    return GalileiElement(b, (0, 0, 0), (0, 0, 0), _IDENTITY3)


def rotation(R) -> GalileiElement:
    return GalileiElement(0, (0, 0, 0), (0, 0, 0), R)


def axis_angle_rotation(axis, angle: float) -> GalileiElement:
    """Numeric rotation by ``angle`` about a (not necessarily unit) axis."""
    ax = [float(c) for c in axis]
    norm = math.sqrt(sum(c * c for c in ax))
    if norm == 0:
        raise InputError("rotation axis must be nonzero")
    ux, uy, uz = (c / norm for c in ax)
    c, s = math.cos(angle), math.sin(angle)
    t = 1 - c
    R = (
        (c + ux * ux * t, ux * uy * t - uz * s, ux * uz * t + uy * s),
        (uy * ux * t + uz * s, c + uy * uy * t, uy * uz * t - ux * s),
        (uz * ux * t - uy * s, uz * uy * t + ux * s, c + uz * uz * t),
    )
    return rotation(R)


def rotation_quarter_turn(axis_index: int, turns: int = 1) -> GalileiElement:
    """Exact rotation by ``turns`` right angles about a coordinate axis."""
    R = _IDENTITY3
    one = (
        ((F(1), F(0), F(0)), (F(0), F(0), F(-1)), (F(0), F(1), F(0))),
        ((F(0), F(0), F(1)), (F(0), F(1), F(0)), (F(-1), F(0), F(0))),
        ((F(0), F(-1), F(0)), (F(1), F(0), F(0)), (F(0), F(0), F(1))),
    )[axis_index]
    for _ in range(turns % 4):
        R = matmul(one, R)
    return rotation(R)


def act(g: GalileiElement, x, t):
    """Spacetime action: (R x + v t + a, t + b)."""
    x = vec3(x)
    return vadd(vadd(matvec(g.rotation, x), vscale(t, g.boost)), g.translation), t + g.time_shift


def compose(g: GalileiElement, g2: GalileiElement) -> GalileiElement:
    """The element acting as g after g2: act(compose(g,g2), p) = act(g, act(g2, p))."""
    return GalileiElement(
        g.time_shift + g2.time_shift,
        vadd(
            g.translation,
            vadd(matvec(g.rotation, g2.translation), vscale(g2.time_shift, g.boost)),
        ),
        vadd(g.boost, matvec(g.rotation, g2.boost)),
        matmul(g.rotation, g2.rotation),
    )


def inverse(g: GalileiElement) -> GalileiElement:
    Rt = transpose(g.rotation)
    shifted = vsub(g.translation, vscale(g.time_shift, g.boost))
    return GalileiElement(
        -g.time_shift,
        vscale(-1, matvec(Rt, shifted)),
        vscale(-1, matvec(Rt, g.boost)),
        Rt,
    )


def gamma(g: GalileiElement, m, x, t):
    """Projective phase exponent m * (|v|^2 t / 2 + v . R x)."""
    return m * _gamma_geometric(g, vec3(x), t)


def _gamma_geometric(g: GalileiElement, x, t):
    v = g.boost
    return F(1, 2) * vdot(v, v) * t + vdot(v, matvec(g.rotation, x))


_SAMPLE_POINTS = (
    ((0, 0, 0), F(0)),
    ((1, 0, 0), F(0)),
    ((0, 1, 0), F(0)),
    ((0, 0, 1), F(1)),
    ((1, 1, 0), F(2)),
    ((1, -2, 3), F(1)),
    ((F(1, 2), F(1, 3), F(1, 5)), F(2, 3)),
    ((-1, 2, -2), F(1, 2)),
    ((2, 1, 1), F(1)),
)


def cocycle_exponent(
    g: GalileiElement,
    g2: GalileiElement,
    m,
    sample_points: Sequence = _SAMPLE_POINTS,
    tol: float = 1e-10,
):
    """The Bargmann phase zeta(g, g2) for mass m.

    Evaluates Delta(x, t) = gamma(g2; x,t) + gamma(g; g2.(x,t))
    - gamma(g*g2; x,t) at every sample point and requires it constant;
    a dependence on (x, t) signals an inconsistent compose or gamma.
    """
    if len(sample_points) < 8:
        raise InputError("need at least 8 sample points")
    composed = compose(g, g2)
    exact = g.is_exact() and g2.is_exact()
    delta0 = None
    for x, t in sample_points:
        x = vec3(x)
        moved_x, moved_t = act(g2, x, t)
        delta = (
            _gamma_geometric(g2, x, t)
            + _gamma_geometric(g, moved_x, moved_t)
            - _gamma_geometric(composed, x, t)
        )
        if delta0 is None:
            delta0 = delta
        else:
            err = delta - delta0
            if (exact and err != 0) or (not exact and abs(err) > tol):
                raise ConsistencyError(
                    f"cocycle exponent depends on the sample point: "
                    f"{delta} vs {delta0}"
                )
    return m * delta0


# -- Lie algebra tables -------------------------------------------------


class AlgebraTable:
    """Structure constants [X, Y] = sum_Z c Z over a named basis.

    Brackets are stored for both orientations with antisymmetry enforced;
    missing pairs are zero.
    """

    def __init__(self, basis: Sequence[str], brackets: Mapping):
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise InputError("duplicate basis labels")
        index = set(self.basis)
        table: dict = {}
        for (x, y), vec in brackets.items():
            if x not in index or y not in index:
                raise InputError(f"bracket [{x},{y}] uses unknown labels")
            cleaned = {}
            for z, c in vec.items():
                if z not in index:
                    raise InputError(f"bracket [{x},{y}] targets unknown {z}")
                c = F(c)
                if c:
                    cleaned[z] = c
            if not cleaned:
                continue
            negated = {z: -c for z, c in cleaned.items()}
            for key, value in (((x, y), cleaned), ((y, x), negated)):
                if key in table and table[key] != value:
                    raise InputError(
                        f"antisymmetry conflict on bracket [{key[0]},{key[1]}]"
                    )
                table[key] = value
        self._table = table

    def bracket(self, x: str, y: str) -> dict:
        return dict(self._table.get((x, y), {}))

    def nonzero_brackets(self):
        seen = set()
        for (x, y), vec in self._table.items():
            if (y, x) in seen:
                continue
            seen.add((x, y))
            yield (x, y), dict(vec)

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraTable)
            and self.basis == other.basis
            and self._table == other._table
        )

    def with_bracket(self, x: str, y: str, vec: Mapping) -> "AlgebraTable":
        """A copy with one bracket replaced (used to build mutants)."""
        brackets = {
            key: dict(v) for key, v in self.nonzero_brackets()
        }
        brackets.pop((x, y), None)
        brackets.pop((y, x), None)
        cleaned = {z: F(c) for z, c in vec.items() if F(c)}
        if cleaned:
            brackets[(x, y)] = cleaned
        return AlgebraTable(self.basis, brackets)


_EPS = {
    (1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
    (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1,
}


def _vector_rotations(brackets: dict, family: str):
    for (i, j, k), sign in _EPS.items():
        key = (f"J{i}", f"{family}{j}")
        vec = brackets.setdefault(key, {})
        vec[f"{family}{k}"] = F(sign)


def extended_galilei_table() -> AlgebraTable:
    """Central extension: [K_i, P_j] = delta_ij M with M commuting with all."""
    basis = ("H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3", "M")
    brackets: dict = {}
    _vector_rotations(brackets, "J")
    _vector_rotations(brackets, "P")
    _vector_rotations(brackets, "K")
    for i in (1, 2, 3):
        brackets[(f"K{i}", "H")] = {f"P{i}": F(1)}
        brackets[(f"K{i}", f"P{i}")] = {"M": F(1)}
    return AlgebraTable(basis, brackets)


def poincare_table() -> AlgebraTable:
    """Ten-generator table with [K_i, P_j] = delta_ij H, [K_i, K_j] = -eps J_k."""
    basis = ("H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3")
    brackets: dict = {}
    _vector_rotations(brackets, "J")
    _vector_rotations(brackets, "P")
    _vector_rotations(brackets, "K")
    for i in (1, 2, 3):
        brackets[(f"K{i}", "H")] = {f"P{i}": F(1)}
        brackets[(f"K{i}", f"P{i}")] = {"H": F(1)}
    for (i, j, k), sign in _EPS.items():
        if i < j:
            vec = brackets.setdefault((f"K{i}", f"K{j}"), {})
            vec[f"J{k}"] = F(-sign)
    return AlgebraTable(basis, brackets)


def jacobi_check(table: AlgebraTable, label: str = "jacobi") -> Verdict:
    """Exact Jacobi identity over all basis triples."""
    basis = table.basis
    for ix, x in enumerate(basis):
        for iy in range(ix + 1, len(basis)):
            y = basis[iy]
            for iz in range(iy + 1, len(basis)):
                z = basis[iz]
                acc: dict = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    inner = table.bracket(a, b)
                    for w, cw in inner.items():
                        outer = table.bracket(w, c)
                        for u, cu in outer.items():
                            acc[u] = acc.get(u, F(0)) + cw * cu
                residual = {u: c for u, c in acc.items() if c}
                if residual:
                    return Verdict(
                        label,
                        Status.FAIL,
                        details={"algebra_basis": list(basis)},
                        witness={
                            "triple": [x, y, z],
                            "jacobiator": {u: str(c) for u, c in residual.items()},
                        },
                    )
    return Verdict(label, Status.PASS, details={"triples_checked": math.comb(len(basis), 3)})


def centrality_check(table: AlgebraTable, candidate: str, label: str = "centrality") -> Verdict:
    """candidate must commute with every generator; for M the pairing
    [K_i, P_j] = delta_ij M is asserted as well."""
    if candidate not in table.basis:
        raise InputError(f"{candidate!r} is not a basis label")
    for x in table.basis:
        vec = table.bracket(candidate, x)
        if vec:
            return Verdict(
                label,
                Status.FAIL,
                details={"candidate": candidate},
                witness={
                    "noncommuting_with": x,
                    "bracket": {z: str(c) for z, c in vec.items()},
                },
            )
    if candidate == "M" and all(f"K{i}" in table.basis for i in (1, 2, 3)):
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                expected = {"M": F(1)} if i == j else {}
                got = table.bracket(f"K{i}", f"P{j}")
                if got != expected:
                    return Verdict(
                        label,
                        Status.FAIL,
                        details={"candidate": candidate},
                        witness={
                            "pair": [f"K{i}", f"P{j}"],
                            "bracket": {z: str(c) for z, c in got.items()},
                            "expected": {z: str(c) for z, c in expected.items()},
                        },
                    )
    return Verdict(label, Status.PASS, details={"candidate": candidate})


# -- table text format ---------------------------------------------------


def format_table(table: AlgebraTable) -> str:
    """One line per nonzero bracket: ``X Y -> c Z [+ c2 Z2 ...]``."""
    lines = ["basis: " + " ".join(table.basis)]
    order = {lbl: i for i, lbl in enumerate(table.basis)}
    for i, x in enumerate(table.basis):
        for y in table.basis[i + 1:]:
            vec = table.bracket(x, y)
            if not vec:
                continue
            rhs = " + ".join(
                f"{c} {z}"
                for z, c in sorted(vec.items(), key=lambda zc: order[zc[0]])
            )
            lines.append(f"{x} {y} -> {rhs}")
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> AlgebraTable:
    basis: list[str] = []
    brackets: dict = {}
    inferred: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("basis:"):
            basis = line[len("basis:"):].split()
            continue
        if "->" not in line:
            raise InputError(f"line {lineno}: expected 'X Y -> c Z [+ ...]'")
        lhs, rhs = line.split("->", 1)
        pair = lhs.split()
        if len(pair) != 2:
            raise InputError(f"line {lineno}: left side needs two labels")
        vec: dict = {}
        for chunk in rhs.split("+"):
            parts = chunk.split()
            if len(parts) != 2:
                raise InputError(
                    f"line {lineno}: each term must be 'coefficient label'"
                )
            try:
                c = F(parts[0])
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"line {lineno}: bad rational {parts[0]!r}") from exc
            vec[parts[1]] = vec.get(parts[1], F(0)) + c
        brackets[(pair[0], pair[1])] = vec
        for lbl in (pair[0], pair[1], *vec):
            if lbl not in inferred:
                inferred.append(lbl)
    if not basis:
        basis = inferred
    return AlgebraTable(basis, brackets)


# -- group/algebra numeric bridge ----------------------------------------


_GENERATOR_LABELS = (
    "H", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3",
)


def one_parameter_element(label: str, eps: float) -> GalileiElement:
    if label == "H":
        return time_shift(eps)
    family, idx = label[0], int(label[1]) - 1
    axis = tuple(eps if i == idx else 0 for i in range(3))
    if family == "P":
        return translation(axis)
    if family == "K":
        return boost(axis)
    if family == "J":
        return axis_angle_rotation(tuple(1 if i == idx else 0 for i in range(3)), eps)
    raise InputError(f"unknown generator label {label!r}")


def _lifted_product(factors, m=1):
    """Multiply lifts (g, phase) of group elements, accumulating cocycles."""
    g, phase = factors[0]
    for h, extra in factors[1:]:
        phase = phase + extra + cocycle_exponent(g, h, m)
        g = compose(g, h)
    return g, phase


def _lift_inverse(g: GalileiElement, m=1):
    gi = inverse(g)
    return gi, -cocycle_exponent(g, gi, m)


def _rotation_vector(R) -> tuple:
    # vee((R - R^T)/2): first-order rotation coordinates near identity
    return (
        float(R[2][1] - R[1][2]) / 2.0,
        float(R[0][2] - R[2][0]) / 2.0,
        float(R[1][0] - R[0][1]) / 2.0,
    )


def _algebra_coordinates(g: GalileiElement, phase, basis) -> dict:
    coords = {}
    if "H" in basis:
        coords["H"] = float(g.time_shift)
    rot = _rotation_vector(g.rotation)
    for i in (1, 2, 3):
        if f"P{i}" in basis:
            coords[f"P{i}"] = float(g.translation[i - 1])
        if f"K{i}" in basis:
            coords[f"K{i}"] = float(g.boost[i - 1])
        if f"J{i}" in basis:
            coords[f"J{i}"] = rot[i - 1]
    if "M" in basis:
        coords["M"] = float(phase)
    return coords


def bch_crosscheck(
    x_label: str,
    y_label: str,
    table: AlgebraTable,
    eps_ladder=(1e-2, 5e-3, 2.5e-3),
    rel_tol: float = 1e-6,
    label: str | None = None,
) -> Verdict:
    """Compare the table bracket [X, Y] with the group commutator curve.

    The commutator g_X(e) g_Y(e) g_X(e)^-1 g_Y(e)^-1 equals
    exp(e^2 [X, Y] + O(e^3)); each algebra coordinate divided by e^2 is
    Richardson-extrapolated over the ladder and matched against the table.
    The central M coordinate comes from the accumulated cocycle phases.
    """
    if x_label not in _GENERATOR_LABELS or y_label not in _GENERATOR_LABELS:
        raise InputError("generators must be translations, boosts, rotations, or the time shift")
    label = label or f"bch[{x_label},{y_label}]"
    if len(eps_ladder) != 3 or not all(
        abs(eps_ladder[i] / eps_ladder[i + 1] - 2) < 1e-12 for i in (0, 1)
    ):
        raise InputError("eps ladder must halve twice")
    curves = []
    for eps in eps_ladder:
        gx = one_parameter_element(x_label, eps)
        gy = one_parameter_element(y_label, eps)
        gx_inv = _lift_inverse(gx)
        gy_inv = _lift_inverse(gy)
        commutator, phase = _lifted_product(
            [(gx, 0), (gy, 0), gx_inv, gy_inv]
        )
        coords = _algebra_coordinates(commutator, phase, table.basis)
        curves.append({z: c / eps**2 for z, c in coords.items()})
    estimates = {}
    worst_step = 0.0
    for z in curves[0]:
        f1, f2, f3 = (curve[z] for curve in curves)
        g1 = 2 * f2 - f1
        g2 = 2 * f3 - f2
        estimates[z] = (4 * g2 - g1) / 3
        worst_step = max(worst_step, abs(estimates[z] - g2))
    if worst_step > 1e-3:
        raise ConsistencyError(
            f"Richardson extrapolation did not settle for [{x_label},{y_label}]"
        )
    expected = {z: float(c) for z, c in table.bracket(x_label, y_label).items()}
    residual = 0.0
    worst = None
    for z in curves[0]:
        want = expected.get(z, 0.0)
        err = abs(estimates[z] - want) / max(1.0, abs(want))
        if err > residual:
            residual, worst = err, z
    details = {
        "pair": [x_label, y_label],
        "expected": {z: c for z, c in expected.items()},
        "estimated": {z: round(c, 12) for z, c in estimates.items() if abs(c) > 1e-9},
    }
    if residual > rel_tol:
        return Verdict(
            label, Status.FAIL, details,
            residual=residual, witness={"coordinate": worst},
        )
    return Verdict(label, Status.PASS, details, residual=residual)
