"""Named verification suites: deterministic runners producing verdicts.

Each suite draws from its own child generator (seeded from the run seed
and the suite name), so reports are reproducible and independent of which
other suites run.
"""

from __future__ import annotations

import random
import time as _time
import zlib
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .config import SuiteConfig
from .errors import ClassificationConflict, ConfigError, ConsistencyError
from .exact import ExactScalar
from .galilei import (
    GalileiElement,
    axis_angle_rotation,
    bch_crosscheck,
    boost,
    centrality_check,
    cocycle_exponent,
    compose,
    extended_galilei_table,
    jacobi_check,
    parse_table,
    poincare_table,
    rotation_quarter_turn,
    translation,
    vdot,
)
from .hermiticity import (
    doubled_mass_analysis,
    hermitian_pair_report,
    hermiticity_compatible,
    transform_law,
)
from .lattice_field import FieldSpec, LatticeSpec, counterexample_report
from .spin_reps import (
    candidate_reality_survey,
    reality_class,
    rotation_matrix,
    spin_rep,
    two_pi_sign,
)
from .spin_statistics import (
    FieldClass,
    Parity,
    UMatrixSet,
    check_T1,
    check_T2,
    check_T5,
    classify,
    lagrangian_kin,
    load_umatrix_set,
    spin_statistics_verdict,
)
from .verdict import Status, Verdict

F = Fraction


def _child_rng(config: SuiteConfig, suite: str) -> random.Random:
    mix = (config.seed * 1000003 + zlib.crc32(suite.encode())) % 2**63
    return random.Random(mix)


def _timed(verdict: Verdict, started: float) -> Verdict:
    verdict.seconds = _time.perf_counter() - started
    return verdict


def _aggregate(label: str, checks: list, details: dict | None = None) -> Verdict:
    """Fold (description, ok, payload) triples into one verdict."""
    details = dict(details or {})
    failures = [
        {"check": desc, **(payload or {})}
        for desc, ok, payload in checks
        if not ok
    ]
    details["checks_run"] = len(checks)
    if failures:
        return Verdict(label, Status.FAIL, details, witness=failures[0])
    return Verdict(label, Status.PASS, details)


# -- counterexample ---------------------------------------------------------


def _random_amplitude(rng: random.Random) -> ExactScalar:
    value = ExactScalar.from_rational(F(rng.randint(0, 8), rng.randint(1, 5)))
    if rng.random() < 0.5:
        value = value * ExactScalar.phase(F(rng.randint(-5, 5), 6))
    return value


def run_counterexample(config: SuiteConfig) -> list[Verdict]:
    rng = _child_rng(config, "counterexample")
    verdicts = []

    started = _time.perf_counter()
    pairs = [
        (config.field.alpha, config.field.beta),
        (ExactScalar.one(), ExactScalar.one()),
        (ExactScalar.one(), ExactScalar.zero()),
        (
            ExactScalar.from_rational(F(3, 5)) * ExactScalar.phase(F(1, 3)),
            ExactScalar.from_rational(F(4, 5)),
        ),
        (ExactScalar.from_rational(2), ExactScalar.one()),
    ]
    while len(pairs) < config.samples["alpha_beta_pairs"]:
        alpha = _random_amplitude(rng)
        beta = _random_amplitude(rng)
        if alpha.is_zero() and beta.is_zero():
            alpha = ExactScalar.one()
        if rng.random() < 0.25:
            beta = alpha
        pairs.append((alpha, beta))
    checks = []
    for alpha, beta in pairs:
        spec = FieldSpec(config.field.mass, alpha, beta, config.lattice)
        sub = counterexample_report(spec)
        checks.append(
            (
                f"alpha={alpha!r} beta={beta!r}",
                sub.passed,
                None if sub.passed else {"witness": sub.witness},
            )
        )
    verdict = _aggregate(
        "S2-counterexample",
        checks,
        {
            "pairs_swept": len(pairs),
            "lattice": {
                "dimension": config.lattice.dimension,
                "points_per_side": config.lattice.points_per_side,
            },
        },
    )
    verdicts.append(_timed(verdict, started))

    started = _time.perf_counter()
    confirm = counterexample_report(
        FieldSpec(
            config.field.mass,
            config.field.alpha,
            config.field.beta,
            LatticeSpec(3, 4, config.lattice.side_length),
        ),
        label="S2-counterexample-d3",
    )
    verdicts.append(_timed(confirm, started))
    return verdicts


# -- cocycle ---------------------------------------------------------------


def _random_group_element(rng: random.Random, allow_float=True):
    b = F(rng.randint(-4, 4), rng.randint(1, 4))
    a = tuple(F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(3))
    v = tuple(F(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(3))
    if allow_float and rng.random() < 0.5:
        rot = axis_angle_rotation(
            [rng.uniform(-1, 1) or 1.0 for _ in range(3)], rng.uniform(0, 6)
        )
    else:
        rot = compose(
            rotation_quarter_turn(rng.randrange(3), rng.randrange(4)),
            rotation_quarter_turn(rng.randrange(3), rng.randrange(4)),
        )
    return GalileiElement(b, a, v, rot.rotation)


def run_cocycle(config: SuiteConfig) -> list[Verdict]:
    rng = _child_rng(config, "cocycle")
    mass = config.field.mass
    tol = config.tolerances["cocycle"]
    verdicts = []

    started = _time.perf_counter()
    checks = []
    for index in range(config.samples["cocycle_pairs"]):
        g1 = _random_group_element(rng)
        g2 = _random_group_element(rng)
        try:
            cocycle_exponent(g1, g2, mass, tol=tol)
            checks.append((f"pair {index}", True, None))
        except ConsistencyError as exc:
            checks.append((f"pair {index}", False, {"error": str(exc)}))
    verdicts.append(
        _timed(_aggregate("S4-cocycle-independence", checks, {"tolerance": tol}), started)
    )

    started = _time.perf_counter()
    v = (F(1, 2), F(1), F(0))
    a = (F(3), F(0), F(2))
    zeta = cocycle_exponent(boost(v), translation(a), mass, tol=tol)
    expected = mass * vdot(v, a)
    witness_ok = zeta == expected and zeta != 0
    verdict = Verdict(
        "S4-boost-translation-witness",
        Status.PASS if witness_ok else Status.FAIL,
        details={
            "boost": [str(c) for c in v],
            "translation": [str(c) for c in a],
            "zeta": str(zeta),
            "expected": str(expected),
        },
        witness=None if witness_ok else {"zeta": str(zeta), "expected": str(expected)},
    )
    verdicts.append(_timed(verdict, started))

    started = _time.perf_counter()
    identity_tol = config.tolerances["cocycle_identity"]
    checks = []
    for index in range(config.samples["cocycle_triples"]):
        g1, g2, g3 = (_random_group_element(rng) for _ in range(3))
        lhs = cocycle_exponent(g1, g2, mass) + cocycle_exponent(compose(g1, g2), g3, mass)
        rhs = cocycle_exponent(g1, compose(g2, g3), mass) + cocycle_exponent(g2, g3, mass)
        err = abs(float(lhs - rhs))
        checks.append(
            (f"triple {index}", err <= identity_tol, {"error": err})
        )
    verdicts.append(
        _timed(
            _aggregate("S4-cocycle-identity", checks, {"tolerance": identity_tol}),
            started,
        )
    )
    return verdicts


# -- algebra -----------------------------------------------------------------


def run_algebra(config: SuiteConfig) -> list[Verdict]:
    verdicts = []
    if config.algebra_table_file:
        try:
            with open(config.algebra_table_file, "r", encoding="utf-8") as handle:
                extended = parse_table(handle.read())
        except OSError as exc:
            raise ConfigError(
                f"cannot read algebra table {config.algebra_table_file!r}: {exc}"
            ) from exc
    else:
        extended = extended_galilei_table()

    started = _time.perf_counter()
    verdicts.append(
        _timed(jacobi_check(extended, label="A'2-jacobi-extended"), started)
    )

    started = _time.perf_counter()
    verdicts.append(
        _timed(jacobi_check(poincare_table(), label="A2-jacobi-poincare"), started)
    )

    started = _time.perf_counter()
    if "M" in extended.basis:
        verdicts.append(
            _timed(
                centrality_check(extended, "M", label="A'2-centrality-M"), started
            )
        )
    else:
        verdicts.append(
            _timed(
                Verdict(
                    "A'2-centrality-M",
                    Status.FAIL,
                    details={"basis": list(extended.basis)},
                    witness={"error": "table has no M generator"},
                ),
                started,
            )
        )

    started = _time.perf_counter()
    mutant_checks = []
    for table, name in (
        (extended_galilei_table(), "extended"),
        (poincare_table(), "poincare"),
    ):
        mutant = table.with_bracket("J1", "J2", {"J3": F(2)})
        sub = jacobi_check(mutant)
        mutant_checks.append(
            (
                f"{name} mutant rejected",
                sub.status is Status.FAIL and sub.witness is not None,
                {"verdict": sub.status.value},
            )
        )
        if sub.status is Status.FAIL:
            mutant_checks.append(
                (
                    f"{name} mutant names a triple",
                    len(sub.witness.get("triple", [])) == 3,
                    {"witness": sub.witness},
                )
            )
    verdicts.append(
        _timed(_aggregate("A'2-mutant-detection", mutant_checks), started)
    )

    started = _time.perf_counter()
    labels = [lbl for lbl in extended.basis if lbl != "M"]
    bch_tol = config.tolerances["bch_relative"]
    checks = []
    for i, x_label in enumerate(labels):
        for y_label in labels[i + 1:]:
            sub = bch_crosscheck(x_label, y_label, extended, rel_tol=bch_tol)
            checks.append(
                (
                    f"[{x_label},{y_label}]",
                    sub.passed,
                    {"residual": sub.residual},
                )
            )
    verdicts.append(
        _timed(_aggregate("A'2-bch", checks, {"relative_tolerance": bch_tol}), started)
    )
    return verdicts


# -- representations ---------------------------------------------------------


_SPINS = (F(0), F(1, 2), F(1), F(3, 2), F(2), F(5, 2), F(3))


def run_reps(config: SuiteConfig) -> list[Verdict]:
    rng = np.random.default_rng(_child_rng(config, "reps").randrange(2**32))
    tol = config.tolerances["matrix"]
    verdicts = []

    started = _time.perf_counter()
    checks = []
    for s in _SPINS:
        rep = spin_rep(s)
        comm = max(
            float(np.max(np.abs((a @ b - b @ a) - 1j * c)))
            for a, b, c in (
                (rep.jx, rep.jy, rep.jz),
                (rep.jy, rep.jz, rep.jx),
                (rep.jz, rep.jx, rep.jy),
            )
        )
        casimir = rep.jx @ rep.jx + rep.jy @ rep.jy + rep.jz @ rep.jz
        casimir_err = float(
            np.max(np.abs(casimir - float(s * (s + 1)) * np.eye(rep.dimension)))
        )
        checks.append((f"commutators s={s}", comm <= tol, {"residual": comm}))
        checks.append((f"casimir s={s}", casimir_err <= tol, {"residual": casimir_err}))
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = float(rng.uniform(0, 6))
        d = rotation_matrix(rep, axis, angle)
        unitarity = float(np.max(np.abs(d @ d.conj().T - np.eye(rep.dimension))))
        checks.append(
            (f"unitarity s={s}", unitarity <= 1e-10, {"residual": unitarity})
        )
    verdicts.append(
        _timed(_aggregate("S5-rotation-reps", checks, {"tolerance": tol}), started)
    )

    started = _time.perf_counter()
    checks = []
    for s in _SPINS:
        expected = -1 if (2 * s) % 2 else 1
        try:
            sign = two_pi_sign(spin_rep(s))
            checks.append((f"s={s}", sign == expected, {"sign": sign}))
        except ConsistencyError as exc:
            checks.append((f"s={s}", False, {"error": str(exc)}))
    verdicts.append(_timed(_aggregate("T6-two-pi-sign", checks), started))

    started = _time.perf_counter()
    checks = []
    count = config.samples["reality_matrices"]
    for index in range(count):
        n = int(rng.integers(2, 6))
        base = rng.normal(size=(n, n))
        flavor = index % 3
        if flavor == 0:
            matrix, expected = base, "real"
        elif flavor == 1:
            matrix, expected = 1j * base, "imaginary"
        else:
            matrix = base.astype(complex)
            matrix[0, min(1, n - 1)] += 1j * (1 + abs(float(rng.normal())))
            expected = "neither"
        cls = reality_class(matrix)
        ok = cls.kind.value == expected
        if expected == "neither":
            ok = ok and cls.witness is not None
        checks.append((f"matrix {index}", ok, {"got": cls.kind.value}))
    details = {"survey": candidate_reality_survey()}
    verdicts.append(_timed(_aggregate("T6-reality-classes", checks, details), started))
    return verdicts


# -- schwinger chain ----------------------------------------------------------


_SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
_SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_REAL_ANTISYM = np.array([[0, 1], [-1, 0]], dtype=complex)


def run_schwinger(config: SuiteConfig) -> list[Verdict]:
    rng = np.random.default_rng(_child_rng(config, "schwinger").randrange(2**32))
    tol = config.tolerances["matrix"]
    verdicts = []

    started = _time.perf_counter()
    checks = []
    for index in range(config.samples["antihermitian_matrices"]):
        n = int(rng.integers(1, 7))
        re = rng.normal(size=(n, n))
        im = rng.normal(size=(n, n))
        u = UMatrixSet({0: (re - re.T) / 2 + 1j * (im + im.T) / 2})
        t1 = check_T1(u, tol=tol)
        t2 = check_T2(u, tol=tol)
        checks.append(
            (f"family {index}", t1.passed and t2.passed,
             {"t1": t1.status.value, "t2": t2.status.value})
        )
    verdicts.append(
        _timed(_aggregate("T1-implies-T2", checks, {"tolerance": tol}), started)
    )

    started = _time.perf_counter()
    checks = []
    cls = classify(UMatrixSet({0: 1j * _SIGMA_X}))
    checks.append(("pure symmetric is Fermi", cls.field_class() is FieldClass.FERMI, None))
    cls = classify(UMatrixSet({0: _REAL_ANTISYM}))
    checks.append(("pure antisymmetric is Bose", cls.field_class() is FieldClass.BOSE, None))
    block = np.zeros((4, 4), dtype=complex)
    block[:2, :2] = 1j * _SIGMA_X
    block[2:, 2:] = _REAL_ANTISYM
    cls = classify(UMatrixSet({1: block}))
    checks.append(
        (
            "block example partitions {0,1}/{2,3}",
            cls.fermi == (0, 1) and cls.bose == (2, 3),
            {"fermi": list(cls.fermi), "bose": list(cls.bose)},
        )
    )
    try:
        classify(UMatrixSet({0: 1j * _SIGMA_X + _REAL_ANTISYM}))
        checks.append(("mixed coupling detected", False, None))
    except ClassificationConflict as exc:
        checks.append(
            ("mixed coupling detected", exc.components == (0, 1),
             {"components": list(exc.components)})
        )
    verdicts.append(_timed(_aggregate("T3-classification", checks), started))

    started = _time.perf_counter()
    checks = []
    for index in range(config.samples["graded_pairs"]):
        n = int(rng.integers(1, 7))
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        sym = m + m.T
        anti = m - m.T
        vanishing_sym = lagrangian_kin(
            UMatrixSet({0: sym}), [Parity.COMMUTING] * n
        ).is_zero()
        vanishing_anti = lagrangian_kin(
            UMatrixSet({0: anti}), [Parity.ANTICOMMUTING] * n
        ).is_zero()
        payload = {"dim": n}
        ok = vanishing_sym and vanishing_anti
        if n >= 2:
            nonzero_sym = not lagrangian_kin(
                UMatrixSet({0: sym}), [Parity.ANTICOMMUTING] * n
            ).is_zero()
            nonzero_anti = not lagrangian_kin(
                UMatrixSet({0: anti}), [Parity.COMMUTING] * n
            ).is_zero()
            ok = ok and nonzero_sym and nonzero_anti
        checks.append((f"pairing {index}", ok, payload))
    verdicts.append(_timed(_aggregate("T4-kinetic-cancellation", checks), started))

    started = _time.perf_counter()
    conj_tol = config.tolerances["conjugation"]
    checks = []
    fixture = check_T5(
        _SIGMA_Y, UMatrixSet({1: 1j * _SIGMA_X}), FieldClass.FERMI, tol=conj_tol
    )
    checks.append(("pauli fixture passes", fixture.passed, {"residual": fixture.residual}))
    mismatch = check_T5(
        1j * _SIGMA_Y, UMatrixSet({1: 1j * _SIGMA_X}), FieldClass.FERMI, tol=conj_tol
    )
    checks.append(
        (
            "class mismatch rejected",
            mismatch.status is Status.FAIL
            and mismatch.witness.get("clause") == "reality",
            {"witness": mismatch.witness},
        )
    )
    verdicts.append(
        _timed(_aggregate("T5-time-reversal", checks, {"tolerance": conj_tol}), started)
    )

    started = _time.perf_counter()
    checks = []
    from .spin_reps import RealityKind

    for s in (F(0), F(1, 2)):
        for field_class in (FieldClass.FERMI, FieldClass.BOSE):
            for kind in (RealityKind.IMAGINARY, RealityKind.REAL):
                half_integer = bool((2 * s) % 2)
                should_pass = (
                    half_integer
                    and field_class is FieldClass.FERMI
                    and kind is RealityKind.IMAGINARY
                ) or (
                    not half_integer
                    and field_class is FieldClass.BOSE
                    and kind is RealityKind.REAL
                )
                sub = spin_statistics_verdict(s, field_class, kind)
                checks.append(
                    (
                        f"s={s} {field_class.value} {kind.value}",
                        sub.passed == should_pass,
                        {"verdict": sub.status.value},
                    )
                )
    verdicts.append(_timed(_aggregate("T7-spin-statistics", checks), started))

    if config.umatrix_file:
        started = _time.perf_counter()
        try:
            with open(config.umatrix_file, "r", encoding="utf-8") as handle:
                family = load_umatrix_set(handle.read())
        except OSError as exc:
            raise ConfigError(
                f"cannot read U-matrix file {config.umatrix_file!r}: {exc}"
            ) from exc
        t1 = check_T1(family, tol=tol, label="T1-file-family")
        verdicts.append(_timed(t1, started))
        if t1.passed:
            started = _time.perf_counter()
            verdicts.append(
                _timed(check_T2(family, tol=tol, label="T2-file-family"), started)
            )
    return verdicts


# -- no-go --------------------------------------------------------------------


def run_nogo(config: SuiteConfig) -> list[Verdict]:
    rng = _child_rng(config, "nogo")
    samples = config.samples["hermiticity_samples"]
    verdicts = []

    started = _time.perf_counter()
    checks = []
    masses = [F(1), F(-1), F(3, 2)]
    if config.field.mass not in masses:
        masses.append(config.field.mass)
    for mass in masses:
        for spin in (F(0), F(1, 2), F(1)):
            sub = hermiticity_compatible(
                transform_law(mass, spin), samples=samples, seed=rng.randrange(2**32)
            )
            checks.append(
                (
                    f"m={mass} s={spin} incompatible",
                    sub.status is Status.FAIL and sub.witness is not None,
                    {"verdict": sub.status.value},
                )
            )
    for spin in (F(0), F(1, 2), F(1)):
        sub = hermiticity_compatible(
            transform_law(F(0), spin), samples=samples, seed=rng.randrange(2**32)
        )
        checks.append(
            (
                f"m=0 s={spin} compatible",
                sub.status is Status.PASS,
                {"verdict": sub.status.value},
            )
        )
    restricted = hermiticity_compatible(
        transform_law(F(1), F(0)), samples=samples, include_boosts=False
    )
    checks.append(
        (
            "boost-free sampling flagged",
            restricted.status is Status.INCONCLUSIVE_UNDER_RESTRICTION,
            {"verdict": restricted.status.value},
        )
    )
    verdicts.append(
        _timed(_aggregate("S5-hermiticity-nogo", checks, {"samples": samples}), started)
    )

    started = _time.perf_counter()
    verdicts.append(_timed(hermitian_pair_report(config.field), started))

    started = _time.perf_counter()
    verdicts.append(_timed(doubled_mass_analysis(config.field.mass), started))
    return verdicts


_RUNNERS = {
    "counterexample": run_counterexample,
    "cocycle": run_cocycle,
    "algebra": run_algebra,
    "reps": run_reps,
    "schwinger": run_schwinger,
    "nogo": run_nogo,
}


def run(config: SuiteConfig) -> list[Verdict]:
    """Execute the configured suites in declared order."""
    for name in config.suites:
        if name not in _RUNNERS:
            raise ConfigError(f"unknown suite {name!r}")
    results: list[Verdict] = []
    if config.parallel and len(config.suites) > 1:
        with ThreadPoolExecutor(max_workers=len(config.suites)) as pool:
            futures = [
                pool.submit(_RUNNERS[name], config) for name in config.suites
            ]
            collected = [future.result() for future in futures]
    else:
        collected = [_RUNNERS[name](config) for name in config.suites]
    for name, verdicts in zip(config.suites, collected):
        for verdict in verdicts:
            verdict.details.setdefault("suite", name)
            results.append(verdict)
    return results
