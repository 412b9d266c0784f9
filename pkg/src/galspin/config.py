"""Suite configuration: a plain-text key-value document with sections.

Exact values survive parsing: rationals are written ``p/q`` and complex
amplitudes ``re+imi`` with rational parts, so no float rounding enters the
pipeline.  Parse failures raise :class:`ConfigError` with the offending
line number and field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, InputError
from .exact import ExactScalar, parse_complex_token
from .lattice_field import FieldSpec, LatticeSpec

F = Fraction

SUITE_ORDER = ("counterexample", "cocycle", "algebra", "reps", "schwinger", "nogo")

_SAMPLE_DEFAULTS = {
    "alpha_beta_pairs": 20,
    "cocycle_pairs": 1000,
    "cocycle_triples": 200,
    "antihermitian_matrices": 1000,
    "graded_pairs": 100,
    "hermiticity_samples": 50,
    "reality_matrices": 100,
}

_TOLERANCE_DEFAULTS = {
    "matrix": 1e-12,
    "conjugation": 1e-10,
    "cocycle": 1e-10,
    "cocycle_identity": 1e-9,
    "bch_relative": 1e-6,
}

_KNOWN_KEYS = {
    "run": {"suites", "seed", "parallel"},
    "lattice": {"dimension", "points_per_side", "side_length"},
    "field": {"mass", "spin", "alpha", "beta"},
    "samples": set(_SAMPLE_DEFAULTS),
    "tolerances": set(_TOLERANCE_DEFAULTS),
    "algebra": {"table_file"},
    "schwinger": {"umatrix_file"},
}


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple[str, ...]
    seed: int
    lattice: LatticeSpec
    field: FieldSpec
    samples: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    parallel: bool = False
    algebra_table_file: str | None = None
    umatrix_file: str | None = None

    def echo(self) -> dict:
        """JSON-friendly image of the configuration for report headers."""
        return {
            "suites": list(self.suites),
            "seed": self.seed,
            "parallel": self.parallel,
            "lattice": {
                "dimension": self.lattice.dimension,
                "points_per_side": self.lattice.points_per_side,
                "side_length": str(self.lattice.side_length),
            },
            "field": {
                "mass": str(self.field.mass),
                "spin": str(self.field.spin),
                "alpha": repr(self.field.alpha),
                "beta": repr(self.field.beta),
            },
            "samples": dict(sorted(self.samples.items())),
            "tolerances": dict(sorted(self.tolerances.items())),
            "algebra_table_file": self.algebra_table_file,
            "umatrix_file": self.umatrix_file,
        }


class _RawConfig:
    def __init__(self):
        self.entries: dict = {}

    def put(self, section, key, value, lineno):
        self.entries[(section, key)] = (value, lineno)

    def get(self, section, key, default=None):
        value, _ = self.entries.get((section, key), (default, None))
        return value

    def require(self, section, key):
        if (section, key) not in self.entries:
            raise ConfigError(f"missing required field [{section}] {key}")
        return self.entries[(section, key)][0]

    def line(self, section, key):
        entry = self.entries.get((section, key))
        return entry[1] if entry else None


def _scan(text: str) -> _RawConfig:
    raw = _RawConfig()
    section = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            section = stripped[1:-1].strip()
            if section not in _KNOWN_KEYS:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any section")
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _KNOWN_KEYS[section]:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in [{section}]")
        raw.put(section, key, value, lineno)
    return raw


def _parse_with_context(raw, section, key, parser, description):
    value = raw.require(section, key)
    try:
        return parser(value)
    except (ValueError, ZeroDivisionError, ArithmeticError, InputError) as exc:
        lineno = raw.line(section, key)
        raise ConfigError(
            f"line {lineno}: field [{section}] {key}: bad {description} {value!r}"
        ) from exc


def _parse_rational(value: str) -> Fraction:
    return F(value)


def _parse_amplitude(value: str) -> ExactScalar:
    re_part, im_part = parse_complex_token(value)
    return ExactScalar.gaussian(re_part, im_part)


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("yes", "true", "1", "on"):
        return True
    if lowered in ("no", "false", "0", "off"):
        return False
    raise ValueError(f"not a boolean: {value}")


def parse_config(text: str) -> SuiteConfig:
    raw = _scan(text)

    suites_value = raw.require("run", "suites").replace(",", " ")
    suites = tuple(suites_value.split())
    if suites == ("all",):
        suites = SUITE_ORDER
    for name in suites:
        if name not in SUITE_ORDER:
            lineno = raw.line("run", "suites")
            raise ConfigError(f"line {lineno}: unknown suite {name!r}")

    seed = _parse_with_context(raw, "run", "seed", int, "integer seed")
    if not 0 <= seed < 2**64:
        raise ConfigError(
            f"line {raw.line('run', 'seed')}: seed must fit in an unsigned 64-bit value"
        )
    parallel = (
        _parse_bool(raw.get("run", "parallel", "no"))
        if raw.get("run", "parallel") is not None
        else False
    )

    try:
        lattice = LatticeSpec(
            _parse_with_context(raw, "lattice", "dimension", int, "integer"),
            _parse_with_context(raw, "lattice", "points_per_side", int, "integer"),
            _parse_with_context(raw, "lattice", "side_length", _parse_rational, "rational"),
        )
    except ConfigError:
        raise
    except InputError as exc:
        raise ConfigError(f"invalid [lattice] section: {exc}") from exc

    try:
        field_spec = FieldSpec(
            mass=_parse_with_context(raw, "field", "mass", _parse_rational, "rational"),
            spin=_parse_with_context(raw, "field", "spin", _parse_rational, "rational"),
            alpha=_parse_with_context(raw, "field", "alpha", _parse_amplitude, "complex amplitude"),
            beta=_parse_with_context(raw, "field", "beta", _parse_amplitude, "complex amplitude"),
            lattice=lattice,
        )
    except ConfigError:
        raise
    except InputError as exc:
        raise ConfigError(f"invalid [field] section: {exc}") from exc

    samples = dict(_SAMPLE_DEFAULTS)
    for key in _SAMPLE_DEFAULTS:
        if raw.get("samples", key) is not None:
            count = _parse_with_context(raw, "samples", key, int, "integer")
            if count < 1:
                raise ConfigError(
                    f"line {raw.line('samples', key)}: {key} must be positive"
                )
            samples[key] = count

    tolerances = dict(_TOLERANCE_DEFAULTS)
    for key in _TOLERANCE_DEFAULTS:
        if raw.get("tolerances", key) is not None:
            tol = _parse_with_context(raw, "tolerances", key, float, "float")
            if tol <= 0:
                raise ConfigError(
                    f"line {raw.line('tolerances', key)}: {key} must be positive"
                )
            tolerances[key] = tol

    return SuiteConfig(
        suites=suites,
        seed=seed,
        lattice=lattice,
        field=field_spec,
        samples=samples,
        tolerances=tolerances,
        parallel=parallel,
        algebra_table_file=raw.get("algebra", "table_file") or None,
        umatrix_file=raw.get("schwinger", "umatrix_file") or None,
    )


def load_config(path: str) -> SuiteConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)
