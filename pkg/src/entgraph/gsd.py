"""Canonical forms and the representative state of every class.

Three-qubit canonical form (five product terms)::

    l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>

Four-qubit canonical form: twelve coefficients ``alpha .. omega`` on the kets
0000, 0100, 0101, 0110, 1000, 1001, 1010, 1011, 1100, 1101, 1110, 1111.

Each class label 1a-1f / 2a-2q has a representative family: a short sum of
those kets with real nonnegative amplitudes, optional inequality constraints,
and closed-form pairwise concurrences.  :func:`predict` evaluates the closed
forms, :func:`build_representative` the state, :func:`sample` draws valid
parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Callable, Optional

import numpy as np

from .errors import BadParamsError, ConstraintViolation, NeverSatisfiableError
from .qcore import PureState, normalize
from .taxonomy import REPRESENTATIVE_LABELS, SHAPE_TO_LABEL, ClassLabel

PARAM_NAMES = (
    "alpha", "beta", "gamma", "delta", "epsilon", "zeta",
    "eta", "kappa", "lambda", "mu", "nu", "omega",
)
GREEK = dict(zip("αβγδεζηκλμνω", PARAM_NAMES))
GREEK_OF = {v: k for k, v in GREEK.items()}

GSD4_KETS = dict(zip(PARAM_NAMES, (
    "0000", "0100", "0101", "0110", "1000", "1001",
    "1010", "1011", "1100", "1101", "1110", "1111",
)))

NORM_TOL = 1e-12
SAMPLE_MARGIN = 1e-3
MAX_DRAWS = 10 ** 6


@dataclass(frozen=True)
class GSD3Params:
    lambda0: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    phi: float = 0.0

    def __post_init__(self):
        lams = [getattr(self, f"lambda{k}") for k in range(5)]
        if not all(math.isfinite(x) and x >= 0 for x in lams):
            raise BadParamsError("lambda_i must be finite and nonnegative")
        if not 0.0 <= self.phi <= math.pi:
            raise BadParamsError(f"phi={self.phi!r} outside [0, pi]")
        if abs(sum(x * x for x in lams) - 1.0) > NORM_TOL:
            raise BadParamsError("sum of lambda_i^2 must be 1")


def build_gsd3(p: GSD3Params) -> PureState:
    v = np.zeros(8, dtype=np.complex128)
    v[0b000] = p.lambda0
    v[0b100] = p.lambda1 * np.exp(1j * p.phi)
    v[0b101] = p.lambda2
    v[0b110] = p.lambda3
    v[0b111] = p.lambda4
    return normalize(v)


@dataclass(frozen=True)
class GSD4Params:
    """The twelve four-qubit canonical coefficients (``lambda_`` for lambda)."""

    alpha: complex = 0
    beta: complex = 0
    gamma: complex = 0
    delta: complex = 0
    epsilon: complex = 0
    zeta: complex = 0
    eta: complex = 0
    kappa: complex = 0
    lambda_: complex = 0
    mu: complex = 0
    nu: complex = 0
    omega: complex = 0

    def __post_init__(self):
        vals = [complex(getattr(self, f.name)) for f in fields(self)]
        if not all(math.isfinite(abs(v)) for v in vals):
            raise BadParamsError("coefficients must be finite")
        if abs(sum(abs(v) ** 2 for v in vals) - 1.0) > NORM_TOL:
            raise BadParamsError("squared magnitudes must sum to 1")

    def as_dict(self) -> dict:
        return {f.name.rstrip("_"): complex(getattr(self, f.name)) for f in fields(self)}


def build_gsd4(p: GSD4Params) -> PureState:
    v = np.zeros(16, dtype=np.complex128)
    for name, value in p.as_dict().items():
        v[int(GSD4_KETS[name], 2)] = value
    return normalize(v)


@dataclass(frozen=True)
class Constraint:
    """Parameter inequality of a family.

    ``holds`` decides validity; ``slack`` is what the sampler pushes above
    ``SAMPLE_MARGIN`` (for a disjunction, the branch that is sampled).
    """

    text: str
    holds: Callable[[dict], bool]
    slack: Callable[[dict], float]


def _gt(text, lhs, rhs):
    return Constraint(text, lambda p: lhs(p) > rhs(p), lambda p: lhs(p) - rhs(p))


def _cycle_condition(p):
    aw, zh = p["alpha"] * p["omega"], p["zeta"] * p["eta"]
    return aw >= 2 * zh or abs(aw - zh) <= NORM_TOL


@dataclass(frozen=True)
class Family:
    label: ClassLabel
    n: int
    terms: tuple  # (ket, param name)
    pairwise: dict  # (i, j) -> closed form
    constraints: tuple = ()
    global_form: Optional[Callable] = None  # three-qubit closed form
    triple: Optional[tuple] = None  # (subset, closed form) for 2c-2f

    @property
    def params(self) -> tuple:
        seen = []
        for _, name in self.terms:
            if name not in seen:
                seen.append(name)
        return tuple(seen)


def _c123_1d(a, d, l):
    return 2 * a * (l * (d * d + l * l)) ** (1 / 3)


def _c123_1e(a, b, d, l):
    x = math.sqrt(a * a * (d * d + l * l))
    y = math.sqrt(a * a * (d * d + l * l) + b * b * l * l)
    z = math.sqrt(l * l * (a * a + b * b))
    return 2 * (x * y * z) ** (1 / 3)


def _c123_1f(a, g, d):
    x = math.sqrt(a * a * (g * g + d * d))
    y = math.sqrt(d * d * (a * a + g * g))
    z = math.sqrt(g * g * (a * a + d * d))
    return 2 * (x * y * z) ** (1 / 3)


def _fam(label, terms, pairwise, **kw):
    label = ClassLabel(label)
    return Family(label, len(terms[0][0]), tuple(terms), pairwise, **kw)


FAMILIES = {f.label: f for f in [
    # three qubits
    _fam("1a", [("000", "alpha"), ("100", "beta")], {}, global_form=lambda p: 0.0),
    _fam("1b", [("000", "alpha"), ("110", "delta")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["delta"]}, global_form=lambda p: 0.0),
    _fam("1c", [("000", "alpha"), ("111", "lambda")], {},
         global_form=lambda p: 2 * p["alpha"] * p["lambda"]),
    _fam("1d", [("000", "alpha"), ("110", "delta"), ("111", "lambda")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["delta"]},
         global_form=lambda p: _c123_1d(p["alpha"], p["delta"], p["lambda"])),
    _fam("1e", [("000", "alpha"), ("100", "beta"), ("110", "delta"), ("111", "lambda")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["delta"],
          (2, 3): lambda p: 2 * p["beta"] * p["lambda"]},
         global_form=lambda p: _c123_1e(p["alpha"], p["beta"], p["delta"], p["lambda"])),
    _fam("1f", [("000", "alpha"), ("101", "gamma"), ("110", "delta")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["delta"],
          (1, 3): lambda p: 2 * p["alpha"] * p["gamma"],
          (2, 3): lambda p: 2 * p["gamma"] * p["delta"]},
         global_form=lambda p: _c123_1f(p["alpha"], p["gamma"], p["delta"])),
    # four qubits: separable and biseparable
    _fam("2a", [("0000", "alpha"), ("1000", "epsilon")], {}),
    _fam("2b", [("0000", "alpha"), ("1100", "lambda")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["lambda"]}),
    _fam("2c", [("1000", "epsilon"), ("1111", "omega")], {},
         triple=((2, 3, 4), lambda p: 2 * p["epsilon"] * p["omega"])),
    _fam("2d", [("1000", "epsilon"), ("1110", "nu"), ("1111", "omega")],
         {(2, 3): lambda p: 2 * p["epsilon"] * p["nu"]},
         triple=((2, 3, 4), lambda p: _c123_1d(p["epsilon"], p["nu"], p["omega"]))),
    _fam("2e", [("1000", "epsilon"), ("1100", "lambda"), ("1110", "nu"), ("1111", "omega")],
         {(2, 3): lambda p: 2 * p["epsilon"] * p["nu"],
          (3, 4): lambda p: 2 * p["lambda"] * p["omega"]},
         triple=((2, 3, 4), lambda p: _c123_1e(p["epsilon"], p["lambda"], p["nu"], p["omega"]))),
    _fam("2f", [("1000", "epsilon"), ("1101", "mu"), ("1110", "nu")],
         {(2, 3): lambda p: 2 * p["epsilon"] * p["nu"],
          (2, 4): lambda p: 2 * p["epsilon"] * p["mu"],
          (3, 4): lambda p: 2 * p["mu"] * p["nu"]},
         triple=((2, 3, 4), lambda p: _c123_1f(p["epsilon"], p["mu"], p["nu"]))),
    # four qubits: fully inseparable
    _fam("2g", [("0000", "alpha"), ("1111", "omega")], {}),
    _fam("2h", [("0000", "alpha"), ("1011", "kappa"), ("1101", "mu")],
         {(2, 3): lambda p: 2 * p["kappa"] * p["mu"]}),
    _fam("2i", [("0000", "alpha"), ("1010", "eta"), ("1011", "kappa"), ("1101", "mu")],
         {(1, 3): lambda p: 2 * p["alpha"] * p["eta"],
          (2, 3): lambda p: 2 * p["kappa"] * p["mu"]}),
    _fam("2j", [("0000", "alpha"), ("1010", "eta"), ("1111", "omega")],
         {(1, 3): lambda p: 2 * p["alpha"] * p["eta"],
          (2, 4): lambda p: 2 * p["eta"] * p["omega"]}),
    _fam("2k", [("0000", "alpha"), ("1011", "kappa"), ("1101", "mu"), ("1110", "nu")],
         {(2, 3): lambda p: 2 * (p["kappa"] * p["mu"] - p["alpha"] * p["nu"]),
          (2, 4): lambda p: 2 * (p["kappa"] * p["nu"] - p["alpha"] * p["mu"]),
          (3, 4): lambda p: 2 * (p["mu"] * p["nu"] - p["alpha"] * p["kappa"])},
         constraints=(
             _gt("κμ > αν", lambda p: p["kappa"] * p["mu"], lambda p: p["alpha"] * p["nu"]),
             _gt("κν > αμ", lambda p: p["kappa"] * p["nu"], lambda p: p["alpha"] * p["mu"]),
             _gt("μν > ακ", lambda p: p["mu"] * p["nu"], lambda p: p["alpha"] * p["kappa"]),
         )),
    _fam("2l", [("0000", "alpha"), ("1001", "zeta"), ("1010", "zeta"), ("1100", "zeta"), ("1111", "zeta")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["zeta"],
          (1, 3): lambda p: 2 * p["alpha"] * p["zeta"],
          (1, 4): lambda p: 2 * p["alpha"] * p["zeta"]}),
    _fam("2m", [("0000", "alpha"), ("1011", "kappa"), ("1100", "lambda"), ("1101", "mu"), ("1111", "omega")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["lambda"],
          (2, 3): lambda p: 2 * p["kappa"] * p["mu"],
          (3, 4): lambda p: 2 * p["lambda"] * p["omega"]}),
    _fam("2n", [("0000", "alpha"), ("1001", "zeta"), ("1011", "kappa"), ("1100", "lambda"), ("1101", "mu")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["lambda"],
          (1, 4): lambda p: 2 * p["alpha"] * p["zeta"],
          (2, 3): lambda p: 2 * p["kappa"] * p["mu"],
          (2, 4): lambda p: 2 * p["zeta"] * p["lambda"]}),
    _fam("2o", [("0000", "alpha"), ("1001", "zeta"), ("1010", "eta"), ("1111", "omega")],
         {(1, 3): lambda p: 2 * p["alpha"] * p["eta"],
          (1, 4): lambda p: 2 * p["alpha"] * p["zeta"],
          (2, 3): lambda p: 2 * p["zeta"] * p["omega"],
          (2, 4): lambda p: 2 * p["eta"] * p["omega"]},
         constraints=(Constraint(
             "αω ≥ 2ζη or αω = ζη", _cycle_condition,
             lambda p: p["alpha"] * p["omega"] - 2 * p["zeta"] * p["eta"]),)),
    _fam("2p", [("0000", "alpha"), ("1001", "zeta"), ("1010", "eta"), ("1111", "omega")],
         {(1, 3): lambda p: 2 * p["alpha"] * p["eta"],
          (1, 4): lambda p: 2 * p["alpha"] * p["zeta"],
          (2, 3): lambda p: 2 * p["zeta"] * p["omega"],
          (2, 4): lambda p: 2 * p["eta"] * p["omega"],
          (3, 4): lambda p: 2 * (p["zeta"] * p["eta"] - p["alpha"] * p["omega"])},
         constraints=(
             _gt("ζη > αω", lambda p: p["zeta"] * p["eta"], lambda p: p["alpha"] * p["omega"]),
         )),
    _fam("2q", [("0000", "alpha"), ("1001", "zeta"), ("1010", "eta"), ("1100", "lambda")],
         {(1, 2): lambda p: 2 * p["alpha"] * p["lambda"],
          (1, 3): lambda p: 2 * p["alpha"] * p["eta"],
          (1, 4): lambda p: 2 * p["alpha"] * p["zeta"],
          (2, 3): lambda p: 2 * p["eta"] * p["lambda"],
          (2, 4): lambda p: 2 * p["zeta"] * p["lambda"],
          (3, 4): lambda p: 2 * p["zeta"] * p["eta"]}),
]}
assert tuple(FAMILIES) == REPRESENTATIVE_LABELS


def family(label) -> Family:
    try:
        return FAMILIES[ClassLabel(label)]
    except (KeyError, ValueError):
        raise BadParamsError(f"no representative family for class {label!r}") from None


def _state_norm2(fam: Family, params: dict) -> float:
    return sum(params[name] ** 2 for _, name in fam.terms)


@dataclass(frozen=True)
class RepresentativeSpec:
    """A class label plus the real amplitudes of its representative.

    Raises :class:`BadParamsError` for missing/unknown/negative parameters or
    a state of non-unit norm, and :class:`ConstraintViolation` when a family
    inequality fails.
    """

    label: ClassLabel
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        fam = family(self.label)
        object.__setattr__(self, "label", fam.label)
        params = {}
        for key, value in self.params.items():
            name = GREEK.get(key, key)
            if name not in fam.params:
                raise BadParamsError(f"class {fam.label}: unknown parameter {key!r}")
            params[name] = float(value)
        missing = [name for name in fam.params if name not in params]
        if missing:
            raise BadParamsError(f"class {fam.label}: missing parameter(s) {', '.join(missing)}")
        for name, value in params.items():
            if not math.isfinite(value) or value < 0:
                raise BadParamsError(f"parameter {name}={value!r} must be finite and >= 0")
        norm2 = _state_norm2(fam, params)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise BadParamsError(f"class {fam.label}: state norm^2 is {norm2!r}, not 1")
        for c in fam.constraints:
            if not c.holds(params):
                raise ConstraintViolation(fam.label, c.text)
        object.__setattr__(self, "params", {name: params[name] for name in fam.params})

    @property
    def constraints(self) -> tuple:
        return tuple(c.text for c in family(self.label).constraints)

    @classmethod
    def normalized(cls, label, params: dict) -> "RepresentativeSpec":
        """Rescale ``params`` so the represented state has unit norm."""
        fam = family(label)
        named = {GREEK.get(k, k): float(v) for k, v in params.items()}
        try:
            norm = math.sqrt(sum(named[name] ** 2 for _, name in fam.terms))
        except KeyError as exc:
            raise BadParamsError(f"class {fam.label}: missing parameter {exc.args[0]}") from None
        if norm == 0:
            raise BadParamsError("all parameters are zero")
        return cls(fam.label, {k: v / norm for k, v in named.items()})


def build_representative(spec: RepresentativeSpec) -> PureState:
    fam = family(spec.label)
    v = np.zeros(2 ** fam.n, dtype=np.complex128)
    for ket, name in fam.terms:
        v[int(ket, 2)] += spec.params[name]
    return normalize(v)


@dataclass
class Prediction:
    pairwise: dict
    global_nonzero: bool
    global_value: Optional[float] = None
    triple_value: Optional[float] = None
    triple_subset: Optional[tuple] = None


def predict(spec: RepresentativeSpec) -> Prediction:
    """Closed-form measures of a representative.

    Four-qubit global values are not given numerically: only whether they
    vanish.
    """
    fam = family(spec.label)
    p = spec.params
    pairs = [(i, j) for i in range(1, fam.n + 1) for j in range(i + 1, fam.n + 1)]
    pairwise = {pair: float(fam.pairwise[pair](p)) if pair in fam.pairwise else 0.0 for pair in pairs}
    if fam.n == 3:
        value = float(fam.global_form(p))
        nonzero = fam.label not in (ClassLabel.C1A, ClassLabel.C1B)
        return Prediction(pairwise, nonzero, global_value=value)
    nonzero = fam.label in SHAPE_TO_LABEL.values()
    if fam.triple is not None:
        subset, form = fam.triple
        return Prediction(pairwise, nonzero, triple_value=float(form(p)), triple_subset=subset)
    return Prediction(pairwise, nonzero)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample(label, seed) -> RepresentativeSpec:
    """Random valid parameters for a family.

    Positive uniform deviates, scaled to a unit-norm state, rejected until
    every amplitude and every constraint slack is at least ``SAMPLE_MARGIN``.
    ``seed`` is anything ``numpy.random.default_rng`` accepts (an int, a
    sequence of ints) or a Generator.
    """
    fam = family(label)
    rng = _rng(seed)
    names = fam.params
    mult = {name: sum(1 for _, n in fam.terms if n == name) for name in names}
    weights = np.sqrt(np.array([mult[name] for name in names], dtype=float))
    for _ in range(MAX_DRAWS):
        u = rng.uniform(0.0, 1.0, len(names))
        u /= np.linalg.norm(u * weights)
        params = dict(zip(names, u.tolist()))
        if min(params.values()) < SAMPLE_MARGIN:
            continue
        if all(c.slack(params) >= SAMPLE_MARGIN for c in fam.constraints):
            return RepresentativeSpec(fam.label, params)
    raise NeverSatisfiableError(f"no valid parameters for class {fam.label} in {MAX_DRAWS} draws")
