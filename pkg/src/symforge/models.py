"""The four biased Rabi-family Hamiltonians and their special bias values.

All four models are instances of one matrix form

    [[(1+U) adag a + delta,   g(lam adag + a) + eps],
     [g(adag + lam a) + eps,  (1-U) adag a - delta]]

with anisotropy lam = mu^2 (lam = 1 when absent) and Stark weight U = sin_t
(U = 0 when absent).  The light-field frequency is scaled to one.

Irrational parameters never enter: the anisotropy is supplied through its
exact square root mu, and the Stark angle through an exact rational point
(sin_t, cos_t) on the unit circle, so every derived quantity stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path

from . import algebra
from .algebra import (
    EXACT,
    FLOAT,
    Coeff,
    OperatorPolynomial,
    ScalarModeError,
    rational_from_string,
    rational_to_string,
)


class Model(str, Enum):
    AQRM = "aqrm"
    ANISO_AQRM = "aniso_aqrm"
    ARSM = "arsm"
    ANISO_ARSM = "aniso_arsm"

    @property
    def anisotropic(self) -> bool:
        return self in (Model.ANISO_AQRM, Model.ANISO_ARSM)

    @property
    def stark(self) -> bool:
        return self in (Model.ARSM, Model.ANISO_ARSM)


class ParameterError(ValueError):
    """Inadmissible model parameters; carries the violation list."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class ModelParams:
    """Couplings of one model instance.

    g: coupling strength, delta: half level splitting, epsilon: bias field,
    mu: exact square root of the anisotropy (anisotropic models only),
    (sin_t, cos_t): exact rational circle point for the Stark weight
    U = sin_t (Stark models only).
    """

    model: Model
    g: Coeff
    delta: Coeff
    epsilon: Coeff
    mu: Coeff | None = None
    sin_t: Coeff | None = None
    cos_t: Coeff | None = None

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        scalars = self._scalar_items()
        has_float = any(isinstance(v, float) for _, v in scalars)
        has_exact = any(isinstance(v, Fraction) for _, v in scalars)
        if has_float and has_exact:
            raise ScalarModeError("exact and float parameters in one ModelParams")
        for name, value in scalars:
            if isinstance(value, int):
                coerced = float(value) if has_float else Fraction(value)
                object.__setattr__(self, name, coerced)
            elif not isinstance(value, (float, Fraction)):
                raise ScalarModeError(f"unsupported scalar type for {name}")

    def _scalar_items(self) -> list[tuple[str, Coeff]]:
        items = [("g", self.g), ("delta", self.delta), ("epsilon", self.epsilon)]
        for name in ("mu", "sin_t", "cos_t"):
            value = getattr(self, name)
            if value is not None:
                items.append((name, value))
        return items

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self.g, float) else EXACT

    @property
    def lam(self) -> Coeff:
        """Anisotropy lam = mu^2."""
        if self.mu is None:
            raise ParameterError(["mu: required for anisotropic quantities"])
        return self.mu * self.mu

    def replace(self, **changes) -> "ModelParams":
        fields = {
            "model": self.model,
            "g": self.g,
            "delta": self.delta,
            "epsilon": self.epsilon,
            "mu": self.mu,
            "sin_t": self.sin_t,
            "cos_t": self.cos_t,
        }
        fields.update(changes)
        return ModelParams(**fields)

    def to_float(self) -> "ModelParams":
        def conv(value):
            return None if value is None else float(value)

        return ModelParams(
            model=self.model,
            g=conv(self.g),
            delta=conv(self.delta),
            epsilon=conv(self.epsilon),
            mu=conv(self.mu),
            sin_t=conv(self.sin_t),
            cos_t=conv(self.cos_t),
        )


def validate(params: ModelParams) -> list[str]:
    """Admissibility check; returns one message per violated rule."""
    violations = []
    model = params.model
    if model.anisotropic:
        if params.mu is None:
            violations.append("mu: required for anisotropic models")
        elif params.mu <= 0:
            violations.append("mu: mu > 0 required")
    elif params.mu is not None:
        violations.append("mu: only meaningful for anisotropic models")
    if model.stark:
        if params.sin_t is None or params.cos_t is None:
            violations.append("sin_t/cos_t: required for Stark models")
        else:
            if params.sin_t * params.sin_t + params.cos_t * params.cos_t != 1:
                violations.append("sin_t/cos_t: sin_t^2 + cos_t^2 = 1 required")
            if abs(params.sin_t) >= 1:
                violations.append("sin_t: |U| < 1 required")
    elif params.sin_t is not None or params.cos_t is not None:
        violations.append("sin_t/cos_t: only meaningful for Stark models")
    return violations


def build_hamiltonian(params: ModelParams) -> OperatorPolynomial:
    """Hamiltonian of the given model as an operator polynomial."""
    violations = validate(params)
    if violations:
        raise ParameterError(violations)
    mode = params.mode
    one = 1 if mode == EXACT else 1.0
    lam = params.lam if params.model.anisotropic else one
    stark = params.sin_t if params.model.stark else one * 0

    ad = algebra.creation(mode)
    a = algebra.annihilation(mode)
    n = ad * a
    e00 = algebra.qubit_unit(0, 0, mode)
    e01 = algebra.qubit_unit(0, 1, mode)
    e10 = algebra.qubit_unit(1, 0, mode)
    e11 = algebra.qubit_unit(1, 1, mode)

    upper = (one + stark) * (n * e00) + params.delta * e00
    lower = (one - stark) * (n * e11) - params.delta * e11
    raising = (params.g * (lam * (ad * e01) + a * e01)) + params.epsilon * e01
    lowering = (params.g * ((ad * e10) + lam * (a * e10))) + params.epsilon * e10
    return upper + lower + raising + lowering


def epsilon_condition(model: Model, degree: int, params: ModelParams | None = None) -> Fraction:
    """Bias value at which a degree-|M| symmetry operator exists.

    Signed integer M is accepted; the bias follows the sign of M while the
    operator degree is |M|.
    """
    model = Model(model)
    if not isinstance(degree, int):
        raise TypeError("degree M must be an integer")
    factor = Fraction(degree)
    if model.anisotropic:
        if params is None or params.mu is None:
            raise ParameterError(["mu: required for the anisotropic bias condition"])
        mu = params.mu
        if isinstance(mu, float):
            raise ScalarModeError("bias condition requires exact parameters")
        factor *= mu / (1 + mu * mu)
    else:
        factor *= Fraction(1, 2)
    if model.stark:
        if params is None or params.cos_t is None:
            raise ParameterError(["cos_t: required for the Stark bias condition"])
        cos_t = params.cos_t
        if isinstance(cos_t, float):
            raise ScalarModeError("bias condition requires exact parameters")
        factor *= cos_t
    return factor


# -- TOML parameter files -----------------------------------------------------


def params_to_toml(params: ModelParams) -> str:
    """Flat TOML table mirroring the ModelParams fields."""
    lines = [f'model = "{params.model.value}"']
    for name, value in params._scalar_items():
        if isinstance(value, Fraction):
            lines.append(f'{name} = "{rational_to_string(value)}"')
        else:
            lines.append(f"{name} = {value!r}")
    return "\n".join(lines) + "\n"


def params_from_table(table: dict) -> ModelParams:
    """Build ModelParams from a parsed TOML table."""
    def conv(value):
        if value is None or isinstance(value, (int, float)):
            return value
        return rational_from_string(value)

    return ModelParams(
        model=Model(table["model"]),
        g=conv(table.get("g")),
        delta=conv(table.get("delta")),
        epsilon=conv(table.get("epsilon")),
        mu=conv(table.get("mu")),
        sin_t=conv(table.get("sin_t")),
        cos_t=conv(table.get("cos_t")),
    )


def dump_params(params: ModelParams, path: str | Path) -> None:
    Path(path).write_text(params_to_toml(params))


def load_params(path: str | Path) -> ModelParams:
    import tomli

    with open(path, "rb") as handle:
        return params_from_table(tomli.load(handle))
