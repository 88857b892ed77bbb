"""Closed-form symmetry operators for the four models at low degree.

Every operator here is the boson-parity symbol times a 2x2 matrix of
normal-ordered ladder polynomials, instantiated exactly from rational model
parameters (the anisotropy enters through mu = sqrt(lam), the Stark angle
through the rational pair (sin_t, cos_t)).
"""

from __future__ import annotations

from .algebra import Monomial, OperatorPolynomial
from .models import Model, ModelParams, ParameterError, validate

# (model, degree) pairs with a printed closed form.
CATALOG = {
    (Model.AQRM, 0),
    (Model.AQRM, 1),
    (Model.ANISO_AQRM, 1),
    (Model.ANISO_AQRM, 2),
    (Model.ARSM, 1),
    (Model.ANISO_ARSM, 1),
}

# Coefficient the closed form pins to +-1, when one exists: the constant of
# the upper-left entry at degree 0, the adag coefficient of the upper-right
# entry at degree 1.
PREFERRED_PINS = {
    (Model.AQRM, 0): ((0, 0, Monomial(1, 0, 0)), 1),
    (Model.AQRM, 1): ((0, 1, Monomial(1, 1, 0)), 1),
}


def _dag(entry: dict) -> dict:
    """Adjoint of a plain (ungraded) ladder polynomial entry."""
    return {(j, i): coeff for (i, j), coeff in entry.items()}


def _graded_dag(entry: dict) -> dict:
    """Adjoint of an entry sitting behind the parity symbol.

    Moving the parity symbol back through the daggered monomial flips the
    sign of every odd-degree term, which is what makes the full operator
    Hermitian.
    """
    return {(j, i): coeff if (i + j) % 2 == 0 else -coeff for (i, j), coeff in entry.items()}


def _assemble(entries: dict, mode: str) -> OperatorPolynomial:
    """Attach the parity prefactor: every monomial gets grading 1."""
    terms = {}
    for (row, col), entry in entries.items():
        for (i, j), coeff in entry.items():
            terms[(row, col, Monomial(1, i, j))] = coeff
    return OperatorPolynomial(terms, mode)


def _aqrm_m0(params: ModelParams) -> OperatorPolynomial:
    one = 1 if params.mode == "exact" else 1.0
    return _assemble({(0, 0): {(0, 0): one}, (1, 1): {(0, 0): -one}}, params.mode)


def _aqrm_m1(params: ModelParams) -> OperatorPolynomial:
    g, d = params.g, params.delta
    if g == 0:
        raise ParameterError(["g: g != 0 required for this closed form"])
    entries = {
        (0, 0): {(1, 0): 1, (0, 1): -1, (0, 0): 2 * g + d / g},
        (0, 1): {(1, 0): 1, (0, 1): 1},
        (1, 0): {(1, 0): -1, (0, 1): -1},
        (1, 1): {(0, 1): 1, (1, 0): -1, (0, 0): -2 * g + d / g},
    }
    return _assemble(entries, params.mode)


def _aniso_aqrm_m1(params: ModelParams) -> OperatorPolynomial:
    g, d, mu = params.g, params.delta, params.mu
    lam = mu * mu
    q = 1 / (2 * (1 + lam))
    off = 2 * g * (1 + lam)

    def a_diag(sign):
        slope = sign * 2 * g * mu * (1 + lam)
        const = sign * g * g * (1 + lam) ** 3 + 2 * d * (1 + lam) + lam - 1
        return {(1, 0): q * slope, (0, 1): -q * slope, (0, 0): q * const}

    b_up = {(1, 0): q * off * lam, (0, 1): q * off}
    entries = {
        (0, 0): a_diag(+1),
        (0, 1): b_up,
        (1, 0): {key: -coeff for key, coeff in _dag(b_up).items()},
        (1, 1): a_diag(-1),
    }
    return _assemble(entries, params.mode)


def _aniso_aqrm_m2(params: ModelParams) -> OperatorPolynomial:
    g, d, mu = params.g, params.delta, params.mu
    lam = mu * mu
    q = 1 / (4 * (1 + lam) ** 2)
    mix = d * lam + lam + d - 1

    def a_diag(sign):
        number = sign * 4 * g * g * (1 - lam * lam) ** 2
        quad = sign * 8 * g * g * lam * (1 + lam) ** 2
        slope = sign * 4 * g * mu * (1 + lam) * (
            g * g * (1 + lam) ** 3 + sign * 2 * mix
        )
        const = sign * (1 + lam) * (
            g ** 4 * (1 + lam) ** 5
            + 4 * d * mix
            + 2 * g * g * (1 + lam) * ((1 - lam) ** 2 + sign * 2 * d * (1 + lam) ** 2)
        )
        return {
            (1, 1): q * number,
            (2, 0): q * quad,
            (0, 2): q * quad,
            (1, 0): q * slope,
            (0, 1): -q * slope,
            (0, 0): q * const,
        }

    b_up = {
        (1, 1): q * 8 * g * g * (1 - lam) * mu * (1 + lam) ** 2,
        (2, 0): q * 8 * g * g * mu * lam * (1 + lam) ** 2,
        (0, 2): -q * 8 * g * g * mu * (1 + lam) ** 2,
        (1, 0): q * 4 * g ** 3 * lam * (1 + lam) ** 4,
        (0, 1): q * 4 * g ** 3 * (1 + lam) ** 4,
        (0, 0): q * 4 * mu * (g * g * (1 - lam) * (1 + lam) ** 2 + 2 * mix),
    }
    entries = {
        (0, 0): a_diag(+1),
        (0, 1): b_up,
        (1, 0): _graded_dag(b_up),
        (1, 1): a_diag(-1),
    }
    return _assemble(entries, params.mode)


def _arsm_m1(params: ModelParams) -> OperatorPolynomial:
    g, d, s, c = params.g, params.delta, params.sin_t, params.cos_t
    half_sin2t = s * c
    entries = {
        (0, 0): {
            (1, 1): s * (1 + s),
            (1, 0): g * c,
            (0, 1): -g * c,
            (0, 0): 2 * g * g + d * (1 + s),
        },
        (0, 1): {(1, 0): g, (0, 1): g, (0, 0): half_sin2t / 2},
        (1, 0): {(1, 0): -g, (0, 1): -g, (0, 0): half_sin2t / 2},
        (1, 1): {
            (1, 1): s * (1 - s),
            (1, 0): -g * c,
            (0, 1): g * c,
            (0, 0): -2 * g * g + d * (1 - s),
        },
    }
    return _assemble(entries, params.mode)


def _aniso_arsm_m1(params: ModelParams) -> OperatorPolynomial:
    g, d, mu = params.g, params.delta, params.mu
    s, c = params.sin_t, params.cos_t
    lam = mu * mu
    off_const = mu * s * c / (1 + lam)

    def a_bar(sign):
        return (
            c * c * (lam - 1) / (2 * (1 + lam))
            + sign * g * g * (1 + lam) ** 2 / 2
            + d * (1 + sign * s)
        )

    entries = {
        (0, 0): {
            (1, 1): s * (1 + s),
            (1, 0): g * mu * c,
            (0, 1): -g * mu * c,
            (0, 0): a_bar(+1),
        },
        (0, 1): {(1, 0): g * lam, (0, 1): g, (0, 0): off_const},
        (1, 0): {(1, 0): -g, (0, 1): -g * lam, (0, 0): off_const},
        (1, 1): {
            (1, 1): s * (1 - s),
            (1, 0): -g * mu * c,
            (0, 1): g * mu * c,
            (0, 0): a_bar(-1),
        },
    }
    return _assemble(entries, params.mode)


_BUILDERS = {
    (Model.AQRM, 0): _aqrm_m0,
    (Model.AQRM, 1): _aqrm_m1,
    (Model.ANISO_AQRM, 1): _aniso_aqrm_m1,
    (Model.ANISO_AQRM, 2): _aniso_aqrm_m2,
    (Model.ARSM, 1): _arsm_m1,
    (Model.ANISO_ARSM, 1): _aniso_arsm_m1,
}


def closed_form(model: Model, degree: int, params: ModelParams) -> OperatorPolynomial:
    """Instantiate the printed closed form for (model, degree) at params."""
    key = (Model(model), degree)
    if key not in _BUILDERS:
        raise KeyError(f"no closed form for model={key[0].value!r} degree={degree}")
    violations = validate(params)
    if violations:
        raise ParameterError(violations)
    return _BUILDERS[key](params)
