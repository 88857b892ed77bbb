"""Squares of symmetry operators and their polynomial relation with H.

A degree-M symmetry operator squares to a polynomial in the Hamiltonian;
the degree of that polynomial is M for the plain and anisotropic biased Rabi
models and 2M once a Stark term is present.  The fit expands candidate
Hamiltonian powers in the canonical monomial basis and solves the matching
linear system exactly, so a successful fit is a zero-residual certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import EXACT, OperatorPolynomial, ScalarModeError
from .models import Model, ModelParams, build_hamiltonian
from .solver import SymmetryOperator


@dataclass(frozen=True)
class HPolynomialRelation:
    """Exact coefficients c_0..c_D with J^2 = sum_k c_k H^k, c_D != 0."""

    coefficients: tuple[Fraction, ...]
    degree: int
    params: ModelParams

    def evaluate(self, energy: float) -> float:
        acc = 0.0
        for coeff in reversed(self.coefficients):
            acc = acc * energy + float(coeff)
        return acc


class FitError(ValueError):
    """No exact polynomial relation up to the requested degree.

    Carries the best candidate coefficients and the nonzero residual
    polynomial, which distinguishes a wrong operator from a degree bound
    that is simply too small.
    """

    def __init__(self, message, coefficients, residual):
        super().__init__(message)
        self.coefficients = coefficients
        self.residual = residual


def square(operator: SymmetryOperator) -> OperatorPolynomial:
    """J*J; odd grading squares to even, so the result carries grading 0."""
    poly = operator.operator
    return poly.multiply(poly)


def hamiltonian_powers(
    hamiltonian: OperatorPolynomial, max_degree: int
) -> list[OperatorPolynomial]:
    powers = [OperatorPolynomial.identity(hamiltonian.mode)]
    for _ in range(max_degree):
        powers.append(powers[-1].multiply(hamiltonian))
    return powers


def fit(
    j_squared: OperatorPolynomial,
    hamiltonian: OperatorPolynomial,
    max_degree: int,
    params: ModelParams | None = None,
) -> HPolynomialRelation:
    """Express j_squared exactly as a polynomial in the Hamiltonian.

    Raises FitError when no exact relation of degree <= max_degree exists.
    """
    if j_squared.mode != EXACT or hamiltonian.mode != EXACT:
        raise ScalarModeError("relation fitting runs in exact mode only")
    powers = hamiltonian_powers(hamiltonian, max_degree)
    keys = set(j_squared._terms)
    for power in powers:
        keys.update(power._terms)
    basis = sorted(keys)
    columns = [[power.coefficient(*key) for key in basis] for power in powers]
    target = [j_squared.coefficient(*key) for key in basis]
    solution = linalg.solve_linear(columns, target)
    if solution is None:
        candidate = _best_effort(columns, target, max_degree)
        residual = j_squared
        for k, coeff in enumerate(candidate):
            if coeff:
                residual = residual - powers[k].scale(coeff)
        raise FitError(
            f"no exact polynomial relation of degree <= {max_degree}",
            tuple(candidate),
            residual,
        )
    degree = max_degree
    while degree > 0 and solution[degree] == 0:
        degree -= 1
    return HPolynomialRelation(
        coefficients=tuple(solution[: degree + 1]),
        degree=degree,
        params=params,
    )


def _best_effort(columns, target, max_degree) -> list[Fraction]:
    """Least-structure candidate for the FitError payload: solve the
    consistent subsystem picked out by elimination, free variables zero."""
    rows = len(target)
    # drop rows until consistent, scanning from the high-degree tail
    for drop in range(rows + 1):
        kept = list(range(rows - drop))
        sub_cols = [[col[i] for i in kept] for col in columns]
        sub_tgt = [target[i] for i in kept]
        solution = linalg.solve_linear(sub_cols, sub_tgt)
        if solution is not None:
            return solution
    return [Fraction(0)] * (max_degree + 1)


@dataclass(frozen=True)
class DegreeLawResult:
    passed: bool
    observed: int
    expected: int


def expected_relation_degree(model: Model, degree: int, params: ModelParams) -> int:
    """M for the plain/anisotropic models, 2M with an active Stark term."""
    model = Model(model)
    if model.stark and params.sin_t != 0:
        return 2 * degree
    return degree


def degree_law_check(
    model: Model, degree: int, relation: HPolynomialRelation
) -> DegreeLawResult:
    expected = expected_relation_degree(model, degree, relation.params)
    return DegreeLawResult(
        passed=relation.degree == expected,
        observed=relation.degree,
        expected=expected,
    )


def fit_symmetry_operator(
    operator: SymmetryOperator, max_degree: int | None = None
) -> HPolynomialRelation:
    """Square the operator and fit against its own Hamiltonian.

    The default degree bound is one above the largest possible relation
    degree, so an unexpected extra order is detected instead of masked.
    """
    if max_degree is None:
        max_degree = 2 * operator.degree + 1
    hamiltonian = build_hamiltonian(operator.params)
    return fit(square(operator), hamiltonian, max_degree, params=operator.params)
