"""Derive symmetry operators from the graded ansatz by exact elimination.

A degree-M candidate is the parity symbol times a 2x2 matrix whose entries
are ladder polynomials with unknown constant coefficients, 4(M+1)^2 unknowns
in total.  Requiring the candidate to commute with the Hamiltonian is linear
in the unknowns; the commutator is expanded monomial by monomial and each
coefficient becomes one row of an exact rational constraint matrix whose
nullspace is computed fraction-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog, linalg
from .algebra import EXACT, Monomial, OperatorPolynomial, ScalarModeError, TermKey
from .models import Model, ModelParams, ParameterError, build_hamiltonian, validate


@dataclass(frozen=True)
class SymmetryOperator:
    """A solved or catalogued symmetry operator with its provenance.

    The pinned coefficient records which term the normalization fixed and to
    what value; catalogued operators keep the printed normalization and pin
    nothing unless the closed form makes a coefficient +-1.
    """

    operator: OperatorPolynomial
    degree: int
    params: ModelParams
    provenance: str  # "derived" | "catalog"
    pinned_key: TermKey | None = None
    pinned_value: Fraction | None = None

    def commutes_with_hamiltonian(self) -> bool:
        h = build_hamiltonian(self.params)
        return self.operator.commutator(h).is_zero()

    def hermiticity_defect(self) -> OperatorPolynomial:
        """adjoint(J) - J, reported as data; nothing is asserted about it."""
        return self.operator.adjoint() - self.operator


@dataclass
class AnsatzSystem:
    """Unknown layout and, once assembled, the exact constraint matrix."""

    degree: int
    unknowns: list[TermKey]
    rows: list[list[Fraction]] = field(default_factory=list)
    row_labels: list[TermKey] = field(default_factory=list)
    params: ModelParams | None = None


@dataclass
class SolveResult:
    """Outcome of one derivation: nullspace dimension and its content."""

    dimension: int
    operator: SymmetryOperator | None
    basis: list[OperatorPolynomial]


def build_ansatz(degree: int) -> AnsatzSystem:
    """Skeleton with the 4(M+1)^2 unknown coefficient slots."""
    if degree < 0:
        raise ValueError("ansatz degree must be >= 0")
    unknowns = [
        (row, col, Monomial(1, i, j))
        for row in (0, 1)
        for col in (0, 1)
        for i in range(degree + 1)
        for j in range(degree + 1)
    ]
    return AnsatzSystem(degree=degree, unknowns=unknowns)


def assemble(system: AnsatzSystem, params: ModelParams) -> AnsatzSystem:
    """Fill in the constraint rows of commuting with the Hamiltonian."""
    if params.mode != EXACT:
        raise ScalarModeError("derivations run in exact mode only")
    hamiltonian = build_hamiltonian(params)
    columns = []
    keys: set[TermKey] = set()
    for unknown in system.unknowns:
        basis_elem = OperatorPolynomial({unknown: 1})
        column = basis_elem.commutator(hamiltonian)
        columns.append(column)
        keys.update(key for key, _ in column._terms.items())
    row_labels = sorted(keys)
    rows = [
        [column.coefficient(*label) for column in columns] for label in row_labels
    ]
    system.rows = rows
    system.row_labels = row_labels
    system.params = params
    return system


def _vector_to_polynomial(
    vector: list[Fraction], unknowns: list[TermKey]
) -> OperatorPolynomial:
    return OperatorPolynomial(
        {key: value for key, value in zip(unknowns, vector) if value}
    )


def _normalize(
    poly: OperatorPolynomial, model: Model, degree: int
) -> tuple[OperatorPolynomial, TermKey, Fraction]:
    preferred = catalog.PREFERRED_PINS.get((model, degree))
    if preferred is not None and poly.coefficient(*preferred[0]) != 0:
        key, value = preferred
        value = Fraction(value)
    else:
        key = min(poly._terms)
        value = Fraction(1)
    scaled = poly.scale(value / poly.coefficient(*key))
    return scaled, key, value


def solve(params: ModelParams, degree: int) -> SolveResult:
    """Derive the symmetry operator of degree |M| at the given parameters.

    Returns the normalized operator when the solution space has dimension
    one, an empty result when it is trivial, and the whole basis (flagged by
    dimension > 1) when it is larger; larger spaces are never truncated.
    """
    violations = validate(params)
    if violations:
        raise ParameterError(violations)
    system = assemble(build_ansatz(abs(degree)), params)
    basis = linalg.nullspace(system.rows, len(system.unknowns))
    polys = [_vector_to_polynomial(vector, system.unknowns) for vector in basis]
    if len(polys) != 1:
        return SolveResult(dimension=len(polys), operator=None, basis=polys)
    normalized, key, value = _normalize(polys[0], params.model, abs(degree))
    operator = SymmetryOperator(
        operator=normalized,
        degree=abs(degree),
        params=params,
        provenance="derived",
        pinned_key=key,
        pinned_value=value,
    )
    if not operator.commutes_with_hamiltonian():
        raise RuntimeError("derived operator failed the exact commutator check")
    return SolveResult(dimension=1, operator=operator, basis=polys)


def catalog_operator(model: Model, degree: int, params: ModelParams) -> SymmetryOperator:
    """Closed-form operator instantiated at params, printed normalization."""
    poly = catalog.closed_form(model, degree, params)
    pin = catalog.PREFERRED_PINS.get((Model(model), degree))
    return SymmetryOperator(
        operator=poly,
        degree=degree,
        params=params,
        provenance="catalog",
        pinned_key=pin[0] if pin else None,
        pinned_value=Fraction(pin[1]) if pin else None,
    )


def catalog_entries() -> list[tuple[Model, int]]:
    return sorted(catalog.CATALOG, key=lambda pair: (pair[0].value, pair[1]))


def proportionality_ratio(
    left: OperatorPolynomial, right: OperatorPolynomial
) -> Fraction | float | None:
    """The single scalar r with left = r * right, or None if there is none."""
    if left.mode != right.mode:
        raise ScalarModeError("cannot compare polynomials across scalar modes")
    if left.is_zero() or right.is_zero():
        return None
    keys = set(left._terms) | set(right._terms)
    ratio = None
    for key in sorted(keys):
        lv = left.coefficient(*key)
        rv = right.coefficient(*key)
        if rv == 0:
            if lv != 0:
                return None
            continue
        current = lv / rv
        if ratio is None:
            ratio = current
        elif current != ratio:
            return None
    return ratio
