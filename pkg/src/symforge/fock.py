"""Truncated Fock-space matrices, spectra, sector labels, and crossings.

Operators act on qubit (x) boson with the boson space cut at N number states;
matrices are laid out qubit-major, one N x N block per qubit matrix entry.
Truncation contaminates the states near the cutoff, so identities are only
asserted on the interior block (number states below N - margin) and only the
lowest K eigenvalues, re-certified against a doubled cutoff, are trusted.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .algebra import FLOAT, OperatorPolynomial
from .models import ModelParams, build_hamiltonian
from .solver import SymmetryOperator, catalog_operator

GAP_CROSS_TOL = 1e-6
GAP_AVOID_TOL = 1e-3
DEGENERACY_TOL = 1e-10
AMBIGUOUS_LABEL_TOL = 1e-10
COMMUTATION_TOL = 1e-8
CONVERGENCE_TOL = 1e-10


class ConvergenceError(RuntimeError):
    """Trusted eigenvalues moved too much under cutoff doubling."""


class LabelError(RuntimeError):
    """Sector labeling could not be carried out as requested."""


@dataclass(frozen=True)
class TruncationSpec:
    """Fock cutoff N, contaminated margin, and trusted eigenvalue count."""

    fock_dim: int = 120
    margin: int = 10
    levels: int = 12

    def __post_init__(self):
        if self.fock_dim < 8:
            raise ValueError("fock_dim must be >= 8")
        if not 0 < self.margin < self.fock_dim:
            raise ValueError("margin must satisfy 0 < margin < fock_dim")
        if not 0 < self.levels <= self.fock_dim - self.margin:
            raise ValueError("levels must satisfy 0 < levels <= fock_dim - margin")

    def interior_mask(self) -> np.ndarray:
        keep = np.arange(self.fock_dim) < self.fock_dim - self.margin
        return np.concatenate([keep, keep])


def _ladder_element(n: int, dag: int, ann: int) -> float:
    """<n - ann + dag| adag^dag a^ann |n>, an exact integer under one sqrt."""
    if ann > n:
        return 0.0
    value = 1
    for k in range(n - ann + 1, n + 1):
        value *= k
    for k in range(n - ann + 1, n - ann + dag + 1):
        value *= k
    return math.sqrt(value)


def _real_matrix(poly: OperatorPolynomial, dim: int) -> np.ndarray:
    """Internal real representation; all coefficients here are real."""
    out = np.zeros((2 * dim, 2 * dim))
    for row, col, mono, coeff in poly.terms():
        coeff = float(coeff)
        for n in range(dim):
            m = n - mono.ann + mono.dag
            if not 0 <= m < dim:
                continue
            value = coeff * _ladder_element(n, mono.dag, mono.ann)
            if mono.grading and m % 2:
                value = -value
            out[row * dim + m, col * dim + n] += value
    return out


def to_matrix(poly: OperatorPolynomial, spec: TruncationSpec | int) -> np.ndarray:
    """Dense 2N x 2N complex matrix of the operator polynomial."""
    dim = spec if isinstance(spec, int) else spec.fock_dim
    return _real_matrix(poly, dim).astype(complex)


def interior_block(matrix: np.ndarray, spec: TruncationSpec) -> np.ndarray:
    mask = spec.interior_mask()
    return matrix[np.ix_(mask, mask)]


def spectrum(
    params: ModelParams,
    spec: TruncationSpec,
    *,
    check_convergence: bool = True,
    tol: float = CONVERGENCE_TOL,
):
    """Lowest trusted eigenvalues and eigenvectors, ascending.

    Convergence is certified by re-diagonalizing at a doubled cutoff and
    requiring the trusted eigenvalues to agree within tol.
    """
    hamiltonian = build_hamiltonian(params.to_float())
    matrix = _real_matrix(hamiltonian, spec.fock_dim)
    defect = np.abs(matrix - matrix.T).max()
    if defect >= 1e-12:
        raise ValueError(f"Hamiltonian matrix not Hermitian (defect {defect:.3g})")
    all_values, all_vectors = np.linalg.eigh(matrix)
    eigenvalues = all_values[: spec.levels]
    eigenvectors = all_vectors[:, : spec.levels]
    if check_convergence:
        doubled = _real_matrix(hamiltonian, 2 * spec.fock_dim)
        reference = scipy.linalg.eigh(doubled, eigvals_only=True, driver="evd")[
            : spec.levels
        ]
        shift = np.abs(eigenvalues - reference).max()
        if shift >= tol:
            raise ConvergenceError(
                f"eigenvalues moved {shift:.3g} under cutoff doubling "
                f"(requested {spec.levels} levels at fock_dim {spec.fock_dim})"
            )
    return eigenvalues, eigenvectors


@dataclass(frozen=True)
class LevelLabels:
    labels: np.ndarray        # +1 / -1 per level
    expectations: np.ndarray  # <v| J |v> per level
    ambiguous: tuple[int, ...]  # levels whose expectation is too small to sign


def j_labels(
    operator: SymmetryOperator,
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    spec: TruncationSpec,
    *,
    check_commutation: bool = True,
) -> LevelLabels:
    """Sector labels sign(<v|J|v>) for each eigenvector.

    Numerically degenerate clusters are rotated to diagonalize J first; an
    expectation too small to sign outside such a cluster is reported as
    ambiguous rather than silently labeled.
    """
    j_matrix = _real_matrix(operator.operator, spec.fock_dim)
    if check_commutation:
        h_matrix = _real_matrix(
            build_hamiltonian(operator.params.to_float()), spec.fock_dim
        )
        comm = j_matrix @ h_matrix - h_matrix @ j_matrix
        norm = np.abs(interior_block(comm, spec)).max()
        if norm >= COMMUTATION_TOL:
            raise LabelError(
                f"operator does not commute with H on the interior block "
                f"(norm {norm:.3g}); labels would be meaningless"
            )
    count = len(eigenvalues)
    vectors = eigenvectors.copy()
    expectations = np.empty(count)
    in_cluster = np.zeros(count, dtype=bool)
    start = 0
    while start < count:
        stop = start + 1
        while stop < count and eigenvalues[stop] - eigenvalues[stop - 1] < DEGENERACY_TOL:
            stop += 1
        block = vectors[:, start:stop]
        if stop - start > 1:
            in_cluster[start:stop] = True
            j_sub = block.conj().T @ j_matrix @ block
            j_sub = (j_sub + j_sub.conj().T) / 2
            sub_values, sub_vectors = scipy.linalg.eigh(j_sub)
            vectors[:, start:stop] = block @ sub_vectors
            expectations[start:stop] = sub_values
        else:
            vec = block[:, 0]
            expectations[start] = np.real(vec.conj() @ j_matrix @ vec)
        start = stop
    ambiguous = tuple(
        k
        for k in range(count)
        if not in_cluster[k] and abs(expectations[k]) < AMBIGUOUS_LABEL_TOL
    )
    labels = np.where(expectations >= 0, 1, -1)
    return LevelLabels(labels=labels, expectations=expectations, ambiguous=ambiguous)


@dataclass
class SpectrumSweep:
    """Spectra and sector labels over an increasing coupling grid."""

    g_grid: np.ndarray
    energies: np.ndarray      # (steps, levels)
    labels: np.ndarray        # (steps, levels)
    expectations: np.ndarray  # (steps, levels)
    params: ModelParams       # template; g varies along the grid
    degree: int
    spec: TruncationSpec
    on_condition: bool = True
    ambiguous: list[tuple[int, int]] = field(default_factory=list)

    def to_rows(self):
        """Long-format rows (g, level, energy, label, j_expectation)."""
        for i, g in enumerate(self.g_grid):
            for k in range(self.energies.shape[1]):
                yield (
                    float(g),
                    k,
                    float(self.energies[i, k]),
                    int(self.labels[i, k]),
                    float(self.expectations[i, k]),
                )


def _sweep_point(params, degree, spec, g, check_commutation, check_convergence):
    point_params = params.to_float().replace(g=float(g))
    eigenvalues, eigenvectors = spectrum(
        point_params, spec, check_convergence=check_convergence
    )
    operator = catalog_operator(point_params.model, degree, point_params)
    level_labels = j_labels(
        operator, eigenvalues, eigenvectors, spec, check_commutation=check_commutation
    )
    return eigenvalues, level_labels


def sweep(
    params: ModelParams,
    g_min: float,
    g_max: float,
    steps: int,
    spec: TruncationSpec,
    degree: int,
    *,
    on_condition: bool = True,
    check_convergence: bool = True,
    threads: int = 1,
) -> SpectrumSweep:
    """Diagonalize and label the spectrum on a coupling grid.

    The bias is held fixed; the caller decides whether it sits on the special
    condition.  Off-condition the symmetry formula is still evaluated for
    bookkeeping but no commutation is enforced; on-condition the interior
    commutation check runs at the grid endpoints (the identity itself is
    g-independent; the endpoint checks guard the truncated realization).
    Grid points are independent; with threads > 1 they are computed
    concurrently and merged by index.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not g_min < g_max:
        raise ValueError("g_min must be < g_max")
    grid = np.linspace(g_min, g_max, steps)
    results = [None] * steps

    def run(index):
        check_commutation = on_condition and index in (0, steps - 1)
        try:
            return _sweep_point(
                params, degree, spec, grid[index], check_commutation, check_convergence
            )
        except ConvergenceError as exc:
            raise ConvergenceError(f"grid index {index} (g={grid[index]}): {exc}") from exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, range(steps)))
    else:
        results = [run(i) for i in range(steps)]

    energies = np.vstack([values for values, _ in results])
    labels = np.vstack([ll.labels for _, ll in results])
    expectations = np.vstack([ll.expectations for _, ll in results])
    ambiguous = [
        (i, k) for i, (_, ll) in enumerate(results) for k in ll.ambiguous
    ]
    return SpectrumSweep(
        g_grid=grid,
        energies=energies,
        labels=labels,
        expectations=expectations,
        params=params.to_float(),
        degree=degree,
        spec=spec,
        on_condition=on_condition,
        ambiguous=ambiguous,
    )


@dataclass(frozen=True)
class CrossingEvent:
    """A refined local minimum of one adjacent-level gap."""

    level_low: int
    level_high: int
    g_star: float
    min_gap: float
    kind: str  # "crossing" | "avoided"
    labels: tuple[int, int]
    anomaly: bool
    anomaly_reason: str | None = None


def _gap_function(sweep_result: SpectrumSweep, level: int):
    params = sweep_result.params
    spec = sweep_result.spec

    def gap(g: float) -> float:
        point = params.replace(g=float(g))
        hamiltonian = build_hamiltonian(point)
        values = scipy.linalg.eigh(
            _real_matrix(hamiltonian, spec.fock_dim), eigvals_only=True, driver="evd"
        )
        return values[level + 1] - values[level]

    return gap


def _golden_minimize(func, lo, hi, width):
    """Golden-section minimum refinement down to the given bracket width."""
    inv_phi = (math.sqrt(5) - 1) / 2
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = func(x1), func(x2)
    while hi - lo > width:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = func(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = func(x2)
    x_star = (lo + hi) / 2
    return x_star, func(x_star)


def detect_crossings(
    sweep_result: SpectrumSweep,
    *,
    gap_cross_tol: float = GAP_CROSS_TOL,
    gap_avoid_tol: float = GAP_AVOID_TOL,
    refine_width: float = 1e-10,
) -> list[CrossingEvent]:
    """Classify every interior local minimum of the adjacent-level gaps.

    A refined tiny gap between opposite-label levels is a crossing; a clear
    gap between same-label levels is avoided.  Everything else contradicts
    the sector picture and is flagged as an anomaly, never discarded.
    """
    grid = sweep_result.g_grid
    energies = sweep_result.energies
    labels = sweep_result.labels
    steps, levels = energies.shape
    events = []
    for level in range(levels - 1):
        gaps = energies[:, level + 1] - energies[:, level]
        for i in range(1, steps - 1):
            if not (gaps[i] <= gaps[i - 1] and gaps[i] < gaps[i + 1]):
                continue
            gap = _gap_function(sweep_result, level)
            g_star, min_gap = _golden_minimize(
                gap, grid[i - 1], grid[i + 1], refine_width
            )
            pair = (int(labels[i, level]), int(labels[i, level + 1]))
            differ = pair[0] != pair[1]
            if min_gap < gap_cross_tol:
                kind = "crossing"
                anomaly = not differ
                reason = "tiny gap between equal labels" if anomaly else None
            elif min_gap > gap_avoid_tol:
                kind = "avoided"
                anomaly = differ
                reason = "clear gap minimum between opposite labels" if anomaly else None
            else:
                kind = "avoided"
                anomaly = True
                reason = "gap minimum between the crossing and avoidance tolerances"
            events.append(
                CrossingEvent(
                    level_low=level,
                    level_high=level + 1,
                    g_star=float(g_star),
                    min_gap=float(min_gap),
                    kind=kind,
                    labels=pair,
                    anomaly=anomaly,
                    anomaly_reason=reason,
                )
            )
    return events
