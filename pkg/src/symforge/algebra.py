"""Exact algebra of parity-graded, normal-ordered boson operator polynomials.

Elements are 2x2 matrices (qubit factor) whose entries are polynomials in the
boson ladder operators, kept in the canonical order

    parity^grading * adag^i * a^j

where ``parity`` is the boson parity exp(i*pi*adag*a), treated as a formal
symbol with the rewrite rules parity^2 = 1 and parity*a = -a*parity,
parity*adag = -adag*parity.  Coefficients are exact rationals
(:class:`fractions.Fraction`) or double-precision floats; a whole computation
runs in one mode and the two never mix.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterator, NamedTuple, Union

EXACT = "exact"
FLOAT = "float"

Coeff = Union[Fraction, float]


class ScalarModeError(TypeError):
    """Exact and float quantities met inside one computation."""


def rational_from_string(text: str) -> Fraction:
    """Parse a rational written as "num/den" or a plain integer string."""
    parts = text.strip().split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) == 2:
        return Fraction(int(parts[0]), int(parts[1]))
    raise ValueError(f"not a rational literal: {text!r}")


def rational_to_string(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class Monomial(NamedTuple):
    """Canonical basis element parity^grading * adag^dag * a^ann."""

    grading: int
    dag: int
    ann: int

    @property
    def total_degree(self) -> int:
        return self.dag + self.ann


TermKey = tuple[int, int, Monomial]


def _coerce_coeff(value, mode: str) -> Coeff:
    if mode == EXACT:
        if isinstance(value, float):
            raise ScalarModeError("float coefficient in an exact-mode polynomial")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
    elif mode == FLOAT:
        if isinstance(value, Fraction):
            raise ScalarModeError("exact coefficient in a float-mode polynomial")
        if isinstance(value, (int, float)):
            return float(value)
    else:
        raise ValueError(f"unknown scalar mode {mode!r}")
    raise ScalarModeError(f"unsupported coefficient type {type(value).__name__}")


def _monomial_product(m1: Monomial, m2: Monomial) -> Iterator[tuple[Monomial, int]]:
    """Normal-order the product of two monomials.

    Moving the right factor's parity symbol through the left factor's ladder
    operators costs one sign per ladder operator; the ladder reordering is
    a^j adag^k = sum_s C(j,s) C(k,s) s! adag^(k-s) a^(j-s).
    """
    sign = -1 if m2.grading and (m1.dag + m1.ann) % 2 else 1
    grading = (m1.grading + m2.grading) % 2
    for s in range(min(m1.ann, m2.dag) + 1):
        weight = math.comb(m1.ann, s) * math.comb(m2.dag, s) * math.factorial(s)
        yield Monomial(grading, m1.dag + m2.dag - s, m1.ann + m2.ann - s), sign * weight


class OperatorPolynomial:
    """Immutable 2x2-matrix-valued polynomial over the graded boson algebra.

    Terms are stored as a map (row, col, Monomial) -> coefficient with zero
    coefficients pruned, so equality is plain map comparison.
    """

    __slots__ = ("mode", "_terms")

    def __init__(self, terms=None, mode: str = EXACT):
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown scalar mode {mode!r}")
        clean: dict[TermKey, Coeff] = {}
        for key, value in (terms or {}).items():
            row, col, mono = key
            if row not in (0, 1) or col not in (0, 1):
                raise ValueError(f"qubit index out of range in term {key}")
            mono = Monomial(*mono)
            if mono.grading not in (0, 1) or mono.dag < 0 or mono.ann < 0:
                raise ValueError(f"malformed monomial {mono}")
            coeff = _coerce_coeff(value, mode)
            if coeff != 0:
                clean[(row, col, mono)] = coeff
        self.mode = mode
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, mode: str = EXACT) -> "OperatorPolynomial":
        return cls({}, mode)

    @classmethod
    def identity(cls, mode: str = EXACT) -> "OperatorPolynomial":
        one = Monomial(0, 0, 0)
        return cls({(0, 0, one): 1, (1, 1, one): 1}, mode)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[tuple[int, int, Monomial, Coeff]]:
        for (row, col, mono), coeff in self._terms.items():
            yield row, col, mono, coeff

    def num_terms(self) -> int:
        return len(self._terms)

    def entry(self, row: int, col: int) -> dict[Monomial, Coeff]:
        return {m: v for (r, c, m), v in self._terms.items() if r == row and c == col}

    def coefficient(self, row: int, col: int, mono: Monomial) -> Coeff:
        zero = Fraction(0) if self.mode == EXACT else 0.0
        return self._terms.get((row, col, Monomial(*mono)), zero)

    @property
    def degree(self) -> int:
        """Maximum total ladder degree present (0 for the zero polynomial)."""
        return max((m.total_degree for (_, _, m) in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def gradings(self) -> set[int]:
        return {m.grading for (_, _, m) in self._terms}

    # -- ring operations ----------------------------------------------------

    def _check_mode(self, other: "OperatorPolynomial") -> None:
        if self.mode != other.mode:
            raise ScalarModeError(
                f"cannot combine {self.mode}-mode and {other.mode}-mode polynomials"
            )

    def add(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        self._check_mode(other)
        acc = dict(self._terms)
        for key, value in other._terms.items():
            acc[key] = acc.get(key, 0) + value
        return OperatorPolynomial(acc, self.mode)

    def scale(self, scalar) -> "OperatorPolynomial":
        scalar = _coerce_coeff(scalar, self.mode)
        if scalar == 0:
            return OperatorPolynomial.zero(self.mode)
        return OperatorPolynomial(
            {key: scalar * value for key, value in self._terms.items()}, self.mode
        )

    def multiply(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        self._check_mode(other)
        acc: dict[TermKey, Coeff] = {}
        for (r1, c1, m1), v1 in self._terms.items():
            for (r2, c2, m2), v2 in other._terms.items():
                if c1 != r2:
                    continue
                v = v1 * v2
                for mono, weight in _monomial_product(m1, m2):
                    key = (r1, c2, mono)
                    acc[key] = acc.get(key, 0) + weight * v
        return OperatorPolynomial(acc, self.mode)

    def commutator(self, other: "OperatorPolynomial") -> "OperatorPolynomial":
        return self.multiply(other).add(other.multiply(self).scale(-1))

    def adjoint(self) -> "OperatorPolynomial":
        """Conjugate transpose; coefficients are real so only terms move."""
        out: dict[TermKey, Coeff] = {}
        for (row, col, m), value in self._terms.items():
            sign = -1 if m.grading and (m.dag + m.ann) % 2 else 1
            out[(col, row, Monomial(m.grading, m.ann, m.dag))] = sign * value
        return OperatorPolynomial(out, self.mode)

    def to_float(self) -> "OperatorPolynomial":
        if self.mode == FLOAT:
            return self
        return OperatorPolynomial(
            {key: float(value) for key, value in self._terms.items()}, FLOAT
        )

    # -- operator sugar -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, OperatorPolynomial):
            return self.add(other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, OperatorPolynomial):
            return self.add(other.scale(-1))
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, OperatorPolynomial):
            return self.multiply(other)
        if isinstance(other, (int, float, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, OperatorPolynomial):
            return NotImplemented
        return self.mode == other.mode and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        return (
            f"OperatorPolynomial(mode={self.mode!r}, terms={len(self._terms)}, "
            f"degree={self.degree})"
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for row, col in ((0, 0), (0, 1), (1, 0), (1, 1)):
            entry = self.entry(row, col)
            if not entry:
                continue
            pieces = []
            for mono in sorted(entry):
                sym = "P." * mono.grading + "adag^%d." % mono.dag * bool(mono.dag)
                sym += "a^%d" % mono.ann if mono.ann else ""
                sym = sym.rstrip(".") or "1"
                pieces.append(f"({entry[mono]})*{sym}")
            parts.append(f"[{row},{col}]: " + " + ".join(pieces))
        return "\n".join(parts)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        records = []
        for key in sorted(self._terms):
            row, col, mono = key
            value = self._terms[key]
            coeff = rational_to_string(value) if self.mode == EXACT else value
            records.append(
                {
                    "row": row,
                    "col": col,
                    "grading": mono.grading,
                    "dagger_power": mono.dag,
                    "a_power": mono.ann,
                    "coeff": coeff,
                }
            )
        return {
            "metadata": {"scalar_mode": self.mode, "degree": self.degree},
            "terms": records,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "OperatorPolynomial":
        mode = payload["metadata"]["scalar_mode"]
        terms: dict[TermKey, Coeff] = {}
        for rec in payload["terms"]:
            mono = Monomial(rec["grading"], rec["dagger_power"], rec["a_power"])
            coeff = rec["coeff"]
            if mode == EXACT:
                coeff = rational_from_string(coeff)
            terms[(rec["row"], rec["col"], mono)] = coeff
        return cls(terms, mode)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OperatorPolynomial":
        return cls.from_json_dict(json.loads(text))


# -- elementary generators ---------------------------------------------------


def creation(mode: str = EXACT) -> OperatorPolynomial:
    """adag times the qubit identity."""
    m = Monomial(0, 1, 0)
    return OperatorPolynomial({(0, 0, m): 1, (1, 1, m): 1}, mode)


def annihilation(mode: str = EXACT) -> OperatorPolynomial:
    """a times the qubit identity."""
    m = Monomial(0, 0, 1)
    return OperatorPolynomial({(0, 0, m): 1, (1, 1, m): 1}, mode)


def boson_parity(mode: str = EXACT) -> OperatorPolynomial:
    """The parity symbol times the qubit identity."""
    m = Monomial(1, 0, 0)
    return OperatorPolynomial({(0, 0, m): 1, (1, 1, m): 1}, mode)


def qubit_unit(row: int, col: int, mode: str = EXACT) -> OperatorPolynomial:
    """Qubit matrix unit E[row,col] times the boson identity."""
    return OperatorPolynomial({(row, col, Monomial(0, 0, 0)): 1}, mode)


def constant(value, mode: str = EXACT) -> OperatorPolynomial:
    """Scalar multiple of the full identity."""
    return OperatorPolynomial.identity(mode).scale(value)
