"""Hidden Z2 symmetry operators of asymmetric quantum Rabi models.

Exact construction of the operators that commute with the biased Rabi-family
Hamiltonians at their special bias values, verification of the squared
operator's polynomial relation with the Hamiltonian, and numerical spectra
with crossing classification by symmetry sector.
"""

__version__ = "0.1.0"
