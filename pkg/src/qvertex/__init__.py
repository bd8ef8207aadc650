"""Level-one vertex representations of quantum affine algebras of ADE type.

Exact construction of the Fock module, its Z[q, q^-1]-lattice and its
specialisation at roots of unity.
"""

__version__ = "0.1.0"
