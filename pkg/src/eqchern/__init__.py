"""Equivariant Chern numbers of unitary torus manifolds from fixed-point data."""

from .polyring import Polynomial
from .fixedpoint import Dataset, FixedPointDatum

__version__ = "0.1.0"

__all__ = ["Polynomial", "Dataset", "FixedPointDatum", "__version__"]
