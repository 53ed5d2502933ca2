"""Numerical workbench for rank-two nested-Bethe-ansatz structures on finite
inhomogeneous chains: rational kernel identities, monodromy and quantum-minor
algebra, partition-sum Bethe vectors, Bethe-equation solving, and a seeded
verification harness with machine-readable reports.
"""

from .monodromy import ChainModel
from .rational import dwpf, f, g, h

__version__ = "0.1.0"

__all__ = ["ChainModel", "dwpf", "f", "g", "h", "__version__"]
