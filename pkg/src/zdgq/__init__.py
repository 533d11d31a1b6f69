"""Zero-divisor graph spectra and quantum walk analysis over Z_n.

The package splits into an exact pipeline (divisor partitions, quotient
matrices, integer characteristic polynomials, tagged eigenvalue supports)
and an independent numeric pipeline (dense eigendecompositions, transition
matrices).  `classify.analyze` ties both together; the `zdgq` CLI exposes
analyze / scan / verify / walk commands on top.
"""

__version__ = "0.1.0"

from . import arithmetic, classify, exact, graphs, oracles, partitions, spectral, walk

__all__ = [
    "arithmetic",
    "classify",
    "exact",
    "graphs",
    "oracles",
    "partitions",
    "spectral",
    "walk",
]
