"""Exact degree statistics of uniform spanning trees on the Sierpinski gasket."""

from .aggregate import phi_limit, phi_sum, phi_sum_direct, theta
from .counts import fgh
from .gasket import build_graph, enumerate_addresses, parse_address, resolve_address
from .vertexdist import full_table, vertex_distribution

__all__ = [
    "build_graph",
    "enumerate_addresses",
    "fgh",
    "full_table",
    "parse_address",
    "phi_limit",
    "phi_sum",
    "phi_sum_direct",
    "resolve_address",
    "theta",
    "vertex_distribution",
]
__version__ = "0.1.0"
