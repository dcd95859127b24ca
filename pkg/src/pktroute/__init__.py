"""Path, tree and connectivity solvers for packet routing in networks."""
from .errors import CapabilityError, GraphParseError, InputError, ScriptError, UnreachableError
from .graph import INF, Graph, from_edges, parse_graph, read_graph, serialize_graph, to_directed
from .kernels import BACKEND

__all__ = [
    "BACKEND", "CapabilityError", "Graph", "GraphParseError", "INF", "InputError", "ScriptError",
    "UnreachableError", "from_edges", "parse_graph", "read_graph", "serialize_graph", "to_directed",
]
__version__ = "0.1.0"
