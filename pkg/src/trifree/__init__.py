"""Combinatorial triangle detection and listing in graphs that avoid a fixed pattern."""

from .attached import detect_attached, list_attached
from .c5 import detect_c5_sensitive, detect_c5free_warmup
from .estimators import TriangleDetector, TriangleLister, check_graph
from .graph import Graph, TriColoring, Triangle
from .io import parse_edgelist, parse_graph6, emit_graph6, read_graph, write_graph
from .nice import detect_hfree, list_nice
from .oddcycle import detect_oddfree, detect_short_oddfree, list_oddfree
from .oracles import brute_triangles
from .patterns import builtin_pattern, classify, enumerate_patterns
from .sensitive import detect_sensitive_graph, estimate_t, list_sensitive_graph

__version__ = "0.1.0"

__all__ = [
    "Graph", "TriColoring", "Triangle", "TriangleDetector", "TriangleLister", "brute_triangles",
    "builtin_pattern", "check_graph", "classify", "detect_attached", "detect_c5_sensitive",
    "detect_c5free_warmup", "detect_hfree", "detect_oddfree", "detect_sensitive_graph",
    "detect_short_oddfree", "emit_graph6", "enumerate_patterns", "estimate_t", "list_attached",
    "list_nice", "list_oddfree", "list_sensitive_graph", "parse_edgelist", "parse_graph6",
    "read_graph", "write_graph",
]
