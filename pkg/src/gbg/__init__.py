"""Presentations of graph braid groups via discrete Morse theory."""

from .graph_core import EmbeddedGraph, GraphError, GraphParseError, load_graph, parse_graph, prepare
from .complex import ConfigurationComplex
from .rewrite import Rewriter

__all__ = [
    "ConfigurationComplex",
    "EmbeddedGraph",
    "GraphError",
    "GraphParseError",
    "Rewriter",
    "load_graph",
    "parse_graph",
    "prepare",
]
