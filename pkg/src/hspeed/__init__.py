"""Hereditary graph classes: parameters, universal families, Ramsey-type
extraction with certificates, and labelled speed computations."""
from .graph import Bipartition, Embedding, Graph, GraphError, find_induced, parse_graph, to_graph6
from .families import Builtin, Family, FamilyId, Forbidden, generate, parse_class_spec
from .parameters import parameter_report
from .speeds import classify_layer, count_labelled, index_of

__all__ = [
    "Bipartition", "Builtin", "Embedding", "Family", "FamilyId", "Forbidden", "Graph", "GraphError",
    "classify_layer", "count_labelled", "find_induced", "generate", "index_of", "parameter_report",
    "parse_class_spec", "parse_graph", "to_graph6",
]
