"""Networks of symbols, nodes, hooks, edges and facets, and the homomorphisms between them."""
from .errors import (
    EndpointMismatch,
    GenerationFailed,
    InvalidSubnetwork,
    NetgramError,
    NotInvertible,
    OracleInfeasible,
    ParseError,
    UniverseMismatch,
)
from .netmodel import GluingParts, Network, gluing_parts, induce_gluing, validate_network
from .relcore import Element, FnGraph, Relation, Sort
from .report import CATALOG, Violation, ViolationReport

__all__ = [
    "CATALOG",
    "Element",
    "EndpointMismatch",
    "FnGraph",
    "GenerationFailed",
    "GluingParts",
    "InvalidSubnetwork",
    "NetgramError",
    "Network",
    "NotInvertible",
    "OracleInfeasible",
    "ParseError",
    "Relation",
    "Sort",
    "UniverseMismatch",
    "Violation",
    "ViolationReport",
    "gluing_parts",
    "induce_gluing",
    "validate_network",
]
