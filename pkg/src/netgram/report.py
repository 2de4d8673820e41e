"""Violation reports and the catalog of codes they may carry."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .relcore import Element

CATALOG: dict[str, str] = {
    # network typing (fatal) and axioms
    "N0.sets": "an element sits in the set of another sort",
    "N0.names": "two elements of different sorts share a name",
    "N0.W": "W is not a total function N u Sigma -> Sigma",
    "N0.Wfix": "W does not fix some symbol",
    "N0.P": "P is not a total function N -> Sigma",
    "N0.A": "A is not a total function H -> N u Sigma",
    "N0.F": "F is not a total function E -> H",
    "N0.S": "S is not a total function E -> H",
    "N0.C": "C is not a total function K -> E",
    "N0.G": "the gluing relation leaves the universe",
    "N1": "gluing joins elements of different sorts",
    "N2.W": "W . G = G . W fails",
    "N2.P": "P . G <= P fails (glued nodes with different parts)",
    "N2.A": "A . G <= G . A fails",
    "N2.F": "F . G <= G . F fails",
    "N2.S": "S . G <= G . S fails",
    "N2.C": "C . G <= G . C fails",
    "N3.H": "hook gluing (or its inverse) not minimal relative to A",
    "N3.K": "facet gluing (or its inverse) not minimal relative to C",
    "N3.E-F": "edge gluing (or its inverse) not minimal relative to F",
    "N3.E-S": "edge gluing (or its inverse) not minimal relative to S",
    "N4": "G . G is not empty",
    # homomorphisms
    "H0": "endpoint invalid, stale, or map not total into the target",
    "H1": "map does not preserve sorts",
    "H2.W": "W0 . p = p . W1 fails",
    "H2.P": "P0 . p = p . P1 fails",
    "H2.F": "F0 . p = p . F1 fails",
    "H2.S": "S0 . p = p . S1 fails",
    "H3.A": "hook square is not a pullback (fibre not bijective or square not commuting)",
    "H3.C": "facet square is not a pullback (fibre not bijective or square not commuting)",
    "H4.fwd": "p . G1 <= G0 . p fails",
    "H4.bwd": "G0 . p <= p . G1 fails",
    "H5": "G1 not minimal relative to p",
    # semi-definite / definite
    "SD-1a": "edge ends belong to different wholes",
    "SD-3": "node gluing contains a cycle",
    "SD-4a": "hook without incident edge",
    "SD-5a": "facet with more than one partner on the first side",
    "SD-6": "gluing not minimal relative to the network",
    "SD-7a": "F . G = G . F or S . G = G . S fails",
    "SD-8a": "row condition on symbol gluing fails",
    "D-1b": "W is not the coequaliser of A.F and A.S",
    "D-2b": "nodes share a part without being connected by gluing",
    "D-3": "node gluing contains a cycle",
    "D-4b": "F and S do not present H as a sum of two copies of E",
    "D-5b": "facet without exactly one partner",
    "D-6": "gluing not minimal relative to the network",
    # certificate
    "T23-a": "part-count condition fails for a symbol set",
    "T23-b": "source F, S do not form a sum diagram",
    "T23-c": "inverse facet gluing is not a function on unglued-first facets",
    "T23-d": "source W is not a coequaliser",
    "T23-target": "target is not semi-definite",
    # subnetworks
    "S1": "component set not contained in the parent's",
    "S2": "W or P of a kept node leaves the kept symbols",
    "S3": "kept hooks differ from the hooks of kept nodes and symbols",
    "S4": "F or S of a kept edge leaves the kept hooks",
    "S5": "kept facets differ from the facets of kept edges",
    "S6": "incidence maps are not restrictions of the parent's",
    "S7": "gluing leaves the kept elements (G . I <= I . G fails)",
    "S8": "gluing is not the parent's restricted to kept elements",
    # fast path vs brute force disagreement (CLI --oracle)
    "ORACLE.N3": "fast relative-to-function minimality disagrees with brute-force enumeration",
    "ORACLE.6": "fast minimality verdict disagrees with brute-force enumeration",
    "ORACLE.8a": "reduced row scan disagrees with literal row enumeration",
    "ORACLE.T23-a": "per-symbol part count disagrees with subset enumeration",
}


def _names(elements: Sequence[Element]) -> tuple[str, ...]:
    return tuple(e.name for e in elements)


@dataclass(frozen=True, order=True)
class Violation:
    code: str
    elements: tuple[Element, ...]
    message: str = field(compare=False)

    def sort_key(self):
        return (self.code, _names(self.elements), self.message)


@dataclass(frozen=True)
class ViolationReport:
    """Clause-coded violations in canonical order.

    ``infeasible`` lists clauses that could not be decided within the
    enumeration caps; ``notes`` carries annotations such as the method used
    for a minimality verdict.
    """

    violations: tuple[Violation, ...] = ()
    infeasible: tuple[tuple[str, str], ...] = ()
    notes: tuple[tuple[str, str], ...] = ()

    @classmethod
    def of(cls, violations: Iterable[Violation], infeasible=(), notes=()) -> "ViolationReport":
        uniq = {(v.code, v.elements, v.message): v for v in violations}
        ordered = sorted(uniq.values(), key=Violation.sort_key)
        return cls(tuple(ordered), tuple(sorted(infeasible)), tuple(sorted(notes)))

    @property
    def ok(self) -> bool:
        return not self.violations and not self.infeasible

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def has(self, code: str) -> bool:
        return any(v.code == code for v in self.violations)

    def merged(self, other: "ViolationReport") -> "ViolationReport":
        return ViolationReport.of(
            self.violations + other.violations,
            self.infeasible + other.infeasible,
            self.notes + other.notes,
        )

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)
