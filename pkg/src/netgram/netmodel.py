"""Networks: five sorted element sets, six incidence maps and a gluing relation.

``G(x, y)`` reads "y is glued to x".  Function graphs are ``{(x, f(x))}`` and
relation composition applies the right operand first (see :mod:`relcore`).
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping

from .relcore import Element, FnGraph, Relation, Sort, compose, id_on, inverse, join, minimality_witnesses
from .report import Violation, ViolationReport

MAPS = ("W", "P", "A", "F", "S", "C")
SET_FIELDS = ("sigma", "nodes", "hooks", "edges", "facets")
SORT_OF_FIELD = dict(zip(SET_FIELDS, Sort))


def sym(name: str) -> Element:
    return Element(Sort.SYMBOL, name)


def node(name: str) -> Element:
    return Element(Sort.NODE, name)


def hook(name: str) -> Element:
    return Element(Sort.HOOK, name)


def edge(name: str) -> Element:
    return Element(Sort.EDGE, name)


def facet(name: str) -> Element:
    return Element(Sort.FACET, name)


@dataclass(frozen=True)
class Network:
    """The 12-tuple.  ``W`` must cover symbols too (identity there)."""

    sigma: frozenset
    nodes: frozenset
    hooks: frozenset
    edges: frozenset
    facets: frozenset
    W: Mapping[Element, Element]
    P: Mapping[Element, Element]
    A: Mapping[Element, Element]
    F: Mapping[Element, Element]
    S: Mapping[Element, Element]
    C: Mapping[Element, Element]
    G: Relation
    name: str = field(default="", compare=False)

    def __post_init__(self):
        for f in SET_FIELDS:
            object.__setattr__(self, f, frozenset(getattr(self, f)))
        for m in MAPS:
            object.__setattr__(self, m, dict(getattr(self, m)))
        g = self.G
        if g.universe != self.universe and g.pairs <= _pairs_inside(g.pairs, self.universe):
            object.__setattr__(self, "G", Relation._trusted(self.universe, g.pairs))

    def __hash__(self) -> int:
        return hash(self.digest)

    # -- construction ---------------------------------------------------------
    @classmethod
    def build(
        cls,
        symbols: Iterable[str] = (),
        nodes: Mapping[str, tuple[str, str]] | None = None,
        hooks: Mapping[str, str] | None = None,
        edges: Mapping[str, tuple[str, str]] | None = None,
        facets: Mapping[str, str] | None = None,
        glue: Iterable[tuple[str, str]] = (),
        name: str = "",
    ) -> "Network":
        """Assemble a network from plain names.

        ``nodes`` maps a node to ``(whole, part)``, ``hooks`` a hook to the node
        or symbol it sits on, ``edges`` an edge to ``(first, second)`` hooks and
        ``facets`` a facet to its edge.  Glue pairs may be ill-sorted.
        """
        nodes, hooks, edges, facets = nodes or {}, hooks or {}, edges or {}, facets or {}
        index: dict[str, Element] = {}

        def declare(names, sort):
            out = set()
            for n in names:
                if n in index:
                    raise ValueError(f"duplicate identifier {n!r}")
                index[n] = Element(sort, n)
                out.add(index[n])
            return frozenset(out)

        def ref(n, *sorts):
            e = index.get(n)
            if e is None:
                raise ValueError(f"unknown identifier {n!r}")
            if sorts and e.sort not in sorts:
                allowed = "/".join(s.keyword for s in sorts)
                raise ValueError(f"{n!r} is a {e.sort.keyword}, expected {allowed}")
            return e

        S_ = declare(symbols, Sort.SYMBOL)
        N_ = declare(nodes, Sort.NODE)
        H_ = declare(hooks, Sort.HOOK)
        E_ = declare(edges, Sort.EDGE)
        K_ = declare(facets, Sort.FACET)
        W = {s: s for s in S_}
        P = {}
        for n, (whole, part) in nodes.items():
            W[index[n]] = ref(whole, Sort.SYMBOL)
            P[index[n]] = ref(part, Sort.SYMBOL)
        A = {index[h]: ref(at, Sort.NODE, Sort.SYMBOL) for h, at in hooks.items()}
        F, S = {}, {}
        for e, (a, b) in edges.items():
            F[index[e]] = ref(a, Sort.HOOK)
            S[index[e]] = ref(b, Sort.HOOK)
        C = {index[k]: ref(e, Sort.EDGE) for k, e in facets.items()}
        universe = frozenset(index.values())
        G = Relation(universe, [(ref(a), ref(b)) for a, b in glue])
        return cls(S_, N_, H_, E_, K_, W, P, A, F, S, C, G, name=name)

    @classmethod
    def empty(cls, name: str = "") -> "Network":
        return cls(frozenset(), frozenset(), frozenset(), frozenset(), frozenset(),
                   {}, {}, {}, {}, {}, {}, Relation(frozenset()), name=name)

    def with_gluing(self, pairs: Relation | Iterable[tuple[Element, Element]]) -> "Network":
        pairs = pairs.pairs if isinstance(pairs, Relation) else frozenset(pairs)
        return replace(self, G=Relation(self.universe, pairs))

    def renamed(self, name: str) -> "Network":
        return replace(self, name=name)

    # -- views ------------------------------------------------------------------
    @cached_property
    def universe(self) -> frozenset:
        return self.sigma | self.nodes | self.hooks | self.edges | self.facets

    @cached_property
    def by_name(self) -> dict[str, Element]:
        return {e.name: e for e in self.universe}

    def elem(self, name: str) -> Element:
        return self.by_name[name]

    def of_sort(self, sort: Sort) -> frozenset:
        return getattr(self, SET_FIELDS[sort])

    def fn(self, letter: str) -> FnGraph:
        return FnGraph(self.universe, getattr(self, letter))

    def bar(self, letter: str) -> Relation:
        """Graph of an incidence map as a relation on the universe."""
        cache = self.__dict__.setdefault("_bars", {})
        if letter not in cache:
            cache[letter] = self.fn(letter).relation()
        return cache[letter]

    def ident(self, subset: Iterable[Element]) -> Relation:
        return id_on(self.universe, subset)

    @cached_property
    def digest(self) -> str:
        """Content hash over everything except the name."""
        def key(m):
            return sorted((tuple(a), tuple(b)) for a, b in m.items())

        body = (
            [sorted(tuple(e) for e in getattr(self, f)) for f in SET_FIELDS]
            + [key(getattr(self, m)) for m in MAPS]
            + [sorted((tuple(a), tuple(b)) for a, b in self.G.pairs)]
        )
        return hashlib.sha256(repr(body).encode()).hexdigest()

    def __repr__(self) -> str:
        sizes = ",".join(str(len(getattr(self, f))) for f in SET_FIELDS)
        return f"Network({self.name or '?'}: sizes={sizes}, |G|={len(self.G)})"


def _pairs_inside(pairs: frozenset, universe: frozenset) -> frozenset:
    return frozenset(p for p in pairs if p[0] in universe and p[1] in universe)


# -- gluing parts ----------------------------------------------------------------


@dataclass(frozen=True)
class GluingParts:
    g_sigma: Relation
    g_n: Relation
    g_h: Relation
    g_e: Relation
    g_k: Relation

    def by_sort(self, sort: Sort) -> Relation:
        return (self.g_sigma, self.g_n, self.g_h, self.g_e, self.g_k)[sort]

    def union(self) -> Relation:
        out = self.g_sigma
        for part in (self.g_n, self.g_h, self.g_e, self.g_k):
            out = join(out, part)
        return out


def gluing_parts(net: Network) -> GluingParts:
    """``G . id_X`` for each sort X: the pairs whose first component has sort X."""
    g = net.G
    parts = [compose(g, net.ident(net.of_sort(s))) for s in Sort]
    return GluingParts(*parts)


# -- axioms ------------------------------------------------------------------------


def _typing(net: Network) -> list[Violation]:
    out: list[Violation] = []
    for f, sort in SORT_OF_FIELD.items():
        for e in sorted(getattr(net, f)):
            if not isinstance(e, Element) or e.sort != sort:
                out.append(Violation("N0.sets", (e,), f"{e!r} listed among {f}"))
    seen: dict[str, Element] = {}
    for e in sorted(net.universe):
        if e.name in seen and seen[e.name] != e:
            out.append(Violation("N0.names", (seen[e.name], e), f"name {e.name!r} used twice"))
        seen.setdefault(e.name, e)

    def total(code, mapping, domain, codomain):
        for x in sorted(domain - set(mapping)):
            out.append(Violation(code, (x,), f"{code[3:]} undefined on {x.name}"))
        for x in sorted(set(mapping) - domain):
            out.append(Violation(code, (x,), f"{code[3:]} defined outside its domain at {x.name}"))
        for x in sorted(set(mapping) & domain):
            if mapping[x] not in codomain:
                out.append(Violation(code, (x, mapping[x]), f"{code[3:]}({x.name}) = {mapping[x].name} leaves the codomain"))

    ns = net.nodes | net.sigma
    total("N0.W", net.W, ns, net.sigma)
    total("N0.P", net.P, net.nodes, net.sigma)
    total("N0.A", net.A, net.hooks, ns)
    total("N0.F", net.F, net.edges, net.hooks)
    total("N0.S", net.S, net.edges, net.hooks)
    total("N0.C", net.C, net.facets, net.edges)
    for s in sorted(net.sigma):
        if s in net.W and net.W[s] != s:
            out.append(Violation("N0.Wfix", (s, net.W[s]), f"W({s.name}) = {net.W[s].name}"))
    for x, y in net.G.sorted_pairs():
        if x not in net.universe or y not in net.universe:
            out.append(Violation("N0.G", (x, y), "gluing pair outside the universe"))
    return out


def _pair_violations(code: str, pairs: Iterable, message: str) -> list[Violation]:
    return [Violation(code, (x, y), f"{message}: ({x.name}, {y.name})") for x, y in sorted(pairs)]


def check_axioms(net: Network) -> list[Violation]:
    """Clauses (1)-(4) on a well-typed network."""
    out: list[Violation] = []
    g = net.G
    for sort in Sort:
        ix = net.ident(net.of_sort(sort))
        left, right = compose(ix, g), compose(g, ix)
        diff = (left.pairs - right.pairs) | (right.pairs - left.pairs)
        out += _pair_violations("N1", diff, f"{sort.keyword} gluing mixes sorts")

    wb = net.bar("W")
    lhs, rhs = compose(wb, g), compose(g, wb)
    out += _pair_violations("N2.W", lhs.pairs - rhs.pairs, "in W.G but not G.W")
    out += _pair_violations("N2.W", rhs.pairs - lhs.pairs, "in G.W but not W.G")
    pb = net.bar("P")
    out += _pair_violations("N2.P", compose(pb, g).pairs - pb.pairs, "in P.G but not P")
    for letter in "AFSC":
        fb = net.bar(letter)
        lhs, rhs = compose(fb, g), compose(g, fb)
        out += _pair_violations(f"N2.{letter}", lhs.pairs - rhs.pairs, f"in {letter}.G but not G.{letter}")

    parts = gluing_parts(net)
    checks = (
        ("N3.H", parts.g_h, "A"),
        ("N3.K", parts.g_k, "C"),
        ("N3.E-F", parts.g_e, "F"),
        ("N3.E-S", parts.g_e, "S"),
    )
    for code, rel, letter in checks:
        f = net.fn(letter)
        for label, r in (("", rel), ("inverse ", inverse(rel))):
            for x, y1, y2 in minimality_witnesses(r, f):
                out.append(Violation(code, (x, y1, y2),
                                     f"{label}gluing takes {x.name} to {y1.name} and {y2.name}, both over {f(y1).name}"))

    succ = g.successors()
    for x, y in g.sorted_pairs():
        for z in sorted(succ.get(y, ())):
            out.append(Violation("N4", (x, y, z), f"{y.name} is glued to {x.name} and has {z.name} glued to it"))
    return out


def validate_network(candidate: Network) -> ViolationReport:
    """Typing (fatal N0.*) then the four axiom clauses."""
    typing = _typing(candidate)
    if typing:
        return ViolationReport.of(typing)
    return ViolationReport.of(check_axioms(candidate))


def is_network(candidate: Network) -> bool:
    return validate_network(candidate).ok


# -- induced gluing ---------------------------------------------------------------------


def induce_layers(net: Network, g_k: Relation) -> GluingParts:
    """Build the five layers from a facet gluing, edges first and symbols last."""
    cb, fb, sb, ab, wb = (net.bar(x) for x in "CFSAW")
    g_e = cb @ g_k @ ~cb
    g_h = (fb @ g_e @ ~fb) | (sb @ g_e @ ~sb)
    lifted = ab @ g_h @ ~ab
    g_n = net.ident(net.nodes) @ lifted
    g_sigma = (wb @ g_n @ ~wb) | (net.ident(net.sigma) @ lifted)
    return GluingParts(g_sigma, g_n, g_h, g_e, g_k)


def induce_gluing(skeleton: Network, facet_seed: Relation | Iterable[tuple[Element, Element]]) -> Relation:
    """The gluing relation generated by a facet gluing."""
    pairs = facet_seed.pairs if isinstance(facet_seed, Relation) else frozenset(facet_seed)
    for x, y in pairs:
        if x not in skeleton.facets or y not in skeleton.facets:
            raise ValueError(f"seed pair ({x!r}, {y!r}) is not a facet pair")
    seed = Relation(skeleton.universe, pairs)
    return induce_layers(skeleton, seed).union()


__all__ = [
    "GluingParts",
    "Network",
    "check_axioms",
    "edge",
    "facet",
    "gluing_parts",
    "hook",
    "induce_gluing",
    "induce_layers",
    "is_network",
    "node",
    "sym",
    "validate_network",
]
