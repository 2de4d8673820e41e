"""Homomorphisms between networks: validation, composition, inversion, restriction."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .errors import EndpointMismatch, InvalidSubnetwork, NotInvertible
from .netmodel import Network, validate_network
from .relcore import Element, FnGraph, minimality_witnesses
from .report import Violation, ViolationReport


@dataclass(frozen=True)
class Homomorphism:
    """A total map from the source universe into the target universe.

    Endpoint digests are captured at construction so that a homomorphism
    paired with a different network later on is caught by validation.
    """

    source: Network
    target: Network
    mapping: Mapping[Element, Element]
    name: str = field(default="", compare=False)
    source_digest: str = field(default="", compare=False, repr=False)
    target_digest: str = field(default="", compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "mapping", dict(self.mapping))
        if not self.source_digest:
            object.__setattr__(self, "source_digest", self.source.digest)
        if not self.target_digest:
            object.__setattr__(self, "target_digest", self.target.digest)

    def __call__(self, x: Element) -> Element:
        return self.mapping[x]

    def __hash__(self) -> int:
        return hash((self.source.digest, self.target.digest, frozenset(self.mapping.items())))

    def fn(self) -> FnGraph:
        return FnGraph(self.source.universe, self.mapping)

    def is_bijective(self) -> bool:
        values = set(self.mapping.values())
        return len(values) == len(self.mapping) and values == set(self.target.universe)

    def __repr__(self) -> str:
        return f"Homomorphism({self.name or '?'}: {self.source.name or '?'} -> {self.target.name or '?'})"


def identity_hom(net: Network, name: str = "") -> Homomorphism:
    return Homomorphism(net, net, {x: x for x in net.universe}, name=name)


def _endpoint_checks(p: Homomorphism) -> list[Violation]:
    out = []
    for label, net, digest in (("source", p.source, p.source_digest), ("target", p.target, p.target_digest)):
        if not validate_network(net).ok:
            out.append(Violation("H0", (), f"{label} is not a valid network"))
        if net.digest != digest:
            out.append(Violation("H0", (), f"{label} changed since the map was built"))
    u1, u0 = p.source.universe, p.target.universe
    for x in sorted(u1 - set(p.mapping)):
        out.append(Violation("H0", (x,), f"map undefined on {x.name}"))
    for x in sorted(set(p.mapping) - u1):
        out.append(Violation("H0", (x,), f"map defined outside the source at {x.name}"))
    for x in sorted(set(p.mapping) & u1):
        if p.mapping[x] not in u0:
            out.append(Violation("H0", (x,), f"{x.name} maps outside the target"))
    return out


def _fibres(mapping: Mapping[Element, Element]) -> dict[Element, list[Element]]:
    out: dict[Element, list[Element]] = defaultdict(list)
    for x, y in mapping.items():
        out[y].append(x)
    return out


def _square(p, code, upper, lower, f1, f0) -> list[Violation]:
    """Pullback check for ``f0 . p = p . f1`` with ``f1: upper -> lower``.

    On finite sets the square is a pullback iff it commutes and, for each
    ``x`` below, ``p`` maps the fibre of ``x`` bijectively onto the fibre of
    ``p(x)``.
    """
    m = p.mapping
    out = []
    for u in sorted(upper):
        if f0[m[u]] != m[f1[u]]:
            out.append(Violation(code, (u,), f"square does not commute at {u.name}"))
    fib1, fib0 = _fibres(f1), _fibres(f0)
    for x in sorted(lower):
        here = fib1.get(x, [])
        images = [m[u] for u in here]
        there = set(fib0.get(m[x], []))
        if len(set(images)) != len(images) or set(images) != there:
            got = ",".join(sorted({y.name for y in images})) or "nothing"
            want = ",".join(sorted(y.name for y in there)) or "nothing"
            out.append(Violation(code, (x,), f"fibre over {x.name} maps onto {got} "
                                             f"with {len(images)} element(s), fibre over {m[x].name} is {want}"))
    return out


def gluing_images(p: Homomorphism) -> tuple[frozenset, frozenset]:
    """Pair sets of ``p . G1`` and ``G0 . p`` (first components in the source)."""
    m = p.mapping
    lhs = frozenset((x, m[y]) for x, y in p.source.G.pairs)
    succ0 = p.target.G.successors()
    rhs = frozenset((x, z) for x in p.source.universe for z in succ0.get(m[x], ()))
    return lhs, rhs


def validate_homomorphism(p: Homomorphism) -> ViolationReport:
    fatal = _endpoint_checks(p)
    if fatal:
        return ViolationReport.of(fatal)
    n1, n0, m = p.source, p.target, p.mapping
    sorts = [Violation("H1", (x, m[x]), f"{x!r} maps to {m[x]!r}") for x in sorted(n1.universe) if m[x].sort != x.sort]
    if sorts:
        return ViolationReport.of(sorts)

    out: list[Violation] = []
    eqs = (("W", n1.nodes | n1.sigma), ("P", n1.nodes), ("F", n1.edges), ("S", n1.edges))
    for letter, dom in eqs:
        f1, f0 = getattr(n1, letter), getattr(n0, letter)
        for x in sorted(dom):
            if f0[m[x]] != m[f1[x]]:
                out.append(Violation(f"H2.{letter}", (x,),
                                     f"{letter}0(p({x.name})) = {f0[m[x]].name} but p({letter}1({x.name})) = {m[f1[x]].name}"))
    out += _square(p, "H3.A", n1.hooks, n1.nodes | n1.sigma, n1.A, n0.A)
    out += _square(p, "H3.C", n1.facets, n1.edges, n1.C, n0.C)

    lhs, rhs = gluing_images(p)
    for x, z in sorted(lhs - rhs):
        out.append(Violation("H4.fwd", (x, z), f"({x.name}, {z.name}) in p.G1 but not G0.p"))
    for x, z in sorted(rhs - lhs):
        out.append(Violation("H4.bwd", (x, z), f"({x.name}, {z.name}) in G0.p but not p.G1"))
    for x, y1, y2 in minimality_witnesses(n1.G, p.fn()):
        out.append(Violation("H5", (x, y1, y2), f"{y1.name} and {y2.name} are both glued to {x.name} and share an image"))
    return ViolationReport.of(out)


def is_homomorphism(p: Homomorphism) -> bool:
    return validate_homomorphism(p).ok


def compose_homs(p: Homomorphism, q: Homomorphism) -> Homomorphism:
    """``p . q``: apply ``q`` first."""
    if q.target != p.source:
        raise EndpointMismatch("target of the inner map differs from the source of the outer map")
    return Homomorphism(q.source, p.target, {x: p.mapping[y] for x, y in q.mapping.items()})


def invert_hom(f: Homomorphism) -> Homomorphism:
    if not f.is_bijective():
        raise NotInvertible("map is not a bijection between the universes")
    return Homomorphism(f.target, f.source, {y: x for x, y in f.mapping.items()})


def is_isomorphism(f: Homomorphism) -> bool:
    return f.is_bijective() and is_homomorphism(f)


def is_automorphism(f: Homomorphism) -> bool:
    return f.source == f.target and is_isomorphism(f)


def restrict_hom(p: Homomorphism, sub: Network) -> Homomorphism:
    """``p`` composed with the inclusion of ``sub`` into its source."""
    from .subnet import validate_subnetwork

    if not validate_subnetwork(p.source, sub).ok:
        raise InvalidSubnetwork("not a subnetwork of the homomorphism's source")
    return Homomorphism(sub, p.target, {x: p.mapping[x] for x in sub.universe})
