"""Subnetworks, their extraction by closure, and inclusion homomorphisms."""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidSubnetwork
from .hommodel import Homomorphism
from .netmodel import SET_FIELDS, Network
from .relcore import Element, Relation, Sort
from .report import Violation, ViolationReport


@dataclass(frozen=True)
class SubnetworkSeed:
    chosen: frozenset

    @classmethod
    def of(cls, items: Iterable[Element]) -> "SubnetworkSeed":
        return cls(frozenset(items))


def closure(net: Network, seed: Iterable[Element]) -> frozenset:
    """Least superset of ``seed`` that spans a subnetwork.

    Edges are only pulled in when seeded or forced; the hooks of a kept node
    or symbol never drag their edges along.
    """
    hooks_at: dict[Element, list[Element]] = defaultdict(list)
    for h, x in net.A.items():
        hooks_at[x].append(h)
    facets_of: dict[Element, list[Element]] = defaultdict(list)
    for k, e in net.C.items():
        facets_of[e].append(k)
    subs = net.G.successors()

    chosen: set[Element] = set()
    queue = deque()

    def push(x):
        if x not in chosen:
            chosen.add(x)
            queue.append(x)

    for x in seed:
        if x not in net.universe:
            raise InvalidSubnetwork(f"{x!r} is not an element of the network")
        push(x)
    while queue:
        x = queue.popleft()
        if x.sort == Sort.NODE:
            push(net.W[x])
            push(net.P[x])
        if x.sort in (Sort.NODE, Sort.SYMBOL):
            for h in hooks_at.get(x, ()):
                push(h)
        elif x.sort == Sort.HOOK:
            push(net.A[x])
        elif x.sort == Sort.EDGE:
            push(net.F[x])
            push(net.S[x])
            for k in facets_of.get(x, ()):
                push(k)
        elif x.sort == Sort.FACET:
            push(net.C[x])
        for y in subs.get(x, ()):
            push(y)
    return frozenset(chosen)


def induced(net: Network, keep: Iterable[Element], name: str | None = None) -> Network:
    """The 12-tuple on ``keep`` with restricted maps and ``G' = I . G . I``."""
    keep = frozenset(keep)
    sets = [getattr(net, f) & keep for f in SET_FIELDS]
    maps = [{x: y for x, y in getattr(net, m).items() if x in keep} for m in "WPAFSC"]
    universe = frozenset().union(*sets)
    g = Relation(universe, [(x, y) for x, y in net.G.pairs if x in keep and y in keep])
    return Network(*sets, *maps, g, name=net.name if name is None else name)


def extract_subnetwork(net: Network, seed: SubnetworkSeed | Iterable[Element]) -> Network:
    chosen = seed.chosen if isinstance(seed, SubnetworkSeed) else seed
    return induced(net, closure(net, chosen))


def validate_subnetwork(net: Network, sub: Network) -> ViolationReport:
    out: list[Violation] = []
    for f in SET_FIELDS:
        for x in sorted(getattr(sub, f) - getattr(net, f)):
            out.append(Violation("S1", (x,), f"{x.name} is not among the parent's {f}"))
    if out:
        return ViolationReport.of(out)

    keep = sub.universe
    ns = sub.nodes | sub.sigma
    for n in sorted(sub.nodes):
        for letter in "WP":
            if getattr(net, letter)[n] not in sub.sigma:
                out.append(Violation("S2", (n,), f"{letter}({n.name}) is not kept"))
    expected_h = frozenset(h for h, x in net.A.items() if x in ns)
    for h in sorted(expected_h ^ sub.hooks):
        out.append(Violation("S3", (h,), f"hook {h.name} kept/dropped inconsistently with its owner"))
    for e in sorted(sub.edges):
        for letter in "FS":
            if getattr(net, letter)[e] not in sub.hooks:
                out.append(Violation("S4", (e,), f"{letter}({e.name}) is not kept"))
    expected_k = frozenset(k for k, e in net.C.items() if e in sub.edges)
    for k in sorted(expected_k ^ sub.facets):
        out.append(Violation("S5", (k,), f"facet {k.name} kept/dropped inconsistently with its edge"))
    for letter, dom in (("W", ns), ("P", sub.nodes), ("A", sub.hooks), ("F", sub.edges), ("S", sub.edges), ("C", sub.facets)):
        want = {x: getattr(net, letter)[x] for x in dom}
        have = getattr(sub, letter)
        for x in sorted(set(want) | set(have)):
            if want.get(x) != have.get(x):
                out.append(Violation("S6", (x,), f"{letter} differs from the parent's at {x.name}"))
    for x, y in net.G.sorted_pairs():
        if x in keep and y not in keep:
            out.append(Violation("S7", (x, y), f"{y.name} is glued to kept {x.name} but dropped"))
    want_g = frozenset((x, y) for x, y in net.G.pairs if x in keep and y in keep)
    for x, y in sorted(want_g ^ sub.G.pairs):
        out.append(Violation("S8", (x, y), f"gluing pair ({x.name}, {y.name}) differs from the parent's"))
    return ViolationReport.of(out)


def is_proper_subnetwork(net: Network, sub: Network) -> bool:
    return validate_subnetwork(net, sub).ok and sub != net


def inclusion_hom(sub: Network, net: Network) -> Homomorphism:
    if not validate_subnetwork(net, sub).ok:
        raise InvalidSubnetwork("not a subnetwork")
    return Homomorphism(sub, net, {x: x for x in sub.universe})
