"""Finite relation algebra over a sorted universe.

Composition follows the functional reading: ``compose(Q, R)`` (also written
``Q @ R``) relates ``x`` to ``z`` when ``R(x, y)`` and ``Q(y, z)`` for some
``y``, so the graph of ``w . a . f`` is ``W @ A @ F``.
"""
from __future__ import annotations

import enum
from collections import defaultdict
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import OracleInfeasible, UniverseMismatch

DEFAULT_ORACLE_CAP = 16


class Sort(enum.IntEnum):
    SYMBOL = 0
    NODE = 1
    HOOK = 2
    EDGE = 3
    FACET = 4

    @property
    def keyword(self) -> str:
        return self.name.lower()


class Element(NamedTuple):
    sort: Sort
    name: str

    def __repr__(self) -> str:
        return f"{self.sort.keyword}:{self.name}"


Pair = tuple[Element, Element]


def _check_same(a: frozenset, b: frozenset) -> None:
    if a is not b and a != b:
        raise UniverseMismatch("relations live on different universes")


class Relation:
    """An immutable set of element pairs over an explicit universe."""

    __slots__ = ("universe", "pairs", "_hash")

    def __init__(self, universe: Iterable[Element], pairs: Iterable[Pair] = ()):
        universe = universe if isinstance(universe, frozenset) else frozenset(universe)
        pairs = frozenset(pairs)
        for x, y in pairs:
            if x not in universe or y not in universe:
                raise UniverseMismatch(f"pair ({x!r}, {y!r}) leaves the universe")
        self.universe = universe
        self.pairs = pairs
        self._hash = None

    @classmethod
    def _trusted(cls, universe: frozenset, pairs: frozenset) -> "Relation":
        rel = cls.__new__(cls)
        rel.universe = universe
        rel.pairs = pairs
        rel._hash = None
        return rel

    # -- set-like protocol --------------------------------------------------
    def __iter__(self) -> Iterator[Pair]:
        return iter(self.sorted_pairs())

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __bool__(self) -> bool:
        return bool(self.pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.pairs == other.pairs and (
            self.universe is other.universe or self.universe == other.universe
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.universe, self.pairs))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"({x.name},{y.name})" for x, y in self.sorted_pairs())
        return f"Relation{{{body}}}"

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    # -- algebra --------------------------------------------------------------
    def __matmul__(self, inner: "Relation") -> "Relation":
        return compose(self, inner)

    def __invert__(self) -> "Relation":
        return inverse(self)

    def __or__(self, other: "Relation") -> "Relation":
        return join(self, other)

    def __and__(self, other: "Relation") -> "Relation":
        return meet(self, other)

    def __le__(self, other: "Relation") -> bool:
        return is_sub(self, other)

    def __ge__(self, other: "Relation") -> bool:
        return is_sub(other, self)

    def __sub__(self, other: "Relation") -> "Relation":
        _check_same(self.universe, other.universe)
        return Relation._trusted(self.universe, self.pairs - other.pairs)

    # -- views ----------------------------------------------------------------
    def dom(self) -> frozenset:
        return frozenset(x for x, _ in self.pairs)

    def ran(self) -> frozenset:
        return frozenset(y for _, y in self.pairs)

    def image(self, xs: Iterable[Element]) -> frozenset:
        xs = set(xs)
        return frozenset(y for x, y in self.pairs if x in xs)

    def successors(self) -> dict[Element, set[Element]]:
        out: dict[Element, set[Element]] = defaultdict(set)
        for x, y in self.pairs:
            out[x].add(y)
        return out


def empty(universe: Iterable[Element]) -> Relation:
    universe = universe if isinstance(universe, frozenset) else frozenset(universe)
    return Relation._trusted(universe, frozenset())


def compose(outer: Relation, inner: Relation) -> Relation:
    """``outer . inner``: apply ``inner`` first."""
    _check_same(outer.universe, inner.universe)
    succ = outer.successors()
    pairs = frozenset((x, z) for x, y in inner.pairs for z in succ.get(y, ()))
    return Relation._trusted(inner.universe, pairs)


def inverse(rel: Relation) -> Relation:
    return Relation._trusted(rel.universe, frozenset((y, x) for x, y in rel.pairs))


def join(r: Relation, q: Relation) -> Relation:
    _check_same(r.universe, q.universe)
    return Relation._trusted(r.universe, r.pairs | q.pairs)


def meet(r: Relation, q: Relation) -> Relation:
    _check_same(r.universe, q.universe)
    return Relation._trusted(r.universe, r.pairs & q.pairs)


def is_sub(r: Relation, q: Relation) -> bool:
    _check_same(r.universe, q.universe)
    return r.pairs <= q.pairs


def id_on(universe: Iterable[Element], subset: Iterable[Element]) -> Relation:
    universe = universe if isinstance(universe, frozenset) else frozenset(universe)
    subset = frozenset(subset)
    if not subset <= universe:
        raise UniverseMismatch("identity restricted to elements outside the universe")
    return Relation._trusted(universe, frozenset((x, x) for x in subset))


def identity(universe: Iterable[Element]) -> Relation:
    universe = universe if isinstance(universe, frozenset) else frozenset(universe)
    return id_on(universe, universe)


class FnGraph:
    """A function viewed as the relation ``{(x, f(x))}``.

    The codomain may lie outside ``universe`` (a homomorphism maps into a
    different network); :meth:`relation` is only available when it does not.
    """

    __slots__ = ("universe", "mapping", "domain")

    def __init__(self, universe: Iterable[Element], mapping: Mapping[Element, Element]):
        self.universe = universe if isinstance(universe, frozenset) else frozenset(universe)
        self.mapping = dict(mapping)
        self.domain = frozenset(self.mapping)
        if not self.domain <= self.universe:
            raise UniverseMismatch("function defined outside its universe")

    def __call__(self, x: Element) -> Element:
        return self.mapping[x]

    def relation(self) -> Relation:
        return Relation(self.universe, self.mapping.items())

    def kernel(self) -> Relation:
        """``f^-1 . f`` restricted to the domain: pairs with equal image."""
        fibres: dict[Element, list[Element]] = defaultdict(list)
        for x, y in self.mapping.items():
            fibres[y].append(x)
        pairs = frozenset((a, b) for xs in fibres.values() for a in xs for b in xs)
        return Relation._trusted(self.universe, pairs)

    def post(self, rel: Relation) -> frozenset:
        """Pairs of ``f . rel`` (second components pushed through ``f``)."""
        _check_same(self.universe, rel.universe)
        m = self.mapping
        return frozenset((x, m[y]) for x, y in rel.pairs if y in m)


def is_minimal_rel_function(rel: Relation, f: FnGraph) -> bool:
    """True iff ``f^-1 . f  meet  rel . rel^-1`` lies inside the identity.

    ``rel . rel^-1`` links two second components sharing a first component,
    so this says no element reaches two distinct elements with equal image.
    """
    _check_same(rel.universe, f.universe)
    return not minimality_witnesses(rel, f)


def minimality_witnesses(rel: Relation, f: FnGraph) -> list[tuple[Element, Element, Element]]:
    """Triples ``(x, y1, y2)`` with ``y1 != y2`` both reached from ``x`` and ``f(y1) == f(y2)``."""
    out = []
    m = f.mapping
    for x, ys in sorted(rel.successors().items()):
        seen: dict[Element, Element] = {}
        for y in sorted(ys):
            if y not in m:
                continue
            img = m[y]
            if img in seen:
                out.append((x, seen[img], y))
            else:
                seen[img] = y
    return out


def minimal_rel_function_oracle(rel: Relation, f: FnGraph, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Definitional check: no proper sub-relation has the same image under ``f . -``.

    Every second component of ``rel`` must lie in the domain of ``f``;
    otherwise the definition degenerates (such a pair contributes nothing).
    """
    _check_same(rel.universe, f.universe)
    if len(rel) > cap:
        raise OracleInfeasible(f"relation has {len(rel)} pairs, oracle cap is {cap}")
    if not rel.ran() <= f.domain:
        raise ValueError("second components must lie in the function's domain")
    from . import _kernels

    pairs = rel.sorted_pairs()
    images = {}
    codes = [images.setdefault((x, f.mapping[y]), len(images)) for x, y in pairs]
    return not _kernels.proper_subset_covers(codes, len(images))


# -- undirected structure -----------------------------------------------------


class UnionFind:
    """Disjoint sets over hashable items, path-halving plus union by size."""

    def __init__(self, items: Iterable = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for item in items:
            self.add(item)

    def add(self, item) -> None:
        if item not in self.parent:
            self.parent[item] = item
            self.size[item] = 1

    def find(self, item):
        self.add(item)
        parent = self.parent
        while parent[item] != item:
            parent[item] = parent[parent[item]]
            item = parent[item]
        return item

    def union(self, a, b) -> bool:
        """Merge the classes of ``a`` and ``b``; False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def classes(self) -> list[frozenset]:
        groups: dict = defaultdict(set)
        for item in self.parent:
            groups[self.find(item)].add(item)
        return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))


def is_forest(rel: Relation) -> bool:
    """True iff the undirected multigraph with one edge per pair has no cycle.

    ``(x, y)`` together with ``(y, x)`` counts as a cycle of length two and a
    reflexive pair as a loop.
    """
    uf = UnionFind()
    for x, y in rel.sorted_pairs():
        if not uf.union(x, y):
            return False
    return True


def components(rel: Relation, subset: Iterable[Element]) -> list[frozenset]:
    """Connected components on ``subset`` using only pairs inside it."""
    subset = frozenset(subset)
    uf = UnionFind(sorted(subset))
    for x, y in rel.pairs:
        if x in subset and y in subset:
            uf.union(x, y)
    return uf.classes()


def sub_relations(rel: Relation) -> Iterator[Relation]:
    """All sub-relations, smallest first; exponential, for tests on tiny inputs."""
    pairs = rel.sorted_pairs()
    for k in range(len(pairs) + 1):
        for chosen in combinations(pairs, k):
            yield Relation._trusted(rel.universe, frozenset(chosen))
