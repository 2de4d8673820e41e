"""Random networks and homomorphisms for the law suite and the tests."""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass

from .errors import GenerationFailed
from .hommodel import Homomorphism, validate_homomorphism
from .netmodel import Network, induce_gluing, validate_network
from .relcore import Element, Relation, Sort


@dataclass
class GenConfig:
    seed: int = 0
    max_symbols: int = 4
    max_nodes: int = 3          # per body in grammar mode, total in wild mode
    max_hooks: int = 5          # wild mode only
    max_edges: int = 4          # wild mode only
    max_facets: int = 3         # wild mode only
    facet_density: float = 0.5  # chance a body is mirrored / a facet pair is seeded
    fanout: int = 2             # root tokens per unfolding
    max_depth: int = 2          # nesting of part tokens in an unfolding
    share_rate: float = 0.15    # chance a part reuses an existing token
    grammar_rate: float = 0.7   # chance of grammar-shaped rather than random structure
    noise_rate: float = 0.1     # chance of one extra, non-induced gluing pair
    cases: int = 100
    oracle_cap: int = 16
    row_cap: int = 20
    retries: int = 50

    def __post_init__(self):
        for name in ("max_symbols", "max_nodes", "max_hooks", "max_edges", "max_facets", "fanout", "max_depth", "cases"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        for name in ("facet_density", "share_rate", "grammar_rate", "noise_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")

    @property
    def all_zero(self) -> bool:
        return self.max_symbols == 0


def rng_for(cfg: GenConfig, *labels) -> random.Random:
    return random.Random(":".join([str(cfg.seed), *map(str, labels)]))


class _Builder:
    """Mutable scratch space for assembling a network by element names."""

    def __init__(self):
        self.sets = {s: set() for s in Sort}
        self.W, self.P, self.A, self.F, self.S, self.C = {}, {}, {}, {}, {}, {}
        self.count = defaultdict(int)

    def new(self, sort: Sort, prefix: str) -> Element:
        e = Element(sort, f"{prefix}{self.count[prefix]}")
        self.count[prefix] += 1
        self.sets[sort].add(e)
        return e

    def symbol(self):
        s = self.new(Sort.SYMBOL, "s")
        self.W[s] = s
        return s

    def node(self, whole, part):
        n = self.new(Sort.NODE, "n")
        self.W[n], self.P[n] = whole, part
        return n

    def hook(self, at):
        h = self.new(Sort.HOOK, "h")
        self.A[h] = at
        return h

    def edge(self, a, b):
        e = self.new(Sort.EDGE, "e")
        self.F[e], self.S[e] = a, b
        return e

    def facet(self, of):
        k = self.new(Sort.FACET, "k")
        self.C[k] = of
        return k

    def network(self, glue=(), name="") -> Network:
        universe = frozenset().union(*self.sets.values())
        return Network(*(self.sets[s] for s in Sort), self.W, self.P, self.A, self.F, self.S, self.C,
                       Relation(universe, glue), name=name)


# -- networks ---------------------------------------------------------------------------


def _grammar_skeleton(cfg: GenConfig, rng: random.Random):
    b = _Builder()
    m = rng.randint(0, cfg.max_symbols)
    syms = [b.symbol() for _ in range(m)]
    tree = rng.random() < 0.6
    unused = set(syms[1:])
    bodies = {}
    for i, s in enumerate(syms):
        higher = syms[i + 1:]
        if rng.random() > 0.75:
            continue
        verts = [s]
        nodes = []
        for _ in range(rng.randint(0, cfg.max_nodes) if higher else 0):
            free = sorted(unused & set(higher))
            part = rng.choice(free) if tree and free else rng.choice(higher)
            unused.discard(part)
            n = b.node(s, part)
            nodes.append(n)
            verts.append(n)
        links = [(rng.choice(verts[:j]), verts[j]) for j in range(1, len(verts))] or [(s, s)]
        if rng.random() < 0.25:
            links.append((rng.choice(verts), rng.choice(verts)))
        edges = []
        for u, v in links:
            hu, hv = b.hook(u), b.hook(v)
            edges.append(b.edge(hu, hv) if rng.random() < 0.5 else b.edge(hv, hu))
        bodies[s] = (nodes, edges)
    return b, syms, bodies


def _mirror(b: _Builder, s: Element, nodes, edges, rng: random.Random, facet_count: int):
    """Copy a body onto a fresh symbol; facet pairs tie every edge to its copy."""
    t = b.symbol()
    twin = {s: t}
    for n in nodes:
        twin[n] = b.node(t, b.P[n])
    seed = []
    hooks = sorted(h for h, at in b.A.items() if at in twin)
    for h in hooks:
        twin[h] = b.hook(twin[b.A[h]])
    for e in edges:
        e2 = b.edge(twin[b.F[e]], twin[b.S[e]])
        for _ in range(facet_count):
            k, k2 = b.facet(e), b.facet(e2)
            seed.append((k, k2))
    return seed


def _noise(net: Network, rng: random.Random) -> Network:
    """Try one extra gluing pair of a random sort; keep it only if the axioms allow it."""
    for _ in range(6):
        sort = rng.choice(list(Sort))
        pool = sorted(net.of_sort(sort))
        if len(pool) < 2:
            continue
        x, y = rng.sample(pool, 2)
        if (x, y) in net.G:
            continue
        cand = net.with_gluing(net.G.pairs | {(x, y)})
        if validate_network(cand).ok:
            return cand
    return net


def _grammar_network(cfg: GenConfig, rng: random.Random) -> Network:
    b, syms, bodies = _grammar_skeleton(cfg, rng)
    seed = []
    for s in syms:
        if s in bodies and bodies[s][1] and rng.random() < cfg.facet_density:
            nodes, edges = bodies[s]
            seed += _mirror(b, s, nodes, edges, rng, 1 if rng.random() < 0.8 else 2)
    skeleton = b.network()
    return skeleton.with_gluing(induce_gluing(skeleton, seed))


def _wild_network(cfg: GenConfig, rng: random.Random, attempt: int) -> Network:
    b = _Builder()
    syms = [b.symbol() for _ in range(rng.randint(1 if cfg.max_symbols else 0, cfg.max_symbols))]
    if not syms:
        return b.network()
    nodes = [b.node(rng.choice(syms), rng.choice(syms)) for _ in range(rng.randint(0, cfg.max_nodes))]
    owners = syms + nodes
    hooks = [b.hook(rng.choice(owners)) for _ in range(rng.randint(0, cfg.max_hooks))]
    edges = [b.edge(rng.choice(hooks), rng.choice(hooks)) for _ in range(rng.randint(0, cfg.max_edges) if hooks else 0)]
    facets = [b.facet(rng.choice(edges)) for _ in range(rng.randint(0, cfg.max_facets) if edges else 0)]
    skeleton = b.network()
    density = cfg.facet_density * (1 - attempt / max(cfg.retries, 1))
    seed = [(x, y) for x in facets for y in facets if b.C[x] != b.C[y] and rng.random() < density / 2]
    return skeleton.with_gluing(induce_gluing(skeleton, seed))


def gen_network(cfg: GenConfig, rng: random.Random | None = None) -> Network:
    """A random network that satisfies the axioms."""
    rng = rng or rng_for(cfg, "network")
    grammar = rng.random() < cfg.grammar_rate
    for attempt in range(max(cfg.retries, 1)):
        net = _grammar_network(cfg, rng) if grammar else _wild_network(cfg, rng, attempt)
        if not validate_network(net).ok:
            continue
        if rng.random() < cfg.noise_rate:
            net = _noise(net, rng)
        return net
    raise GenerationFailed(f"no valid network after {cfg.retries} attempts")


# -- homomorphisms ------------------------------------------------------------------------


class _Unfolder:
    """Build a source network over ``target`` one token at a time.

    Every owner gets exactly one hook per target hook above its image and every
    edge one facet per target facet, so both pullback squares hold.  Elements
    over glued-to targets receive one copy of each target sub-element.
    """

    def __init__(self, target: Network, rng: random.Random, cfg: GenConfig):
        self.t, self.rng, self.cfg = target, rng, cfg
        self.b = _Builder()
        self.p: dict[Element, Element] = {}
        self.order: list[Element] = []
        self.hook_at: dict[tuple, Element] = {}
        self.facet_of: dict[tuple, Element] = {}
        self.mirrors: dict[tuple, Element] = {}
        self.glue: list[tuple] = []
        self.tokens: dict[Element, list[Element]] = defaultdict(list)
        self.hooks0 = defaultdict(list)
        for h, x in sorted(target.A.items()):
            self.hooks0[x].append(h)
        self.facets0 = defaultdict(list)
        for k, e in sorted(target.C.items()):
            self.facets0[e].append(k)
        self.body0 = defaultdict(list)
        for n in sorted(target.nodes):
            self.body0[target.W[n]].append(n)
        self.succ0 = target.G.successors()
        self.subs0 = target.G.ran()

    def _track(self, x, image):
        self.p[x] = image
        self.order.append(x)
        return x

    def _owner_hooks(self, owner):
        for h0 in self.hooks0.get(self.p[owner], ()):
            self.hook_at[(owner, h0)] = self._track(self.b.hook(owner), h0)

    def _edge(self, a, b, image):
        e = self._track(self.b.edge(a, b), image)
        for k0 in self.facets0.get(image, ()):
            self.facet_of[(e, k0)] = self._track(self.b.facet(e), k0)
        return e

    def symbol(self, image):
        s = self._track(self.b.symbol(), image)
        self._owner_hooks(s)
        self.tokens[image].append(s)
        return s

    def node(self, whole, part, image):
        n = self._track(self.b.node(whole, part), image)
        self._owner_hooks(n)
        return n

    def token(self, image, depth, full):
        """A symbol over ``image`` with a lifted body (every target node once)."""
        r = self.symbol(image)
        owners = {image: r}
        for n0 in self.body0.get(image, ()):
            if not full and self.rng.random() < 0.1:
                continue
            owners[n0] = self.node(r, self.part(self.t.P[n0], depth + 1), n0)
        for e0 in sorted(self.t.edges):
            a0, b0 = self.t.F[e0], self.t.S[e0]
            oa, ob = owners.get(self.t.A[a0]), owners.get(self.t.A[b0])
            if oa is not None and ob is not None:
                self._edge(self.hook_at[(oa, a0)], self.hook_at[(ob, b0)], e0)
        return r

    def part(self, image, depth):
        existing = self.tokens.get(image, [])
        if existing and (depth > self.cfg.max_depth or self.rng.random() < self.cfg.share_rate):
            return self.rng.choice(existing)
        if depth > self.cfg.max_depth:
            return self.symbol(image)
        return self.token(image, depth, full=True)

    def mirror(self, x, z):
        key = (x, z)
        if key in self.mirrors:
            return self.mirrors[key]
        t = self.t
        if x.sort == Sort.SYMBOL:
            y = self.symbol(z)
        elif x.sort == Sort.NODE:
            whole = self.mirror(self.b.W[x], t.W[z])
            y = self.node(whole, self.b.P[x], z)
        elif x.sort == Sort.HOOK:
            y = self.hook_at[(self.mirror(self.b.A[x], t.A[z]), z)]
        elif x.sort == Sort.EDGE:
            y = self._edge(self.mirror(self.b.F[x], t.F[z]), self.mirror(self.b.S[x], t.S[z]), z)
        else:
            y = self.facet_of[(self.mirror(self.b.C[x], t.C[z]), z)]
        self.mirrors[key] = y
        return y

    def glue_all(self):
        i = 0
        while i < len(self.order):
            x = self.order[i]
            for z in sorted(self.succ0.get(self.p[x], ())):
                self.glue.append((x, self.mirror(x, z)))
            i += 1

    def unfold(self, roots: int):
        types = sorted(self.t.sigma)
        preferred = [s for s in types if s not in self.subs0 and s in self.body0] or [s for s in types if s not in self.subs0] or types
        for _ in range(roots):
            self.token(self.rng.choice(preferred), 0, full=self.rng.random() < 0.8)
        self.glue_all()

    def full_copy(self):
        t = self.t
        copy = {}
        for s in sorted(t.sigma):
            copy[s] = self.symbol(s)
        for n in sorted(t.nodes):
            copy[n] = self.node(copy[t.W[n]], copy[t.P[n]], n)
        for (owner, h0), h in self.hook_at.items():
            copy[h0] = h
        for e in sorted(t.edges):
            copy[e] = self._edge(copy[t.F[e]], copy[t.S[e]], e)
        for (_, k0), k in self.facet_of.items():
            copy[k0] = k
        self.glue = [(copy[x], copy[y]) for x, y in t.G.pairs]

    def result(self, name="") -> Homomorphism:
        src = self.b.network(self.glue, name=name or "unfolded")
        return Homomorphism(src, self.t, self.p)


def gen_hom_onto(cfg: GenConfig, target: Network, rng: random.Random | None = None, full_copy: bool = False) -> Homomorphism:
    """A homomorphism into ``target`` whose source is built by unfolding it.

    With ``full_copy`` every target element is copied exactly once, which gives
    an isomorphism with renamed elements.
    """
    rng = rng or rng_for(cfg, "hom")
    for _ in range(max(cfg.retries, 1)):
        u = _Unfolder(target, rng, cfg)
        if full_copy:
            u.full_copy()
        else:
            u.unfold(rng.randint(1, max(cfg.fanout, 1)) if target.sigma else 0)
        hom = u.result()
        if validate_homomorphism(hom).ok:
            return hom
    raise GenerationFailed(f"no valid homomorphism after {cfg.retries} attempts")
