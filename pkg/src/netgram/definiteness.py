"""Semi-definite and definite checks, minimality relative to a network, and
the sufficient-condition certificate for a definite source."""
from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from . import _kernels
from .errors import OracleInfeasible
from .hommodel import Homomorphism, validate_homomorphism
from .netmodel import Network, gluing_parts, validate_network
from .relcore import DEFAULT_ORACLE_CAP, Element, Relation, UnionFind, compose, inverse
from .report import Violation, ViolationReport

DEFAULT_ROW_CAP = 20


def default_cap() -> int | None:
    raw = os.environ.get("NETGRAM_MAX_ENUM", "").strip()
    return int(raw) if raw else None


DefinitenessReport = ViolationReport


@dataclass(frozen=True)
class MinimalityVerdict:
    minimal: bool
    method: str

    def __bool__(self) -> bool:
        return self.minimal


# -- minimality relative to the network ---------------------------------------------


def facet_cover_gaps(net: Network, g_k: Relation | None = None) -> list[Element]:
    """Facets outside ``G_K . G_K^-1  u  G_K^-1 . G_K`` on the diagonal."""
    g_k = gluing_parts(net).g_k if g_k is None else g_k
    both = compose(g_k, inverse(g_k)) | compose(inverse(g_k), g_k)
    return [k for k in sorted(net.facets) if (k, k) not in both]


def star_equations(net: Network) -> dict[str, tuple[frozenset, frozenset]]:
    """Each layer equation as ``name -> (missing, extra)`` relative to its right side."""
    parts = gluing_parts(net)
    cb, fb, sb, ab, wb = (net.bar(x) for x in "CFSAW")
    lifted = ab @ parts.g_h @ ~ab
    rhs = {
        "sigma": (parts.g_sigma, (wb @ parts.g_n @ ~wb) | (net.ident(net.sigma) @ lifted)),
        "node": (parts.g_n, net.ident(net.nodes) @ lifted),
        "hook": (parts.g_h, (fb @ parts.g_e @ ~fb) | (sb @ parts.g_e @ ~sb)),
        "edge": (parts.g_e, cb @ parts.g_k @ ~cb),
    }
    return {name: (r.pairs - l.pairs, l.pairs - r.pairs) for name, (l, r) in rhs.items()}


def equations_hold(net: Network) -> bool:
    return all(not a and not b for a, b in star_equations(net).values())


def _facets_functional(net: Network) -> bool:
    g_k = gluing_parts(net).g_k
    gg = compose(g_k, inverse(g_k))
    return all(x == y for x, y in gg.pairs)


def is_minimal_rel_network_fast(net: Network, cap: int = DEFAULT_ORACLE_CAP) -> MinimalityVerdict:
    """Minimality relative to the network via the layer equations.

    The equations are necessary in general and sufficient when every facet is
    covered and no facet has two partners on the first side.  Outside that
    case the brute-force oracle decides.
    """
    if facet_cover_gaps(net):
        return MinimalityVerdict(False, "facet-cover")
    if not equations_hold(net):
        return MinimalityVerdict(False, "equations")
    if _facets_functional(net):
        return MinimalityVerdict(True, "equations")
    return MinimalityVerdict(minimal_rel_network_oracle(net, cap), "oracle")


def closure_tables(net: Network):
    """Horn encoding of the six incidence inclusions over the pairs of ``G``.

    Returns ``(pairs, forbidden, req, cover)``: a sub-relation given as a bit
    mask satisfies the inclusions iff it avoids forbidden pairs and contains
    ``req[i]`` whenever it contains pair ``i``; it covers every facet iff it
    meets each mask in ``cover``.
    """
    pairs = net.G.sorted_pairs()
    index = {p: i for i, p in enumerate(pairs)}
    forbidden = [False] * len(pairs)
    req = [0] * len(pairs)
    for i, (x, y) in enumerate(pairs):
        if y in net.P and (x not in net.P or net.P[x] != net.P[y]):
            forbidden[i] = True
        for letter in "WAFSC":
            f = getattr(net, letter)
            if y not in f:
                continue
            need = (f.get(x), f[y])
            if x not in f or need not in index:
                forbidden[i] = True
            else:
                req[i] |= 1 << index[need]
    cover = []
    for k in sorted(net.facets):
        mask = 0
        for i, (x, y) in enumerate(pairs):
            if x in net.facets and k in (x, y):
                mask |= 1 << i
        cover.append(mask)
    return pairs, forbidden, req, cover


def minimal_rel_network_oracle(net: Network, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Definitional check by enumerating every sub-relation of ``G``."""
    if len(net.G) > cap:
        raise OracleInfeasible(f"gluing has {len(net.G)} pairs, oracle cap is {cap}")
    if facet_cover_gaps(net):
        return False
    pairs, forbidden, req, cover = closure_tables(net)
    if not pairs:
        return True
    return _kernels.horn_proper_subset(forbidden, req, cover) < 0


def minimality_agreement(net: Network, cap: int = DEFAULT_ORACLE_CAP) -> tuple[bool, bool]:
    return bool(is_minimal_rel_network_fast(net, cap)), minimal_rel_network_oracle(net, cap)


# -- the row condition on symbol gluing ------------------------------------------------------


def _row_tables(net: Network):
    verts = sorted(net.nodes | net.sigma)
    vi = {v: i for i, v in enumerate(verts)}
    edges_at: dict[Element, list[Element]] = defaultdict(list)
    for e in sorted(net.edges):
        edges_at[net.F[e]].append(e)
        edges_at[net.S[e]].append(e)
    hook_owner, hook_ptr, needs = [], [0], []
    for h in sorted(net.hooks):
        hook_owner.append(vi[net.A[h]])
        for e in edges_at.get(h, ()):
            needs.append((1 << vi[net.A[net.F[e]]]) | (1 << vi[net.A[net.S[e]]]))
        hook_ptr.append(len(needs))

    def mask(elements):
        m = 0
        for x in elements:
            if x in vi:
                m |= 1 << vi[x]
        return m

    parts = gluing_parts(net)
    succ_s, succ_n, succ_h = parts.g_sigma.successors(), parts.g_n.successors(), parts.g_h.successors()
    hooks_at: dict[Element, list[Element]] = defaultdict(list)
    for h, x in net.A.items():
        hooks_at[x].append(h)
    lhs, rhs = [], []
    for v in verts:
        lhs.append(mask(succ_s.get(v, ())))
        right = {net.W[y] for y in succ_n.get(v, ()) if y in net.W}
        for h in hooks_at.get(v, ()):
            right |= {net.A[h2] for h2 in succ_h.get(h, ()) if net.A.get(h2) in net.sigma}
        rhs.append(mask(right))
    return verts, hook_owner, hook_ptr, needs, lhs, rhs


def row_condition_witness(net: Network, cap: int = DEFAULT_ROW_CAP) -> frozenset | None:
    """A node/symbol set breaking the row condition, or None.

    Only the nodes and symbols of a row matter: its edges can always be taken
    as all edges with both ends inside, so the premise holds iff every hook of
    the row is reached by such an edge.
    """
    n = len(net.nodes) + len(net.sigma)
    if n > cap:
        raise OracleInfeasible(f"{n} nodes and symbols exceed the row enumeration cap {cap}")
    if not gluing_parts(net).g_sigma:
        return None
    verts, owner, ptr, needs, lhs, rhs = _row_tables(net)
    hit = _kernels.scan_rows(owner, ptr, needs, lhs, rhs)
    if hit < 0:
        return None
    return frozenset(v for i, v in enumerate(verts) if (hit >> i) & 1)


def row_condition_literal(net: Network, cap: int = 14) -> frozenset | None:
    """Same condition by enumerating every element subset and composing relations."""
    universe = sorted(net.universe)
    if len(universe) > cap:
        raise OracleInfeasible(f"universe of {len(universe)} exceeds the literal row cap {cap}")
    parts = gluing_parts(net)
    ab, fb, sb, wb = (net.bar(x) for x in "AFSW")
    lifted = net.ident(net.sigma) @ ab @ parts.g_h @ ~ab
    right_fixed = (wb @ parts.g_n) | lifted
    for size in range(len(universe) + 1):
        for t in combinations(universe, size):
            tset = set(t)
            if (~ab).image(tset) != (fb | sb).image(tset):
                continue
            if not parts.g_sigma.image(tset) <= right_fixed.image(tset):
                return frozenset(tset)
    return None


# -- structural conditions --------------------------------------------------------------------


def coequaliser_classes(net: Network) -> list[frozenset]:
    uf = UnionFind(sorted(net.nodes | net.sigma))
    for e in sorted(net.edges):
        uf.union(net.A[net.F[e]], net.A[net.S[e]])
    return uf.classes()


def coequaliser_failures(net: Network) -> list[tuple[str, frozenset]]:
    out = []
    owner: dict[Element, frozenset] = {}
    for cls in coequaliser_classes(net):
        images = {net.W[x] for x in cls}
        if len(images) > 1:
            out.append(("W not constant on a class", cls))
            continue
        (s,) = images
        if s in owner:
            out.append(("two classes share a symbol", owner[s] | cls))
        else:
            owner[s] = cls
    return out


def check_coequaliser(net: Network) -> bool:
    return not coequaliser_failures(net)


def sum_failures(net: Network, hooks: frozenset | None = None) -> list[tuple[str, tuple]]:
    """Ways in which ``E -F-> hooks <-S- E`` fails to be a sum diagram."""
    hooks = net.hooks if hooks is None else hooks
    out = []
    seen: dict[Element, Element] = {}
    for e in sorted(net.edges):
        for letter in "FS":
            h = getattr(net, letter)[e]
            if h not in hooks:
                out.append(("edge end outside the hook set", (e, h)))
            elif h in seen:
                out.append(("hook is the end of two edge ends", (seen[h], e, h)))
            else:
                seen[h] = e
    for h in sorted(hooks - set(seen)):
        out.append(("hook is no edge end", (h,)))
    return out


def check_sum_diagram(net: Network) -> bool:
    return not sum_failures(net)


def _forest_breakers(rel: Relation) -> list[tuple[Element, Element]]:
    uf = UnionFind()
    return [(x, y) for x, y in rel.sorted_pairs() if not uf.union(x, y)]


def _minimality_part(net: Network, code: str, cap: int) -> tuple[list[Violation], list, list]:
    try:
        verdict = is_minimal_rel_network_fast(net, cap)
    except OracleInfeasible as exc:
        return [], [(code, str(exc))], []
    notes = [(code, f"method={verdict.method}")]
    if verdict:
        return [], [], notes
    gaps = facet_cover_gaps(net)
    if gaps:
        return [Violation(code, (k,), f"facet {k.name} is glued to nothing") for k in gaps], [], notes
    out = []
    for name, (missing, extra) in sorted(star_equations(net).items()):
        for x, y in sorted(extra):
            out.append(Violation(code, (x, y), f"{name} pair ({x.name}, {y.name}) not generated by the layer below"))
        for x, y in sorted(missing):
            out.append(Violation(code, (x, y), f"{name} pair ({x.name}, {y.name}) generated but absent"))
    if not out:
        out.append(Violation(code, (), "a proper sub-relation still satisfies the incidence and facet conditions"))
    return out, [], notes


def _invalid(net: Network) -> ViolationReport | None:
    report = validate_network(net)
    return None if report.ok else report


def check_semidefinite(net: Network, cap: int | None = None, oracle_cap: int = DEFAULT_ORACLE_CAP) -> ViolationReport:
    bad = _invalid(net)
    if bad is not None:
        return bad
    cap = cap or default_cap() or DEFAULT_ROW_CAP
    out: list[Violation] = []
    infeasible: list = []
    for e in sorted(net.edges):
        a, b = net.W[net.A[net.F[e]]], net.W[net.A[net.S[e]]]
        if a != b:
            out.append(Violation("SD-1a", (e,), f"ends of {e.name} lie in wholes {a.name} and {b.name}"))
    parts = gluing_parts(net)
    for x, y in _forest_breakers(parts.g_n):
        out.append(Violation("SD-3", (x, y), f"node gluing ({x.name}, {y.name}) closes a cycle"))
    ends = set(net.F.values()) | set(net.S.values())
    for h in sorted(net.hooks - ends):
        out.append(Violation("SD-4a", (h,), f"hook {h.name} has no incident edge"))
    gk = parts.g_k
    for x, y in sorted(compose(gk, inverse(gk)).pairs):
        if x != y:
            out.append(Violation("SD-5a", (x, y), f"facets {x.name} and {y.name} glued under one facet"))
    v, inf, notes = _minimality_part(net, "SD-6", oracle_cap)
    out += v
    infeasible += inf
    g = net.G
    for letter in "FS":
        fb = net.bar(letter)
        lhs, rhs = compose(fb, g), compose(g, fb)
        for x, y in sorted(lhs.pairs ^ rhs.pairs):
            out.append(Violation("SD-7a", (x, y), f"{letter}.G and G.{letter} differ at ({x.name}, {y.name})"))
    try:
        witness = row_condition_witness(net, cap)
    except OracleInfeasible as exc:
        infeasible.append(("SD-8a", str(exc)))
    else:
        if witness is not None:
            names = ",".join(x.name for x in sorted(witness))
            out.append(Violation("SD-8a", tuple(sorted(witness)), f"row {{{names}}} glues symbols without enough nodes and hooks"))
    return ViolationReport.of(out, infeasible, notes)


def check_definite(net: Network, oracle_cap: int = DEFAULT_ORACLE_CAP) -> ViolationReport:
    bad = _invalid(net)
    if bad is not None:
        return bad
    out: list[Violation] = []
    for msg, cls in coequaliser_failures(net):
        out.append(Violation("D-1b", tuple(sorted(cls)), msg))
    parts = gluing_parts(net)
    comp = UnionFind(sorted(net.nodes))
    for x, y in parts.g_n.pairs:
        comp.union(x, y)
    by_part: dict[Element, list[Element]] = defaultdict(list)
    for n in sorted(net.nodes):
        by_part[net.P[n]].append(n)
    for s, ns in sorted(by_part.items()):
        for a, b in combinations(ns, 2):
            if comp.find(a) != comp.find(b):
                out.append(Violation("D-2b", (a, b), f"{a.name} and {b.name} share part {s.name} but are not connected"))
    for x, y in _forest_breakers(parts.g_n):
        out.append(Violation("D-3", (x, y), f"node gluing ({x.name}, {y.name}) closes a cycle"))
    for msg, elems in sum_failures(net):
        out.append(Violation("D-4b", elems, msg))
    gk = parts.g_k
    both = compose(gk, inverse(gk)) | compose(inverse(gk), gk)
    diag = frozenset((k, k) for k in net.facets)
    for x, y in sorted(both.pairs ^ diag):
        if x == y:
            out.append(Violation("D-5b", (x,), f"facet {x.name} has no partner"))
        else:
            out.append(Violation("D-5b", (x, y), f"facets {x.name} and {y.name} share a partner"))
    v, inf, notes = _minimality_part(net, "D-6", oracle_cap)
    return ViolationReport.of(out + v, inf, notes)


def is_semidefinite(net: Network, **kw) -> bool:
    return check_semidefinite(net, **kw).ok


def is_definite(net: Network, **kw) -> bool:
    return check_definite(net, **kw).ok


# -- certificate ------------------------------------------------------------------------------


def part_count_excess(net: Network) -> list[tuple[Element, int, int]]:
    """Symbols ``s`` whose nodes outnumber the node gluings leaving them by more than one.

    Returns ``(s, nodes with part s, node gluings from those nodes)``.  The
    count over a symbol set is the sum of per-symbol counts, so a set fails
    iff one of its singletons does.
    """
    nodes: dict[Element, int] = defaultdict(int)
    glued: dict[Element, int] = defaultdict(int)
    for n in net.nodes:
        nodes[net.P[n]] += 1
    for x, _ in gluing_parts(net).g_n.pairs:
        glued[net.P[x]] += 1
    return [(s, c, glued[s]) for s, c in sorted(nodes.items()) if c - glued[s] > 1]


def part_count_literal(net: Network, cap: int = DEFAULT_ROW_CAP) -> frozenset | None:
    """Enumerate every symbol set; first failing set or None."""
    syms = sorted(net.sigma)
    if len(syms) > cap:
        raise OracleInfeasible(f"{len(syms)} symbols exceed the enumeration cap {cap}")
    si = {s: i for i, s in enumerate(syms)}
    node_part = [si[net.P[n]] for n in sorted(net.nodes)]
    pair_part = [si[net.P[x]] for x, _ in gluing_parts(net).g_n.sorted_pairs()]
    hit = _kernels.part_count_scan(node_part, pair_part, len(syms))
    return None if hit < 0 else frozenset(s for s, i in si.items() if (hit >> i) & 1)


def facet_function_failures(net: Network) -> list[Violation]:
    """``G_K^-1`` must be the graph of a function on facets outside ``dom G``."""
    gk = gluing_parts(net).g_k
    first = net.G.dom()
    want = net.facets - first
    out = []
    preds: dict[Element, list[Element]] = defaultdict(list)
    for x, y in gk.pairs:
        preds[y].append(x)
    for y in sorted(set(preds) | want):
        got = sorted(preds.get(y, ()))
        if y not in want:
            out.append(Violation("T23-c", (y,), f"facet {y.name} has gluings onto it but lies in dom G"))
        elif len(got) != 1:
            out.append(Violation("T23-c", (y, *got), f"facet {y.name} has {len(got)} facets glued above it"))
    return out


def check_thm23_certificate(p: Homomorphism, cap: int | None = None, oracle_cap: int = DEFAULT_ORACLE_CAP) -> ViolationReport:
    base = validate_homomorphism(p)
    if not base.ok:
        return base
    n1 = p.source
    out: list[Violation] = []
    for s, c, g in part_count_excess(n1):
        out.append(Violation("T23-a", (s,), f"X={{{s.name}}}: {c} - {g} > 1"))
    for msg, elems in sum_failures(n1):
        out.append(Violation("T23-b", elems, msg))
    out += facet_function_failures(n1)
    for msg, cls in coequaliser_failures(n1):
        out.append(Violation("T23-d", tuple(sorted(cls)), msg))
    target = check_semidefinite(p.target, cap=cap, oracle_cap=oracle_cap)
    infeasible = list(target.infeasible)
    if target.violations:
        codes = ",".join(sorted(target.codes()))
        out.append(Violation("T23-target", (), f"target fails {codes}"))
    return ViolationReport.of(out, infeasible)
