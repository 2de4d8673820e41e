"""Executable laws about networks and homomorphisms, checked on random instances.

Each law names a hypothesis and a conclusion.  Cases that miss the
hypothesis are counted but not judged, so a vacuous pass shows up as a low
hypothesis rate.  Relations between the two networks of a homomorphism are
evaluated on a joint universe in which every element is tagged with its side.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .definiteness import (
    check_definite,
    check_semidefinite,
    check_thm23_certificate,
    equations_hold,
    is_minimal_rel_network_fast,
    minimal_rel_network_oracle,
    sum_failures,
    _facets_functional,
    facet_cover_gaps,
)
from .errors import OracleInfeasible
from .formats import serialize_bundle, serialize_network
from .generators import GenConfig, gen_hom_onto, gen_network, rng_for
from .hommodel import Homomorphism, compose_homs, invert_hom, restrict_hom, validate_homomorphism
from .netmodel import Network, gluing_parts, validate_network
from .relcore import Element, Relation, is_forest
from .subnet import extract_subnetwork, inclusion_hom, validate_subnetwork

__all__ = ["GenConfig", "LawResult", "gen_hom_onto", "gen_network", "run_law_suite", "LAW_IDS", "Joint"]


@dataclass
class LawResult:
    law: str
    cases: int = 0
    satisfied: int = 0
    counterexample: str | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    @property
    def rate(self) -> float:
        return self.satisfied / self.cases if self.cases else 0.0


# -- joint universe for cross-network formulas ---------------------------------------------


class Joint:
    """Both networks of ``p: N1 -> N0`` on one tagged universe."""

    def __init__(self, p: Homomorphism):
        self.p = p
        self.n1, self.n0 = p.source, p.target
        self.t1 = {x: Element(x.sort, "1/" + x.name) for x in self.n1.universe}
        self.t0 = {x: Element(x.sort, "0/" + x.name) for x in self.n0.universe}
        self.universe = frozenset(self.t1.values()) | frozenset(self.t0.values())
        self.pbar = self.rel((self.t1[x], self.t0[y]) for x, y in p.mapping.items())

    def rel(self, pairs: Iterable) -> Relation:
        return Relation(self.universe, pairs)

    def side(self, which: int):
        return (self.n0, self.t0) if which == 0 else (self.n1, self.t1)

    def lift(self, which: int, rel: Relation) -> Relation:
        _, t = self.side(which)
        return self.rel((t[x], t[y]) for x, y in rel.pairs)

    def bar(self, which: int, letter: str) -> Relation:
        net, t = self.side(which)
        return self.rel((t[x], t[y]) for x, y in getattr(net, letter).items())

    def ident(self, which: int, subset: Iterable[Element]) -> Relation:
        _, t = self.side(which)
        return self.rel((t[x], t[x]) for x in subset)

    def gluing(self, which: int):
        net, _ = self.side(which)
        parts = gluing_parts(net)
        return {
            "G": self.lift(which, net.G),
            "S": self.lift(which, parts.g_sigma),
            "N": self.lift(which, parts.g_n),
            "H": self.lift(which, parts.g_h),
            "E": self.lift(which, parts.g_e),
            "K": self.lift(which, parts.g_k),
        }


# -- individual law checks -------------------------------------------------------------------
# Each returns a dict law-id -> (hypothesis holds, conclusion holds).


def laws_19(j: Joint) -> dict[str, tuple[bool, bool]]:
    p = j.pbar
    g1, g0 = j.gluing(1), j.gluing(0)
    a1, c1, a0, c0 = j.bar(1, "A"), j.bar(1, "C"), j.bar(0, "A"), j.bar(0, "C")
    id1 = j.ident(1, j.n1.universe)
    return {
        "L19i": (True, ((~p @ p) & (g1["G"] @ ~g1["G"])) <= id1),
        "L19ii": (True, ((~p @ g0["H"] @ p) & (~a1 @ (g1["N"] | g1["S"]) @ a1)) == g1["H"]),
        "L19iii": (True, ((~p @ g0["K"] @ p) & (~c1 @ g1["E"] @ c1)) == g1["K"]),
        "L19iv": (True, (~a0 @ p) == (p @ ~a1)),
        "L19v": (True, (~c0 @ p) == (p @ ~c1)),
    }


def laws_20(j: Joint, target_sd: bool) -> dict[str, tuple[bool, bool]]:
    g1 = j.gluing(1)
    f1, s1, a1, c1 = (j.bar(1, x) for x in "FSAC")
    k1 = j.ident(1, j.n1.facets)
    n1 = j.ident(1, j.n1.nodes)
    return {
        "L20i": (target_sd, (g1["K"] @ ~g1["K"]) <= k1),
        "L20ii": (target_sd, (f1 @ g1["G"]) == (g1["G"] @ f1) and (s1 @ g1["G"]) == (g1["G"] @ s1)),
        "L20iii": (target_sd, g1["N"] == n1 @ a1 @ g1["H"] @ ~a1),
        "L20iv": (target_sd, g1["E"] == c1 @ g1["K"] @ ~c1),
    }


def hooks_over(net: Network, owners: frozenset) -> frozenset:
    return frozenset(h for h, x in net.A.items() if x in owners)


def facet_function_holds(net: Network) -> bool:
    """``G_K^-1`` is the graph of a function defined exactly on facets outside ``dom G``."""
    gk = gluing_parts(net).g_k
    want = net.facets - net.G.dom()
    preds: dict = {}
    for x, y in gk.pairs:
        preds.setdefault(y, []).append(x)
    return set(preds) == set(want) and all(len(v) == 1 for v in preds.values())


def laws_21(j: Joint, target_sd: bool, y: frozenset) -> dict[str, tuple[bool, bool]]:
    n1 = j.n1
    hy = hooks_over(n1, n1.nodes | y)
    hyp = target_sd and y <= n1.sigma and not sum_failures(n1, hy) and facet_function_holds(n1)
    p, g1 = j.pbar, j.gluing(1)
    f1, s1 = j.bar(1, "F"), j.bar(1, "S")
    hn = j.ident(1, hooks_over(n1, n1.nodes))
    return {
        "L21i": (hyp, g1["G"] @ j.ident(1, hy) == (f1 @ g1["E"] @ ~f1) | (s1 @ g1["E"] @ ~s1)),
        "L21ii": (hyp, j.ident(1, n1.facets) == (g1["K"] @ ~g1["K"]) | (~g1["K"] @ g1["K"])),
        "L21iii": (hyp, ((~p @ p) & (~g1["E"] @ g1["E"])) <= j.ident(1, n1.edges)),
        "L21iv": (hyp, ((~p @ p) & (hn @ ~g1["G"] @ g1["G"] @ hn)) <= hn),
        "L21v": (hyp, ((~p @ p) & (~g1["N"] @ g1["N"])) <= j.ident(1, n1.nodes)),
        "L21vi": (hyp, is_forest(gluing_parts(n1).g_n)),
    }


def laws_22(j: Joint, target_sd: bool, y: frozenset) -> dict[str, tuple[bool, bool]]:
    n1 = j.n1
    wholes = frozenset(n1.W[n] for n in n1.nodes)
    hy = hooks_over(n1, n1.nodes | y)
    one_whole = all(n1.W[n1.A[n1.F[e]]] == n1.W[n1.A[n1.S[e]]] for e in n1.edges)
    hyp = target_sd and wholes <= y <= n1.sigma and not sum_failures(n1, hy) and one_whole
    g1 = j.gluing(1)
    a1, w1 = j.bar(1, "A"), j.bar(1, "W")
    isig, iy = j.ident(1, n1.sigma), j.ident(1, y)
    lifted = a1 @ g1["H"] @ ~a1
    return {
        "L22i": (hyp, isig @ lifted == lifted @ isig),
        "L22ii": (hyp, g1["G"] @ iy == ((w1 @ g1["N"] @ ~w1) | (isig @ lifted)) @ iy),
        "L22iii": (hyp, (g1["G"] @ iy) <= (iy @ g1["G"])),
    }


# -- families ------------------------------------------------------------------------------------


@dataclass
class _Tally:
    results: dict[str, LawResult] = field(default_factory=dict)

    def record(self, law: str, hyp: bool, ok: bool, witness: Callable[[], str]):
        r = self.results.setdefault(law, LawResult(law))
        r.cases += 1
        if hyp:
            r.satisfied += 1
            if not ok and r.counterexample is None:
                r.counterexample = witness()


def _hom_text(p: Homomorphism) -> str:
    return serialize_bundle(p)


def family_composition(cfg: GenConfig, case: int, tally: _Tally):
    rng = rng_for(cfg, "L15", case)
    n0 = gen_network(cfg, rng).renamed("n0")
    p = gen_hom_onto(cfg, n0, rng)
    n1 = p.source.renamed("n1")
    p = Homomorphism(n1, n0, p.mapping)
    q = gen_hom_onto(cfg, n1, rng)
    pq = compose_homs(p, q)
    tally.record("L15", True, validate_homomorphism(pq).ok, lambda: _hom_text(q) + "\n" + _hom_text(p))


def family_inverse(cfg: GenConfig, case: int, tally: _Tally):
    rng = rng_for(cfg, "L16", case)
    n0 = gen_network(cfg, rng).renamed("n0")
    f = gen_hom_onto(cfg, n0, rng, full_copy=True)
    g = invert_hom(f)
    ok = validate_homomorphism(g).ok
    ok = ok and all(g(f(x)) == x for x in f.source.universe) and all(f(g(y)) == y for y in n0.universe)
    tally.record("L16", f.is_bijective(), ok, lambda: _hom_text(f))


def family_minimality(cfg: GenConfig, case: int, tally: _Tally):
    rng = rng_for(cfg, "L17", case)
    net = gen_network(cfg, rng)
    witness = lambda: serialize_network(net, "case")
    try:
        oracle = minimal_rel_network_oracle(net, cfg.oracle_cap)
        fast = bool(is_minimal_rel_network_fast(net, cfg.oracle_cap))
    except OracleInfeasible:
        tally.record("L17i", False, True, witness)
        tally.record("L17ii", False, True, witness)
        tally.record("L17", False, True, witness)
        return
    eqs = equations_hold(net)
    tally.record("L17i", oracle, eqs, witness)
    tally.record("L17ii", eqs and _facets_functional(net) and not facet_cover_gaps(net), oracle, witness)
    tally.record("L17", True, fast == oracle, witness)


def family_definite(cfg: GenConfig, case: int, tally: _Tally):
    rng = rng_for(cfg, "L18", case)
    net = gen_network(cfg, rng)
    definite = check_definite(net, cfg.oracle_cap)
    if not definite.ok:
        tally.record("L18", False, True, lambda: "")
        return
    semi = check_semidefinite(net, cfg.row_cap, cfg.oracle_cap)
    tally.record("L18", True, semi.ok, lambda: serialize_network(net, "case"))


def family_homs(cfg: GenConfig, case: int, tally: _Tally):
    rng = rng_for(cfg, "L19-23", case)
    n0 = gen_network(cfg, rng).renamed("n0")
    p = gen_hom_onto(cfg, n0, rng)
    p = Homomorphism(p.source.renamed("n1"), n0, p.mapping)
    target = check_semidefinite(n0, cfg.row_cap, cfg.oracle_cap)
    target_sd = target.ok
    j = Joint(p)
    witness = lambda: _hom_text(p)
    for law, (hyp, ok) in laws_19(j).items():
        tally.record(law, hyp, ok, witness)
    for law, (hyp, ok) in laws_20(j, target_sd).items():
        tally.record(law, hyp, ok, witness)
    n1 = p.source
    syms = sorted(n1.sigma)
    y21 = frozenset(s for s in syms if rng.random() < 0.8)
    for law, (hyp, ok) in laws_21(j, target_sd, y21).items():
        tally.record(law, hyp, ok, witness)
    wholes = frozenset(n1.W[n] for n in n1.nodes)
    y22 = wholes | frozenset(s for s in syms if rng.random() < 0.5)
    for law, (hyp, ok) in laws_22(j, target_sd, y22).items():
        tally.record(law, hyp, ok, witness)
    cert = check_thm23_certificate(p, cfg.row_cap, cfg.oracle_cap)
    if cert.ok:
        tally.record("L23", True, check_definite(n1, cfg.oracle_cap).ok, witness)
    else:
        tally.record("L23", False, True, witness)


def family_subnetworks(cfg: GenConfig, case: int, tally: _Tally):
    rng = rng_for(cfg, "L24", case)
    n0 = gen_network(cfg, rng).renamed("n0")
    p = gen_hom_onto(cfg, n0, rng)
    net = p.source.renamed("n1")
    p = Homomorphism(net, n0, p.mapping)
    pool = sorted(net.universe)
    seed = [x for x in pool if rng.random() < 0.15]
    sub = extract_subnetwork(net, seed).renamed("sub")
    witness = lambda: serialize_network(net, "n1") + f"# seed: {' '.join(x.name for x in seed)}\n"
    sub_ok = validate_subnetwork(net, sub).ok
    tally.record("L24ii", True, sub_ok and validate_network(sub).ok, witness)
    keep = sub.universe
    g_i = frozenset((x, y) for x, y in net.G.pairs if x in keep)
    tally.record("L24i", sub_ok, sub.G.pairs == g_i, witness)
    unglued_sub = sub.facets - sub.G.dom()
    unglued = net.facets - net.G.dom()
    tally.record("L24iii", sub_ok, unglued_sub <= unglued, witness)
    inc = inclusion_hom(sub, net) if sub_ok else None
    tally.record("L24iv", sub_ok, inc is not None and validate_homomorphism(inc).ok, witness)
    if inc is not None:
        r = restrict_hom(p, sub)
        c = compose_homs(p, inc)
        tally.record("L24r", True, r.mapping == c.mapping and validate_homomorphism(r).ok, witness)
    else:
        tally.record("L24r", False, True, witness)


FAMILIES: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "L15": (family_composition, ("L15",)),
    "L16": (family_inverse, ("L16",)),
    "L17": (family_minimality, ("L17", "L17i", "L17ii")),
    "L18": (family_definite, ("L18",)),
    "L19-23": (family_homs, ("L19i", "L19ii", "L19iii", "L19iv", "L19v",
                             "L20i", "L20ii", "L20iii", "L20iv",
                             "L21i", "L21ii", "L21iii", "L21iv", "L21v", "L21vi",
                             "L22i", "L22ii", "L22iii", "L23")),
    "L24": (family_subnetworks, ("L24i", "L24ii", "L24iii", "L24iv", "L24r")),
}
LAW_IDS = tuple(law for _, laws in FAMILIES.values() for law in laws)


def _family_of(law: str) -> str:
    for fam, (_, laws) in FAMILIES.items():
        if law in laws or law == fam:
            return fam
    raise KeyError(f"unknown law {law!r}")


def run_law_suite(cfg: GenConfig, laws: Iterable[str] | None = None) -> list[LawResult]:
    """Run the requested laws (all by default) for ``cfg.cases`` cases each.

    Results come back in a fixed order and depend only on ``cfg``.
    """
    wanted = list(LAW_IDS) if laws is None else [l for l in laws]
    families = []
    for law in wanted:
        fam = _family_of(law)
        if fam not in families:
            families.append(fam)
    tally = _Tally()
    for fam in families:
        run, ids = FAMILIES[fam]
        for law in ids:
            tally.results.setdefault(law, LawResult(law))
        for case in range(cfg.cases):
            run(cfg, case, tally)
    selected = [law for law in LAW_IDS if law in wanted or _family_of(law) in wanted]
    return [tally.results[law] for law in selected]
