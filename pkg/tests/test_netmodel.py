from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from netgram.formats import render_report
from netgram.generators import GenConfig, gen_network
from netgram.netmodel import (
    Network,
    edge,
    facet,
    gluing_parts,
    hook,
    induce_gluing,
    node,
    sym,
    validate_network,
)
from netgram.relcore import Relation, Sort, compose

from conftest import load_net

seeds = st.integers(0, 10**6)


def two_edges(**extra) -> Network:
    """Two parallel edges in separate wholes s1, s2 sharing the part t, one facet each."""
    return Network.build(
        symbols=["s1", "s2", "t"],
        nodes={"n1": ("s1", "t"), "n2": ("s2", "t")},
        hooks={"h1": "n1", "h2": "s1", "h3": "n2", "h4": "s2"},
        edges={"e1": ("h1", "h2"), "e2": ("h3", "h4")},
        facets={"k1": "e1", "k2": "e2", **extra},
    )


# -- fixtures ---------------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["n_empty.net", "n_sigma.net", "n_edge.net", "n_edge2.net"])
def test_fixtures_valid(name):
    assert validate_network(load_net(name)).ok


def test_n_edge_shape(n_edge):
    assert n_edge.W[node("n")] == sym("sigma")
    assert n_edge.P[node("n")] == sym("tau")
    assert n_edge.A == {hook("h1"): node("n"), hook("h2"): sym("sigma")}
    assert n_edge.F[edge("e")] == hook("h1") and n_edge.S[edge("e")] == hook("h2")
    assert not n_edge.facets and not n_edge.G


def test_empty_network():
    assert Network.empty() == load_net("n_empty.net")
    assert validate_network(Network.empty()).ok


def test_glued_hooks_break_incidence(n_edge):
    report = validate_network(n_edge.with_gluing([(hook("h1"), hook("h2"))]))
    assert "N2.A" in report.codes()


def test_badhook_fixture():
    report = validate_network(load_net("n_edge_badhook.net"))
    assert report.has("N3.H")


def test_typing_is_fatal(n_edge):
    broken = replace(n_edge, W={k: v for k, v in n_edge.W.items() if k != node("n")})
    report = validate_network(broken)
    assert report.codes() == {"N0.W"}
    moved = replace(n_edge, W={**n_edge.W, sym("tau"): sym("sigma")})
    assert "N0.Wfix" in validate_network(moved).codes()


def test_report_deterministic():
    net = load_net("n_edge_badhook.net")
    assert render_report(validate_network(net)) == render_report(validate_network(net))


# -- gluing parts -----------------------------------------------------------------------------


def test_gluing_parts_empty(n_edge):
    parts = gluing_parts(n_edge)
    assert all(not parts.by_sort(s) for s in Sort)


def test_gluing_parts_split():
    net = two_edges().with_gluing([(hook("h1"), hook("h3")), (facet("k1"), facet("k2"))])
    parts = gluing_parts(net)
    assert parts.g_h.pairs == {(hook("h1"), hook("h3"))}
    assert parts.g_k.pairs == {(facet("k1"), facet("k2"))}
    assert not parts.g_sigma and not parts.g_n and not parts.g_e


def test_gluing_parts_ill_sorted():
    net = two_edges().with_gluing([(hook("h1"), facet("k2"))])
    parts = gluing_parts(net)
    holders = [s for s in Sort if parts.by_sort(s)]
    assert holders == [Sort.HOOK]
    assert parts.union() == net.G
    assert "N1" in validate_network(net).codes()


# -- induced gluing ---------------------------------------------------------------------------


def test_induce_empty_seed():
    net = two_edges()
    assert induce_gluing(net, []) == Relation(net.universe)


def test_induce_parallel_edges():
    net = two_edges()
    g = induce_gluing(net, [(facet("k1"), facet("k2"))])
    want = {
        (facet("k1"), facet("k2")),
        (edge("e1"), edge("e2")),
        (hook("h1"), hook("h3")),
        (hook("h2"), hook("h4")),
        (node("n1"), node("n2")),
        (sym("s1"), sym("s2")),
    }
    assert g.pairs == want
    assert validate_network(net.with_gluing(g)).ok


def test_induce_same_edge_facets():
    net = two_edges(k3="e1")
    g = induce_gluing(net, [(facet("k1"), facet("k3"))])
    assert (edge("e1"), edge("e1")) in g
    assert "N4" in validate_network(net.with_gluing(g)).codes()


def test_induce_rejects_non_facets():
    with pytest.raises(ValueError):
        induce_gluing(two_edges(), [(edge("e1"), edge("e2"))])


# -- invariants on generated networks ---------------------------------------------------------


@given(seeds)
def test_generated_parts_partition_g(seed):
    net = gen_network(GenConfig(seed=seed))
    assert validate_network(net).ok
    parts = gluing_parts(net)
    assert parts.union() == net.G
    for s in Sort:
        for x, y in parts.by_sort(s).pairs:
            assert x.sort == y.sort == s


@given(seeds)
def test_no_chains_means_irreflexive_antisymmetric(seed):
    net = gen_network(GenConfig(seed=seed))
    assert not compose(net.G, net.G)
    for x, y in net.G.pairs:
        assert x != y and (y, x) not in net.G


@given(seeds, st.data())
def test_induce_keeps_seed_on_facets(seed, data):
    net = gen_network(GenConfig(seed=seed))
    ks = sorted(net.facets)
    pairs = data.draw(st.frozensets(st.tuples(st.sampled_from(ks), st.sampled_from(ks)), max_size=4)) if ks else frozenset()
    g = induce_gluing(net, pairs)
    assert gluing_parts(net.with_gluing(g)).g_k.pairs == pairs
