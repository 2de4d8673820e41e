import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from netgram.errors import InvalidSubnetwork
from netgram.generators import GenConfig, gen_hom_onto, gen_network
from netgram.hommodel import compose_homs, identity_hom, restrict_hom, validate_homomorphism
from netgram.netmodel import Network, node, sym, validate_network
from netgram.subnet import (
    SubnetworkSeed,
    closure,
    extract_subnetwork,
    inclusion_hom,
    induced,
    is_proper_subnetwork,
    validate_subnetwork,
)

from conftest import load_net

seeds = st.integers(0, 10**6)


def generated(seed: int) -> Network:
    rng = random.Random(seed)
    return gen_hom_onto(GenConfig(), gen_network(GenConfig(), rng), rng).source


# -- examples ---------------------------------------------------------------------------------


def test_empty_seed(n_edge):
    assert extract_subnetwork(n_edge, []) == Network.empty()


def test_full_seed(n_edge):
    assert extract_subnetwork(n_edge, n_edge.universe) == n_edge


def test_tau_only(n_edge):
    sub = extract_subnetwork(n_edge, SubnetworkSeed.of([sym("tau")]))
    assert sub.universe == {sym("tau")}
    assert sub == load_net("sub_tau.net")


def test_node_seed_does_not_pull_edges(n_edge):
    keep = closure(n_edge, [node("n")])
    assert {x.name for x in keep} == {"n", "sigma", "tau", "h1", "h2"}


def test_unknown_seed_element(n_edge):
    with pytest.raises(InvalidSubnetwork):
        closure(n_edge, [sym("nope")])


def test_validate_examples(n_edge):
    assert validate_subnetwork(n_edge, n_edge).ok
    assert validate_subnetwork(n_edge, extract_subnetwork(n_edge, [node("n")])).ok
    assert not is_proper_subnetwork(n_edge, n_edge)
    assert is_proper_subnetwork(n_edge, extract_subnetwork(n_edge, [sym("tau")]))


def test_missing_facet_is_s5():
    net = Network.build(
        symbols=["sigma", "tau"], nodes={"n": ("sigma", "tau")},
        hooks={"h1": "n", "h2": "sigma"}, edges={"e": ("h1", "h2")}, facets={"k": "e"},
    )
    sub = induced(net, net.universe - {net.elem("k")})
    assert validate_subnetwork(net, sub).codes() == {"S5"}


def test_dropped_hook_is_s3(n_edge):
    sub = induced(n_edge, {sym("sigma"), sym("tau"), node("n")})
    assert "S3" in validate_subnetwork(n_edge, sub).codes()


def test_inclusion_examples(n_edge):
    assert inclusion_hom(n_edge, n_edge).mapping == identity_hom(n_edge).mapping
    inc = inclusion_hom(extract_subnetwork(n_edge, [sym("tau")]), n_edge)
    assert validate_homomorphism(inc).ok
    with pytest.raises(InvalidSubnetwork):
        inclusion_hom(load_net("n_edge2.net"), n_edge)


# -- properties -------------------------------------------------------------------------------


@given(seeds, st.data())
def test_extraction_laws(seed, data):
    net = generated(seed)
    pool = sorted(net.universe)
    chosen = data.draw(st.lists(st.sampled_from(pool), max_size=4)) if pool else []
    sub = extract_subnetwork(net, chosen)
    assert validate_subnetwork(net, sub).ok
    assert validate_network(sub).ok
    keep = sub.universe
    assert sub.G.pairs == {(x, y) for x, y in net.G.pairs if x in keep}
    assert sub.facets - sub.G.dom() <= net.facets - net.G.dom()
    inc = inclusion_hom(sub, net)
    assert validate_homomorphism(inc).ok


@given(seeds, st.data())
def test_closure_operator(seed, data):
    net = generated(seed)
    pool = sorted(net.universe)
    a = set(data.draw(st.lists(st.sampled_from(pool), max_size=3))) if pool else set()
    b = a | (set(data.draw(st.lists(st.sampled_from(pool), max_size=3))) if pool else set())
    ca, cb = closure(net, a), closure(net, b)
    assert a <= ca
    assert closure(net, ca) == ca
    assert ca <= cb


@given(seeds, st.data())
def test_restrict_is_composition_with_inclusion(seed, data):
    rng = random.Random(seed)
    p = gen_hom_onto(GenConfig(), gen_network(GenConfig(), rng), rng)
    pool = sorted(p.source.universe)
    chosen = data.draw(st.lists(st.sampled_from(pool), max_size=3)) if pool else []
    sub = extract_subnetwork(p.source, chosen)
    r = restrict_hom(p, sub)
    assert r.mapping == compose_homs(p, inclusion_hom(sub, p.source)).mapping
    assert validate_homomorphism(r).ok
