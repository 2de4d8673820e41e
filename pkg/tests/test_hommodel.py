import random
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from netgram.errors import EndpointMismatch, InvalidSubnetwork, NotInvertible
from netgram.generators import GenConfig, gen_hom_onto, gen_network
from netgram.hommodel import (
    Homomorphism,
    compose_homs,
    identity_hom,
    invert_hom,
    is_automorphism,
    is_homomorphism,
    is_isomorphism,
    restrict_hom,
    validate_homomorphism,
)
from netgram.netmodel import MAPS, SET_FIELDS, Network
from netgram.relcore import Element, Relation
from netgram.subnet import extract_subnetwork, inclusion_hom

from conftest import load_doc, load_net

SMALL = GenConfig(max_symbols=2, max_nodes=2, max_hooks=3, max_edges=2, max_facets=2)
seeds = st.integers(0, 10**6)


@pytest.fixture
def fold() -> Homomorphism:
    return load_doc("fold.hom").homs["fold"]


@pytest.fixture
def swap() -> Homomorphism:
    return load_doc("unfold.hom").homs["swap"]


def renamed_copy(net: Network, suffix: str) -> Homomorphism:
    """An isomorphism from ``net`` onto a copy whose names carry ``suffix``."""
    r = lambda x: Element(x.sort, x.name + suffix)
    sets = [frozenset(map(r, getattr(net, f))) for f in SET_FIELDS]
    maps = [{r(k): r(v) for k, v in getattr(net, f).items()} for f in MAPS]
    g = Relation(frozenset().union(*sets), [(r(x), r(y)) for x, y in net.G.pairs])
    copy = Network(*sets, *maps, g, name=net.name + suffix)
    return Homomorphism(net, copy, {x: r(x) for x in net.universe})


# -- pullback oracle --------------------------------------------------------------------------


def pullback_oracle(p, upper1, upper0, lower1, f1, f0) -> bool:
    """Universal property of the square, probed with test sets of size 1 and 2."""
    m = p.mapping
    if any(f0[m[u]] != m[f1[u]] for u in upper1):
        return False
    up1, up0, lo1 = sorted(upper1), sorted(upper0), sorted(lower1)
    for size in (1, 2):
        for a in product(lo1, repeat=size):
            for b in product(up0, repeat=size):
                if any(m[a[i]] != f0[b[i]] for i in range(size)):
                    continue
                mediators = [
                    c for c in product(up1, repeat=size)
                    if all(f1[c[i]] == a[i] and m[c[i]] == b[i] for i in range(size))
                ]
                if len(mediators) != 1:
                    return False
    return True


def random_sorted_map(rng, n1, n0):
    mapping = {}
    for x in sorted(n1.universe):
        choices = sorted(n0.of_sort(x.sort))
        if not choices:
            return None
        mapping[x] = rng.choice(choices)
    return Homomorphism(n1, n0, mapping)


@given(seeds)
def test_fibre_check_matches_pullback_oracle(seed):
    rng = random.Random(seed)
    n0 = gen_network(SMALL, rng)
    n1 = gen_hom_onto(SMALL, n0, rng).source
    assume(len(n1.universe) <= 14)
    p = random_sorted_map(rng, n1, n0) if rng.random() < 0.7 else gen_hom_onto(SMALL, n0, rng)
    assume(p is not None)
    report = validate_homomorphism(p)
    n1, n0 = p.source, p.target
    want_a = pullback_oracle(p, n1.hooks, n0.hooks, n1.nodes | n1.sigma, n1.A, n0.A)
    want_c = pullback_oracle(p, n1.facets, n0.facets, n1.edges, n1.C, n0.C)
    assert report.has("H3.A") == (not want_a)
    assert report.has("H3.C") == (not want_c)


def test_two_facets_onto_one_breaks_facet_square():
    base = dict(symbols=["s", "t"], nodes={"n": ("s", "t")}, hooks={"h1": "n", "h2": "s"}, edges={"e": ("h1", "h2")})
    n1 = Network.build(**base, facets={"k1": "e", "k2": "e"})
    n0 = Network.build(**base, facets={"k": "e"})
    m = {x: (n0.elem("k") if x.name.startswith("k") else n0.elem(x.name)) for x in n1.universe}
    p = Homomorphism(n1, n0, m)
    assert validate_homomorphism(p).codes() == {"H3.C"}
    assert not pullback_oracle(p, n1.facets, n0.facets, n1.edges, n1.C, n0.C)
    assert pullback_oracle(p, n1.hooks, n0.hooks, n1.nodes | n1.sigma, n1.A, n0.A)


# -- validation examples ----------------------------------------------------------------------


def test_identity_validates(n_edge):
    assert validate_homomorphism(identity_hom(n_edge)).ok


def test_fold_validates(fold):
    assert validate_homomorphism(fold).ok
    assert not fold.is_bijective()


def test_collapse_breaks_hook_square():
    p = load_doc("collapse.hom").homs["collapse"]
    report = validate_homomorphism(p)
    assert report.has("H3.A")
    assert not report.ok


def test_missing_element_is_h0(n_edge):
    m = {x: x for x in n_edge.universe}
    m.pop(next(iter(n_edge.hooks)))
    assert validate_homomorphism(Homomorphism(n_edge, n_edge, m)).codes() == {"H0"}


def test_stale_endpoint_is_h0(n_edge):
    p = Homomorphism(n_edge, n_edge, {x: x for x in n_edge.universe}, source_digest="0" * 64)
    assert validate_homomorphism(p).has("H0")


def test_sort_change_is_h1(n_edge):
    m = {x: x for x in n_edge.universe}
    m[n_edge.elem("n")] = n_edge.elem("sigma")
    assert validate_homomorphism(Homomorphism(n_edge, n_edge, m)).codes() == {"H1"}


def test_invalid_endpoint_is_h0():
    bad = load_net("n_edge_badhook.net")
    assert validate_homomorphism(identity_hom(bad)).codes() == {"H0"}


# -- composition, inversion, isomorphism ------------------------------------------------------


def test_compose_with_identities(fold):
    assert compose_homs(identity_hom(fold.target), fold).mapping == fold.mapping
    assert compose_homs(fold, identity_hom(fold.source)).mapping == fold.mapping


def test_fold_after_swap(fold, swap):
    pq = compose_homs(fold, swap)
    assert validate_homomorphism(pq).ok
    assert all(pq(x) == fold(swap(x)) for x in swap.source.universe)


def test_compose_endpoint_mismatch(fold):
    with pytest.raises(EndpointMismatch):
        compose_homs(fold, fold)


def test_invert_identity(n_edge):
    i = identity_hom(n_edge)
    assert invert_hom(i).mapping == i.mapping


def test_invert_renaming(n_edge):
    f = renamed_copy(n_edge, "x")
    assert is_isomorphism(f)
    g = invert_hom(f)
    assert validate_homomorphism(g).ok
    assert all(compose_homs(g, f)(x) == x for x in n_edge.universe)
    assert all(compose_homs(f, g)(y) == y for y in f.target.universe)


def test_invert_fold_fails(fold):
    with pytest.raises(NotInvertible):
        invert_hom(fold)


def test_isomorphism_predicates(n_edge, fold, swap):
    i = identity_hom(n_edge)
    assert is_isomorphism(i) and is_automorphism(i)
    assert is_automorphism(swap)
    assert not is_isomorphism(fold) and not is_automorphism(fold)


# -- restriction ------------------------------------------------------------------------------


def test_restrict_to_whole_source(fold):
    assert restrict_hom(fold, fold.source).mapping == fold.mapping


def test_restrict_identity_is_inclusion(n_edge):
    sub = extract_subnetwork(n_edge, [n_edge.elem("tau")])
    assert restrict_hom(identity_hom(n_edge), sub).mapping == inclusion_hom(sub, n_edge).mapping


def test_restrict_fold_to_one_copy(fold):
    copy_a = extract_subnetwork(fold.source, [fold.source.elem("ea")])
    r = restrict_hom(fold, copy_a)
    assert {x.name for x in copy_a.universe} == {"sa", "ta", "na", "h1a", "h2a", "ea"}
    assert is_isomorphism(r)
    assert all(r(x) == fold(x) for x in copy_a.universe)


def test_restrict_rejects_non_subnetwork(fold, n_edge):
    with pytest.raises(InvalidSubnetwork):
        restrict_hom(fold, n_edge)


# -- laws on generated homomorphisms ----------------------------------------------------------


@given(seeds)
def test_generated_homs_validate(seed):
    rng = random.Random(seed)
    n0 = gen_network(GenConfig(), rng)
    p = gen_hom_onto(GenConfig(), n0, rng)
    assert is_homomorphism(p)


@given(seeds)
def test_no_two_siblings_share_an_image(seed):
    rng = random.Random(seed)
    p = gen_hom_onto(GenConfig(), gen_network(GenConfig(), rng), rng)
    succ = p.source.G.successors()
    for x, ys in succ.items():
        images = [p(y) for y in ys]
        assert len(images) == len(set(images))


@given(seeds)
def test_full_copy_is_isomorphism(seed):
    rng = random.Random(seed)
    n0 = gen_network(GenConfig(), rng)
    f = gen_hom_onto(GenConfig(fanout=1), n0, rng, full_copy=True)
    assert is_isomorphism(f)
    g = invert_hom(f)
    assert is_homomorphism(g)
