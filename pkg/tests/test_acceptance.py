"""Acceptance gate: one test per criterion, each logging a PASS/FAIL line.

The lines are printed in the terminal summary under "acceptance criteria".
"""
import json
import random
import time

from netgram.definiteness import (
    check_definite,
    check_semidefinite,
    is_minimal_rel_network_fast,
    minimal_rel_network_oracle,
)
from netgram.errors import OracleInfeasible
from netgram.formats import parse_document, parse_network, render_report, serialize_bundle, serialize_network
from netgram.generators import GenConfig, gen_hom_onto, gen_network, rng_for
from netgram.hommodel import Homomorphism
from netgram.laws import run_law_suite
from netgram.netmodel import gluing_parts, validate_network
from netgram.relcore import (
    Element,
    FnGraph,
    Relation,
    Sort,
    inverse,
    is_minimal_rel_function,
    minimal_rel_function_oracle,
)

from conftest import DATA, SESSION_START, load_net, record

SEED = 20240601
SUITE_BUDGET = 300.0


def results_for(cfg: GenConfig, laws) -> dict:
    return {r.law: r for r in run_law_suite(cfg, laws)}


def test_criterion_1_fixtures():
    start = time.monotonic()
    problems = []
    nets = {name: load_net(f"{name}.net") for name in ("n_empty", "n_sigma", "n_edge")}
    for name, net in nets.items():
        if not validate_network(net).ok:
            problems.append(f"{name} fails the axioms")
    for name in ("n_sigma", "n_edge"):
        if not check_definite(nets[name]).ok or not check_semidefinite(nets[name]).ok:
            problems.append(f"{name} fails a definiteness level")
    levels = {"axioms": validate_network, "semi-definite": check_semidefinite, "definite": check_definite}
    cases = json.loads((DATA / "mutations" / "expected.json").read_text())
    for case in cases:
        net = load_net(f"mutations/{case['file']}")
        report = levels[case["level"]](net)
        golden = (DATA / "mutations" / case["file"].replace(".net", ".golden")).read_text()
        if sorted(report.codes()) != case["codes"] or render_report(report) != golden:
            problems.append(f"{case['file']} gives {sorted(report.codes())}")
    elapsed = time.monotonic() - start
    ok = not problems and len(cases) >= 10 and elapsed < 1.0
    record("1 fixture validation", ok,
           f"3 fixtures, {len(cases)} mutations with golden reports, {elapsed:.2f}s; {problems or 'no problems'}")


def _random_relation_case(rng: random.Random):
    size = rng.randint(2, 6)
    universe = [Element(Sort.SYMBOL, f"u{i}") for i in range(size)]
    pairs = {(rng.choice(universe), rng.choice(universe)) for _ in range(rng.randint(0, 10))}
    images = rng.sample(universe, rng.randint(1, size))
    f = FnGraph(universe, {x: rng.choice(images) for x in universe})
    return Relation(universe, pairs), f


def _perturbations(net, rng: random.Random):
    """Valid networks one gluing pair away from ``net``."""
    out = []
    for pair in net.G.sorted_pairs():
        out.append(net.with_gluing(net.G.pairs - {pair}))
    pool = sorted(net.universe)
    for _ in range(4 if net.G else 0):
        x, y = rng.choice(pool), rng.choice(pool)
        if x.sort == y.sort and x != y:
            out.append(net.with_gluing(net.G.pairs | {(x, y)}))
    return [v for v in out if validate_network(v).ok]


def test_criterion_2_oracle_agreement():
    start = time.monotonic()
    cfg = GenConfig(seed=SEED, max_symbols=2, max_nodes=1, max_facets=2, facet_density=1.0,
                    grammar_rate=0.9, noise_rate=0.3)
    rng = random.Random(SEED)
    nets = glued = disagree = infeasible = nonminimal = case = 0
    fn_cases = fn_disagree = 0
    while nets < 600:
        base = gen_network(cfg, rng_for(cfg, "acceptance-2", case))
        case += 1
        if len(base.universe) > 12:
            continue
        for net in [base, *_perturbations(base, rng)]:
            try:
                slow = minimal_rel_network_oracle(net)
            except OracleInfeasible:
                infeasible += 1
                continue
            nets += 1
            glued += bool(net.G)
            nonminimal += not slow
            disagree += bool(is_minimal_rel_network_fast(net)) != slow
            parts = gluing_parts(net)
            for rel, letter in ((parts.g_h, "A"), (parts.g_k, "C"), (parts.g_e, "F"), (parts.g_e, "S")):
                for r in (rel, inverse(rel)):
                    fn_cases += 1
                    f = net.fn(letter)
                    fn_disagree += is_minimal_rel_function(r, f) != minimal_rel_function_oracle(r, f)
    random_cases = 0
    for _ in range(600):
        r, f = _random_relation_case(rng)
        random_cases += 1
        fn_disagree += is_minimal_rel_function(r, f) != minimal_rel_function_oracle(r, f)
    fn_cases += random_cases
    elapsed = time.monotonic() - start
    ok = nets >= 500 and disagree == 0 and fn_cases >= 500 and fn_disagree == 0 and elapsed < 60
    record("2 oracle agreement", ok,
           f"networks {nets} (glued {glued}, non-minimal {nonminimal}, cap-skipped {infeasible}) "
           f"disagreements {disagree}; relation/function pairs {fn_cases} ({random_cases} random) "
           f"disagreements {fn_disagree}; {elapsed:.1f}s")


def test_criterion_3_definite_implies_semidefinite():
    r = results_for(GenConfig(seed=SEED, cases=1200), ["L18"])["L18"]
    ok = r.cases >= 1000 and r.satisfied >= 100 and r.passed
    record("3 definite implies semi-definite", ok,
           f"{r.cases} networks, {r.satisfied} definite, counterexample: {'none' if r.passed else 'found'}")


def test_criterion_4_composition_and_inverse():
    res = results_for(GenConfig(seed=SEED, cases=350), ["L15", "L16"])
    l15, l16 = res["L15"], res["L16"]
    ok = l15.satisfied >= 300 and l16.satisfied >= 100 and l15.passed and l16.passed
    record("4 composition and inverse", ok,
           f"composites {l15.satisfied} ({'pass' if l15.passed else 'FAIL'}), "
           f"bijections {l16.satisfied} ({'pass' if l16.passed else 'FAIL'})")


HOM_LAWS = ("L19i", "L19ii", "L19iii", "L19iv", "L19v", "L20i", "L20ii", "L20iii", "L20iv",
            "L21i", "L21ii", "L21iii", "L21iv", "L21v", "L21vi", "L22i", "L22ii", "L22iii", "L23")


def _hom_results():
    if not hasattr(_hom_results, "cache"):
        _hom_results.cache = results_for(GenConfig(seed=SEED, cases=600), ["L19-23"])
    return _hom_results.cache


def test_criterion_5_homomorphism_laws():
    res = _hom_results()
    sd_targets = res["L20i"].satisfied
    failed = [law for law in HOM_LAWS[:-1] if not res[law].passed]
    low = [law for law in HOM_LAWS[5:-1] if res[law].rate < 0.3]
    rates = " ".join(f"{law}={res[law].rate:.2f}" for law in HOM_LAWS[:-1])
    ok = sd_targets >= 300 and not failed and not low
    record("5 homomorphism laws", ok,
           f"{res['L20i'].cases} homs, {sd_targets} into semi-definite targets; failed {failed or 'none'}; "
           f"below 30% {low or 'none'}; rates {rates}")


def test_criterion_6_certificate():
    r = _hom_results()["L23"]
    ok = r.satisfied >= 100 and r.passed
    record("6 certificate implies definite", ok,
           f"{r.satisfied} certified homs of {r.cases}, counterexample: {'none' if r.passed else 'found'}")


def test_criterion_7_subnetworks():
    res = results_for(GenConfig(seed=SEED, cases=350), ["L24"])
    ok = all(r.passed and r.satisfied >= 300 for r in res.values())
    detail = " ".join(f"{law}={r.satisfied}/{r.cases}{'' if r.passed else ' FAIL'}" for law, r in res.items())
    record("7 subnetwork extraction", ok, detail)


def test_criterion_8_round_trip():
    problems = []
    fixtures = sorted(DATA.glob("*.net")) + sorted((DATA / "mutations").glob("*.net"))
    for path in fixtures:
        net = parse_network(path.read_text())
        text = serialize_network(net)
        if parse_network(text) != net or serialize_network(parse_network(text)) != text:
            problems.append(path.name)
    cfg = GenConfig(seed=SEED)
    for case in range(500):
        rng = rng_for(cfg, "acceptance-8", case)
        n0 = gen_network(cfg, rng).renamed("n0")
        text = serialize_network(n0)
        if parse_network(text) != n0 or serialize_network(parse_network(text)) != text:
            problems.append(f"network {case}")
        p = gen_hom_onto(cfg, n0, rng)
        p = Homomorphism(p.source.renamed("n1"), n0, p.mapping, name="p")
        bundle = serialize_bundle(p)
        back = parse_document(bundle).homs["p"]
        if back != p or serialize_bundle(back) != bundle:
            problems.append(f"hom {case}")
    record("8 format round-trip", not problems,
           f"{len(fixtures)} fixtures, 500 networks, 500 homs; problems {problems or 'none'}")


def test_criterion_9_suite_time():
    elapsed = time.monotonic() - SESSION_START
    record("9 suite wall-clock", elapsed <= SUITE_BUDGET,
           f"{elapsed:.1f}s for every test collected in this session (budget {SUITE_BUDGET:.0f}s)")
