import random
from itertools import permutations
from math import comb

import pytest

from wsat import (
    ConeSpec,
    Hypergraph,
    check_cone,
    complete_graph,
    creates_template_copy,
    edge_universe,
    is_weakly_saturated,
    make_pattern,
    sparseness,
    sparseness_witness,
    template,
    template_cert_to_pattern_cert,
    template_closure,
    template_minus,
    verify_certificate,
    verify_template_certificate,
)

K3 = make_pattern(complete_graph(3, 2))
TRI_PENDANT_GRAPH = Hypergraph(4, 2, [(0, 1), (0, 2), (1, 2), (0, 3)])


def test_sparseness_examples():
    assert sparseness(complete_graph(3, 2)) == 2
    assert sparseness(TRI_PENDANT_GRAPH) == 1
    for r in (2, 3, 4):
        assert sparseness(complete_graph(r, r)) == 1
    assert sparseness(complete_graph(4, 3)) == 3


def test_sparseness_of_cliques():
    for r in (2, 3):
        for t in range(r + 1, 7):
            assert sparseness(complete_graph(t, r)) == r


def test_sparseness_relabeling_invariant():
    rng = random.Random(3)
    for _ in range(10):
        n, r = rng.choice([(4, 2), (5, 2), (5, 3)])
        edges = [e for e in edge_universe(n, r) if rng.random() < 0.5]
        if not edges:
            continue
        g = Hypergraph(n, r, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        relabeled = Hypergraph(n, r, [tuple(sorted(perm[v] for v in e)) for e in edges])
        assert sparseness(g) == sparseness(relabeled)


def test_sparseness_witness_is_in_exactly_one_edge():
    s_set, edge = sparseness_witness(TRI_PENDANT_GRAPH)
    assert s_set == (3,)
    assert edge == (0, 3)
    with pytest.raises(ValueError):
        sparseness(Hypergraph(4, 2))


def test_template_counts():
    assert template_minus(2, 4, 2).edge_count == 5
    assert template_minus(3, 5, 2).edge_count == 7
    for h in range(3, 7):
        assert template_minus(2, h, 2).edge_count == comb(h, 2) - 1

    g, special = template(2, 4, 2)
    assert g == complete_graph(4, 2)
    assert special == (0, 1)
    assert template(3, 5, 2)[0].edge_count == 8
    assert template(3, 4, 2)[0].edge_count == 3


def test_template_count_formula_grid():
    for h in range(2, 9):
        for r in range(2, h + 1):
            for s in range(2, r + 1):
                g, _ = template(r, h, s)
                assert g.edge_count == comb(h, r) - comb(h - s, r - s) + 1


def test_template_param_validation():
    with pytest.raises(ValueError):
        template_minus(3, 2, 2)
    with pytest.raises(ValueError):
        template_minus(2, 4, 3)
    with pytest.raises(ValueError):
        template_minus(2, 4, 1)


def test_creates_template_copy_examples():
    g = Hypergraph(4, 2, set(edge_universe(4, 2)) - {(0, 1)})
    assert creates_template_copy(g, (0, 1), 4, 2) == ((0, 1, 2, 3), (0, 1))

    empty = Hypergraph(5, 2)
    assert creates_template_copy(empty, (0, 1), 4, 2) is None

    tm = template_minus(3, 5, 2)
    assert creates_template_copy(tm, (0, 1, 4), 5, 2) == ((0, 1, 2, 3, 4), (0, 1))

    with pytest.raises(ValueError):
        creates_template_copy(g, (0, 2), 4, 2)  # edge present


@pytest.mark.parametrize("r,h,s,s_prime", [(2, 4, 2, 2), (3, 5, 2, 3),
                                           (3, 6, 2, 2), (3, 6, 3, 3)])
def test_supergraphs_of_larger_core_templates_percolate(r, h, s, s_prime):
    base = template_minus(r, h, s_prime)
    assert template_closure(base, h, s).percolated
    rng = random.Random(5)
    extra = [e for e in edge_universe(h, r) if rng.random() < 0.3]
    assert template_closure(base.with_edges(extra), h, s).percolated


def test_template_closure_on_complete_graph():
    res = template_closure(complete_graph(5, 2), 4, 2)
    assert res.percolated and len(res.certificate) == 0


def test_cone_output_percolates_small():
    spec = ConeSpec(r=2, h=3, s=2, size_a=5, size_b=2)
    _, result, _ = check_cone(spec)
    assert result.percolated


def test_template_certificates_replay():
    g = template_minus(3, 5, 2)
    res = template_closure(g, 5, 2)
    assert res.percolated
    assert verify_template_certificate(g, res.certificate, 5, 2)
    # tampering: grow the core so a required sub-edge goes missing
    steps = list(res.certificate.steps)
    from wsat import SaturationCertificate, TemplateStep
    bad = TemplateStep(steps[0].edge, steps[0].phase_key,
                       steps[0].vertex_set, (2, 3))
    cert = SaturationCertificate("template", g.n, g.r, (bad,) + tuple(steps[1:]))
    check = verify_template_certificate(g, cert, 5, 2)
    assert not check.ok and check.step == 0


def test_conversion_rejects_sparseness_one():
    g = template_minus(2, 4, 2)
    cert = template_closure(g, 4, 2).certificate
    with pytest.raises(ValueError):
        template_cert_to_pattern_cert(cert, make_pattern(TRI_PENDANT_GRAPH))


def test_conversion_empty_certificate():
    res = template_closure(complete_graph(4, 2), 4, 2)
    K4 = make_pattern(complete_graph(4, 2))
    out = template_cert_to_pattern_cert(res.certificate, K4)
    assert out.kind == "pattern" and len(out) == 0


def test_conversion_pipeline_k4():
    # seed: a graph the template engine saturates at (h=4, s=2)
    g = template_minus(2, 4, 2)
    bigger = Hypergraph(6, 2, g.edges).with_edges(
        [(v, 4) for v in range(3)] + [(v, 5) for v in range(3)] + [(4, 5)])
    res = template_closure(bigger, 4, 2)
    assert res.percolated
    K4 = make_pattern(complete_graph(4, 2))
    converted = template_cert_to_pattern_cert(res.certificate, K4)
    assert verify_certificate(bigger, K4, converted)
    assert is_weakly_saturated(bigger, K4)


def test_conversion_with_randomized_completion():
    g = template_minus(3, 5, 2)
    base = Hypergraph(6, 3, g.edges)
    extra = [e for e in edge_universe(6, 3) if 5 in e and len(set(e) & {0, 1, 2}) == 2]
    host = base.with_edges(extra)
    res = template_closure(host, 5, 2)
    assert res.percolated
    # a pattern whose sparseness matches s=2: the (3,5,2) template graph,
    # whose core pair lies only in the special edge
    pat = make_pattern(template(3, 5, 2)[0])
    assert pat.s == 2
    for seed in range(5):
        converted = template_cert_to_pattern_cert(res.certificate, pat,
                                                  rng=random.Random(seed))
        assert verify_certificate(host, pat, converted)


def _random_pattern(rng):
    while True:
        n, r = rng.choice([(4, 2), (5, 2), (4, 3), (5, 3)])
        edges = [e for e in edge_universe(n, r) if rng.random() < 0.6]
        if not edges:
            continue
        g = Hypergraph(n, r, edges)
        # every vertex must appear in some edge for h to be meaningful
        if len({v for e in edges for v in e}) != n:
            continue
        pat = make_pattern(g)
        if pat.s >= 2:
            return pat


def test_template_saturation_implies_weak_saturation_sampled():
    rng = random.Random(23)
    percolating = 0
    for _ in range(40):
        pat = _random_pattern(rng)
        n = pat.h + rng.choice([0, 1])
        base = template_minus(pat.r, pat.h, pat.s)
        g = Hypergraph(n, pat.r, base.edges)
        extra = [e for e in edge_universe(n, pat.r) if rng.random() < 0.5]
        g = g.with_edges(extra)
        res = template_closure(g, pat.h, pat.s)
        if not res.percolated:
            continue
        percolating += 1
        converted = template_cert_to_pattern_cert(res.certificate, pat)
        assert verify_certificate(g, pat, converted)
        assert is_weakly_saturated(g, pat)
    assert percolating >= 20
