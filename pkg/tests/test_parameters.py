import itertools
import json
import random

import networkx as nx
import pytest
from hypothesis import given

import oracles
from conftest import bipartitions, graphs
from hspeed.families import complete, cycle, edgeless, generate, path
from hspeed.graph import Graph, GraphError, from_edges
from hspeed.matching import bipartite_maximum_matching, maximum_matching
from hspeed.parameters import (
    CLOSED,
    OPEN,
    ShatterWitness,
    c_matching_number,
    clique_number,
    co_matching_number,
    complex_degree,
    complex_number,
    independence_number,
    is_shattered,
    matching_number,
    max_clique,
    max_codegree,
    max_degree,
    max_independent_set,
    neighbourhood_diversity,
    parameter_report,
    prune_closed_witnesses,
    shatter_witness,
    similarity_difference,
    similarity_partition,
    vc_closed,
    vc_open,
)


# --- matching ---------------------------------------------------------------

@given(graphs(max_n=9))
def test_maximum_matching_is_maximum(g):
    m = maximum_matching(g)
    used = [v for e in m for v in e]
    assert len(used) == len(set(used))
    assert all(g.has_edge(u, v) and u < v for u, v in m)
    assert len(m) == oracles.matching_size(g.n, oracles.edge_set(g))


def test_maximum_matching_against_networkx_on_larger_graphs():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(10, 40)
        p = rng.random() * 0.3
        g = from_edges(n, [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p])
        ref = nx.max_weight_matching(oracles.to_nx(g), maxcardinality=True)
        assert matching_number(g) == len(ref)


def test_blossom_needed():
    # odd cycle with pendant paths: greedy from vertex 0 gets stuck without contraction
    g = from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 5), (3, 6)])
    assert matching_number(g) == 3


@given(bipartitions())
def test_bipartite_matching_is_maximum(b):
    m = bipartite_maximum_matching(b.graph, list(b.part_a), list(b.part_b))
    assert all(x in b.part_a and y in b.part_b and b.graph.has_edge(x, y) for x, y in m)
    assert [x for x, _ in m] == sorted(x for x, _ in m)
    assert len({y for _, y in m}) == len(m)
    assert len(m) == matching_number(b.graph)


# --- clique / independence / complex number -----------------------------------

@given(graphs(max_n=9))
def test_clique_and_independence_numbers(g):
    es = oracles.edge_set(g)
    assert clique_number(g) == oracles.max_clique_size(g.n, es)
    assert independence_number(g) == oracles.max_independent_size(g.n, es)
    c = max_clique(g)
    assert g.is_clique(c)
    assert g.is_independent(max_independent_set(g))
    assert complex_number(g) == min(clique_number(g), independence_number(g))


def test_max_clique_is_lexicographically_least():
    c5 = cycle(5)
    assert max_clique(c5) == [0, 1]
    assert max_independent_set(c5) == [0, 2]


def test_complex_number_examples():
    assert complex_number(generate("s", 4)) == 4
    assert complex_number(complete(5)) == 1
    assert complex_number(path(4)) == 2


# --- degrees ------------------------------------------------------------------

@given(graphs(max_n=9))
def test_degree_parameters(g):
    degs = [sum(g.has_edge(v, u) for u in range(g.n)) for v in range(g.n)]
    assert max_degree(g) == max(degs, default=0)
    assert max_codegree(g) == max((g.n - 1 - d for d in degs), default=0)
    assert complex_degree(g) == max((min(d, g.n - 1 - d) for d in degs), default=0)


def test_complex_degree_examples():
    assert complex_degree(generate("q", 3)) == 3  # centre: degree 3, codegree 3
    assert complex_degree(generate("r", 6)) == 1
    assert complex_degree(Graph(1)) == 0
    assert complex_degree(cycle(6)) == 2


def test_c_matching_examples():
    assert c_matching_number(generate("m", 3)) == 3
    assert co_matching_number(complete(4)) == 0
    assert c_matching_number(complete(4)) == 0
    assert c_matching_number(path(4)) == 2  # P4 is self-complementary


# --- similarity -----------------------------------------------------------------

@given(graphs(max_n=9))
def test_similarity_partition_matches_brute_force(g):
    es = oracles.edge_set(g)
    part = similarity_partition(g)
    assert [list(c) for c in part.classes] == oracles.similarity_classes(g.n, es)
    assert neighbourhood_diversity(g) == len(part.classes)
    sizes = part.sizes
    assert similarity_difference(g) == (max(sizes) - min(sizes) if sizes else 0)


def test_similarity_examples():
    assert neighbourhood_diversity(complete(5)) == 1
    assert neighbourhood_diversity(edgeless(5)) == 1
    assert neighbourhood_diversity(generate("s", 3)) == 2
    assert neighbourhood_diversity(generate("m", 3)) == 3  # matched ends are similar
    assert neighbourhood_diversity(generate("z", 3)) == 6
    assert similarity_difference(generate("s", 3)) == 0
    assert similarity_difference(generate("r", 5)) == 3
    assert similarity_difference(Graph(0)) == 0


# --- VC-dimension ----------------------------------------------------------------

@given(graphs(max_n=8))
def test_vc_dimensions_match_brute_force(g):
    es = oracles.edge_set(g)
    kc, wc = vc_closed(g)
    ko, wo = vc_open(g)
    assert kc == oracles.vc_dimension(g.n, es, closed=True)
    assert ko == oracles.vc_dimension(g.n, es, closed=False)
    assert wc.verify(g) and wo.verify(g)
    assert len(wc.shattered) == kc and len(wo.shattered) == ko


def test_vc_examples():
    assert vc_open(generate("w", 3))[0] == 3
    assert vc_open(Graph(0))[0] == 0
    assert vc_closed(Graph(0))[0] == 0
    assert vc_closed(complete(4))[0] == 0
    assert vc_open(edgeless(4))[0] == 0
    assert vc_open(path(3))[0] == 1
    with pytest.raises(GraphError):
        vc_open(Graph(21))


def test_shatter_witness_and_modes():
    w2 = generate("w", 2)
    wit = shatter_witness(w2, [0, 1], OPEN)
    assert wit is not None and wit.verify(w2)
    assert wit.witnesses == {(): 2, (0,): 3, (1,): 4, (0, 1): 5}
    assert is_shattered(w2, [0, 1], OPEN)
    assert not is_shattered(w2, [0, 2], OPEN)
    bogus = ShatterWitness((0, 1), OPEN, {(): 2, (0,): 3, (1,): 4, (0, 1): 4})
    assert not bogus.verify(w2)
    with pytest.raises(ValueError):
        shatter_witness(w2, [0], "sideways")


@given(graphs(max_n=8))
def test_prune_closed_witnesses_yields_open_shattered_set(g):
    _, wit = vc_closed(g)
    pruned = prune_closed_witnesses(g, wit.shattered)
    assert set(pruned) <= set(wit.shattered)
    if g.n:
        assert is_shattered(g, pruned, OPEN)
        assert is_shattered(g, pruned, CLOSED)


def test_prune_rejects_unshattered_input():
    with pytest.raises(GraphError):
        prune_closed_witnesses(complete(3), [0])


def test_parameter_report_fields():
    rep = parameter_report(generate("z", 3))
    assert rep.alpha == 3 and rep.omega == 2 and rep.nd == 6
    assert rep.matching == 3 and rep.vc_open is not None
    assert set(json.loads(rep.to_json())) == {
        "alpha", "omega", "complex_number", "max_degree", "max_codegree", "complex_degree",
        "matching", "co_matching", "c_matching", "nd", "largest_class", "smallest_class",
        "similarity_difference", "vc_closed", "vc_open"}
    big = parameter_report(edgeless(21))
    assert big.vc_open is None and big.vc_closed is None

