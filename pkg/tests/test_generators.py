import pytest

from gp2run.generators import (
    generate, param_for_nodes, GeneratorError, KINDS,
    discrete, btree, grid, path, cycle,
)
from gp2run.parser import serialize_graph

from oracles import edge_pairs, is_binary_dag, is_acyclic


def idents_edges(g):
    return {(g.node(g.edge(e).source).ident, g.node(g.edge(e).target).ident)
            for h in g.nodes() for e in g.out_edges(h)}


def test_discrete():
    g = discrete(1)
    assert serialize_graph(g) == "[ (n0, empty) | ]"
    g = discrete(100)
    assert g.node_count == 100 and g.edge_count == 0
    assert all(g.node(h).label == () and not g.node(h).is_root
               for h in g.nodes())


def test_btree_counts():
    g = btree(12)
    assert g.node_count == 8191
    assert g.edge_count == 8190


def test_btree_structure():
    g = btree(3)
    assert g.node_count == 15
    pairs = idents_edges(g)
    assert ("n0", "n1") in pairs and ("n0", "n2") in pairs
    assert ("n6", "n13") in pairs and ("n6", "n14") in pairs
    n, e = g.node_count, g.edge_count
    assert is_binary_dag(n, [(int(a[1:]), int(b[1:])) for a, b in pairs])
    # every non-root node has exactly one parent
    assert all(g.node(h).indeg == (0 if g.node(h).ident == "n0" else 1)
               for h in g.nodes())


def test_grid_counts_and_degrees():
    g = grid(300)
    assert g.node_count == 90000
    assert g.edge_count == 179400
    g = grid(4)
    for h in g.nodes():
        assert g.node(h).outdeg <= 2 and g.node(h).indeg <= 2
    assert is_acyclic(g.node_count,
                      [(int(a[1:]), int(b[1:])) for a, b in idents_edges(g)])
    assert ("n0", "n1") in idents_edges(g)
    assert ("n0", "n4") in idents_edges(g)


def test_path_and_cycle():
    g = path(5)
    assert idents_edges(g) == {("n%d" % i, "n%d" % (i + 1)) for i in range(4)}
    g = cycle(5)
    assert g.edge_count == 5
    assert ("n4", "n0") in idents_edges(g)
    # strongly connected: follow out-edges n times and return to start
    start = next(iter(g.nodes()))
    h = start
    for _ in range(5):
        (eh,) = g.out_edges(h)
        h = g.edge(eh).target
    assert h == start


def test_generate_dispatch():
    assert generate("path", 3).node_count == 3
    with pytest.raises(GeneratorError):
        generate("torus", 3)


def test_size_validation():
    for kind, bad in (("discrete", 0), ("grid", 0), ("path", 0),
                      ("cycle", -1), ("btree", -1)):
        with pytest.raises(GeneratorError):
            generate(kind, bad)


def test_param_for_nodes_round_trip():
    for kind in KINDS:
        sample = {"discrete": 17, "path": 17, "cycle": 17,
                  "btree": 8191, "grid": 8100}[kind]
        param = param_for_nodes(kind, sample)
        assert generate(kind, param).node_count == sample


def test_param_for_nodes_rejects_impossible_counts():
    with pytest.raises(GeneratorError):
        param_for_nodes("btree", 100)
    with pytest.raises(GeneratorError):
        param_for_nodes("grid", 10)
    with pytest.raises(GeneratorError):
        param_for_nodes("path", 0)
