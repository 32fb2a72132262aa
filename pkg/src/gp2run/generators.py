"""Deterministic input-graph generators.

All generated labels are empty and no node is rooted.  Node idents are
n0, n1, ... and edge idents e0, e1, ... in creation order.
"""

from .graph import Graph

KINDS = ("discrete", "btree", "grid", "path", "cycle")


class GeneratorError(ValueError):
    pass


def _new_graph():
    return Graph()


def discrete(n):
    """n isolated nodes."""
    if n < 1:
        raise GeneratorError("discrete size must be positive")
    g = _new_graph()
    for i in range(n):
        g.add_node(ident="n%d" % i)
    return g


def btree(depth):
    """Full binary tree of the given edge-depth: 2**(depth+1) - 1 nodes,
    edges parent -> child in heap order (node i has children 2i+1, 2i+2)."""
    if depth < 0:
        raise GeneratorError("btree depth must be >= 0")
    g = _new_graph()
    n = (1 << (depth + 1)) - 1
    handles = [g.add_node(ident="n%d" % i) for i in range(n)]
    e = 0
    for i in range(n):
        for c in (2 * i + 1, 2 * i + 2):
            if c < n:
                g.add_edge(handles[i], handles[c], ident="e%d" % e)
                e += 1
    return g


def grid(k):
    """k x k grid, edges to the right and down: k*k nodes, 2k(k-1) edges."""
    if k < 1:
        raise GeneratorError("grid side must be positive")
    g = _new_graph()
    handles = [g.add_node(ident="n%d" % i) for i in range(k * k)]
    e = 0
    for r in range(k):
        for c in range(k):
            i = r * k + c
            if c + 1 < k:
                g.add_edge(handles[i], handles[i + 1], ident="e%d" % e)
                e += 1
            if r + 1 < k:
                g.add_edge(handles[i], handles[i + k], ident="e%d" % e)
                e += 1
    return g


def path(n):
    """Linked list n0 -> n1 -> ... -> n(n-1)."""
    if n < 1:
        raise GeneratorError("path size must be positive")
    g = _new_graph()
    handles = [g.add_node(ident="n%d" % i) for i in range(n)]
    for i in range(n - 1):
        g.add_edge(handles[i], handles[i + 1], ident="e%d" % i)
    return g


def cycle(n):
    """Directed cycle on n nodes."""
    if n < 1:
        raise GeneratorError("cycle size must be positive")
    g = path(n)
    nodes = list(g.nodes())
    nodes.reverse()
    g.add_edge(nodes[-1], nodes[0], ident="e%d" % (n - 1))
    return g


_BUILDERS = {
    "discrete": discrete,
    "btree": btree,
    "grid": grid,
    "path": path,
    "cycle": cycle,
}


def generate(kind, size):
    """Build a graph of the given kind; size is the generator parameter
    (node count for discrete/path/cycle, depth for btree, side for grid)."""
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise GeneratorError("unknown generator kind %r" % (kind,)) from None
    return builder(size)


def param_for_nodes(kind, node_count):
    """Generator parameter producing exactly node_count nodes, or raise."""
    if node_count < 1:
        raise GeneratorError("node count must be positive")
    if kind in ("discrete", "path", "cycle"):
        return node_count
    if kind == "btree":
        depth = (node_count + 1).bit_length() - 2
        if (1 << (depth + 1)) - 1 != node_count:
            raise GeneratorError(
                "btree node counts must be 2**(d+1)-1, got %d" % node_count)
        return depth
    if kind == "grid":
        k = round(node_count ** 0.5)
        if k * k != node_count:
            raise GeneratorError(
                "grid node counts must be perfect squares, got %d" % node_count)
        return k
    raise GeneratorError("unknown generator kind %r" % (kind,))
