"""Independent reference implementations used to derive expected values.

Everything here is deliberately naive (lists, dicts, brute force) and
shares no code with the engine it checks.
"""

from collections import deque

from gp2run.graph import Graph
from gp2run.labels import match_label, instantiate


# -- naive slot-store model --------------------------------------------------

class NaiveSlots:
    """Growable array plus an explicit LIFO free stack."""

    def __init__(self):
        self.slots = []      # payload or the HOLE sentinel
        self.free = []
        self.HOLE = object()

    def alloc(self, value):
        if self.free:
            i = self.free.pop()
            self.slots[i] = value
        else:
            i = len(self.slots)
            self.slots.append(value)
        return i

    def drop(self, i):
        assert self.slots[i] is not self.HOLE
        self.slots[i] = self.HOLE
        self.free.append(i)

    @property
    def size(self):
        return len(self.slots) - len(self.free)

    def occupied(self):
        return {i for i, v in enumerate(self.slots) if v is not self.HOLE}


# -- digraph classifiers -----------------------------------------------------

def is_acyclic(n, edges):
    indeg = [0] * n
    adj = [[] for _ in range(n)]
    for u, v in edges:
        if u == v:
            return False
        indeg[v] += 1
        adj[u].append(v)
    q = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while q:
        u = q.popleft()
        seen += 1
        for v in adj[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                q.append(v)
    return seen == n


def is_binary_dag(n, edges):
    outdeg = [0] * n
    for u, _v in edges:
        outdeg[u] += 1
    return all(d <= 2 for d in outdeg) and is_acyclic(n, edges)


def is_rooted_tree(n, edges):
    """Union-find tree check: connected, no undirected cycle, and every
    node has at most one incoming edge (edges point away from the root)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    indeg = [0] * n
    for u, v in edges:
        indeg[v] += 1
        if indeg[v] > 1:
            return False
        a, b = find(u), find(v)
        if a == b:
            return False  # undirected cycle (covers self-loops)
        parent[a] = b
    return len({find(i) for i in range(n)}) == 1


def closure_pairs(n, edges):
    """Warshall reachability closure as a set of ordered pairs.

    Distinct pairs (u, v) with a directed path u -> v, plus any self-loops
    present in the input (the closure program never creates self-loops
    because its matches are injective)."""
    reach = [[False] * n for _ in range(n)]
    for u, v in edges:
        reach[u][v] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    out = {(u, v) for u in range(n) for v in range(n) if u != v and reach[u][v]}
    out |= {(u, v) for u, v in edges if u == v}
    return out


# -- graph construction and inspection ---------------------------------------

def build_graph(n, edges):
    """Host graph with idents 0..n-1 (as strings) and empty labels."""
    g = Graph()
    handles = [g.add_node(ident=str(i)) for i in range(n)]
    for k, (u, v) in enumerate(edges):
        g.add_edge(handles[u], handles[v], ident="e%d" % k)
    return g


def edge_pairs(g):
    """The graph's edge set as (source ident, target ident) pairs."""
    pairs = set()
    for h in g.nodes():
        for eh in g.out_edges(h):
            e = g.edge(eh)
            pairs.add((g.node(e.source).ident, g.node(e.target).ident))
    return pairs


def snapshot(g):
    """Order-exact deep state: node/root/edge-list orders included."""
    nodes = []
    for h in g.nodes():
        n = g.node(h)
        out = [(e, g.edge(e).source, g.edge(e).target,
                g.edge(e).label, g.edge(e).mark) for e in g.out_edges(h)]
        ins = [(e, g.edge(e).source, g.edge(e).target,
                g.edge(e).label, g.edge(e).mark) for e in g.in_edges(h)]
        nodes.append((h, n.ident, n.label, n.mark, n.is_root,
                      n.outdeg, n.indeg, tuple(out), tuple(ins)))
    return (tuple(nodes), tuple(g.roots()), g.node_count, g.edge_count)


# -- random inputs -----------------------------------------------------------

def random_digraph(rng, max_nodes, tree_bias=0.0, binary_bias=0.0):
    """(n, edges) with a mix of shapes.

    With probability tree_bias the base is a random arborescence (then
    sometimes perturbed); with binary_bias a random DAG of outdegree <= 2;
    otherwise independent random edges including occasional self-loops.
    """
    n = rng.randint(1, max_nodes)
    roll = rng.random()
    if roll < tree_bias:
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        if rng.random() < 0.5 and edges:
            k = rng.randrange(len(edges))
            op = rng.randrange(3)
            if op == 0:
                u, v = edges[k]
                edges[k] = (v, u)          # flip one edge
            elif op == 1:
                del edges[k]               # disconnect
            else:
                edges.append((rng.randrange(n), rng.randrange(n)))
    elif roll < tree_bias + binary_bias:
        edges = []
        for u in range(n):
            fan = rng.randint(0, 2)
            later = list(range(u + 1, n))
            rng.shuffle(later)
            edges.extend((u, v) for v in later[:fan])
        if rng.random() < 0.3:
            edges.append((rng.randrange(n), rng.randrange(n)))
    else:
        p = rng.uniform(0.05, 0.5)
        edges = [(u, v) for u in range(n) for v in range(n)
                 if rng.random() < p and (u != v or rng.random() < 0.3)]
    seen = set()
    deduped = []
    for e in edges:
        if e not in seen:
            seen.add(e)
            deduped.append(e)
    return n, deduped


# -- brute-force matcher -----------------------------------------------------

def brute_force_match_exists(g, rule, mode):
    """Enumerate all injective assignments of lhs nodes and edges."""
    reflecting = mode == "reflecting"
    host_nodes = [g.node(h) for h in g.nodes()]
    host_edges = [g.edge(eh) for h in g.nodes() for eh in g.out_edges(h)]
    lhs_nodes = rule.lhs.nodes
    lhs_edges = rule.lhs.edges

    def node_ok(rn, v):
        if rn.rooted and not v.is_root:
            return False
        if not rn.rooted and reflecting and v.is_root:
            return False
        return v.mark == rn.mark

    def eval_cond(c, node_map, env):
        op = c[0]
        if op == "edge":
            s = node_map[c[1]].handle
            t = node_map[c[2]].handle
            return any(e.source == s and e.target == t for e in host_edges)
        if op == "not":
            return not eval_cond(c[1], node_map, env)
        if op == "and":
            return eval_cond(c[1], node_map, env) and eval_cond(c[2], node_map, env)
        if op == "or":
            return eval_cond(c[1], node_map, env) or eval_cond(c[2], node_map, env)
        if op == "eq":
            return instantiate(c[1], env) == instantiate(c[2], env)
        return instantiate(c[1], env) != instantiate(c[2], env)

    def assign_edges(i, node_map, edge_map, env):
        if i == len(lhs_edges):
            for rn in lhs_nodes:
                if rn.id in rule.interface:
                    continue
                img = node_map[rn.id]
                matched = {e.handle for e in edge_map.values()}
                for e in host_edges:
                    if (e.source == img.handle or e.target == img.handle) \
                            and e.handle not in matched:
                        return False  # dangling
            if rule.condition is not None:
                return eval_cond(rule.condition, node_map, env)
            return True
        re_ = lhs_edges[i]
        s = node_map[re_.src].handle
        t = node_map[re_.tgt].handle
        for e in host_edges:
            if e.source != s or e.target != t or e.mark != re_.mark:
                continue
            if any(prev.handle == e.handle for prev in edge_map.values()):
                continue
            env2 = match_label(re_.label, e.label, env)
            if env2 is None:
                continue
            edge_map[re_.id] = e
            if assign_edges(i + 1, node_map, edge_map, env2):
                return True
            del edge_map[re_.id]
        return False

    def assign_nodes(i, node_map, env):
        if i == len(lhs_nodes):
            return assign_edges(0, node_map, {}, env)
        rn = lhs_nodes[i]
        for v in host_nodes:
            if any(prev.handle == v.handle for prev in node_map.values()):
                continue
            if not node_ok(rn, v):
                continue
            env2 = match_label(rn.label, v.label, env)
            if env2 is None:
                continue
            node_map[rn.id] = v
            if assign_nodes(i + 1, node_map, env2):
                return True
            del node_map[rn.id]
        return False

    return assign_nodes(0, {}, {})
