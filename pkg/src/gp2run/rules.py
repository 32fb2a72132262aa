"""Conditional rule representation and static validation.

A rule has a left-hand graph, a right-hand graph and an interface: the
set of node ids occurring on both sides, which are preserved (and
possibly relabelled, remarked or rerooted) by application.  Non-interface
left nodes are deleted, non-interface right nodes are created.  The
interface is node-only, so every left edge is deleted and every right
edge is created.
"""

from .graph import (
    NODE_MARKS, EDGE_MARKS, MARK_NAMES,
)
from .labels import Var, LIST, VAR_TYPES, label_vars

FAST = "fast"
SLOW = "slow"

# Condition AST: ("edge", i, j) | ("not", c) | ("and", a, b) | ("or", a, b)
#                | ("eq", e1, e2) | ("neq", e1, e2)


class RuleNode:
    __slots__ = ("id", "label", "mark", "rooted")

    def __init__(self, id, label, mark, rooted):
        self.id = id
        self.label = tuple(label)
        self.mark = mark
        self.rooted = rooted


class RuleEdge:
    __slots__ = ("id", "src", "tgt", "label", "mark")

    def __init__(self, id, src, tgt, label, mark):
        self.id = id
        self.src = src
        self.tgt = tgt
        self.label = tuple(label)
        self.mark = mark


class RuleGraph:
    def __init__(self, nodes=(), edges=()):
        self.nodes = list(nodes)
        self.edges = list(edges)
        self.node_by_id = {n.id: n for n in self.nodes}

    def add_node(self, node):
        self.nodes.append(node)
        self.node_by_id[node.id] = node

    def add_edge(self, edge):
        self.edges.append(edge)


class Rule:
    def __init__(self, name, variables, lhs, rhs, interface, condition=None):
        self.name = name
        self.variables = list(variables)  # (name, vtype) pairs
        self.lhs = lhs
        self.rhs = rhs
        self.interface = set(interface)
        self.condition = condition


def _condition_ids(cond, acc):
    op = cond[0]
    if op == "edge":
        acc.add(cond[1])
        acc.add(cond[2])
    elif op == "not":
        _condition_ids(cond[1], acc)
    elif op in ("and", "or"):
        _condition_ids(cond[1], acc)
        _condition_ids(cond[2], acc)


def _condition_vars(cond, acc):
    op = cond[0]
    if op == "not":
        _condition_vars(cond[1], acc)
    elif op in ("and", "or"):
        _condition_vars(cond[1], acc)
        _condition_vars(cond[2], acc)
    elif op in ("eq", "neq"):
        for v in label_vars(cond[1]):
            acc.add(v.name)
        for v in label_vars(cond[2]):
            acc.add(v.name)


def validate_rule(rule):
    """Static checks; returns a list of diagnostic strings (empty = valid)."""
    diags = []
    name = rule.name

    def bad(msg):
        diags.append("%s: %s" % (name, msg))

    declared = {}
    for vname, vtype in rule.variables:
        if vname in declared:
            bad("variable %r declared twice" % vname)
        if vtype not in VAR_TYPES:
            bad("variable %r has unknown type %r" % (vname, vtype))
        declared[vname] = vtype

    for side_name, side in (("lhs", rule.lhs), ("rhs", rule.rhs)):
        ids = set()
        for n in side.nodes:
            if n.id in ids:
                bad("duplicate node id %r in %s" % (n.id, side_name))
            ids.add(n.id)
            if n.mark not in NODE_MARKS:
                bad("node %r in %s: invalid mark" % (n.id, side_name))
            _check_label(n.label, declared, side_name, "node %r" % (n.id,), bad)
        eids = set()
        for e in side.edges:
            if e.id in eids:
                bad("duplicate edge id %r in %s" % (e.id, side_name))
            eids.add(e.id)
            if e.src not in ids or e.tgt not in ids:
                bad("edge %r in %s has unknown endpoint" % (e.id, side_name))
            if e.mark not in EDGE_MARKS:
                bad("edge %r in %s: invalid mark %s"
                    % (e.id, side_name, MARK_NAMES.get(e.mark, e.mark)))
            _check_label(e.label, declared, side_name, "edge %r" % (e.id,), bad)

    lhs_ids = {n.id for n in rule.lhs.nodes}
    rhs_ids = {n.id for n in rule.rhs.nodes}
    for i in rule.interface:
        if i not in lhs_ids or i not in rhs_ids:
            bad("interface id %r missing from lhs or rhs" % (i,))
    for i in lhs_ids & rhs_ids:
        if i not in rule.interface:
            bad("node id %r occurs on both sides but not in interface" % (i,))

    lhs_vars = set()
    for n in rule.lhs.nodes:
        for v in label_vars(n.label):
            lhs_vars.add(v.name)
    for e in rule.lhs.edges:
        for v in label_vars(e.label):
            lhs_vars.add(v.name)

    used_right = set()
    for n in rule.rhs.nodes:
        for v in label_vars(n.label):
            used_right.add(v.name)
    for e in rule.rhs.edges:
        for v in label_vars(e.label):
            used_right.add(v.name)
    if rule.condition is not None:
        _condition_vars(rule.condition, used_right)
    for vname in sorted(used_right - lhs_vars):
        bad("unbound variable %r (not used in lhs)" % vname)

    if rule.condition is not None:
        cond_ids = set()
        _condition_ids(rule.condition, cond_ids)
        for i in sorted(cond_ids - lhs_ids, key=str):
            bad("condition references unknown lhs node %r" % (i,))

    return diags


def _check_label(label, declared, side_name, what, bad):
    list_vars = 0
    for item in label:
        if type(item) is Var:
            if item.name not in declared:
                bad("%s in %s: undeclared variable %r"
                    % (what, side_name, item.name))
            elif declared[item.name] != item.vtype:
                bad("%s in %s: variable %r used at type %s, declared %s"
                    % (what, side_name, item.name, item.vtype,
                       declared[item.name]))
            if item.vtype == LIST:
                list_vars += 1
    if list_vars > 1:
        bad("%s in %s: more than one list variable in label" % (what, side_name))


def lhs_components(rule):
    """Connected components of the lhs (ignoring edge direction)."""
    parent = {n.id: n.id for n in rule.lhs.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in rule.lhs.edges:
        a, b = find(e.src), find(e.tgt)
        if a != b:
            parent[a] = b
    comps = {}
    for n in rule.lhs.nodes:
        comps.setdefault(find(n.id), []).append(n)
    return list(comps.values())


def classify_rule(rule):
    """A rule is fast iff every lhs component contains a rooted node."""
    for comp in lhs_components(rule):
        if not any(n.rooted for n in comp):
            return SLOW
    return FAST


def invert_rule(rule):
    """Syntactic inverse: swap lhs and rhs, keep interface and variables.

    Only meaningful for rules without a condition; used for invertibility
    checks in root-reflecting mode.
    """
    return Rule(rule.name + "_inv", rule.variables, rule.rhs, rule.lhs,
                rule.interface, None)
