from gp2run.graph import MARK_NONE
from gp2run.labels import Var, LIST
from gp2run.rules import (
    Rule, RuleGraph, RuleNode, RuleEdge,
    validate_rule, classify_rule, lhs_components, invert_rule, FAST, SLOW,
)

X = Var("x", LIST)
Y = Var("y", LIST)
A = Var("a", LIST)


def node(nid, label=(X,), rooted=False, mark=MARK_NONE):
    return RuleNode(nid, label, mark, rooted)


def edge(eid, src, tgt, label=(A,), mark=MARK_NONE):
    return RuleEdge(eid, src, tgt, label, mark)


def make_delete_rule():
    # one lhs node, empty rhs, empty interface
    return Rule("del", [("x", "list")],
                RuleGraph([node("1")], []), RuleGraph(), set())


def make_walk_rule():
    # rooted two-node rule: root hops against the edge direction
    lhs = RuleGraph([node("1", (X,), rooted=True), node("2", (Y,))],
                    [edge("e1", "2", "1")])
    rhs = RuleGraph([node("1", (X,)), node("2", (Y,), rooted=True)],
                    [edge("e1", "2", "1")])
    return Rule("up", [("a", "list"), ("x", "list"), ("y", "list")],
                lhs, rhs, {"1", "2"})


def make_compose_rule():
    # unrooted three-node path rule with a negative edge condition
    b = Var("b", LIST)
    z = Var("z", LIST)
    lhs = RuleGraph(
        [node("1"), node("2", (Y,)), node("3", (z,))],
        [edge("e1", "1", "2"), edge("e2", "2", "3", (b,))])
    rhs = RuleGraph(
        [node("1"), node("2", (Y,)), node("3", (z,))],
        [edge("e1", "1", "2"), edge("e2", "2", "3", (b,)),
         edge("e3", "1", "3", ())])
    return Rule("link",
                [(n, "list") for n in ("a", "b", "x", "y", "z")],
                lhs, rhs, {"1", "2", "3"},
                condition=("not", ("edge", "1", "3")))


def test_delete_rule_valid():
    assert validate_rule(make_delete_rule()) == []


def test_walk_and_compose_rules_valid():
    assert validate_rule(make_walk_rule()) == []
    assert validate_rule(make_compose_rule()) == []


def test_unbound_rhs_variable():
    r = Rule("bad", [("x", "list"), ("y", "list")],
             RuleGraph([node("1", (X,))], []),
             RuleGraph([node("1", (Y,))], []), {"1"})
    diags = validate_rule(r)
    assert any("unbound variable 'y'" in d for d in diags)


def test_condition_unknown_node():
    r = Rule("bad", [("x", "list")],
             RuleGraph([node("1")], []),
             RuleGraph([node("1")], []), {"1"},
             condition=("edge", "1", "3"))
    diags = validate_rule(r)
    assert any("unknown lhs node '3'" in d for d in diags)


def test_duplicate_ids_and_bad_endpoints():
    r = Rule("bad", [("x", "list"), ("a", "list")],
             RuleGraph([node("1"), node("1")],
                       [edge("e1", "1", "9")]),
             RuleGraph(), set())
    diags = validate_rule(r)
    assert any("duplicate node id" in d for d in diags)
    assert any("unknown endpoint" in d for d in diags)


def test_interface_consistency():
    r = Rule("bad", [("x", "list")],
             RuleGraph([node("1")], []),
             RuleGraph([node("1")], []), set())
    assert any("not in interface" in d for d in validate_rule(r))
    r2 = Rule("bad2", [("x", "list")],
              RuleGraph([node("1")], []),
              RuleGraph(), {"1"})
    assert any("missing from lhs or rhs" in d for d in validate_rule(r2))


def test_two_list_vars_in_one_label():
    r = Rule("bad", [("x", "list"), ("y", "list")],
             RuleGraph([node("1", (X, Y))], []),
             RuleGraph([node("1", (X, Y))], []), {"1"})
    assert any("more than one list variable" in d for d in validate_rule(r))


def test_undeclared_variable_in_label():
    r = Rule("bad", [], RuleGraph([node("1", (X,))], []),
             RuleGraph(), set())
    assert any("undeclared variable 'x'" in d for d in validate_rule(r))


def test_classify_rooted_rule_fast():
    assert classify_rule(make_walk_rule()) == FAST


def test_classify_unrooted_rules_slow():
    assert classify_rule(make_delete_rule()) == SLOW
    assert classify_rule(make_compose_rule()) == SLOW


def test_classify_mixed_components():
    # one rooted component is not enough; every component needs a root
    lhs = RuleGraph([node("1", rooted=True), node("2", (Y,))], [])
    r = Rule("mixed", [("x", "list"), ("y", "list")],
             lhs, RuleGraph([node("1"), node("2", (Y,))], []), {"1", "2"})
    assert classify_rule(r) == SLOW


def test_lhs_components():
    comps = lhs_components(make_compose_rule())
    assert len(comps) == 1
    assert {n.id for n in comps[0]} == {"1", "2", "3"}
    comps = lhs_components(make_delete_rule())
    assert [[n.id for n in c] for c in comps] == [["1"]]


def test_invert_rule_swaps_sides():
    inv = invert_rule(make_walk_rule())
    assert validate_rule(inv) == []
    assert inv.lhs.node_by_id["2"].rooted
    assert not inv.lhs.node_by_id["1"].rooted
    assert inv.interface == {"1", "2"}
