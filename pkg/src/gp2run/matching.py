"""Search-plan matching and DPO rule application.

A plan covers every lhs node and edge exactly once: each connected
component starts at a rooted node when one exists (host candidates then
come from the root list, not a full scan) and grows outward along edges
of known orientation, so only the out-list of a matched source or the
in-list of a matched target is ever traversed.  The dangling check and
the rule condition run last, on a structurally complete candidate match.

Two root-matching modes exist: in both, rooted lhs nodes only match
rooted host nodes; reflecting mode additionally forbids matching a
non-rooted lhs node against a rooted host node.

Plans are executed by per-mode runner objects that keep reusable scratch
state, so a failed or discarded attempt allocates next to nothing; the
interpreter drives runners directly in its hot loop.
"""

from .labels import match_into, instantiate
from .rules import lhs_components

PRESERVING = "preserving"
REFLECTING = "reflecting"

MODES = (PRESERVING, REFLECTING)

NO_MATCH = None


class SearchPlan:
    __slots__ = ("rule", "instructions", "deleted", "_runners")

    def __init__(self, rule, instructions, deleted):
        self.rule = rule
        self.instructions = instructions
        self.deleted = deleted  # (lhs node id, incident lhs edge count) pairs
        self._runners = {}

    def runner(self, mode):
        try:
            return self._runners[mode]
        except KeyError:
            r = self._runners[mode] = _PlanRunner(self, mode)
            return r

    def describe(self):
        """Human-readable instruction list (debug/test aid)."""
        out = []
        for op in self.instructions:
            tag = op[0]
            if tag in ("root", "node"):
                out.append("%s %s" % ("MatchRoot" if tag == "root"
                                      else "MatchAnyNode", op[1].id))
            elif tag == "extend_out":
                out.append("ExtendOut %s -> %s" % (op[1].src, op[1].tgt))
            elif tag == "extend_in":
                out.append("ExtendIn %s -> %s" % (op[1].src, op[1].tgt))
            elif tag == "edge_between":
                out.append("MatchEdgeBetween %s -> %s" % (op[1].src, op[1].tgt))
            elif tag == "condition":
                out.append("CheckCondition")
            else:
                out.append("CheckDangling")
        return out


class Match:
    __slots__ = ("node_map", "edge_map", "env", "_nodes", "_edges")

    def __init__(self, node_map, edge_map, env, nodes, edges):
        self.node_map = node_map  # lhs node id -> NodeHandle
        self.edge_map = edge_map  # lhs edge id -> EdgeHandle
        self.env = env
        self._nodes = nodes      # lhs node id -> Node payload
        self._edges = edges


def build_search_plan(rule, mode=REFLECTING):
    instructions = []
    matched = set()
    done_edges = set()
    edges = rule.lhs.edges
    for comp in lhs_components(rule):
        start = next((n for n in comp if n.rooted), comp[0])
        instructions.append(("root" if start.rooted else "node", start))
        matched.add(start.id)
        progress = True
        while progress:
            progress = False
            for e in edges:
                if e.id in done_edges:
                    continue
                s_in = e.src in matched
                t_in = e.tgt in matched
                if s_in and t_in:
                    instructions.append(("edge_between", e))
                elif s_in:
                    instructions.append(("extend_out", e,
                                         rule.lhs.node_by_id[e.tgt]))
                    matched.add(e.tgt)
                elif t_in:
                    instructions.append(("extend_in", e,
                                         rule.lhs.node_by_id[e.src]))
                    matched.add(e.src)
                else:
                    continue
                done_edges.add(e.id)
                progress = True
    if rule.condition is not None:
        instructions.append(("condition",))
    deleted = []
    for n in rule.lhs.nodes:
        if n.id not in rule.interface:
            cnt = 0
            for e in edges:
                if e.src == n.id:
                    cnt += 1
                if e.tgt == n.id:
                    cnt += 1
            deleted.append((n.id, cnt))
    if deleted:
        instructions.append(("dangling",))
    return SearchPlan(rule, instructions, deleted)


class _PlanRunner:
    """Executes one plan in one mode, with reusable scratch state.

    After a successful find(), node_img/edge_img/env hold the match until
    the next find() on this runner.
    """

    __slots__ = ("plan", "rule", "reflecting", "ins", "nins",
                 "node_img", "edge_img", "used_n", "used_e", "env", "g")

    def __init__(self, plan, mode):
        self.plan = plan
        self.rule = plan.rule
        self.reflecting = mode == REFLECTING
        self.ins = plan.instructions
        self.nins = len(plan.instructions)
        self.node_img = {}
        self.edge_img = {}
        self.used_n = set()
        self.used_e = set()
        self.env = {}
        self.g = None

    def find(self, g):
        self.g = g
        if self.node_img:
            self.node_img.clear()
            self.edge_img.clear()
            self.used_n.clear()
            self.used_e.clear()
            self.env.clear()
        return self._step(0)

    def _try_node(self, rn, v):
        # Returns the env-trail on success (possibly empty), else None.
        if v.handle in self.used_n:
            return None
        if rn.rooted:
            if not v.is_root:
                return None
        elif self.reflecting and v.is_root:
            return None
        if v.mark != rn.mark:
            return None
        env = self.env
        trail = []
        if match_into(rn.label, v.label, env, trail):
            return trail
        for k in trail:
            del env[k]
        return None

    def _step(self, i):
        if i == self.nins:
            return True
        g = self.g
        op = self.ins[i]
        tag = op[0]
        if tag == "node" or tag == "root":
            rn = op[1]
            node_img = self.node_img
            used_n = self.used_n
            env = self.env
            any_node = tag == "node"
            v = g.node_head if any_node else g.root_head
            while v is not None:
                g.match_steps += 1
                trail = self._try_node(rn, v)
                if trail is not None:
                    node_img[rn.id] = v
                    used_n.add(v.handle)
                    if self._step(i + 1):
                        return True
                    del node_img[rn.id]
                    used_n.discard(v.handle)
                    for k in trail:
                        del env[k]
                v = v.next if any_node else v.root_next
            return False
        if tag == "extend_out" or tag == "extend_in":
            re_ = op[1]
            rn = op[2]
            node_img = self.node_img
            edge_img = self.edge_img
            used_n = self.used_n
            used_e = self.used_e
            env = self.env
            nodes_arr = g._nodes
            out = tag == "extend_out"
            u = node_img[re_.src if out else re_.tgt]
            e = u.out_head if out else u.in_head
            while e is not None:
                g.match_steps += 1
                if e.handle not in used_e and e.mark == re_.mark:
                    etrail = []
                    if match_into(re_.label, e.label, env, etrail):
                        v = nodes_arr.get(e.target if out else e.source)
                        ntrail = self._try_node(rn, v)
                        if ntrail is not None:
                            edge_img[re_.id] = e
                            used_e.add(e.handle)
                            node_img[rn.id] = v
                            used_n.add(v.handle)
                            if self._step(i + 1):
                                return True
                            del edge_img[re_.id]
                            used_e.discard(e.handle)
                            del node_img[rn.id]
                            used_n.discard(v.handle)
                            for k in ntrail:
                                del env[k]
                    for k in etrail:
                        del env[k]
                e = e.out_next if out else e.in_next
            return False
        if tag == "edge_between":
            re_ = op[1]
            edge_img = self.edge_img
            used_e = self.used_e
            env = self.env
            u = self.node_img[re_.src]
            th = self.node_img[re_.tgt].handle
            e = u.out_head
            while e is not None:
                g.match_steps += 1
                if (e.target == th and e.handle not in used_e
                        and e.mark == re_.mark):
                    etrail = []
                    if match_into(re_.label, e.label, env, etrail):
                        edge_img[re_.id] = e
                        used_e.add(e.handle)
                        if self._step(i + 1):
                            return True
                        del edge_img[re_.id]
                        used_e.discard(e.handle)
                    for k in etrail:
                        del env[k]
                e = e.out_next
            return False
        if tag == "condition":
            return self._eval_cond(self.rule.condition) and self._step(i + 1)
        # dangling: every edge at a to-be-deleted image must be matched
        for nid, cnt in self.plan.deleted:
            v = self.node_img[nid]
            if v.indeg + v.outdeg != cnt:
                return False
        return self._step(i + 1)

    def _eval_cond(self, c):
        op = c[0]
        if op == "edge":
            g = self.g
            u = self.node_img[c[1]]
            w = self.node_img[c[2]]
            if u.outdeg <= w.indeg:
                e = u.out_head
                th = w.handle
                while e is not None:
                    g.match_steps += 1
                    if e.target == th:
                        return True
                    e = e.out_next
            else:
                e = w.in_head
                sh = u.handle
                while e is not None:
                    g.match_steps += 1
                    if e.source == sh:
                        return True
                    e = e.in_next
            return False
        if op == "not":
            return not self._eval_cond(c[1])
        if op == "and":
            return self._eval_cond(c[1]) and self._eval_cond(c[2])
        if op == "or":
            return self._eval_cond(c[1]) or self._eval_cond(c[2])
        if op == "eq":
            return instantiate(c[1], self.env) == instantiate(c[2], self.env)
        if op == "neq":
            return instantiate(c[1], self.env) != instantiate(c[2], self.env)
        raise ValueError("bad condition op %r" % (op,))

    def to_match(self):
        return Match(
            {k: v.handle for k, v in self.node_img.items()},
            {k: e.handle for k, e in self.edge_img.items()},
            dict(self.env),
            dict(self.node_img),
            dict(self.edge_img),
        )


def find_match(g, rule, plan=None, mode=REFLECTING):
    """First match in deterministic order, or NO_MATCH.

    Candidate order is fixed: root-list order for rooted anchors,
    node-list order for unrooted anchors, edge-list order for extensions.
    """
    if plan is None:
        plan = build_search_plan(rule, mode)
    runner = plan.runner(mode)
    if runner.find(g):
        return runner.to_match()
    return NO_MATCH


def _apply_images(g, rule, node_img, edge_img, env):
    """Apply a rule given its lhs images (payload objects) and binding."""
    interface = rule.interface
    for le in rule.lhs.edges:
        g._delete_edge_obj(edge_img[le.id])
    for ln in rule.lhs.nodes:
        if ln.id not in interface:
            g._delete_node_obj(node_img[ln.id])
    created = None
    for rn in rule.rhs.nodes:
        if rn.id in interface:
            h = node_img[rn.id].handle
            g.relabel_node(h, instantiate(rn.label, env))
            g.set_node_mark(h, rn.mark)
            g.set_root(h, rn.rooted)
        else:
            if created is None:
                created = {}
            created[rn.id] = g.add_node(
                instantiate(rn.label, env), rn.mark, rn.rooted)
    for re_ in rule.rhs.edges:
        if created is not None and re_.src in created:
            src = created[re_.src]
        else:
            src = node_img[re_.src].handle
        if created is not None and re_.tgt in created:
            tgt = created[re_.tgt]
        else:
            tgt = node_img[re_.tgt].handle
        g.add_edge(src, tgt, instantiate(re_.label, env), re_.mark)
    return created or {}


def apply(g, rule, match, log=None):
    """DPO application with relabelling at a valid match.

    Deletes matched lhs edges, then matched non-interface nodes, adjusts
    interface nodes to their rhs label/mark/rootedness, then creates rhs
    nodes and edges.  All mutations go through the graph and are recorded
    in its attached undo log when a frame is open.
    """
    if log is not None:
        g.log = log
    return _apply_images(g, rule, match._nodes, match._edges, match.env)
