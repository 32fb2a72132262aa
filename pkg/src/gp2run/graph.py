"""Mutable host-graph model with stable handles.

Nodes and edges are stored in BigArrays, so handles (slot indices) stay
valid for an element's whole lifetime.  Live nodes form an intrusive
doubly-linked list, as do root nodes and each node's outgoing and
incoming edge lists, so insertion and removal are O(1) and iteration
never touches dead elements.

Deletion is deferred while the undo log still references an element:
the slot is only returned to the free list once the element is neither
in the graph nor referenced by any log entry.
"""

from .bigarray import BigArray, BigArrayError
from .labels import EMPTY

# Marks. GREY applies only to nodes, DASHED only to edges.
MARK_NONE = 0
MARK_RED = 1
MARK_GREEN = 2
MARK_BLUE = 3
MARK_GREY = 4
MARK_DASHED = 5

NODE_MARKS = (MARK_NONE, MARK_RED, MARK_GREEN, MARK_BLUE, MARK_GREY)
EDGE_MARKS = (MARK_NONE, MARK_RED, MARK_GREEN, MARK_BLUE, MARK_DASHED)

MARK_NAMES = {
    MARK_NONE: "none",
    MARK_RED: "red",
    MARK_GREEN: "green",
    MARK_BLUE: "blue",
    MARK_GREY: "grey",
    MARK_DASHED: "dashed",
}
MARK_VALUES = {name: mark for mark, name in MARK_NAMES.items()}

# Undo log entry kinds (interpreted by UndoLog.rollback_frame).
LOG_ADD_NODE = 0
LOG_ADD_EDGE = 1
LOG_DEL_NODE = 2
LOG_DEL_EDGE = 3
LOG_RELABEL_NODE = 4
LOG_REMARK_NODE = 5
LOG_REMARK_EDGE = 6
LOG_SET_ROOT = 7


class GraphError(Exception):
    """Contract violation on a graph mutation or access."""


class Node:
    __slots__ = (
        "handle", "label", "mark", "is_root", "ident",
        "outdeg", "indeg", "out_head", "in_head",
        "prev", "next", "root_prev", "root_next",
        "in_graph", "log_refs",
    )

    def __init__(self, label, mark, root, ident):
        self.handle = -1
        self.label = label
        self.mark = mark
        self.is_root = root
        self.ident = ident
        self.outdeg = 0
        self.indeg = 0
        self.out_head = None
        self.in_head = None
        self.prev = None
        self.next = None
        self.root_prev = None
        self.root_next = None
        self.in_graph = True
        self.log_refs = 0


class Edge:
    __slots__ = (
        "handle", "label", "mark", "source", "target", "ident",
        "out_prev", "out_next", "in_prev", "in_next",
        "in_graph", "log_refs",
    )

    def __init__(self, label, mark, source, target, ident):
        self.handle = -1
        self.label = label
        self.mark = mark
        self.source = source
        self.target = target
        self.ident = ident
        self.out_prev = None
        self.out_next = None
        self.in_prev = None
        self.in_next = None
        self.in_graph = True
        self.log_refs = 0


class Graph:
    __slots__ = (
        "_nodes", "_edges", "node_head", "root_head",
        "node_count", "edge_count", "log",
        "match_steps", "mutations",
    )

    def __init__(self):
        self._nodes = BigArray()
        self._edges = BigArray()
        self.node_head = None
        self.root_head = None
        self.node_count = 0
        self.edge_count = 0
        self.log = None
        self.match_steps = 0
        self.mutations = 0

    @property
    def steps(self):
        """Instrumented step count: matching steps plus mutations."""
        return self.match_steps + self.mutations

    # -- accessors ---------------------------------------------------------

    def node(self, handle):
        try:
            n = self._nodes.get(handle)
        except BigArrayError:
            raise GraphError("node %d is not in the graph" % handle) from None
        if not n.in_graph:
            raise GraphError("node %d is not in the graph" % handle)
        return n

    def edge(self, handle):
        try:
            e = self._edges.get(handle)
        except BigArrayError:
            raise GraphError("edge %d is not in the graph" % handle) from None
        if not e.in_graph:
            raise GraphError("edge %d is not in the graph" % handle)
        return e

    def nodes(self):
        """Handles of live nodes, newest first."""
        n = self.node_head
        while n is not None:
            yield n.handle
            n = n.next

    def roots(self):
        """Handles of live root nodes, newest first."""
        n = self.root_head
        while n is not None:
            yield n.handle
            n = n.root_next

    def out_edges(self, handle):
        e = self.node(handle).out_head
        while e is not None:
            yield e.handle
            e = e.out_next

    def in_edges(self, handle):
        e = self.node(handle).in_head
        while e is not None:
            yield e.handle
            e = e.in_next

    # -- mutation ----------------------------------------------------------

    def add_node(self, label=EMPTY, mark=MARK_NONE, root=False, ident=None):
        if mark not in NODE_MARKS:
            raise GraphError("invalid node mark %r" % (mark,))
        n = Node(label, mark, root, ident)
        n.handle = self._nodes.alloc(n)
        self._link_node(n)
        if root:
            self._link_root(n)
        self.node_count += 1
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            log.entries.append((LOG_ADD_NODE, n, None))
        return n.handle

    def delete_node(self, handle):
        self._delete_node_obj(self.node(handle))

    def _delete_node_obj(self, n):
        if n.outdeg or n.indeg:
            raise GraphError(
                "deleting node %d with incident edges" % n.handle)
        self._unlink_node(n)
        if n.is_root:
            self._unlink_root(n)
        n.in_graph = False
        self.node_count -= 1
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            n.log_refs += 1
            log.entries.append((LOG_DEL_NODE, n, None))
        elif n.log_refs == 0:
            self._nodes.free(n.handle)

    def add_edge(self, src, tgt, label=EMPTY, mark=MARK_NONE, ident=None):
        if mark not in EDGE_MARKS:
            raise GraphError("invalid edge mark %r" % (mark,))
        s = self.node(src)
        t = self.node(tgt)
        e = Edge(label, mark, src, tgt, ident)
        e.handle = self._edges.alloc(e)
        self._link_out(s, e)
        self._link_in(t, e)
        self.edge_count += 1
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            log.entries.append((LOG_ADD_EDGE, e, None))
        return e.handle

    def delete_edge(self, handle):
        self._delete_edge_obj(self.edge(handle))

    def _delete_edge_obj(self, e):
        self._unlink_out(self._nodes.get(e.source), e)
        self._unlink_in(self._nodes.get(e.target), e)
        e.in_graph = False
        self.edge_count -= 1
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            e.log_refs += 1
            log.entries.append((LOG_DEL_EDGE, e, None))
        elif e.log_refs == 0:
            self._edges.free(e.handle)

    def relabel_node(self, handle, label):
        n = self.node(handle)
        old = n.label
        if old == label:
            return old
        n.label = label
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            log.entries.append((LOG_RELABEL_NODE, n, old))
        return old

    def set_node_mark(self, handle, mark):
        if mark not in NODE_MARKS:
            raise GraphError("invalid node mark %r" % (mark,))
        n = self.node(handle)
        old = n.mark
        if old == mark:
            return old
        n.mark = mark
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            log.entries.append((LOG_REMARK_NODE, n, old))
        return old

    def set_edge_mark(self, handle, mark):
        if mark not in EDGE_MARKS:
            raise GraphError("invalid edge mark %r" % (mark,))
        e = self.edge(handle)
        old = e.mark
        if old == mark:
            return old
        e.mark = mark
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            log.entries.append((LOG_REMARK_EDGE, e, old))
        return old

    def set_root(self, handle, root):
        n = self.node(handle)
        old = n.is_root
        if old == root:
            return old
        n.is_root = root
        if root:
            self._link_root(n)
        else:
            self._unlink_root(n)
        self.mutations += 1
        log = self.log
        if log is not None and log.frames:
            log.entries.append((LOG_SET_ROOT, n, old))
        return old

    # -- intrusive list plumbing ------------------------------------------
    # Unlinking keeps the removed element's own link fields intact: the
    # undo log resplices deleted elements back at their old position, which
    # is sound because rollback replays mutations in exact reverse order.

    def _link_node(self, n):
        head = self.node_head
        n.prev = None
        n.next = head
        if head is not None:
            head.prev = n
        self.node_head = n

    def _unlink_node(self, n):
        if n.prev is None:
            self.node_head = n.next
        else:
            n.prev.next = n.next
        if n.next is not None:
            n.next.prev = n.prev

    def _relink_node(self, n):
        if n.prev is None:
            if n.next is not self.node_head:
                raise GraphError("corrupt node list resplice")
            self.node_head = n
        else:
            n.prev.next = n
        if n.next is not None:
            n.next.prev = n

    def _link_root(self, n):
        head = self.root_head
        n.root_prev = None
        n.root_next = head
        if head is not None:
            head.root_prev = n
        self.root_head = n

    def _unlink_root(self, n):
        if n.root_prev is None:
            self.root_head = n.root_next
        else:
            n.root_prev.root_next = n.root_next
        if n.root_next is not None:
            n.root_next.root_prev = n.root_prev

    def _relink_root(self, n):
        if n.root_prev is None:
            self.root_head = n
        else:
            n.root_prev.root_next = n
        if n.root_next is not None:
            n.root_next.root_prev = n

    def _link_out(self, s, e):
        head = s.out_head
        e.out_prev = None
        e.out_next = head
        if head is not None:
            head.out_prev = e
        s.out_head = e
        s.outdeg += 1

    def _unlink_out(self, s, e):
        if e.out_prev is None:
            s.out_head = e.out_next
        else:
            e.out_prev.out_next = e.out_next
        if e.out_next is not None:
            e.out_next.out_prev = e.out_prev
        s.outdeg -= 1

    def _relink_out(self, s, e):
        if e.out_prev is None:
            s.out_head = e
        else:
            e.out_prev.out_next = e
        if e.out_next is not None:
            e.out_next.out_prev = e
        s.outdeg += 1

    def _link_in(self, t, e):
        head = t.in_head
        e.in_prev = None
        e.in_next = head
        if head is not None:
            head.in_prev = e
        t.in_head = e
        t.indeg += 1

    def _unlink_in(self, t, e):
        if e.in_prev is None:
            t.in_head = e.in_next
        else:
            e.in_prev.in_next = e.in_next
        if e.in_next is not None:
            e.in_next.in_prev = e.in_prev
        t.indeg -= 1

    def _relink_in(self, t, e):
        if e.in_prev is None:
            t.in_head = e
        else:
            e.in_prev.in_next = e
        if e.in_next is not None:
            e.in_next.in_prev = e
        t.indeg += 1

    # -- undo support (called only by UndoLog) ----------------------------

    def _undo_add_node(self, n):
        self._unlink_node(n)
        if n.is_root:
            self._unlink_root(n)
        n.in_graph = False
        self.node_count -= 1
        if n.log_refs == 0:
            self._nodes.free(n.handle)

    def _undo_del_node(self, n):
        n.in_graph = True
        self._relink_node(n)
        if n.is_root:
            self._relink_root(n)
        self.node_count += 1

    def _undo_add_edge(self, e):
        self._unlink_out(self._nodes.get(e.source), e)
        self._unlink_in(self._nodes.get(e.target), e)
        e.in_graph = False
        self.edge_count -= 1
        if e.log_refs == 0:
            self._edges.free(e.handle)

    def _undo_del_edge(self, e):
        e.in_graph = True
        self._relink_out(self._nodes.get(e.source), e)
        self._relink_in(self._nodes.get(e.target), e)
        self.edge_count += 1

    def _undo_set_root(self, n, old):
        n.is_root = old
        if old:
            self._relink_root(n)
        else:
            self._unlink_root(n)

    def _reclaim(self, obj):
        """Free a dead element's slot once the log no longer references it."""
        if type(obj) is Node:
            self._nodes.free(obj.handle)
        else:
            self._edges.free(obj.handle)

    # -- test/debug aids ---------------------------------------------------

    def check_consistency(self):
        """Validate degree counts, list structure and the no-dangling rule."""
        seen = 0
        out_total = 0
        in_total = 0
        n = self.node_head
        while n is not None:
            if not n.in_graph:
                raise GraphError("dead node on node list")
            outdeg = 0
            e = n.out_head
            while e is not None:
                if e.source != n.handle or not e.in_graph:
                    raise GraphError("bad out list entry")
                if not self._nodes.get(e.target).in_graph:
                    raise GraphError("dangling edge target")
                outdeg += 1
                e = e.out_next
            indeg = 0
            e = n.in_head
            while e is not None:
                if e.target != n.handle or not e.in_graph:
                    raise GraphError("bad in list entry")
                if not self._nodes.get(e.source).in_graph:
                    raise GraphError("dangling edge source")
                indeg += 1
                e = e.in_next
            if outdeg != n.outdeg or indeg != n.indeg:
                raise GraphError("degree mismatch on node %d" % n.handle)
            out_total += outdeg
            in_total += indeg
            seen += 1
            n = n.next
        if seen != self.node_count:
            raise GraphError("node_count mismatch")
        if out_total != self.edge_count or in_total != self.edge_count:
            raise GraphError("edge_count mismatch")
        root_seen = set()
        n = self.root_head
        while n is not None:
            if not n.is_root or not n.in_graph:
                raise GraphError("bad root list entry")
            if n.handle in root_seen:
                raise GraphError("root listed twice")
            root_seen.add(n.handle)
            n = n.root_next
