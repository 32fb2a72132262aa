"""Stack of reversible graph mutations grouped into frames.

Frames delimit the scopes opened for loop iterations and for the
conditions of if/try.  Rolling a frame back pops its entries in reverse
and restores the exact prior graph state, including element handles.
Committing the topmost frame merges its entries into the enclosing
frame; when no enclosing frame remains the entries are released, which
drops the log references that keep deleted elements alive.
"""

from .graph import (
    LOG_ADD_NODE, LOG_ADD_EDGE, LOG_DEL_NODE, LOG_DEL_EDGE,
    LOG_RELABEL_NODE, LOG_REMARK_NODE, LOG_REMARK_EDGE, LOG_SET_ROOT,
)


class UndoLogError(Exception):
    pass


class UndoLog:
    __slots__ = ("entries", "frames")

    def __init__(self):
        self.entries = []
        self.frames = []

    def __len__(self):
        return len(self.entries)

    @property
    def active(self):
        return bool(self.frames)

    @property
    def depth(self):
        return len(self.frames)

    def open_frame(self):
        self.frames.append(len(self.entries))

    def rollback_frame(self, g):
        """Undo every entry of the topmost frame, newest first."""
        if not self.frames:
            raise UndoLogError("rollback with no open frame")
        start = self.frames.pop()
        entries = self.entries
        while len(entries) > start:
            kind, obj, old = entries.pop()
            if kind == LOG_DEL_NODE:
                obj.log_refs -= 1
                g._undo_del_node(obj)
            elif kind == LOG_DEL_EDGE:
                obj.log_refs -= 1
                g._undo_del_edge(obj)
            elif kind == LOG_ADD_NODE:
                g._undo_add_node(obj)
            elif kind == LOG_ADD_EDGE:
                g._undo_add_edge(obj)
            elif kind == LOG_RELABEL_NODE:
                obj.label = old
            elif kind == LOG_REMARK_NODE or kind == LOG_REMARK_EDGE:
                obj.mark = old
            elif kind == LOG_SET_ROOT:
                g._undo_set_root(obj, old)
            else:
                raise UndoLogError("corrupt log entry kind %r" % (kind,))

    def commit_frame(self, g):
        """Erase the topmost frame mark, releasing entries if it was the last.

        Releasing a deletion entry clears its log reference; dead elements
        with no remaining references are reclaimed.
        """
        if not self.frames:
            raise UndoLogError("commit with no open frame")
        self.frames.pop()
        if self.frames:
            return  # entries now belong to the enclosing frame
        for kind, obj, _old in self.entries:
            if kind == LOG_DEL_NODE or kind == LOG_DEL_EDGE:
                obj.log_refs -= 1
                if obj.log_refs == 0 and not obj.in_graph:
                    g._reclaim(obj)
        self.entries.clear()
