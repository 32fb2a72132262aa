"""Segmented growable slot store with stable slot locations.

Slots live in segments of capacity 1, 2, 4, ... so a slot, once allocated,
never moves for its whole lifetime.  Freed slots are threaded into an
intrusive LIFO free list and reused before the array grows.  Global slot
index i maps to segment k = bit_length(i+1) - 1, offset (i+1) - 2**k.
"""

NO_HOLE = -1


class BigArrayError(Exception):
    """Contract violation: bad index, double free, or access to a hole."""


class _Hole:
    __slots__ = ("next",)

    def __init__(self, next_hole):
        self.next = next_hole


def locate(index):
    """Decompose a global slot index into (segment, offset)."""
    if index < 0:
        raise BigArrayError("negative slot index %r" % (index,))
    seg = (index + 1).bit_length() - 1
    return seg, index + 1 - (1 << seg)


class BigArray:
    __slots__ = ("_segments", "_first_hole", "_size", "_appended")

    def __init__(self):
        self._segments = []
        self._first_hole = NO_HOLE
        self._size = 0
        self._appended = 0  # slots ever appended; next fresh index

    def __len__(self):
        return self._size

    @property
    def size(self):
        return self._size

    @property
    def capacity(self):
        return (1 << len(self._segments)) - 1

    @property
    def segment_count(self):
        return len(self._segments)

    def alloc(self, value):
        """Store value in a reused hole or a fresh slot; return its index."""
        idx = self._first_hole
        if idx != NO_HOLE:
            seg, off = locate(idx)
            block = self._segments[seg]
            self._first_hole = block[off].next
            block[off] = value
        else:
            idx = self._appended
            seg, off = locate(idx)
            if seg == len(self._segments):
                self._segments.append([None] * (1 << seg))
            self._segments[seg][off] = value
            self._appended += 1
        self._size += 1
        return idx

    def free(self, index):
        """Turn an occupied slot into the new head of the hole list."""
        seg, off = locate(index)
        if index >= self._appended:
            raise BigArrayError("free of never-allocated index %d" % index)
        block = self._segments[seg]
        if type(block[off]) is _Hole:
            raise BigArrayError("double free of index %d" % index)
        block[off] = _Hole(self._first_hole)
        self._first_hole = index
        self._size -= 1

    def get(self, index):
        seg, off = locate(index)
        if index >= self._appended:
            raise BigArrayError("access beyond capacity: %d" % index)
        value = self._segments[seg][off]
        if type(value) is _Hole:
            raise BigArrayError("access to a hole: %d" % index)
        return value

    def is_occupied(self, index):
        if index < 0 or index >= self._appended:
            return False
        seg, off = locate(index)
        return type(self._segments[seg][off]) is not _Hole

    def indices(self):
        """Iterate the indices of occupied slots (test/debug aid, O(appended))."""
        for i in range(self._appended):
            if self.is_occupied(i):
                yield i

    def hole_chain(self):
        """The hole list from head to tail (test/debug aid)."""
        chain = []
        idx = self._first_hole
        while idx != NO_HOLE:
            chain.append(idx)
            seg, off = locate(idx)
            idx = self._segments[seg][off].next
        return chain
