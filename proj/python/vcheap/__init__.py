"""Violation-cache heaps with exact potential accounting."""

from ._vcheap import Forest, HeapError, TraceError, dijkstra, fuzz, run_trace

__all__ = ["Forest", "Heap", "HeapError", "TraceError", "dijkstra", "fuzz", "run_trace"]


class Heap:
    """A single heap in its own forest, with node handles returned by push."""

    def __init__(self, variant="nomeld", policy="amortized"):
        self.forest = Forest(variant)
        self.handle = self.forest.make_heap(policy)

    def push(self, key):
        return self.forest.insert(self.handle, key)

    def pop(self):
        return self.forest.delete_min(self.handle)[0]

    def peek(self):
        top = self.forest.find_min(self.handle)
        return None if top is None else top[0]

    def decrease_key(self, node, key):
        self.forest.decrease_key(self.handle, node, key)

    def __len__(self):
        return self.forest.size(self.handle)
