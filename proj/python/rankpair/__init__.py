"""Python access to the rph heap library.

Heaps that will be melded must share a node pool::

    a = Heap("rp2")
    b = Heap("rp2", share_with=a)
    a.meld(b)
"""

from ._rankpair import Handle, Heap, HeapError, gen_random, gen_sort, run_trace

__all__ = ["Handle", "Heap", "HeapError", "gen_random", "gen_sort", "run_trace", "heapsort"]


def heapsort(values, kind="rp2"):
    """Sorts by inserting everything and draining with delete_min."""
    h = Heap(kind)
    for i, v in enumerate(values, start=1):
        h.insert(float(v), i)
    out = []
    while (item := h.delete_min()) is not None:
        out.append(item[0])
    return out
