import random

import pytest

import vcheap


@pytest.mark.parametrize("variant", ["nomeld", "meld"])
@pytest.mark.parametrize("policy", ["amortized", "worstcase", "simple"])
def test_heapsort_matches_sorted(variant, policy):
    rng = random.Random(7)
    keys = [rng.randrange(-1000, 1000) for _ in range(2000)]
    h = vcheap.Heap(variant, policy)
    for k in keys:
        h.push(k)
    assert len(h) == len(keys)
    assert [h.pop() for _ in keys] == sorted(keys)
    assert h.peek() is None


def test_decrease_key_and_errors():
    h = vcheap.Heap()
    nodes = [h.push(k) for k in (50, 40, 30)]
    h.decrease_key(nodes[0], 10)
    assert h.peek() == 10
    with pytest.raises(vcheap.HeapError):
        h.decrease_key(nodes[1], 45)
    h.pop()
    with pytest.raises(vcheap.HeapError):
        h.decrease_key(nodes[0], 1)
    with pytest.raises(ValueError):
        vcheap.Heap("bogus")


def test_meld_and_potential():
    f = vcheap.Forest("meld", verify_phi=True)
    a, b = f.make_heap(), f.make_heap()
    for k in (5, 1, 9):
        f.insert(a, k)
    for k in range(10, 20):
        f.insert(b, k)
    r = f.meld(a, b)
    assert r == b and not f.is_live(a)
    assert f.size(r) == 13
    assert f.check(r) == []
    assert f.potential(r) == f.recomputed_potential(r)
    assert f.delete_min(r)[0] == 1
    with pytest.raises(vcheap.HeapError):
        vcheap.Forest("nomeld").meld(0, 1)


def test_trace_fuzz_and_dijkstra():
    assert vcheap.run_trace("insert 5\ninsert 2\ndeletemin\n") == ["2"]
    with pytest.raises(vcheap.TraceError):
        vcheap.run_trace("insert x\n")
    s = vcheap.fuzz("meld", "worstcase", seed=3, ops=5000, check_every=100)
    assert s["ops"] == 5000 and s["hard_findings"] == 0
    d = vcheap.dijkstra(300, 2000, seed=1, variant="meld")
    assert d["checksum"] == d["expected"]
