import random

import pytest

from csstlab.classical.cyclic import pmod
from csstlab.css import css_params
from csstlab.exceptions import PreconditionError
from csstlab.search import (
    SearchTask, cyclic_pair, nested_divisor_pairs, search_cyclic_csst, worker_count,
)


def test_task_validation():
    for n in (2, 8, 35, 1):
        with pytest.raises(PreconditionError):
            SearchTask(n)
    with pytest.raises(PreconditionError) as e:
        SearchTask(7, (16, 3, 3))
    assert e.value.violated == "target_length"


def test_nested_pairs_n3():
    pairs = nested_divisor_pairs(3)
    assert all(pmod(g2, g1) == 0 and g1 != g2 for g1, g2 in pairs)
    hits = search_cyclic_csst(SearchTask(3))
    assert len(hits) == len(pairs) and all(h.pair.n == 6 for h in hits)


def test_n7_target():
    hits = search_cyclic_csst(SearchTask(7, (14, 3, 3)))
    assert hits and all(h.params.triple() == (14, 3, 3) and h.params.z_degenerate for h in hits)


def test_lifted_matches_direct():
    lifted = search_cyclic_csst(SearchTask(7))
    direct = search_cyclic_csst(SearchTask(7, direct=True))
    assert [(h.g1, h.g2) for h in lifted] == [(h.g1, h.g2) for h in direct]
    for a, b in zip(lifted, direct):
        assert a.params.same_parameters(b.params)


def test_sorted_and_order_invariant(monkeypatch):
    base = search_cyclic_csst(SearchTask(9))
    keys = [(-h.params.k, -h.params.d.value) for h in base]
    assert keys == sorted(keys)
    import csstlab.search as s

    orig = s.cyclic_divisors

    def shuffled(n):
        out = list(orig(n))
        random.Random(1).shuffle(out)
        return out

    monkeypatch.setattr(s, "cyclic_divisors", shuffled)
    again = search_cyclic_csst(SearchTask(9))
    assert [(h.g1, h.g2) for h in again] == [(h.g1, h.g2) for h in base]


def test_workers(monkeypatch):
    monkeypatch.setenv("CSSTLAB_WORKERS", "2")
    assert worker_count() == 2
    serial = search_cyclic_csst(SearchTask(7), workers=1)
    parallel = search_cyclic_csst(SearchTask(7))
    assert [h.provenance for h in serial] == [h.provenance for h in parallel]
    monkeypatch.setenv("CSSTLAB_WORKERS", "many")
    assert worker_count() == 1


def test_cyclic_pair_params():
    h = search_cyclic_csst(SearchTask(7, (14, 3, 3)))[0]
    p = cyclic_pair(7, h.g1, h.g2)
    assert css_params(p).k == 3
