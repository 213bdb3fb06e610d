"""Search over nested cyclic pairs ``<g2> ⊆ <g1>`` doubled by the identity map."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .classical import cyclic_code, cyclic_divisors
from .classical.cyclic import deg, pmod, poly_to_bits
from .css import CssPair, CssParams, css_params, make_css
from .csst import lifted_params, nphi
from .exceptions import PreconditionError

WORKERS_ENV = "CSSTLAB_WORKERS"


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchTask:
    """``n`` is the cyclic length; ``target`` refers to the doubled code ``[[2n, k, d]]``."""

    n: int
    target: tuple[int, int, int] | None = None
    method: str = "auto"
    budget: float | None = None
    max_pairs: int | None = None
    seed: int = 0
    direct: bool = False

    def __post_init__(self):
        if self.n % 2 == 0 or not 3 <= self.n <= 33:
            raise PreconditionError("n_odd_range", "cyclic search needs odd n with 3 <= n <= 33")
        if self.target is not None and self.target[0] != 2 * self.n:
            raise PreconditionError("target_length", f"doubled length is {2 * self.n}, target says {self.target[0]}")


@dataclass(frozen=True)
class SearchHit:
    g1: int
    g2: int
    pair: CssPair
    params: CssParams

    @property
    def provenance(self) -> dict:
        return {"n": self.pair.n // 2, "g1": poly_to_bits(self.g1), "g2": poly_to_bits(self.g2)}


def nested_divisor_pairs(n: int) -> list[tuple[int, int]]:
    """``(g1, g2)`` with ``g1 | g2 | x^n - 1`` and ``g1 != g2`` (so ``<g2> ⊊ <g1>``)."""
    divs = cyclic_divisors(n)
    return [(g1, g2) for g1 in divs for g2 in divs if g1 != g2 and pmod(g2, g1) == 0]


def _evaluate(args) -> tuple[int, int, CssPair, CssParams]:
    n, g1, g2, method, seed, budget, direct = args
    base = make_css(cyclic_code(n, g1), cyclic_code(n, g2))
    doubled = nphi(base)
    if direct:
        params = css_params(doubled, method, seed=seed, budget=budget)
    else:
        params = lifted_params(base, css_params(base, method, seed=seed, budget=budget))
    return g1, g2, doubled, params


def _sort_key(h: SearchHit):
    d = h.params.d.value if h.params.d.value is not None else -1
    return (-h.params.k, -d, deg(h.g1), h.g1, deg(h.g2), h.g2)


def search_cyclic_csst(task: SearchTask, workers: int | None = None) -> list[SearchHit]:
    """Double every nested cyclic pair of length ``n`` and report the resulting parameters.

    With a target only pairs of the right ``k`` are evaluated and only exact
    ``(2n, k, d)`` matches are returned. Parameters of the doubled code are
    obtained from the half-length pair (``lifted_params``) unless
    ``task.direct`` asks for a computation on the doubled codes themselves.
    """
    n = task.n
    pairs = nested_divisor_pairs(n)
    if task.target is not None:
        k = task.target[1]
        pairs = [(g1, g2) for g1, g2 in pairs if deg(g2) - deg(g1) == k]
    if task.max_pairs is not None:
        pairs = pairs[: task.max_pairs]
    jobs = [(n, g1, g2, task.method, task.seed, task.budget, task.direct) for g1, g2 in pairs]
    workers = workers or worker_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_evaluate, jobs))
    else:
        results = [_evaluate(j) for j in jobs]
    hits = [SearchHit(g1, g2, pair, params) for g1, g2, pair, params in results]
    if task.target is not None:
        hits = [h for h in hits if h.params.triple() == tuple(task.target)]
    return sorted(hits, key=_sort_key)


def cyclic_pair(n: int, g1: int, g2: int) -> CssPair:
    return make_css(cyclic_code(n, g1), cyclic_code(n, g2))

