"""Minimum distance of a code and minimum weight of a coset difference ``A \\ B``.

Three exact engines share one problem description (a code ``A`` and a
subcode ``B``; plain minimum distance is the case ``B = {0}``):

``exhaustive``
    Gray-code walk over every word of ``A`` outside ``B`` (``dim A <= 28``).
``syndrome``
    Meet-in-the-middle over low-weight error patterns. A vector ``v`` lies in
    ``A \\ B`` iff ``H_A v = 0`` and ``L v != 0`` where ``L`` completes the
    checks of ``A`` to checks of ``B``; pairs of half-weight patterns with equal
    ``H_A``-syndrome and different ``L``-syndrome give the weight-``w`` words.
    Cost depends on ``n`` and the answer, not on ``dim A``, which suits
    degenerate cosets.
``information_set``
    Brouwer-Zimmermann enumeration over several information sets with the
    usual rank-deficiency lower bound.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .. import _bulk
from ..exceptions import ContainmentError, ResourceGuardError, UndefinedDistanceError
from ..gf2 import BitVector, Reducer, bits_to_str, kernel_rows
from .code import LinearCode, complement_basis, zero_code

EXHAUSTIVE_MAX_DIM = 28
AUTO_EXHAUSTIVE_DIM = 20
SYNDROME_LEVEL_LIMIT = 6_000_000

METHODS = ("auto", "exhaustive", "information_set", "syndrome")


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of a distance query.

    ``value`` is None ("unknown") unless the bounds meet. ``certificate`` is a
    word of the queried set whose weight equals ``upper_bound``.
    """

    value: int | None
    lower_bound: int
    upper_bound: int | None
    certificate: BitVector | None
    method: str

    @property
    def known(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {
            "value": self.value if self.value is not None else "unknown",
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound if self.upper_bound is not None else "unknown",
            "certificate": str(self.certificate) if self.certificate is not None else None,
            "method": self.method,
        }


def _lexmin_row(arr: np.ndarray, n: int) -> int:
    """Index of the lexicographically smallest packed row (coordinate 0 first)."""
    idx = np.arange(len(arr))
    for i in range(n):
        word, bit = divmod(i, 64)
        col = (arr[idx, word] >> np.uint64(bit)) & np.uint64(1)
        zeros = idx[col == 0]
        if len(zeros) and len(zeros) < len(idx):
            idx = zeros
        if len(idx) == 1:
            break
    return int(idx[0])


def _lex_key(v: int, n: int) -> str:
    return bits_to_str(v, n)


class _Best:
    """Running minimum with a lexicographic tie-break."""

    def __init__(self, n: int):
        self.n = n
        self.weight: int | None = None
        self.word: int | None = None

    def offer(self, weight: int, word: int) -> None:
        if self.weight is None or weight < self.weight:
            self.weight, self.word = weight, word
        elif weight == self.weight and _lex_key(word, self.n) < _lex_key(self.word, self.n):
            self.word = word

    def offer_block(self, block: np.ndarray, w: np.ndarray, valid: np.ndarray | None = None) -> None:
        if valid is not None:
            if not valid.any():
                return
            block, w = block[valid], w[valid]
        if not len(w):
            return
        m = int(w.min())
        if self.weight is not None and m > self.weight:
            return
        cands = block[w == m]
        self.offer(m, _bulk.unpack(cands[_lexmin_row(cands, self.n)]))


class _Problem:
    """``A \\ B`` for nested codes ``B ⊆ A``."""

    def __init__(self, A: LinearCode, B: LinearCode):
        self.A, self.B = A, B
        self.n = A.n
        self.logical = complement_basis(A, B)  # completes B to A
        self.k_a, self.k_b = A.k, B.k

    def checks(self) -> tuple[list[int], list[int]]:
        """Rows of ``A⊥`` and rows completing them to a basis of ``B⊥``."""
        h_a = list(self.A.dual.rows)
        red = Reducer(h_a)
        extra = [r for r in self.B.dual.rows if red.add(r)]
        return h_a, extra

    def result(self, lb: int, best: _Best, method: str, exact: bool) -> DistanceResult:
        ub = best.weight
        cert = BitVector(self.n, best.word) if best.word is not None else None
        if exact or (ub is not None and lb >= ub):
            if ub is None:
                raise UndefinedDistanceError("no word in the queried set")  # pragma: no cover
            return DistanceResult(ub, ub, ub, cert, method)
        return DistanceResult(None, lb, ub, cert, method)


def _exhaustive(p: _Problem) -> DistanceResult:
    if p.k_a > EXHAUSTIVE_MAX_DIM:
        raise ResourceGuardError(f"exhaustive enumeration limited to dimension {EXHAUSTIVE_MAX_DIM}, got {p.k_a}")
    rows = _bulk.pack(list(p.B.rows) + p.logical, p.n)
    best = _Best(p.n)
    lo = min(p.k_a, 16)
    kb = p.k_b
    for start, block in _bulk.iter_span_blocks(rows, lo_bits=lo):
        valid = None
        if lo > kb:
            if start == 0:
                valid = np.arange(len(block)) >= (1 << kb)
        elif (start >> kb) == 0:
            continue
        best.offer_block(block, _bulk.weights(block), valid)
    return p.result(0, best, "exhaustive", exact=True)


# ---------------------------------------------------------------------------
# meet in the middle


class _Levels:
    """All error patterns of weight ``a`` (as syndrome keys), built incrementally."""

    def __init__(self, col_keys: np.ndarray, limit: int):
        self.col_keys = col_keys
        self.n = len(col_keys)
        self.limit = limit
        self.keys = [np.zeros(1, dtype=np.uint64)]
        self.last = [np.full(1, -1, dtype=np.int64)]
        self.parent = [np.full(1, -1, dtype=np.int64)]

    def ensure(self, a: int) -> bool:
        while len(self.keys) <= a:
            size = comb(self.n, len(self.keys))
            if size > self.limit:
                return False
            pk, pl = self.keys[-1], self.last[-1]
            ks, ls, ps = [], [], []
            for j in range(self.n):
                sel = np.nonzero(pl < j)[0]
                if not len(sel):
                    continue
                ks.append(pk[sel] ^ self.col_keys[j])
                ls.append(np.full(len(sel), j, dtype=np.int64))
                ps.append(sel)
            self.keys.append(np.concatenate(ks) if ks else np.zeros(0, dtype=np.uint64))
            self.last.append(np.concatenate(ls) if ls else np.zeros(0, dtype=np.int64))
            self.parent.append(np.concatenate(ps) if ps else np.zeros(0, dtype=np.int64))
        return True

    def words(self, a: int, idx: np.ndarray, w: int) -> np.ndarray:
        out = np.zeros((len(idx), w), dtype=np.uint64)
        rows = np.arange(len(idx))
        cur = idx.copy()
        for level in range(a, 0, -1):
            cols = self.last[level][cur]
            words, bits = np.divmod(cols, 64)
            out[rows, words] |= np.left_shift(np.uint64(1), bits.astype(np.uint64))
            cur = self.parent[level][cur]
        return out


def _syndrome(p: _Problem, lb0: int = 1, limit: int = SYNDROME_LEVEL_LIMIT,
              deadline: float | None = None) -> DistanceResult:
    n = p.n
    h_a, extra = p.checks()
    s_bits, t_bits = len(h_a), len(extra)
    if s_bits + t_bits > 64:
        raise ResourceGuardError("syndrome keys wider than 64 bits")
    col_keys = np.zeros(n, dtype=np.uint64)
    for j in range(n):
        key = 0
        for i, r in enumerate(h_a):
            key |= ((r >> j) & 1) << i
        for i, r in enumerate(extra):
            key |= ((r >> j) & 1) << (s_bits + i)
        col_keys[j] = key
    smask = np.uint64((1 << s_bits) - 1)
    shift = np.uint64(s_bits)
    levels = _Levels(col_keys, limit)
    nw = _bulk.n_words(n)
    best = _Best(n)
    lb = max(lb0, 1)
    for w in range(lb, n + 1):
        if deadline is not None and time.monotonic() > deadline:
            return p.result(w, best, "syndrome", exact=False)
        a, b = (w + 1) // 2, w // 2
        if not levels.ensure(a):
            return p.result(w, best, "syndrome", exact=False)
        ka = levels.keys[a]
        sa, ta = ka & smask, ka >> shift
        if b == 0:
            hit = np.nonzero((sa == 0) & (ta != 0))[0]
            qs = np.zeros(len(hit), dtype=np.int64)
        else:
            kb = levels.keys[b]
            sb, tb = kb & smask, kb >> shift
            order = np.lexsort((tb, sb))
            sbs, tbs = sb[order], tb[order]
            uniq, first, counts = np.unique(sbs, return_index=True, return_counts=True)
            last = first + counts - 1
            pos = np.searchsorted(uniq, sa)
            pos_c = np.minimum(pos, len(uniq) - 1)
            found = (pos < len(uniq)) & (uniq[pos_c] == sa)
            tmin, tmax = tbs[first[pos_c]], tbs[last[pos_c]]
            ok = found & ((tmin != ta) | (tmax != ta))
            hit = np.nonzero(ok)[0]
            use_min = tmin[hit] != ta[hit]
            qs = order[np.where(use_min, first[pos_c[hit]], last[pos_c[hit]])]
        if len(hit):
            words = levels.words(a, hit, nw)
            if b:
                words ^= levels.words(b, qs, nw)
            wts = _bulk.weights(words)
            if not np.all(wts == w):
                raise AssertionError("syndrome search produced a word of unexpected weight")
            best.offer_block(words, wts)
            return p.result(w, best, "syndrome", exact=True)
    raise UndefinedDistanceError("no word in the queried set")  # pragma: no cover


# ---------------------------------------------------------------------------
# information sets


def _information_sets(rows: list[int], n: int, rng: random.Random) -> list[tuple[list[int], int]]:
    """Systematic generators over successive, mostly disjoint information sets.

    Each entry is ``(rows, new_rank)`` where ``new_rank`` counts pivots that
    were not used by earlier sets.
    """
    k = len(rows)
    order = list(range(n))
    rng.shuffle(order)
    used: set[int] = set()
    sets = []
    while True:
        cand = [c for c in order if c not in used] + [c for c in order if c in used]
        work = list(rows)
        pivots = []
        done = 0
        for c in cand:
            bit = 1 << c
            idx = next((i for i in range(done, k) if work[i] & bit), None)
            if idx is None:
                continue
            work[done], work[idx] = work[idx], work[done]
            prow = work[done]
            for i in range(k):
                if i != done and work[i] & bit:
                    work[i] ^= prow
            pivots.append(c)
            done += 1
            if done == k:
                break
        new = sum(1 for c in pivots if c not in used)
        if new == 0:
            break
        sets.append((work, new))
        used.update(pivots)
        if len(used) == n:
            break
    return sets


def _bz_bound(w: int, j: int, k: int, ranks: Sequence[int]) -> int:
    total = 0
    for i, r in enumerate(ranks):
        level = w + 1 if i <= j else w
        total += max(0, level - (k - r))
    return total


def _information_set(p: _Problem, seed: int = 0, lb0: int = 1,
                     deadline: float | None = None) -> DistanceResult:
    n, k = p.n, p.k_a
    rng = random.Random(seed)
    if p.k_b:
        _, extra = p.checks()
    else:
        extra = []
    kt = len(extra)

    def aug(r: int) -> int:
        t = 0
        for i, e in enumerate(extra):
            t |= ((r & e).bit_count() & 1) << i
        return r | (t << n)

    base = [aug(r) for r in p.A.rows]
    sets = _information_sets(base, n, rng)
    ranks = [r for _, r in sets]
    packed = [_bulk.pack(rows, n + kt) for rows, _ in sets]
    width = packed[0].shape[1]
    wmask = _bulk.mask_words(0, n, width)
    tmask = _bulk.mask_words(n, n + kt, width) if kt else None
    best = _Best(n)
    lb = max(lb0, 1)

    def offer(block: np.ndarray) -> None:
        wts = _bulk.weights(block, wmask)
        valid = None
        if tmask is not None:
            valid = (block & tmask).any(axis=1)
        if best.weight is not None:
            cut = wts <= best.weight
            valid = cut if valid is None else (valid & cut)
        if valid is not None and not valid.any():
            return
        best.offer_block(block & wmask, wts, valid)

    for w in range(1, k + 1):
        for j, rows in enumerate(packed):
            for block in _bulk.iter_combination_xors(rows, w):
                offer(block)
                if deadline is not None and time.monotonic() > deadline:
                    return p.result(lb, best, "information_set", exact=False)
            lb = max(lb, _bz_bound(w, j, k, ranks))
            if best.weight is not None and lb >= best.weight:
                return p.result(lb, best, "information_set", exact=True)
    # every codeword has been generated from the first information set
    return p.result(lb, best, "information_set", exact=True)


# ---------------------------------------------------------------------------
# public entry points


def _solve(p: _Problem, method: str, seed: int, budget: float | None) -> DistanceResult:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    deadline = time.monotonic() + budget if budget is not None else None
    if method == "exhaustive":
        return _exhaustive(p)
    if method == "syndrome":
        return _syndrome(p, deadline=deadline)
    if method == "information_set":
        return _information_set(p, seed=seed, deadline=deadline)
    # auto
    if p.k_a <= AUTO_EXHAUSTIVE_DIM:
        return _exhaustive(p)
    lb = 1
    partial = None
    if (p.n - p.k_b) <= 64:
        partial = _syndrome(p, deadline=deadline)
        if partial.known:
            return partial
        lb = partial.lower_bound
    res = _information_set(p, seed=seed, lb0=lb, deadline=deadline)
    if partial is not None and not res.known and partial.upper_bound is not None:
        if res.upper_bound is None or partial.upper_bound < res.upper_bound:
            return DistanceResult(None, res.lower_bound, partial.upper_bound,
                                  partial.certificate, res.method)
    return res


def min_distance(C: LinearCode, method: str = "auto", *, seed: int = 0,
                 budget: float | None = None) -> DistanceResult:
    """Minimum weight of a nonzero codeword of ``C``."""
    if C.k == 0:
        raise UndefinedDistanceError("minimum distance of the zero code is undefined")
    return _solve(_Problem(C, zero_code(C.n)), method, seed, budget)


def coset_min_weight(C1: LinearCode, C2: LinearCode, method: str = "auto", *, seed: int = 0,
                     budget: float | None = None) -> DistanceResult:
    """Minimum weight over ``C1 \\ C2`` for nested ``C2 ⊆ C1``."""
    if C1.n != C2.n or not C2.is_subcode_of(C1):
        raise ContainmentError("coset_min_weight needs C2 ⊆ C1")
    if C1.k == C2.k:
        raise UndefinedDistanceError("C1 \\ C2 is empty")
    return _solve(_Problem(C1, C2), method, seed, budget)


def brute_force_coset_min_weight(C1: LinearCode, C2: LinearCode) -> int:
    """Reference value by listing every word of ``C1`` (small dimensions only)."""
    return min(v.bit_count() for v in C1.codewords() if not C2.contains(v))


def kernel_code(rows: Sequence[int], n: int) -> LinearCode:
    from ..gf2 import BitMatrix

    return LinearCode(BitMatrix(n, tuple(kernel_rows(list(rows), n))))
