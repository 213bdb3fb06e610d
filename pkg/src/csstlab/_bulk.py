"""Vectorised helpers on packed uint64 words.

A vector of length ``n`` occupies ``ceil(n/64)`` words, word 0 holding
coordinates 0..63 with coordinate 0 in the least significant bit. This is the
same layout as the int bitsets of :mod:`csstlab.gf2`, split into words.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

WORD_BITS = 64
_WORD_MASK = (1 << WORD_BITS) - 1


def n_words(n: int) -> int:
    return max(1, -(-n // WORD_BITS))


def pack(rows: Sequence[int], n: int) -> np.ndarray:
    w = n_words(n)
    out = np.zeros((len(rows), w), dtype=np.uint64)
    for i, r in enumerate(rows):
        for j in range(w):
            out[i, j] = (r >> (WORD_BITS * j)) & _WORD_MASK
    return out


def unpack(row: np.ndarray) -> int:
    value = 0
    for j, word in enumerate(row.tolist()):
        value |= int(word) << (WORD_BITS * j)
    return value


def mask_words(lo: int, hi: int, w: int) -> np.ndarray:
    """Packed mask with coordinates ``lo <= i < hi`` set."""
    return pack([((1 << hi) - 1) ^ ((1 << lo) - 1)], w * WORD_BITS)[0]


def weights(arr: np.ndarray, mask: np.ndarray | None = None) -> np.ndarray:
    if mask is not None:
        arr = arr & mask
    return np.bitwise_count(arr).sum(axis=1, dtype=np.int64)


def span_table(rows: np.ndarray) -> np.ndarray:
    """All ``2^m`` XOR combinations; entry ``i`` combines rows whose bit is set in ``i``."""
    table = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for r in rows:
        table = np.concatenate([table, table ^ r])
    return table


def iter_span_blocks(rows: np.ndarray, lo_bits: int = 16) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start_index, block)`` covering all ``2^m`` combinations of ``rows``.

    Each block holds ``2^lo`` consecutive combination indices, so index
    ``start + i`` corresponds to ``block[i]``.
    """
    m = rows.shape[0]
    lo = min(m, lo_bits)
    low = span_table(rows[:lo])
    high = rows[lo:]
    # Gray-code walk over the high part
    acc = np.zeros(rows.shape[1], dtype=np.uint64)
    prev_gray = 0
    for h in range(1 << (m - lo)):
        gray = h ^ (h >> 1)
        diff = gray ^ prev_gray
        if diff:
            acc = acc ^ high[diff.bit_length() - 1]
        prev_gray = gray
        yield gray << lo, low ^ acc


def combo_tables(rows: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray]:
    """XORs of all ``size``-subsets of ``rows`` in lexicographic order.

    Returns ``(table, start)`` where ``table[start[m]:]`` are exactly the
    subsets whose smallest index is ``>= m``.
    """
    k, w = rows.shape
    # level 0: the empty subset, available from every start position
    table = np.zeros((1, w), dtype=np.uint64)
    start = np.zeros(k + 1, dtype=np.int64)
    for _ in range(size):
        parts = []
        new_start = np.zeros(k + 1, dtype=np.int64)
        count = 0
        for f in range(k):
            new_start[f] = count
            tail = table[start[f + 1]:]
            if len(tail):
                parts.append(tail ^ rows[f])
                count += len(tail)
        new_start[k] = count
        table = np.concatenate(parts) if parts else np.zeros((0, w), dtype=np.uint64)
        start = new_start
    return table, start


def iter_combination_xors(rows: np.ndarray, size: int, table_limit: int = 2_000_000
                          ) -> Iterator[np.ndarray]:
    """Yield blocks whose union is the XOR of every ``size``-subset of ``rows`` exactly once."""
    k, w = rows.shape
    if size == 0:
        yield np.zeros((1, w), dtype=np.uint64)
        return
    if size > k:
        return
    suffix = size
    while suffix > 1 and comb(k, suffix) > table_limit:
        suffix -= 1
    prefix = size - suffix
    table, start = combo_tables(rows, suffix)
    if prefix == 0:
        yield table
        return
    for pre in combinations(range(k - suffix), prefix):
        acc = rows[list(pre)]
        value = np.bitwise_xor.reduce(acc, axis=0)
        first = pre[-1] + 1
        block = table[start[first]:]
        if len(block):
            yield block ^ value


def lexmin(cands: Sequence[int], n: int) -> int:
    """Lexicographically smallest vector reading coordinate 0 first."""

    def key(v: int) -> str:
        return "".join("1" if (v >> i) & 1 else "0" for i in range(n))

    return min(cands, key=key)


def count_combinations(k: int, size: int) -> int:
    return comb(k, size)
