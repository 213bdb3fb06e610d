"""Packed linear algebra over GF(2).

Vectors are Python integers used as bitsets: coordinate ``i`` is bit ``i``
(coordinate 0 is the least significant bit). :class:`BitVector` and
:class:`BitMatrix` wrap those integers together with their length so that
dimension errors are caught at the boundary. Heavy enumeration lives in
:mod:`csstlab._bulk`, which works on the same layout split into 64-bit words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exceptions import DimensionError

__all__ = [
    "BitVector",
    "BitMatrix",
    "schur_product",
    "triple_overlap_parity",
    "rref",
    "kernel",
    "member",
    "rank",
]


def _mask(n: int) -> int:
    return (1 << n) - 1


def bits_from_str(s: str) -> int:
    """Parse a ``0``/``1`` string (coordinate 0 first) into an int bitset."""
    value = 0
    for i, ch in enumerate(s):
        if ch == "1":
            value |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r}")
    return value


def bits_to_str(bits: int, n: int) -> str:
    return "".join("1" if (bits >> i) & 1 else "0" for i in range(n))


@dataclass(frozen=True)
class BitVector:
    """Immutable binary vector of fixed length."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError("bits set beyond vector length")

    @classmethod
    def from_str(cls, s: str) -> "BitVector":
        s = s.strip()
        return cls(len(s), bits_from_str(s))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise DimensionError(f"coordinate {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, _mask(length))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __len__(self) -> int:
        return self.length

    def _check(self, other: "BitVector") -> None:
        if not isinstance(other, BitVector):
            raise TypeError(f"expected BitVector, got {type(other).__name__}")
        if other.length != self.length:
            raise DimensionError(f"length mismatch: {self.length} vs {other.length}")

    def __add__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def __mul__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def __str__(self) -> str:
        return bits_to_str(self.bits, self.length)

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


@dataclass(frozen=True)
class BitMatrix:
    """Immutable binary matrix stored as a tuple of row bitsets."""

    n_cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n_cols < 0:
            raise DimensionError("n_cols must be non-negative")
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise DimensionError("row has bits beyond n_cols")

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector], n_cols: int | None = None) -> "BitMatrix":
        if n_cols is None:
            if not vectors:
                raise DimensionError("cannot infer column count from an empty row list")
            n_cols = vectors[0].length
        for v in vectors:
            if v.length != n_cols:
                raise DimensionError(f"ragged rows: expected length {n_cols}, got {v.length}")
        return cls(n_cols, tuple(v.bits for v in vectors))

    @classmethod
    def from_strings(cls, rows: Sequence[str], n_cols: int | None = None) -> "BitMatrix":
        rows = [r.strip() for r in rows]
        if n_cols is None:
            if not rows:
                raise DimensionError("cannot infer column count from an empty row list")
            n_cols = len(rows[0])
        for r in rows:
            if len(r) != n_cols:
                raise DimensionError(f"ragged rows: expected length {n_cols}, got {len(r)}")
        return cls(n_cols, tuple(bits_from_str(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def empty(cls, n_cols: int) -> "BitMatrix":
        return cls(n_cols, ())

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.rows[i])

    def __iter__(self) -> Iterator[BitVector]:
        return (BitVector(self.n_cols, r) for r in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if other.n_cols != self.n_cols:
            raise DimensionError(f"column mismatch: {self.n_cols} vs {other.n_cols}")
        return BitMatrix(self.n_cols, self.rows + other.rows)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        """Concatenate columns; row counts must agree."""
        if other.n_rows != self.n_rows:
            raise DimensionError(f"row mismatch: {self.n_rows} vs {other.n_rows}")
        shift = self.n_cols
        return BitMatrix(self.n_cols + other.n_cols,
                         tuple(a | (b << shift) for a, b in zip(self.rows, other.rows)))

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def max_row_weight(self) -> int:
        return max(self.row_weights(), default=0)

    def permute_columns(self, perm: Sequence[int]) -> "BitMatrix":
        """Column ``i`` of the input becomes column ``perm[i]`` of the output."""
        return BitMatrix(self.n_cols, tuple(permute_bits(r, perm) for r in self.rows))

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.n_cols) for r in self.rows]

    def to_array(self):
        import numpy as np

        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n_cols):
                out[i, j] = (r >> j) & 1
        return out

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def permute_bits(bits: int, perm: Sequence[int]) -> int:
    out = 0
    i = 0
    while bits:
        if bits & 1:
            out |= 1 << perm[i]
        bits >>= 1
        i += 1
    return out


def _check_lengths(*vs: BitVector) -> None:
    n = vs[0].length
    for v in vs[1:]:
        if v.length != n:
            raise DimensionError(f"length mismatch: {n} vs {v.length}")


def schur_product(u: BitVector, v: BitVector) -> BitVector:
    """Coordinate-wise product ``u ⋆ v``."""
    _check_lengths(u, v)
    return BitVector(u.length, u.bits & v.bits)


def triple_overlap_parity(u: BitVector, v: BitVector, w: BitVector) -> int:
    """Parity of the number of coordinates where all three vectors are 1."""
    _check_lengths(u, v, w)
    return (u.bits & v.bits & w.bits).bit_count() & 1


# ---------------------------------------------------------------------------
# elimination on raw int rows


def rref_rows(rows: Iterable[int], n_cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of int rows; returns (nonzero rows, pivots).

    Pivot of a row is its lowest set coordinate; rows are ordered by pivot.
    """
    work = [r for r in rows if r]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(n_cols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return out, pivots


class Reducer:
    """Incremental echelon basis for fast membership and independence tests."""

    def __init__(self, rows: Iterable[int] = ()):
        self._basis: dict[int, int] = {}  # pivot bit -> row with that lowest bit
        for r in rows:
            self.add(r)

    def reduce(self, v: int) -> int:
        basis = self._basis
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                return v
            v ^= b
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        self._basis[r & -r] = r
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self._basis)

    def rows(self) -> list[int]:
        return list(self._basis.values())


def rank_rows(rows: Iterable[int]) -> int:
    return Reducer(rows).rank


def kernel_rows(rows: Sequence[int], n_cols: int) -> list[int]:
    """Basis (RREF) of ``{v : r·v = 0 for every row r}``.

    Columns of the matrix are eliminated while tracking which coordinate
    combinations produced them (identity augmentation); combinations that
    reduce to the zero column are kernel vectors.
    """
    # column j as a bitset over the rows, tagged with coordinate j
    cols = []
    for j in range(n_cols):
        c = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                c |= 1 << i
        cols.append(c)
    pivot_of: dict[int, tuple[int, int]] = {}
    kern: list[int] = []
    for j in range(n_cols):
        c, tag = cols[j], 1 << j
        while c:
            low = c & -c
            hit = pivot_of.get(low)
            if hit is None:
                break
            c ^= hit[0]
            tag ^= hit[1]
        if c:
            pivot_of[c & -c] = (c, tag)
        else:
            kern.append(tag)
    return rref_rows(kern, n_cols)[0]


# ---------------------------------------------------------------------------
# BitMatrix-level operations


def rref(M: BitMatrix) -> tuple[BitMatrix, int, list[int]]:
    """Canonical reduced row echelon form, its rank, and the pivot columns."""
    rows, pivots = rref_rows(M.rows, M.n_cols)
    return BitMatrix(M.n_cols, tuple(rows)), len(rows), pivots


def rank(M: BitMatrix) -> int:
    return rank_rows(M.rows)


def kernel(M: BitMatrix) -> BitMatrix:
    """Basis of the right null space ``{v : M vᵀ = 0}``, in RREF."""
    return BitMatrix(M.n_cols, tuple(kernel_rows(M.rows, M.n_cols)))


def member(v: BitVector, M: BitMatrix) -> bool:
    if v.length != M.n_cols:
        raise DimensionError(f"length mismatch: {v.length} vs {M.n_cols}")
    return Reducer(M.rows).contains(v.bits)


def same_rowspace(a: BitMatrix, b: BitMatrix) -> bool:
    if a.n_cols != b.n_cols:
        return False
    return rref_rows(a.rows, a.n_cols)[0] == rref_rows(b.rows, b.n_cols)[0]


def coordinates(v: int, basis: Sequence[int]) -> int | None:
    """Coefficient bitset ``c`` with ``Σ c_i basis[i] = v``, or None if ``v`` is outside the span.

    ``basis`` must be linearly independent.
    """
    piv: dict[int, tuple[int, int]] = {}
    for i, b in enumerate(basis):
        tag = 1 << i
        while b:
            low = b & -b
            hit = piv.get(low)
            if hit is None:
                break
            b ^= hit[0]
            tag ^= hit[1]
        if not b:
            raise DimensionError("basis rows are linearly dependent")
        piv[b & -b] = (b, tag)
    tag = 0
    while v:
        low = v & -v
        hit = piv.get(low)
        if hit is None:
            return None
        v ^= hit[0]
        tag ^= hit[1]
    return tag
