"""Binary linear codes held as a generator matrix in canonical RREF."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Sequence

from ..exceptions import DimensionError
from ..gf2 import (
    BitMatrix,
    BitVector,
    Reducer,
    bits_to_str,
    kernel_rows,
    rref_rows,
)


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An ``[n, k]`` binary linear code.

    Two codes compare equal iff they have the same length and the same
    row space; the RREF generator makes that a tuple comparison.
    """

    gen: BitMatrix

    def __post_init__(self):
        rows, _ = rref_rows(self.gen.rows, self.gen.n_cols)
        object.__setattr__(self, "gen", BitMatrix(self.gen.n_cols, tuple(rows)))

    @property
    def n(self) -> int:
        return self.gen.n_cols

    @property
    def k(self) -> int:
        return self.gen.n_rows

    @property
    def rows(self) -> tuple[int, ...]:
        return self.gen.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.gen.rows == other.gen.rows

    def __hash__(self) -> int:
        return hash((self.n, self.gen.rows))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}])"

    @functools.cached_property
    def _reducer(self) -> Reducer:
        return Reducer(self.gen.rows)

    @functools.cached_property
    def dual(self) -> "LinearCode":
        d = LinearCode(BitMatrix(self.n, tuple(kernel_rows(self.gen.rows, self.n))))
        object.__setattr__(d, "dual", self)
        return d

    def contains(self, v: BitVector | int) -> bool:
        if isinstance(v, BitVector):
            if v.length != self.n:
                raise DimensionError(f"length mismatch: {v.length} vs {self.n}")
            v = v.bits
        return self._reducer.contains(v)

    __contains__ = contains

    def is_subcode_of(self, other: "LinearCode") -> bool:
        if other.n != self.n:
            return False
        return all(other.contains(r) for r in self.gen.rows)

    def codewords(self) -> Iterator[int]:
        """All ``2^k`` codewords as int bitsets (Gray-code order, starting at 0)."""
        if self.k > 24:
            from ..exceptions import ResourceGuardError

            raise ResourceGuardError(f"refusing to list 2^{self.k} codewords")
        rows = self.gen.rows
        v = 0
        yield v
        for i in range(1, 1 << self.k):
            v ^= rows[(i & -i).bit_length() - 1]
            yield v

    def permute(self, perm: Sequence[int]) -> "LinearCode":
        return LinearCode(self.gen.permute_columns(perm))

    def basis(self) -> list[BitVector]:
        return list(self.gen)

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.n) for r in self.gen.rows]


@dataclass(frozen=True)
class CodeClassification:
    is_even: bool
    is_doubly_even: bool
    is_self_orthogonal: bool
    is_self_dual: bool
    contains_all_ones: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def from_rows(rows: BitMatrix | Sequence[str] | Sequence[BitVector], n: int | None = None) -> LinearCode:
    """Code spanned by ``rows`` (a matrix, bit strings or vectors)."""
    if isinstance(rows, BitMatrix):
        M = rows
    elif rows and isinstance(rows[0], BitVector):
        M = BitMatrix.from_vectors(list(rows), n)
    else:
        M = BitMatrix.from_strings(list(rows), n)
    if M.n_cols == 0:
        raise DimensionError("a code needs at least one coordinate")
    return LinearCode(M)


def zero_code(n: int) -> LinearCode:
    return LinearCode(BitMatrix(n, ()))


def full_space(n: int) -> LinearCode:
    return LinearCode(BitMatrix.identity(n))


def repetition_code(n: int) -> LinearCode:
    return LinearCode(BitMatrix(n, ((1 << n) - 1,)))


def span(code: LinearCode, extra: Sequence[int]) -> LinearCode:
    return LinearCode(BitMatrix(code.n, code.rows + tuple(extra)))


def _delete_coordinate(v: int, i: int) -> int:
    low = v & ((1 << i) - 1)
    return low | ((v >> (i + 1)) << i)


def shorten(C: LinearCode, i: int) -> LinearCode:
    """Keep the codewords vanishing at ``i`` and delete that coordinate."""
    if not 0 <= i < C.n:
        raise IndexError(f"coordinate {i} out of range for length {C.n}")
    bit = 1 << i
    hit = [r for r in C.rows if r & bit]
    keep = [r for r in C.rows if not r & bit]
    if hit:
        pivot = hit[0]
        keep += [r ^ pivot for r in hit[1:]]
    return LinearCode(BitMatrix(C.n - 1, tuple(_delete_coordinate(r, i) for r in keep)))


def puncture(C: LinearCode, i: int) -> LinearCode:
    if not 0 <= i < C.n:
        raise IndexError(f"coordinate {i} out of range for length {C.n}")
    return LinearCode(BitMatrix(C.n - 1, tuple(_delete_coordinate(r, i) for r in C.rows)))


def augment(C: LinearCode, v: BitVector) -> LinearCode:
    if v.length != C.n:
        raise DimensionError(f"length mismatch: {v.length} vs {C.n}")
    return LinearCode(BitMatrix(C.n, C.rows + (v.bits,)))


def classify(C: LinearCode) -> CodeClassification:
    """Weight-class flags computed from the basis and pairwise products only.

    ``wt(x + y) = wt(x) + wt(y) - 2 wt(x ⋆ y)`` makes weights mod 4 of every
    codeword a function of the basis weights mod 4 and the pairwise overlap
    parities, so no codeword enumeration is needed.
    """
    rows = C.rows
    weights = [r.bit_count() for r in rows]
    even = all(w % 2 == 0 for w in weights)
    pair_even = all((rows[a] & rows[b]).bit_count() % 2 == 0
                    for a in range(len(rows)) for b in range(a + 1, len(rows)))
    doubly = even and all(w % 4 == 0 for w in weights) and pair_even
    self_orth = even and pair_even
    self_dual = self_orth and 2 * C.k == C.n
    ones = C.contains((1 << C.n) - 1)
    return CodeClassification(even, doubly, self_orth, self_dual, ones)


def schur_products(rows: Sequence[int]) -> list[int]:
    return [rows[a] & rows[b] for a in range(len(rows)) for b in range(a, len(rows))]


def schur_square(C: LinearCode) -> LinearCode:
    """``C⋆C``: span of products of basis pairs (including each row with itself)."""
    return LinearCode(BitMatrix(C.n, tuple(schur_products(C.rows))))


def complement_basis(big: LinearCode, small: LinearCode) -> list[int]:
    """Rows of ``big`` that extend a basis of ``small`` to a basis of ``big``.

    Deterministic: candidates are taken from ``big``'s RREF rows in order.
    """
    red = Reducer(small.rows)
    out = []
    for r in big.rows:
        if red.add(r):
            out.append(r)
    return out
