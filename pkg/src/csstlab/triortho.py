"""Triorthogonal matrices and codes: checks, extraction and the doubling construction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .classical import LinearCode, classify, shorten, span
from .css import CssPair, css_params, make_css
from .csst import schur_criterion
from .exceptions import PreconditionError
from .gf2 import BitMatrix, Reducer


@dataclass(frozen=True)
class TriorthogonalWitness:
    """``failing_rows`` holds the first odd-overlap triple (or pair) of row indices."""

    ok: bool
    failing_rows: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "failing_rows": list(self.failing_rows) if self.failing_rows else None}


def is_triorthogonal(G: BitMatrix) -> TriorthogonalWitness:
    """Every triple and every pair of distinct rows overlaps in an even number of positions.

    Triples are scanned before pairs, each in lexicographic order, so the
    reported witness is deterministic.
    """
    rows = G.rows
    m = len(rows)
    for a in range(m):
        ra = rows[a]
        for b in range(a + 1, m):
            ab = ra & rows[b]
            for c in range(b + 1, m):
                if (ab & rows[c]).bit_count() & 1:
                    return TriorthogonalWitness(False, (a, b, c))
    for a, b in combinations(range(m), 2):
        if (rows[a] & rows[b]).bit_count() & 1:
            return TriorthogonalWitness(False, (a, b))
    return TriorthogonalWitness(True)


def stacked_generator(p: CssPair, odd_rows: BitMatrix | None = None) -> BitMatrix:
    """``[odd rows; C2 basis]``; the odd rows default to the pair's logical representatives."""
    odd = odd_rows.rows if odd_rows is not None else p.logical_reps.rows
    return BitMatrix(p.n, tuple(odd) + p.c2.rows)


def is_triorthogonal_pair(p: CssPair) -> TriorthogonalWitness:
    """Triorthogonality of the pair's generator ``[G1; G0]`` with odd rows spanning ``C1`` mod ``C2``.

    All rows of ``C2`` must be even and every coset representative odd;
    otherwise the first offending row index is reported.
    """
    G = stacked_generator(p)
    k = p.k
    for i, r in enumerate(G.rows):
        if (r.bit_count() & 1) != (1 if i < k else 0):
            return TriorthogonalWitness(False, (i,))
    return is_triorthogonal(G)


def extract_triorthogonal(p: CssPair, odd_rows: BitMatrix) -> CssPair:
    """``C2 ⊆ C2 ⊕ rowspace(odd_rows)`` for a CSS-T pair and triorthogonal odd rows of ``C1``."""
    if odd_rows.n_cols != p.n:
        raise PreconditionError("length", f"odd rows have length {odd_rows.n_cols}, code has {p.n}")
    if not odd_rows.rows:
        raise PreconditionError("odd_rows_nonempty", "at least one odd row is required")
    if not schur_criterion(p.c1, p.c2).schur_ok:
        raise PreconditionError("schur_criterion", "the pair is not CSS-T")
    red = Reducer(p.c2.rows)
    for i, r in enumerate(odd_rows.rows):
        if not r.bit_count() & 1:
            raise PreconditionError("odd_weight", f"row {i} has even weight")
        if not p.c1.contains(r):
            raise PreconditionError("in_c1", f"row {i} is not in C1")
        if not red.add(r):
            raise PreconditionError("independent_mod_c2", f"row {i} is dependent modulo C2")
    if not is_triorthogonal(odd_rows).ok:
        raise PreconditionError("odd_rows_triorthogonal", "odd rows are not triorthogonal")
    out = make_css(span(p.c2, odd_rows.rows), p.c2)
    w = is_triorthogonal(stacked_generator(out, odd_rows))
    if not w.ok:  # pragma: no cover - excluded by the Schur criterion
        raise PreconditionError("stack_triorthogonal", f"stacked generator fails at rows {w.failing_rows}")
    return out


def ingredient_from_self_dual(C: LinearCode, i: int) -> CssPair:
    """Shorten a self-dual code at ``i`` and adjoin the all-ones word: an ``[[n-1, 1]]`` pair."""
    if not classify(C).is_self_dual:
        raise PreconditionError("self_dual", "input code is not self-dual")
    if any(C.contains(1 << j) for j in range(C.n)):  # pragma: no cover - impossible when self-dual
        raise PreconditionError("min_distance", "code has a weight-one word")
    c2 = shorten(C, i)
    ones = (1 << c2.n) - 1
    return make_css(span(c2, [ones]), c2)


@dataclass(frozen=True)
class DoublingRecipe:
    """Inputs of the doubling: a self-orthogonal ``[[n1,1]]`` pair and a triorthogonal ``[[n2,1]]`` pair.

    ``mode="strict"`` requires the all-ones word in ``trio_b.c1``. ``extended``
    substitutes the odd coset representative ``w`` of ``trio_b`` for ``1_{n2}``.
    """

    css_a: CssPair
    trio_b: CssPair
    mode: str = "strict"

    @property
    def n1(self) -> int:
        return self.css_a.n

    @property
    def n2(self) -> int:
        return self.trio_b.n

    def odd_generator(self) -> int:
        ones = (1 << self.n2) - 1
        if self.trio_b.c1.contains(ones) and not self.trio_b.c2.contains(ones):
            return ones
        if self.mode == "strict":
            raise PreconditionError("trio_all_ones", "all-ones is not an odd generator of trio_b (strict mode)")
        return self.trio_b.logical_reps.rows[0]

    def validate(self) -> None:
        a, b = self.css_a, self.trio_b
        if self.mode not in ("strict", "extended"):
            raise PreconditionError("mode", f"unknown doubling mode {self.mode!r}")
        if a.n % 2 == 0:
            raise PreconditionError("n1_odd", "css_a must have odd length")
        if b.n % 2 == 0:
            raise PreconditionError("n2_odd", "trio_b must have odd length")
        if a.k != 1 or b.k != 1:
            raise PreconditionError("k_one", "both inputs must encode one qubit")
        if not classify(a.c2).is_self_orthogonal:
            raise PreconditionError("c2_self_orthogonal", "css_a.c2 is not self-orthogonal")
        if not a.c1.contains((1 << a.n) - 1):
            raise PreconditionError("a_all_ones", "all-ones is not in css_a.c1")
        w = self.odd_generator()
        G = BitMatrix(b.n, (w,) + b.c2.rows)
        if not (w.bit_count() & 1) or any(r.bit_count() & 1 for r in b.c2.rows) or not is_triorthogonal(G).ok:
            raise PreconditionError("trio_b_triorthogonal", "trio_b is not a triorthogonal code")


def double(r: DoublingRecipe) -> CssPair:
    """``C2''`` spanned by ``(x, x, 0)``, ``(0, 0, y)`` and ``(0, 1, w)``; ``C1'' = C2'' ⊕ (1, 1, w)``.

    Coordinates are laid out as three consecutive blocks of lengths n1, n1, n2.
    With ``w = 1_{n2}`` the adjoined word is the all-ones vector.
    """
    r.validate()
    n1, n2 = r.n1, r.n2
    w = r.odd_generator()
    ones1 = (1 << n1) - 1
    n = 2 * n1 + n2
    rows = [x | (x << n1) for x in r.css_a.c2.rows]
    rows += [y << (2 * n1) for y in r.trio_b.c2.rows]
    rows.append((ones1 << n1) | (w << (2 * n1)))
    c2 = LinearCode(BitMatrix(n, tuple(rows)))
    top = ones1 | (ones1 << n1) | (w << (2 * n1))
    out = make_css(span(c2, [top]), c2)
    if not schur_criterion(out.c1, out.c2).schur_ok:
        raise PreconditionError("output_csst", "doubled pair fails the Schur criterion")
    return out


def doubling_report(r: DoublingRecipe, method: str = "auto", *, seed: int = 0,
                    budget: float | None = None) -> dict:
    """Double, then compare the computed distance with ``min(d1, d2 + 2)``."""
    out = double(r)
    pa = css_params(r.css_a, method, seed=seed, budget=budget)
    pb = css_params(r.trio_b, method, seed=seed, budget=budget)
    po = css_params(out, method, seed=seed, budget=budget)
    predicted = None
    if pa.d.value is not None and pb.d.value is not None:
        predicted = min(pa.d.value, pb.d.value + 2)
    tri = is_triorthogonal(stacked_generator(out, BitMatrix(out.n, ((1 << out.n) - 1,))))
    return {
        "pair": out,
        "params": po,
        "d1": pa.d.value,
        "d2": pb.d.value,
        "predicted_d": predicted,
        "distance_matches": None if predicted is None or po.d.value is None else po.d.value == predicted,
        "triorthogonal": tri,
    }


def doubled_length(n1: int, n2: int) -> int:
    return 2 * n1 + n2


def doubled_distance(d1: int, d2: int) -> int:
    return min(d1, d2 + 2)


def quantum_reed_muller_15() -> CssPair:
    """The ``[[15,1,3]]`` triorthogonal code.

    ``C2`` is spanned by the four coordinate functions evaluated on the
    nonzero points ``1..15`` of ``F2^4`` (column ``j`` is the point ``j+1``);
    ``C1`` adds the all-ones word.
    """
    n = 15
    rows = tuple(sum(1 << j for j in range(n) if ((j + 1) >> i) & 1) for i in range(4))
    c2 = LinearCode(BitMatrix(n, rows))
    return make_css(span(c2, [(1 << n) - 1]), c2)
