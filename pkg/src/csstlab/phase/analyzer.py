"""Transversal diagonal gates on CSS codespaces, analysed through codeword weights.

The encoded state ``|u>_L = Σ_{v∈C2} |v + uH>`` picks up ``ω^{wt(v+uH)}``
under ``Γ^(ℓ) = diag(1, ω)^{⊗n}`` with ``ω = e^{2πi/2^ℓ}``, so the gate maps
the codespace into itself exactly when every coset has a single weight
residue modulo ``2^ℓ``.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from math import gcd

import numpy as np

from .. import _bulk
from ..css import CssPair
from ..exceptions import PreconditionError, ResourceGuardError
from ..gf2 import bits_to_str

PROFILE_MAX_C2_DIM = 24
PROFILE_MAX_K = 16
CCZ_MAX_C2_DIM = 12
CCZ_MAX_K = 5


def _label(u: int, k: int) -> str:
    return bits_to_str(u, k) if k else ""


@dataclass(frozen=True)
class PhaseProfile:
    """Residue multisets ``{wt(v + uH) mod 2^ℓ}`` per logical label ``u`` (as residue -> count)."""

    level: int
    k: int
    per_coset: tuple[tuple[tuple[int, int], ...], ...]

    def multiset(self, u: int) -> dict[int, int]:
        return dict(self.per_coset[u])

    def is_constant(self, u: int) -> bool:
        return len(self.per_coset[u]) == 1

    def to_json(self) -> dict:
        return {_label(u, self.k): {str(r): c for r, c in ms} for u, ms in enumerate(self.per_coset)}


@dataclass(frozen=True)
class LogicalDiagonal:
    """Induced logical operator of a diagonal gate with phases ``e^{2πi r_u / 2^level}``.

    ``residues`` is only set when the codespace is preserved. The phase of
    ``u = 0`` is treated as global.
    """

    preserved: bool
    level: int
    k: int
    residues: tuple[int, ...] | None = None

    @property
    def modulus(self) -> int:
        return 1 << self.level

    @property
    def entries(self) -> tuple[complex, ...] | None:
        if self.residues is None:
            return None
        return tuple(cmath.exp(2j * cmath.pi * r / self.modulus) for r in self.residues)

    @property
    def is_identity(self) -> bool:
        return self.preserved and len(set(self.residues)) == 1

    @property
    def order(self) -> int | None:
        if not self.preserved:
            return None
        return logical_order(self)

    def to_json(self) -> dict:
        out = {"preserved": self.preserved, "identity": self.is_identity,
               "order": self.order if self.preserved else "n/a", "entries": {}}
        if self.residues is not None:
            out["entries"] = {_label(u, self.k): f"{r}/{self.modulus}" for u, r in enumerate(self.residues)}
        return out


def logical_order(d: LogicalDiagonal) -> int:
    """Smallest ``m >= 1`` making every entry's ``m``-th power equal to the global one's."""
    if not d.preserved:
        raise PreconditionError("preserved", "the logical operator is undefined when the codespace is not preserved")
    M = d.modulus
    g = M
    for r in d.residues:
        g = gcd(g, (r - d.residues[0]) % M)
    return M // g


def _check_guards(p: CssPair) -> None:
    if p.c2.k > PROFILE_MAX_C2_DIM or p.k > PROFILE_MAX_K:
        raise ResourceGuardError(
            f"phase analysis needs dim C2 <= {PROFILE_MAX_C2_DIM} and k <= {PROFILE_MAX_K}")


def _coset_residues(c2_packed: np.ndarray, shift: np.ndarray, M: int) -> Counter:
    counts = np.zeros(M, dtype=np.int64)
    for _, block in _bulk.iter_span_blocks(c2_packed):
        w = _bulk.weights(block ^ shift)
        counts += np.bincount(w % M, minlength=M)
    return Counter({r: int(c) for r, c in enumerate(counts) if c})


def phase_profile(p: CssPair, level: int) -> PhaseProfile:
    if level < 1:
        raise ValueError("level must be >= 1")
    _check_guards(p)
    M = 1 << level
    n = p.n
    c2 = _bulk.pack(p.c2.rows, n) if p.c2.k else np.zeros((0, _bulk.n_words(n)), dtype=np.uint64)
    reps = p.logical_reps.rows
    out = []
    for u in range(1 << p.k):
        shift = 0
        for i, r in enumerate(reps):
            if (u >> i) & 1:
                shift ^= r
        ms = _coset_residues(c2, _bulk.pack([shift], n)[0], M)
        out.append(tuple(sorted(ms.items())))
    return PhaseProfile(level, p.k, tuple(out))


def diagonal_from_profile(profile: PhaseProfile) -> LogicalDiagonal:
    preserved = all(len(ms) == 1 for ms in profile.per_coset)
    residues = tuple(ms[0][0] for ms in profile.per_coset) if preserved else None
    return LogicalDiagonal(preserved, profile.level, profile.k, residues)


def transversal_z_action(p: CssPair, level: int) -> LogicalDiagonal:
    """Logical action of ``Γ^(ℓ)`` on every qubit (``ℓ = 3`` is transversal T)."""
    return diagonal_from_profile(phase_profile(p, level))


def oblivious_check(p: CssPair, level_max: int) -> bool:
    """``Γ^(ℓ)`` acts as the logical identity for every ``1 <= ℓ <= level_max``."""
    return all(transversal_z_action(p, lv).is_identity for lv in range(1, level_max + 1))


def _trilinear_slices(basis: tuple[int, ...]) -> list[list[int]]:
    """``S[i][j]`` = bitmask over ``l`` of ``wt(g_i ⋆ g_j ⋆ g_l) mod 2``."""
    m = len(basis)
    out = []
    for i in range(m):
        rows = []
        for j in range(m):
            prod = basis[i] & basis[j]
            mask = 0
            for l in range(m):
                if (prod & basis[l]).bit_count() & 1:
                    mask |= 1 << l
            rows.append(mask)
        out.append(rows)
    return out


def _span_ints(masks: list[int]) -> np.ndarray:
    table = np.zeros(1, dtype=np.int64)
    for m in masks:
        table = np.concatenate([table, table ^ m])
    return table


def ccz_action(p: CssPair) -> LogicalDiagonal:
    """Logical action of transversal CCZ across three copies of the code.

    With ``g`` the basis ``[C2 rows; H rows]`` of ``C1``, the parity
    ``wt(a ⋆ b ⋆ c)`` is a trilinear form in the coefficient vectors. For fixed
    ``a, b`` it is linear in ``c``, hence either constant on a coset of ``C2``
    or balanced; that gives the exact count of odd triples per logical label
    ``(u, x, w)`` (bits ``u`` first) without enumerating ``c``.
    """
    k2, k = p.c2.k, p.k
    if k2 > CCZ_MAX_C2_DIM or k > CCZ_MAX_K:
        raise ResourceGuardError(f"ccz analysis needs dim C2 <= {CCZ_MAX_C2_DIM} and k <= {CCZ_MAX_K}")
    basis = p.c2.rows + p.logical_reps.rows
    k1 = len(basis)
    S = _trilinear_slices(basis)
    c2mask = (1 << k2) - 1
    L, V = 1 << k, 1 << k2
    total = V ** 3
    odd = np.zeros((L, L, L), dtype=np.int64)
    w_masks = np.array([w << k2 for w in range(L)], dtype=np.int64)
    for alpha in range(1 << k1):
        rows = [0] * k1
        for i in range(k1):
            if (alpha >> i) & 1:
                rows = [r ^ s for r, s in zip(rows, S[i])]
        Mv = _span_ints(rows).reshape(L, V)  # indexed by (x, beta within coset)
        zero = (Mv & c2mask) == 0
        par = np.bitwise_count(Mv[:, :, None] & w_masks[None, None, :]).astype(np.int64) & 1
        contrib = np.where(zero[:, :, None], par * V, V // 2).sum(axis=1)
        odd[alpha >> k2] += contrib
    preserved = bool(np.all((odd == 0) | (odd == total)))
    residues = None
    if preserved:
        flat = []
        for u in range(L):
            for x in range(L):
                for w in range(L):
                    flat.append(1 if odd[u, x, w] == total else 0)
        # label bits: u in the low k bits, then x, then w
        residues = tuple(flat[(v & (L - 1)) * L * L + ((v >> k) & (L - 1)) * L + (v >> (2 * k))]
                         for v in range(L ** 3))
    return LogicalDiagonal(preserved, 1, 3 * k, residues)


def ccz_odd_counts(p: CssPair) -> dict[tuple[int, int, int], tuple[int, int]]:
    """Brute-force ``(odd, total)`` counts of ``wt(a⋆b⋆c)`` per label triple (tiny codes only)."""
    if 3 * (p.c2.k + p.k) > 18:
        raise ResourceGuardError("brute-force ccz counts limited to 3 dim C1 <= 18")
    reps = p.logical_reps.rows

    def coset(u: int) -> list[int]:
        s = 0
        for i, r in enumerate(reps):
            if (u >> i) & 1:
                s ^= r
        return [s ^ v for v in p.c2.codewords()]

    L = 1 << p.k
    cosets = [coset(u) for u in range(L)]
    out = {}
    for u in range(L):
        for x in range(L):
            for w in range(L):
                odd = sum((a & b & c).bit_count() & 1
                          for a in cosets[u] for b in cosets[x] for c in cosets[w])
                out[(u, x, w)] = (odd, len(cosets[u]) ** 3)
    return out
