"""CSS pairs ``C2 ⊆ C1``: parameters, degeneracy and parity-check blocks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classical import DistanceResult, LinearCode, coset_min_weight, min_distance
from .classical.code import complement_basis
from .exceptions import ContainmentError, DimensionError, PreconditionError
from .gf2 import BitMatrix, bits_to_str, kernel_rows


@dataclass(frozen=True)
class CssPair:
    """Nested codes with a fixed matrix of logical coset representatives.

    ``logical_reps`` (the matrix H of the encoding ``|u> -> Σ_{x∈C2} |x + uH>``)
    is chosen by completing ``c2`` with the RREF rows of ``c1`` in order, so
    coset labels are reproducible.
    """

    c1: LinearCode
    c2: LinearCode
    logical_reps: BitMatrix

    @property
    def n(self) -> int:
        return self.c1.n

    @property
    def k(self) -> int:
        return self.c1.k - self.c2.k

    def __repr__(self) -> str:
        return f"CssPair([[{self.n},{self.k}]])"

    def permute(self, perm: Sequence[int]) -> "CssPair":
        return make_css(self.c1.permute(perm), self.c2.permute(perm))


def make_css(c1: LinearCode, c2: LinearCode) -> CssPair:
    if c1.n != c2.n:
        raise DimensionError(f"length mismatch: {c1.n} vs {c2.n}")
    if not c2.is_subcode_of(c1):
        raise ContainmentError("C2 is not contained in C1")
    if c1.k == c2.k:
        raise PreconditionError("k_positive", "C1 == C2 gives no logical qubits")
    reps = BitMatrix(c1.n, tuple(complement_basis(c1, c2)))
    return CssPair(c1, c2, reps)


@dataclass(frozen=True)
class CssParams:
    n: int
    k: int
    d_x: DistanceResult
    d_z: DistanceResult
    d: DistanceResult
    d_c1: DistanceResult | None = None
    d_c2_dual: DistanceResult | None = None
    x_degenerate: bool | None = None
    z_degenerate: bool | None = None

    def triple(self) -> tuple[int, int, int | None]:
        return self.n, self.k, self.d.value

    def same_parameters(self, other: "CssParams") -> bool:
        """Field-by-field equality of the numbers (certificates may differ)."""
        return (self.n, self.k, self.d_x.value, self.d_z.value, self.d.value,
                self.x_degenerate, self.z_degenerate) == (
            other.n, other.k, other.d_x.value, other.d_z.value, other.d.value,
            other.x_degenerate, other.z_degenerate)

    def to_json(self) -> dict:
        def num(r: DistanceResult | None):
            if r is None or r.value is None:
                return "unknown"
            return r.value

        def flag(f):
            return "unknown" if f is None else f

        certs = {}
        for name, r in (("d_x", self.d_x), ("d_z", self.d_z)):
            if r.certificate is not None:
                certs[name] = str(r.certificate)
        out = {
            "n": self.n,
            "k": self.k,
            "d_x": num(self.d_x),
            "d_z": num(self.d_z),
            "d": num(self.d),
            "x_degenerate": flag(self.x_degenerate),
            "z_degenerate": flag(self.z_degenerate),
            "certificates": certs,
        }
        bounds = {name: [r.lower_bound, r.upper_bound if r.upper_bound is not None else "unknown"]
                  for name, r in (("d_x", self.d_x), ("d_z", self.d_z)) if r.value is None}
        if bounds:
            out["bounds"] = bounds
        return out


def combine_min(a: DistanceResult, b: DistanceResult) -> DistanceResult:
    """Distance of a union of two word sets from the distances of each."""
    if a.value is not None and b.value is not None:
        pick = a if (a.value, str(a.certificate)) <= (b.value, str(b.certificate)) else b
        return DistanceResult(pick.value, pick.value, pick.value, pick.certificate, pick.method)
    lb = min(a.lower_bound, b.lower_bound)
    ubs = [r for r in (a, b) if r.upper_bound is not None]
    if not ubs:
        return DistanceResult(None, lb, None, None, a.method)
    pick = min(ubs, key=lambda r: r.upper_bound)
    if lb >= pick.upper_bound:  # pragma: no cover - bounds already met
        return DistanceResult(pick.upper_bound, lb, pick.upper_bound, pick.certificate, pick.method)
    return DistanceResult(None, lb, pick.upper_bound, pick.certificate, pick.method)


def _greater(a: DistanceResult, b: DistanceResult) -> bool | None:
    if a.value is None or b.value is None:
        # bounds can still settle the comparison
        if a.lower_bound > (b.upper_bound if b.upper_bound is not None else float("inf")):
            return True
        if a.upper_bound is not None and a.upper_bound <= b.lower_bound:
            return False
        return None
    return a.value > b.value


def css_params(p: CssPair, method: str = "auto", *, seed: int = 0,
               budget: float | None = None) -> CssParams:
    """``[[n, k, d]]`` with the X/Z distances, ambient distances and degeneracy flags."""
    d_x = coset_min_weight(p.c1, p.c2, method, seed=seed, budget=budget)
    d_z = coset_min_weight(p.c2.dual, p.c1.dual, method, seed=seed, budget=budget)
    d_c1 = min_distance(p.c1, method, seed=seed, budget=budget)
    d_c2d = min_distance(p.c2.dual, method, seed=seed, budget=budget)
    return CssParams(
        n=p.n, k=p.k, d_x=d_x, d_z=d_z, d=combine_min(d_x, d_z),
        d_c1=d_c1, d_c2_dual=d_c2d,
        x_degenerate=_greater(d_x, d_c1), z_degenerate=_greater(d_z, d_c2d),
    )


def parity_check_blocks(p: CssPair) -> tuple[BitMatrix, BitMatrix]:
    """``H_X`` generating ``C2`` and ``H_Z`` generating ``C1⊥``."""
    hx = p.c2.gen
    hz = BitMatrix(p.n, tuple(kernel_rows(p.c1.rows, p.n)))
    return hx, hz


def block_parity_matrix(hx: BitMatrix, hz: BitMatrix) -> BitMatrix:
    """``[[H_X, 0], [0, H_Z]]`` over ``2n`` columns."""
    n = hx.n_cols
    if hz.n_cols != n:
        raise DimensionError("H_X and H_Z must have the same number of columns")
    rows = hx.rows + tuple(r << n for r in hz.rows)
    return BitMatrix(2 * n, rows)


def pair_to_json(p: CssPair) -> dict:
    return {
        "n": p.n,
        "c1": p.c1.to_strings(),
        "c2": p.c2.to_strings(),
        "logical_reps": [bits_to_str(r, p.n) for r in p.logical_reps.rows],
    }
