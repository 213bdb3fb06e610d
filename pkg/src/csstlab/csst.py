"""CSS-T criteria, the φ-doubling construction and its sparse parity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .classical import DistanceResult, LinearCode
from .classical.code import schur_products
from .css import CssPair, CssParams, _greater, combine_min, css_params, make_css, parity_check_blocks
from .exceptions import (
    ContainmentError,
    DimensionError,
    PreconditionError,
    ResourceGuardError,
)
from .gf2 import (
    BitMatrix,
    BitVector,
    Reducer,
    coordinates,
    kernel_rows,
    permute_bits,
    rref_rows,
    same_rowspace,
)

DEFINITION_MAX_DIM = 24
ITERATE_MAX_LEVEL = 12
ITERATE_MAX_LENGTH = 1 << 16


def _require_nested(c1: LinearCode, c2: LinearCode) -> None:
    if c1.n != c2.n or not c2.is_subcode_of(c1):
        raise ContainmentError("C2 is not contained in C1")


@dataclass(frozen=True)
class CssTVerdict:
    """Result of the CSS-T checks.

    A check that was not run (or could not finish) is ``None``. ``witness``
    names the first failure found: basis products for the Schur criterion,
    an element of ``C2`` for the definition check.
    """

    schur_ok: bool | None = None
    definition_ok: bool | None = None
    witness: dict | None = None

    @property
    def ok(self) -> bool | None:
        vals = [v for v in (self.schur_ok, self.definition_ok) if v is not None]
        if not vals:
            return None
        return all(vals)

    def to_json(self) -> dict:
        def tri(v):
            return "unknown" if v is None else v

        return {"schur_ok": tri(self.schur_ok), "definition_ok": tri(self.definition_ok),
                "witness": self.witness}


def schur_criterion(c1: LinearCode, c2: LinearCode) -> CssTVerdict:
    """``C1⋆C1 ⊆ C2⊥``, checked on products of basis rows against rows of ``C2``."""
    _require_nested(c1, c2)
    rows = c1.rows
    n = c1.n
    for a in range(len(rows)):
        for b in range(a, len(rows)):
            prod = rows[a] & rows[b]
            for z in c2.rows:
                if (prod & z).bit_count() & 1:
                    return CssTVerdict(schur_ok=False, witness={
                        "x": str(BitVector(n, rows[a])),
                        "y": str(BitVector(n, rows[b])),
                        "z": str(BitVector(n, z)),
                    })
    return CssTVerdict(schur_ok=True)


def _compress(v: int, support: Sequence[int]) -> int:
    out = 0
    for i, s in enumerate(support):
        if (v >> s) & 1:
            out |= 1 << i
    return out


def supported_subcode(code_rows: Sequence[int], n: int, support_mask: int) -> list[int]:
    """Rows spanning the codewords whose support lies inside ``support_mask``."""
    outside = ((1 << n) - 1) & ~support_mask
    work = list(code_rows)
    for col in range(n):
        bit = 1 << col
        if not outside & bit:
            continue
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        work = [r ^ prow if r & bit else r for r in work]
    return [r for r in work if r]


def _definition_x_ok(c1_dual_rows: Sequence[int], n: int, x: int) -> tuple[bool, int | None]:
    support = [i for i in range(n) if (x >> i) & 1]
    m = len(support)
    if m == 0:
        return True, None
    d_rows = [_compress(r, support) for r in supported_subcode(c1_dual_rows, n, x)]
    d_rows, _ = rref_rows(d_rows, m)
    red = Reducer(d_rows)
    for v in kernel_rows(d_rows, m):
        if not red.contains(v):
            return False, v
    return True, None


def definition_check(c1: LinearCode, c2: LinearCode) -> CssTVerdict:
    """The two conditions of the CSS-T definition, by enumeration of ``C2``.

    For each ``x`` in ``C2`` the words of ``C1⊥`` supported on ``x`` form a code
    ``D_x`` (restricted to ``Supp(x)``); a self-dual code of dimension
    ``wt(x)/2`` inside ``D_x`` exists exactly when ``wt(x)`` is even and
    ``D_x ⊇ D_x⊥``.
    """
    _require_nested(c1, c2)
    n = c1.n
    for r in c2.rows:
        if r.bit_count() & 1:
            return CssTVerdict(definition_ok=False,
                               witness={"condition": "even", "x": str(BitVector(n, r))})
    if c2.k > DEFINITION_MAX_DIM:
        raise ResourceGuardError(f"definition check enumerates C2; dim {c2.k} > {DEFINITION_MAX_DIM}")
    dual_rows = c1.dual.rows
    for x in c2.codewords():
        ok, bad = _definition_x_ok(dual_rows, n, x)
        if not ok:
            return CssTVerdict(definition_ok=False, witness={
                "condition": "self_dual_on_support", "x": str(BitVector(n, x)),
                "dual_word_outside": str(BitVector(x.bit_count(), bad)),
            })
    return CssTVerdict(definition_ok=True)


def csst_check(c1: LinearCode, c2: LinearCode, definition: bool = True,
               max_dim: int = DEFINITION_MAX_DIM) -> CssTVerdict:
    """Both CSS-T checks; the definition check is skipped when ``dim C2 > max_dim``."""
    s = schur_criterion(c1, c2)
    d_ok, witness = None, s.witness
    if definition and c2.k <= max_dim:
        try:
            d = definition_check(c1, c2)
            d_ok = d.definition_ok
            witness = witness or d.witness
        except ResourceGuardError:
            d_ok = None
    return CssTVerdict(schur_ok=s.schur_ok, definition_ok=d_ok, witness=witness)


# ---------------------------------------------------------------------------
# φ maps


@dataclass(frozen=True)
class PhiMap:
    """A map ``C1 -> F2^n`` used as the second block of the doubling.

    ``kind`` is ``identity``, ``permutation`` (``perm[i]`` is the image of
    coordinate ``i``) or ``affine`` (``φ(b) = b + shift`` on each row ``b`` of
    ``basis``, extended linearly).
    """

    kind: str
    domain_length: int
    perm: tuple[int, ...] | None = None
    shift: int = 0
    basis: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in ("identity", "permutation", "affine"):
            raise ValueError(f"unknown phi kind {self.kind!r}")
        if self.kind == "permutation":
            if self.perm is None or sorted(self.perm) != list(range(self.domain_length)):
                raise ValueError("permutation must be a bijection of the coordinates")

    @classmethod
    def identity(cls, n: int) -> "PhiMap":
        return cls("identity", n)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "PhiMap":
        return cls("permutation", len(perm), perm=tuple(perm))

    @classmethod
    def affine(cls, shift: BitVector | int, basis: BitMatrix | Sequence[int], n: int | None = None) -> "PhiMap":
        if isinstance(shift, BitVector):
            n, shift = shift.length, shift.bits
        rows = basis.rows if isinstance(basis, BitMatrix) else tuple(basis)
        if n is None:
            raise DimensionError("length needed for an integer shift")
        return cls("affine", n, shift=shift, basis=tuple(rows))

    @property
    def is_coordinate_permutation(self) -> bool:
        return self.kind in ("identity", "permutation")

    def apply(self, x: int) -> int:
        if self.kind == "identity":
            return x
        if self.kind == "permutation":
            return permute_bits(x, self.perm)
        coeffs = coordinates(x, self.basis)
        if coeffs is None:
            raise PreconditionError("phi_domain", "vector outside the span of the affine basis")
        return x ^ (self.shift if coeffs.bit_count() & 1 else 0)

    def spec(self) -> str:
        if self.kind == "identity":
            return "identity"
        if self.kind == "permutation":
            return "perm:" + ",".join(map(str, self.perm))
        from .gf2 import bits_to_str

        return "affine:" + bits_to_str(self.shift, self.domain_length)


@dataclass(frozen=True)
class PhiValidation:
    ok: bool
    reason: str | None = None
    witness: dict | None = None


def _check_domain(c1: LinearCode, phi: PhiMap) -> None:
    if phi.domain_length != c1.n:
        raise DimensionError(f"phi acts on length {phi.domain_length}, code has length {c1.n}")
    if phi.kind == "affine":
        basis = phi.basis
        if len(basis) != c1.k or Reducer(basis).rank != c1.k or not all(c1.contains(b) for b in basis):
            raise PreconditionError("phi_domain", "affine basis is not a basis of C1")


def validate_phi(c1: LinearCode, c2: LinearCode, phi: PhiMap, exhaustive: bool = False) -> PhiValidation:
    """Linearity of φ on ``C1`` and the triple-overlap parity condition.

    The parity form is trilinear, so basis triples suffice; ``exhaustive``
    checks every triple of codewords instead (small codes only).
    """
    _require_nested(c1, c2)
    _check_domain(c1, phi)
    n = c1.n
    if exhaustive:
        if 2 * c1.k + c2.k > 24:
            raise ResourceGuardError("exhaustive phi validation limited to 2 dim C1 + dim C2 <= 24")
        xs = list(c1.codewords())
        zs = list(c2.codewords())
        img = {x: phi.apply(x) for x in xs}
        for x, y in product(xs, xs):
            if img[x] ^ img[y] != img[x ^ y]:
                return PhiValidation(False, "not_linear", {"x": str(BitVector(n, x)), "y": str(BitVector(n, y))})
    else:
        xs = list(phi.basis) if phi.kind == "affine" else list(c1.rows)
        zs = list(c2.rows)
        img = {x: phi.apply(x) for x in xs}
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                s = xs[a] ^ xs[b]
                if phi.apply(s) != img[xs[a]] ^ img[xs[b]]:
                    return PhiValidation(False, "not_linear",
                                         {"x": str(BitVector(n, xs[a])), "y": str(BitVector(n, xs[b]))})
        for z in zs:
            img.setdefault(z, phi.apply(z))
    for a in range(len(xs)):
        for b in range(a, len(xs)):
            x, y = xs[a], xs[b]
            for z in zs:
                lhs = (x & y & z).bit_count() + (img[x] & img[y] & img[z]).bit_count()
                if lhs & 1:
                    return PhiValidation(False, "triple_parity", {
                        "x": str(BitVector(n, x)), "y": str(BitVector(n, y)), "z": str(BitVector(n, z))})
    return PhiValidation(True)


def _graph_code(code: LinearCode, phi: PhiMap) -> LinearCode:
    n = code.n
    return LinearCode(BitMatrix(2 * n, tuple(r | (phi.apply(r) << n) for r in code.rows)))


def nphi(p: CssPair, phi: PhiMap | None = None) -> CssPair:
    """``({(x, φ(x)) : x ∈ C1}, {(z, φ(z)) : z ∈ C2})``, coordinates ordered (x block, φ block)."""
    phi = phi or PhiMap.identity(p.n)
    v = validate_phi(p.c1, p.c2, phi)
    if not v.ok:
        raise PreconditionError(f"phi_{v.reason}", f"phi rejected: {v.reason} {v.witness}")
    out = make_css(_graph_code(p.c1, phi), _graph_code(p.c2, phi))
    if not schur_criterion(out.c1, out.c2).schur_ok:  # pragma: no cover - guarded by validate_phi
        raise PreconditionError("nphi_not_csst")
    return out


def iterate_n(p: CssPair, levels: int) -> CssPair:
    """Apply the identity doubling ``levels`` times (length ``2^levels n``)."""
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if levels > ITERATE_MAX_LEVEL or (p.n << levels) > ITERATE_MAX_LENGTH:
        raise ResourceGuardError(f"iterate_n refused: length {p.n << levels} at level {levels}")
    for _ in range(levels):
        p = nphi(p)
    return p


def _scale(r: DistanceResult, factor: int, cert: BitVector | None) -> DistanceResult:
    ub = r.upper_bound * factor if r.upper_bound is not None else None
    val = r.value * factor if r.value is not None else None
    return DistanceResult(val, r.lower_bound * factor, ub, cert, r.method)


def lifted_params(p: CssPair, base: CssParams, phi: PhiMap | None = None) -> CssParams:
    """Parameters of ``nphi(p, φ)`` for a coordinate permutation φ, from those of ``p``.

    Words of ``C1^N \\ C2^N`` are ``(x, φx)`` so ``d_X`` doubles; a word
    ``(x, y)`` of ``(C2^N)⊥`` satisfies ``x + φ⁻¹y ∈ C2⊥`` and the cheapest
    choice is ``(s, 0)``, so ``d_Z`` is unchanged. Likewise ``d(C1^N) = 2 d(C1)``
    and ``d((C2^N)⊥) = min(d(C2⊥), 2)`` via ``(e_i, φ e_i)``.
    """
    phi = phi or PhiMap.identity(p.n)
    if not phi.is_coordinate_permutation:
        raise PreconditionError("phi_not_permutation", "parameter lifting needs a coordinate permutation")
    n = p.n

    def graph(cert: BitVector | None) -> BitVector | None:
        if cert is None:
            return None
        return BitVector(2 * n, cert.bits | (phi.apply(cert.bits) << n))

    def left(cert: BitVector | None) -> BitVector | None:
        return None if cert is None else BitVector(2 * n, cert.bits)

    d_x = _scale(base.d_x, 2, graph(base.d_x.certificate))
    d_z = DistanceResult(base.d_z.value, base.d_z.lower_bound, base.d_z.upper_bound,
                         left(base.d_z.certificate), base.d_z.method)
    d_c1 = _scale(base.d_c1, 2, graph(base.d_c1.certificate))
    c2d = base.d_c2_dual
    if c2d.value is not None and c2d.value <= 2:
        d_c2d = DistanceResult(c2d.value, c2d.value, c2d.value, left(c2d.certificate), c2d.method)
    else:
        e0 = BitVector(2 * n, 1 | (phi.apply(1) << n))
        if c2d.lower_bound >= 2:
            d_c2d = DistanceResult(2, 2, 2, e0, c2d.method)
        else:
            d_c2d = DistanceResult(None, c2d.lower_bound, 2, e0, c2d.method)

    return CssParams(n=2 * n, k=base.k, d_x=d_x, d_z=d_z, d=combine_min(d_x, d_z),
                     d_c1=d_c1, d_c2_dual=d_c2d,
                     x_degenerate=_greater(d_x, d_c1), z_degenerate=_greater(d_z, d_c2d))


def nphi_params(p: CssPair, method: str = "auto", *, seed: int = 0, budget: float | None = None,
                phi: PhiMap | None = None) -> CssParams:
    return lifted_params(p, css_params(p, method, seed=seed, budget=budget), phi)


# ---------------------------------------------------------------------------
# sparse parity checks of the doubled code


@dataclass(frozen=True)
class SparsityReport:
    r_x: int
    r_z: int
    max_row_weight_x: int
    max_row_weight_z: int

    @property
    def predicted(self) -> tuple[int, int]:
        return 2 * self.r_x, max(self.r_z, 2)

    @property
    def matches(self) -> bool:
        return (self.max_row_weight_x, self.max_row_weight_z) == self.predicted

    def to_json(self) -> dict:
        return {"r_x": self.r_x, "r_z": self.r_z,
                "max_row_weight_x": self.max_row_weight_x,
                "max_row_weight_z": self.max_row_weight_z,
                "predicted": list(self.predicted), "matches": self.matches}


@dataclass(frozen=True)
class DoubledChecks:
    hx: BitMatrix
    hz: BitMatrix
    report: SparsityReport
    rowspaces_ok: bool


def hn_parity(p: CssPair, hx: BitMatrix | None = None, hz: BitMatrix | None = None) -> DoubledChecks:
    """``H_X^N = [H_X H_X]`` and ``H_Z^N = [[H_Z, 0], [I, I]]`` for the identity doubling.

    ``hx``/``hz`` default to the pair's own blocks; sparse replacements are
    accepted if they generate ``C2`` and ``C1⊥``.
    """
    n = p.n
    dhx, dhz = parity_check_blocks(p)
    hx = hx if hx is not None else dhx
    hz = hz if hz is not None else dhz
    if hx.n_cols != n or hz.n_cols != n:
        raise DimensionError("check matrices must have n columns")
    if not same_rowspace(hx, p.c2.gen):
        raise PreconditionError("hx_rowspace", "H_X does not generate C2")
    if not same_rowspace(hz, dhz):
        raise PreconditionError("hz_rowspace", "H_Z does not generate C1 dual")
    hx_n = BitMatrix(2 * n, tuple(r | (r << n) for r in hx.rows))
    hz_n = BitMatrix(2 * n, tuple(hz.rows) + tuple((1 << i) | (1 << (n + i)) for i in range(n)))
    doubled = nphi(p)
    ok = (same_rowspace(hx_n, doubled.c2.gen)
          and same_rowspace(hz_n, BitMatrix(2 * n, tuple(kernel_rows(doubled.c1.rows, 2 * n)))))
    report = SparsityReport(hx.max_row_weight(), hz.max_row_weight(),
                            hx_n.max_row_weight(), hz_n.max_row_weight())
    return DoubledChecks(hx_n, hz_n, report, ok)


def identity_condition(c1: LinearCode) -> bool:
    """``C1⋆C1 ⊆ C1⊥`` on basis rows: every pairwise product is orthogonal to every row."""
    rows = c1.rows
    return all((prod & r).bit_count() % 2 == 0 for prod in schur_products(rows) for r in rows)
