"""Text formats: code files, polynomial specs, self-dual databases, pair JSON and φ specs."""

from __future__ import annotations

import json
from pathlib import Path

from .classical import LinearCode, classify, cyclic_code
from .classical.cyclic import poly_from_bits
from .css import CssPair, make_css, pair_to_json
from .csst import PhiMap
from .exceptions import ParseError
from .gf2 import BitMatrix, bits_from_str, rank_rows


def _rows_from_lines(lines: list[tuple[int, str]], n: int, k: int, source: str | None) -> list[int]:
    if len(lines) != k:
        where = lines[-1][0] if lines else None
        raise ParseError(f"expected {k} rows, found {len(lines)}", where, source)
    rows = []
    for lineno, text in lines:
        if len(text) != n or set(text) - {"0", "1"}:
            raise ParseError(f"row must be {n} characters from {{0,1}}, got {text!r}", lineno, source)
        rows.append(bits_from_str(text))
    return rows


def _header(text: str, lineno: int, source: str | None) -> tuple[int, int]:
    parts = text.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"header must be 'n k', got {text!r}", lineno, source)
    n, k = int(parts[0]), int(parts[1])
    if n < 1:
        raise ParseError("length must be positive", lineno, source)
    return n, k


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append((i, s))
    return out


def parse_matrix(text: str, source: str | None = None) -> BitMatrix:
    """``n k`` on the first line, then ``k`` rows of ``n`` bits (coordinate 0 first)."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input", None, source)
    n, k = _header(lines[0][1], lines[0][0], source)
    rows = _rows_from_lines(lines[1:], n, k, source)
    return BitMatrix(n, tuple(rows))


def parse_code(text: str, source: str | None = None) -> LinearCode:
    M = parse_matrix(text, source)
    if rank_rows(M.rows) != M.n_rows:
        raise ParseError("generator rows are linearly dependent", None, source)
    return LinearCode(M)


def format_code(C: LinearCode | BitMatrix) -> str:
    M = C.gen if isinstance(C, LinearCode) else C
    return "\n".join([f"{M.n_cols} {M.n_rows}"] + M.to_strings()) + "\n"


def parse_poly_spec(spec: str) -> LinearCode:
    """``n;bits`` with coefficients low degree first, e.g. ``7;1101``."""
    try:
        n_text, bits = spec.split(";")
        n = int(n_text)
        g = poly_from_bits(bits)
    except ValueError as exc:
        raise ParseError(f"polynomial spec must look like 'n;bits': {exc}", None, spec) from None
    return cyclic_code(n, g)


def parse_selfdual_db(text: str, source: str | None = None) -> dict[str, LinearCode]:
    """Blocks headed by ``# name n k selfdual``, each followed by a code in file format."""
    out: dict[str, LinearCode] = {}
    block: list[tuple[int, str]] = []
    header: tuple[int, str] | None = None

    def flush():
        if header is None:
            if block:
                raise ParseError("code block without '# name n k selfdual' header", block[0][0], source)
            return
        lineno, text_h = header
        parts = text_h.lstrip("#").split()
        if len(parts) != 4 or parts[3] != "selfdual" or not (parts[1].isdigit() and parts[2].isdigit()):
            raise ParseError(f"bad header {text_h!r}", lineno, source)
        name = parts[0]
        n, k = int(parts[1]), int(parts[2])
        if not block:
            raise ParseError("empty code block", lineno, source)
        bn, bk = _header(block[0][1], block[0][0], source)
        if (bn, bk) != (n, k):
            raise ParseError("block size disagrees with its header", block[0][0], source)
        rows = _rows_from_lines(block[1:], n, k, source)
        C = LinearCode(BitMatrix(n, tuple(rows)))
        if C.k != k or not classify(C).is_self_dual:
            raise ParseError(f"selfdual check failed for {name}", lineno, source)
        if name in out:
            raise ParseError(f"duplicate code name {name}", lineno, source)
        out[name] = C

    for i, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s:
            flush()
            header, block = None, []
        elif s.startswith("#"):
            if s.endswith("selfdual"):
                flush()
                header, block = (i, s), []
        else:
            block.append((i, s))
    flush()
    return out


def format_selfdual_db(codes: dict[str, LinearCode]) -> str:
    blocks = [f"# {name} {C.n} {C.k} selfdual\n" + format_code(C) for name, C in codes.items()]
    return "\n".join(blocks)


def parse_pair_json(text: str, source: str | None = None) -> CssPair:
    """``{"n": n, "c1": [rows], "c2": [rows]}``; containment is re-checked."""
    try:
        obj = json.loads(text)
        n = int(obj["n"])
        c1 = obj["c1"]
        c2 = obj["c2"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"invalid pair JSON: {exc}", None, source) from None
    for name, rows in (("c1", c1), ("c2", c2)):
        for r in rows:
            if len(r) != n or set(r) - {"0", "1"}:
                raise ParseError(f"{name} row {r!r} is not a length-{n} bit string", None, source)
    code1 = LinearCode(BitMatrix(n, tuple(bits_from_str(r) for r in c1)))
    code2 = LinearCode(BitMatrix(n, tuple(bits_from_str(r) for r in c2)))
    return make_css(code1, code2)


def format_pair_json(p: CssPair) -> str:
    return json.dumps(pair_to_json(p), sort_keys=True, indent=1) + "\n"


def parse_phi(spec: str, c1: LinearCode) -> PhiMap:
    """``identity``, ``perm:i0,i1,...`` or ``affine:<bits>`` (shift on the RREF basis of C1)."""
    spec = spec.strip()
    n = c1.n
    if spec == "identity":
        return PhiMap.identity(n)
    kind, _, arg = spec.partition(":")
    try:
        if kind == "perm":
            return PhiMap.permutation([int(t) for t in arg.split(",")])
        if kind == "affine":
            if len(arg) != n or set(arg) - {"0", "1"}:
                raise ValueError(f"shift must be {n} bits")
            return PhiMap.affine(bits_from_str(arg), c1.rows, n)
    except ValueError as exc:
        raise ParseError(f"invalid phi spec: {exc}", None, spec) from None
    raise ParseError("phi spec must be identity, perm:... or affine:...", None, spec)


def load_code(arg: str) -> LinearCode:
    """A code file path, or a polynomial spec ``n;bits``."""
    if ";" in arg and not Path(arg).exists():
        return parse_poly_spec(arg)
    path = Path(arg)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, arg) from None
    return parse_code(text, str(path))


def load_pair(arg: str) -> CssPair:
    path = Path(arg)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, arg) from None
    return parse_pair_json(text, str(path))


def load_selfdual_db(arg: str) -> dict[str, LinearCode]:
    path = Path(arg)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, arg) from None
    return parse_selfdual_db(text, str(path))


def bundled_selfdual_codes() -> dict[str, LinearCode]:
    """The self-dual codes shipped with the package."""
    from importlib.resources import files

    return parse_selfdual_db(files("csstlab.data").joinpath("selfdual.txt").read_text(), "selfdual.txt")

