"""Command-line front end. Every command prints JSON on stdout.

Exit codes: 0 success, 1 a checked property is false, 2 input error,
3 resource guard refusal.
"""

from __future__ import annotations

import functools
import sys

import click

from . import io, report
from .classical import classify, min_distance
from .css import CssPair, css_params, make_css, pair_to_json
from .csst import csst_check, hn_parity, iterate_n, nphi
from .exceptions import CsstError, ParseError, ResourceGuardError
from .gf2 import BitMatrix, bits_to_str, kernel_rows, rref_rows
from .phase import ccz_action, oblivious_check, phase_profile, transversal_z_action
from .phase.analyzer import diagonal_from_profile
from .search import SearchTask, search_cyclic_csst
from .triortho import (
    DoublingRecipe,
    double,
    extract_triorthogonal,
    ingredient_from_self_dual,
    is_triorthogonal,
    is_triorthogonal_pair,
    quantum_reed_muller_15,
    stacked_generator,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
# reports run the enumerative definition check only on small C2
REPORT_DEFINITION_DIM = 14


class Failed(Exception):
    """Raised after printing a report whose checked property is false."""


def _emit(obj) -> None:
    click.echo(report.dumps(obj))


def guarded(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except Failed:
            sys.exit(EXIT_FAILED)
        except ResourceGuardError as exc:
            click.echo(report.error_json(exc))
            sys.exit(EXIT_GUARD)
        except (CsstError, ValueError, OSError) as exc:
            click.echo(report.error_json(exc))
            sys.exit(EXIT_INPUT)

    return wrapper


def pair_options(f):
    f = click.option("--c2", "c2_arg", help="Code file or 'n;bits' polynomial for C2.")(f)
    f = click.option("--c1", "c1_arg", help="Code file or 'n;bits' polynomial for C1.")(f)
    f = click.option("--pair", "pair_arg", type=click.Path(), help="Pair JSON file.")(f)
    return f


def _pair(pair_arg, c1_arg, c2_arg) -> tuple[CssPair, dict]:
    if pair_arg:
        if c1_arg or c2_arg:
            raise click.UsageError("give either --pair or --c1/--c2")
        if pair_arg == "qrm15":
            return quantum_reed_muller_15(), {"pair": "qrm15"}
        return io.load_pair(pair_arg), {"pair": pair_arg}
    if not (c1_arg and c2_arg):
        raise click.UsageError("need --pair or both --c1 and --c2")
    return make_css(io.load_code(c1_arg), io.load_code(c2_arg)), {"c1": c1_arg, "c2": c2_arg}


def _write_pair(p: CssPair, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(io.format_pair_json(p))


def _code_report(ctx, construction: str, p: CssPair, provenance: dict, trio=None) -> report.CodeReport:
    o = ctx.obj
    params = css_params(p, o["method"], seed=o["seed"], budget=o["budget"])
    verdict = csst_check(p.c1, p.c2, max_dim=REPORT_DEFINITION_DIM)
    prov = dict(provenance, seed=o["seed"], method=o["method"])
    return report.CodeReport(construction, p, params, verdict, trio, provenance=prov)


@click.group()
@click.option("--seed", default=0, show_default=True, help="Seed for randomized procedures.")
@click.option("--method", default="auto", show_default=True,
              type=click.Choice(["auto", "exhaustive", "information_set", "syndrome"]))
@click.option("--budget", type=float, default=None, help="Seconds per distance computation.")
@click.pass_context
def main(ctx, seed, method, budget):
    """Construct and verify CSS, CSS-T and triorthogonal codes."""
    ctx.obj = {"seed": seed, "method": method, "budget": budget}


@main.command()
@click.argument("op", type=click.Choice(["rref", "rank", "kernel"]))
@click.argument("path", type=click.Path())
@guarded
def gf2(op, path):
    """Row reduction, rank or kernel of a matrix file."""
    try:
        text = open(path).read()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, path) from None
    M = io.parse_matrix(text, path)
    n = M.n_cols
    rows, pivots = rref_rows(M.rows, n)
    if op == "rank":
        _emit({"rank": len(rows)})
    elif op == "rref":
        _emit({"rank": len(rows), "pivots": pivots, "rows": [bits_to_str(r, n) for r in rows]})
    else:
        ker = kernel_rows(M.rows, n)
        _emit({"dimension": len(ker), "rows": [bits_to_str(r, n) for r in ker]})


@main.group()
def code():
    """Classical code classification and distances."""


@code.command("classify")
@click.argument("spec")
@guarded
def code_classify(spec):
    C = io.load_code(spec)
    _emit(dict(classify(C).as_dict(), n=C.n, k=C.k))


@code.command("distance")
@click.argument("spec")
@click.option("--dual", is_flag=True, help="Distance of the dual code instead.")
@click.pass_context
@guarded
def code_distance(ctx, spec, dual):
    C = io.load_code(spec)
    if dual:
        C = C.dual
    o = ctx.obj
    r = min_distance(C, o["method"], seed=o["seed"], budget=o["budget"])
    _emit(dict(r.to_json(), n=C.n, k=C.k))


@main.command()
@pair_options
@click.pass_context
@guarded
def css(ctx, pair_arg, c1_arg, c2_arg):
    """Parameters, degeneracy and CSS-T status of a pair."""
    p, prov = _pair(pair_arg, c1_arg, c2_arg)
    _emit(_code_report(ctx, "raw", p, prov).to_json())


@main.group()
def csst():
    """CSS-T checks and the doubling by a map φ."""


@csst.command("check")
@pair_options
@guarded
def csst_check_cmd(pair_arg, c1_arg, c2_arg):
    p, _ = _pair(pair_arg, c1_arg, c2_arg)
    v = csst_check(p.c1, p.c2)
    _emit(v.to_json())
    if v.ok is False:
        raise Failed


@csst.command("nphi")
@pair_options
@click.option("--phi", "phi_spec", default="identity", show_default=True,
              help="identity, perm:i0,i1,... or affine:<bits>.")
@click.option("--out", type=click.Path(), help="Write the new pair as JSON.")
@click.pass_context
@guarded
def csst_nphi(ctx, pair_arg, c1_arg, c2_arg, phi_spec, out):
    p, prov = _pair(pair_arg, c1_arg, c2_arg)
    q = nphi(p, io.parse_phi(phi_spec, p.c1))
    _write_pair(q, out)
    _emit(_code_report(ctx, "nphi", q, dict(prov, phi=phi_spec)).to_json())


@csst.command("iterate")
@pair_options
@click.option("--levels", type=int, required=True)
@click.option("--out", type=click.Path())
@click.pass_context
@guarded
def csst_iterate(ctx, pair_arg, c1_arg, c2_arg, levels, out):
    p, prov = _pair(pair_arg, c1_arg, c2_arg)
    q = iterate_n(p, levels)
    _write_pair(q, out)
    _emit(_code_report(ctx, "iterate", q, dict(prov, levels=levels)).to_json())


@csst.command("hn")
@pair_options
@click.option("--hx", type=click.Path(), help="Matrix file generating C2.")
@click.option("--hz", type=click.Path(), help="Matrix file generating the dual of C1.")
@guarded
def csst_hn(pair_arg, c1_arg, c2_arg, hx, hz):
    """Parity checks of the identity doubling and their row weights."""
    p, _ = _pair(pair_arg, c1_arg, c2_arg)

    def mat(path):
        return io.parse_matrix(open(path).read(), path) if path else None

    res = hn_parity(p, mat(hx), mat(hz))
    _emit({"hx": res.hx.to_strings(), "hz": res.hz.to_strings(),
           "rowspaces_ok": res.rowspaces_ok, "sparsity": res.report.to_json()})
    if not (res.rowspaces_ok and res.report.matches):
        raise Failed


@main.group()
def trio():
    """Triorthogonal codes: checks, extraction and doubling."""


@trio.command("check")
@pair_options
@guarded
def trio_check(pair_arg, c1_arg, c2_arg):
    p, _ = _pair(pair_arg, c1_arg, c2_arg)
    w = is_triorthogonal_pair(p)
    _emit(dict(w.to_json(), generator=stacked_generator(p).to_strings()))
    if not w.ok:
        raise Failed


@trio.command("extract")
@pair_options
@click.option("--odd", "odd_path", type=click.Path(), required=True, help="Matrix file of odd rows.")
@click.option("--out", type=click.Path())
@click.pass_context
@guarded
def trio_extract(ctx, pair_arg, c1_arg, c2_arg, odd_path, out):
    p, prov = _pair(pair_arg, c1_arg, c2_arg)
    odd = io.parse_matrix(open(odd_path).read(), odd_path)
    q = extract_triorthogonal(p, odd)
    _write_pair(q, out)
    w = is_triorthogonal(stacked_generator(q, odd))
    _emit(_code_report(ctx, "extract", q, dict(prov, odd=odd_path), w).to_json())


@trio.command("ingredient")
@click.option("--db", type=click.Path(), help="Self-dual database; defaults to the bundled one.")
@click.option("--name", required=True)
@click.option("--index", type=int, required=True, help="Coordinate to shorten at.")
@click.option("--out", type=click.Path())
@click.pass_context
@guarded
def trio_ingredient(ctx, db, name, index, out):
    codes = io.load_selfdual_db(db) if db else io.bundled_selfdual_codes()
    if name not in codes:
        raise ParseError(f"no code named {name!r}", None, db)
    p = ingredient_from_self_dual(codes[name], index)
    _write_pair(p, out)
    _emit(_code_report(ctx, "raw", p, {"db": db or "bundled", "name": name, "index": index}).to_json())


@trio.command("double")
@click.option("--a", "a_arg", required=True, help="Pair JSON of the self-orthogonal ingredient.")
@click.option("--b", "b_arg", required=True, help="Pair JSON of the triorthogonal code, or 'qrm15'.")
@click.option("--mode", type=click.Choice(["strict", "extended"]), default="strict", show_default=True)
@click.option("--out", type=click.Path())
@click.pass_context
@guarded
def trio_double(ctx, a_arg, b_arg, mode, out):
    a = io.load_pair(a_arg)
    b = quantum_reed_muller_15() if b_arg == "qrm15" else io.load_pair(b_arg)
    q = double(DoublingRecipe(a, b, mode))
    _write_pair(q, out)
    w = is_triorthogonal(BitMatrix(q.n, ((1 << q.n) - 1,) + q.c2.rows))
    _emit(_code_report(ctx, "double", q, {"a": a_arg, "b": b_arg, "mode": mode}, w).to_json())


@main.command()
@pair_options
@click.option("--l", "level", type=int, default=3, show_default=True, help="Rotation level (3 is T).")
@guarded
def phase(pair_arg, c1_arg, c2_arg, level):
    """Residue profile and logical action of the transversal Z-rotation."""
    p, _ = _pair(pair_arg, c1_arg, c2_arg)
    prof = phase_profile(p, level)
    out = diagonal_from_profile(prof).to_json()
    out["profiles"] = prof.to_json()
    _emit(out)


@main.command()
@pair_options
@guarded
def ccz(pair_arg, c1_arg, c2_arg):
    """Logical action of transversal CCZ over three code blocks."""
    p, _ = _pair(pair_arg, c1_arg, c2_arg)
    _emit(ccz_action(p).to_json())


@main.command()
@pair_options
@click.option("--lmax", type=int, default=3, show_default=True)
@guarded
def oblivious(pair_arg, c1_arg, c2_arg, lmax):
    """Whether every rotation level up to LMAX acts as the logical identity."""
    p, _ = _pair(pair_arg, c1_arg, c2_arg)
    ok = oblivious_check(p, lmax)
    levels = {str(lv): transversal_z_action(p, lv).to_json() for lv in range(1, lmax + 1)}
    _emit({"oblivious": ok, "levels": levels})
    if not ok:
        raise Failed


def _triple(text: str | None):
    if text is None:
        return None
    try:
        n, k, d = (int(t) for t in text.split(","))
    except ValueError:
        raise click.BadParameter("target must be n,k,d") from None
    return n, k, d


@main.command()
@click.option("--n", "n", type=int, required=True, help="Odd cyclic length (the doubled code has 2n).")
@click.option("--target", help="Doubled parameters n,k,d to look for.")
@click.option("--direct", is_flag=True, help="Compute distances on the doubled codes themselves.")
@click.option("--max-pairs", type=int, default=None)
@click.pass_context
@guarded
def search(ctx, n, target, direct, max_pairs):
    """Double nested cyclic pairs of length n and report parameters."""
    o = ctx.obj
    task = SearchTask(n, _triple(target), o["method"], o["budget"], max_pairs, o["seed"], direct)
    hits = search_cyclic_csst(task)
    reports = []
    for h in hits:
        verdict = csst_check(h.pair.c1, h.pair.c2, definition=False)
        reports.append(report.CodeReport("nphi", h.pair, h.params, verdict,
                                         provenance=dict(h.provenance, seed=o["seed"])).to_json())
    _emit({"n": n, "target": list(task.target) if task.target else None, "count": len(reports),
           "reports": reports})
    if task.target is not None and not reports:
        raise Failed


@main.command()
@click.option("--out", type=click.Path())
@guarded
def fixture(out):
    """Print (or write) the bundled [[15,1,3]] triorthogonal pair."""
    p = quantum_reed_muller_15()
    _write_pair(p, out)
    _emit(pair_to_json(p))


if __name__ == "__main__":  # pragma: no cover
    main()
