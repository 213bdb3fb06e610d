import random

import pytest
from hypothesis import given, settings, strategies as st

from csstlab.classical import classify, cyclic_code, from_rows, min_distance
from csstlab.classical.code import zero_code
from csstlab.css import css_params, make_css
from csstlab.csst import (
    PhiMap, SparsityReport, csst_check, definition_check, hn_parity, identity_condition,
    iterate_n, lifted_params, nphi, nphi_params, schur_criterion, validate_phi,
)
from csstlab.exceptions import ContainmentError, DimensionError, PreconditionError, ResourceGuardError
from csstlab.gf2 import BitMatrix, BitVector, same_rowspace

from conftest import all_nested_pairs, random_pair

P41 = make_css(from_rows(["1111", "1100"]), from_rows(["1111"]))
P31 = make_css(from_rows(["110", "011"]), from_rows(["110"]))
HAMMING = cyclic_code(7, "1101")


def test_schur_examples():
    assert schur_criterion(P41.c1, P41.c2).schur_ok
    steane_c2 = HAMMING.dual
    v = schur_criterion(HAMMING, steane_c2)
    assert v.schur_ok is False and set(v.witness) == {"x", "y", "z"}
    # one even word orthogonal to the square of C1
    c1 = from_rows(["110000", "001100"])
    assert schur_criterion(c1, from_rows(["111100"])).schur_ok
    with pytest.raises(ContainmentError):
        schur_criterion(from_rows(["1100"]), from_rows(["0011"]))


def test_definition_examples():
    assert definition_check(P41.c1, P41.c2).definition_ok
    steane_c2 = HAMMING.dual
    v = definition_check(HAMMING, steane_c2)
    assert v.definition_ok is False and len(v.witness["x"]) == 7
    odd = definition_check(from_rows(["111", "011"]), from_rows(["111"]))
    assert odd.definition_ok is False and odd.witness["condition"] == "even"


def test_definition_guard():
    c2 = from_rows(["11" + "0" * 2 * i + "11" + "0" * (48 - 2 * i) for i in range(25)])
    c1 = c2.dual
    with pytest.raises(ResourceGuardError):
        definition_check(c1, c2)
    v = csst_check(c1, c2, definition=True, max_dim=4)
    assert v.definition_ok is None and v.to_json()["definition_ok"] == "unknown"


def test_equivalence_small_exhaustive():
    for n in range(1, 6):
        for p in all_nested_pairs(n, 4):
            assert schur_criterion(p.c1, p.c2).schur_ok == definition_check(p.c1, p.c2).definition_ok


def test_validate_phi_identity_and_permutation():
    rng = random.Random(3)
    for _ in range(40):
        p = random_pair(rng, 3, 8)
        assert validate_phi(p.c1, p.c2, PhiMap.identity(p.n)).ok
        perm = list(range(p.n))
        rng.shuffle(perm)
        assert validate_phi(p.c1, p.c2, PhiMap.permutation(perm)).ok
        assert validate_phi(p.c1, p.c2, PhiMap.permutation(perm), exhaustive=True).ok


def test_validate_phi_affine():
    good = PhiMap.affine(BitVector.from_str("1100"), P41.c1.rows, 4)
    assert validate_phi(P41.c1, P41.c2, good).ok
    bad = PhiMap.affine(BitVector.from_str("1000"), P41.c1.rows, 4)
    v = validate_phi(P41.c1, P41.c2, bad)
    assert not v.ok and v.reason == "triple_parity" and set(v.witness) == {"x", "y", "z"}
    assert not validate_phi(P41.c1, P41.c2, bad, exhaustive=True).ok
    with pytest.raises(PreconditionError) as e:
        nphi(P41, bad)
    assert e.value.violated == "phi_triple_parity"
    with pytest.raises(PreconditionError):
        validate_phi(P41.c1, P41.c2, PhiMap.affine(BitVector.from_str("1100"), [0b1111], 4))
    with pytest.raises(DimensionError):
        validate_phi(P41.c1, P41.c2, PhiMap.identity(5))


def _sq_perp(c1):
    from csstlab.classical import schur_square

    return schur_square(c1).dual


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_basis_triples_match_exhaustive(seed):
    rng = random.Random(seed)
    p = random_pair(rng, 3, 8, k1_max=5)
    shift = rng.getrandbits(p.n)
    phi = PhiMap.affine(shift, p.c1.rows, p.n)
    basis = validate_phi(p.c1, p.c2, phi)
    full = validate_phi(p.c1, p.c2, phi, exhaustive=True)
    assert basis.ok == full.ok
    good = [a for a in _sq_perp(p.c1).codewords() if p.c1.contains(a)]
    a = rng.choice(good)
    assert validate_phi(p.c1, p.c2, PhiMap.affine(a, p.c1.rows, p.n)).ok


def test_nphi_examples():
    q = nphi(P31)
    params = css_params(q)
    assert (q.n, q.k, params.d_x.value, params.d_z.value) == (6, 1, 4, 1)
    q = nphi(P41)
    assert (q.n, q.k) == (8, 1) and schur_criterion(q.c1, q.c2).schur_ok
    swap = PhiMap.permutation([1, 0, 3, 2])
    assert css_params(nphi(P41, swap)).same_parameters(css_params(nphi(P41)))


def test_nphi_properties():
    rng = random.Random(5)
    for _ in range(60):
        p = random_pair(rng, 3, 8)
        base = css_params(p)
        q = nphi(p)
        direct = css_params(q)
        assert (q.n, q.k) == (2 * p.n, p.k)
        assert schur_criterion(q.c1, q.c2).schur_ok
        assert direct.d.value >= base.d.value
        assert lifted_params(p, base).same_parameters(direct)
        assert nphi_params(p).same_parameters(direct)
        assert identity_condition(q.c1)


def test_lifted_certificates():
    p = P31
    lp = lifted_params(p, css_params(p))
    q = nphi(p)
    assert q.c1.contains(lp.d_x.certificate) and not q.c2.contains(lp.d_x.certificate)
    assert lp.d_x.certificate.weight == lp.d_x.value


def test_iterate_examples():
    assert iterate_n(P41, 1).n == 8
    q = iterate_n(P41, 3)
    assert (q.n, q.k) == (32, 1)
    assert all(w.bit_count() % 8 == 0 for w in q.c1.codewords())
    q = iterate_n(P31, 2)
    assert (q.n, q.k) == (12, 1)
    assert sorted(w.bit_count() for w in q.c1.codewords()) == [0, 8, 8, 8]
    with pytest.raises(ResourceGuardError):
        iterate_n(P41, 13)
    with pytest.raises(ValueError):
        iterate_n(P41, 0)


def test_iterate_divisibility():
    rng = random.Random(8)
    for _ in range(20):
        p = random_pair(rng, 3, 6, k1_max=4)
        for lv in (1, 2, 3):
            q = iterate_n(p, lv)
            assert all(w.bit_count() % (1 << lv) == 0 for w in q.c1.codewords())


def test_hn_examples():
    h = hn_parity(P31)
    assert h.hx.to_strings() == ["110110"]
    assert h.hz.to_strings() == ["111000", "100100", "010010", "001001"]
    assert (h.report.max_row_weight_x, h.report.max_row_weight_z) == (4, 3) and h.report.matches
    assert h.rowspaces_ok
    from csstlab.classical.code import full_space

    h = hn_parity(make_css(full_space(4), zero_code(4)))
    assert h.hx.n_rows == 0 and h.hz.n_rows == 4 and h.rowspaces_ok
    # sparse-style input: H_X row weight 4, H_Z row weight 5
    c1 = from_rows(["1111100000"]).dual
    p = make_css(c1, from_rows(["1111000000"]))
    h = hn_parity(p)
    assert (h.report.r_x, h.report.r_z) == (4, 5)
    assert h.report.predicted == (8, 5) and h.report.matches
    assert SparsityReport(4, 5, 8, 5).to_json()["matches"]
    with pytest.raises(PreconditionError):
        hn_parity(P31, hx=BitMatrix.from_strings(["011"]))


def test_hn_properties():
    rng = random.Random(9)
    for _ in range(40):
        p = random_pair(rng, 3, 9)
        h = hn_parity(p)
        q = nphi(p)
        assert h.rowspaces_ok
        assert same_rowspace(h.hx, q.c2.gen) and same_rowspace(h.hz, q.c1.dual.gen)
        assert h.report.matches


def test_identity_condition_examples():
    # this C1 is self-dual, so its square (C1 itself) lies in its dual
    assert identity_condition(from_rows(["1111", "1100"]))
    assert not identity_condition(from_rows(["1000"]))
    assert identity_condition(zero_code(5))
    assert identity_condition(nphi(P41).c1)
    assert classify(nphi(P31).c1).is_even


def test_phi_spec():
    assert PhiMap.permutation([1, 0]).spec() == "perm:1,0"
    assert PhiMap.identity(3).spec() == "identity"
    with pytest.raises(ValueError):
        PhiMap.permutation([0, 0])


def test_min_distance_doubles():
    q = nphi(P31)
    assert min_distance(q.c1).value == 2 * min_distance(P31.c1).value
