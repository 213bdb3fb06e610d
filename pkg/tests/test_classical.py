import random

import pytest
from hypothesis import given, settings, strategies as st

from csstlab.classical import (
    LinearCode, augment, classify, coset_min_weight, cyclic_code, cyclic_divisors, from_rows,
    min_distance, schur_square, shorten,
)
from csstlab.classical.code import full_space, puncture, repetition_code, zero_code
from csstlab.classical.cyclic import cyclic_shift, deg, poly_from_bits, poly_from_exponents
from csstlab.classical.distance import brute_force_coset_min_weight
from csstlab.exceptions import ContainmentError, InvalidGeneratorError, UndefinedDistanceError
from csstlab.gf2 import BitMatrix, BitVector
from csstlab.io import bundled_selfdual_codes

from conftest import random_code, random_subcode

HAMMING = cyclic_code(7, "1101")
G89 = poly_from_exponents([45, 44, 42, 38, 36, 35, 33, 32, 30, 27, 26, 24, 23, 20, 19, 18, 16, 15, 12, 8, 5, 4, 3, 0])


def words(C):
    return set(C.codewords())


def test_from_rows_examples():
    assert from_rows(["1111", "1100"]).k == 2
    z = from_rows(["0000"])
    assert (z.n, z.k) == (4, 0)
    even = from_rows(["110", "011", "101"])
    assert even.k == 2 and all(w.bit_count() % 2 == 0 for w in words(even))


def test_cyclic_examples():
    assert (HAMMING.n, HAMMING.k) == (7, 4)
    assert min_distance(HAMMING).value == 3
    for n in (3, 5, 9):
        ev = cyclic_code(n, "11")
        assert ev.k == n - 1 and all(w.bit_count() % 2 == 0 for w in words(ev))
    with pytest.raises(InvalidGeneratorError):
        cyclic_code(7, "111")


def test_cyclic_89_self_orthogonal():
    C = cyclic_code(89, G89)
    assert C.k == 44 and classify(C).is_self_orthogonal
    ones = (1 << 89) - 1
    assert C.dual == augment(C, BitVector(89, ones))


@pytest.mark.parametrize("n,count", [(7, 8), (3, 4), (9, 8)])
def test_cyclic_divisors_count(n, count):
    divs = cyclic_divisors(n)
    assert len(divs) == count
    assert [deg(g) for g in divs] == sorted(deg(g) for g in divs)


def test_cyclic_divisors_rejects_even():
    with pytest.raises(ValueError):
        cyclic_divisors(8)


@pytest.mark.parametrize("n", [3, 7, 9, 15])
def test_cyclic_shift_invariance(n):
    for g in cyclic_divisors(n):
        C = cyclic_code(n, g)
        assert all(C.contains(cyclic_shift(r, n)) for r in C.rows)
        assert C.k == n - deg(g)


def test_shorten_examples():
    s = shorten(repetition_code(2), 0)
    assert (s.n, s.k) == (1, 0)
    s = shorten(from_rows(["1100", "0011"]), 0)
    assert (s.n, s.k) == (3, 1) and words(s) == {0, 0b110}
    sd18 = bundled_selfdual_codes()["sd18"]
    s = shorten(sd18, 0)
    assert (s.n, s.k) == (17, 8) and classify(s).is_self_orthogonal
    with pytest.raises(IndexError):
        shorten(sd18, 18)


def test_augment_examples():
    c = from_rows(["011"])
    assert augment(c, BitVector.from_str("111")).k == 2
    assert augment(HAMMING, BitVector.zeros(7)) == HAMMING
    s = augment(shorten(bundled_selfdual_codes()["sd18"], 0), BitVector.ones(17))
    assert (s.n, s.k) == (17, 9)


def test_classify_examples():
    f = classify(from_rows(["1100", "0011"]))
    assert f.is_self_dual and f.is_even and not f.is_doubly_even
    # enumeration of all 8 words decides this one: every weight is 0 mod 4
    C = from_rows(["11110000", "00111100", "00001111"])
    assert all(w.bit_count() % 4 == 0 for w in words(C))
    assert classify(C).is_doubly_even
    z = classify(zero_code(4))
    assert z.is_even and z.is_doubly_even and z.is_self_orthogonal and not z.contains_all_ones
    assert not z.is_self_dual


def test_schur_square_examples():
    C = from_rows(["1111", "1100"])
    assert schur_square(C) == C
    assert schur_square(from_rows(["1000"])) == from_rows(["1000"])
    assert schur_square(HAMMING) == full_space(7)


def test_min_distance_examples():
    assert min_distance(repetition_code(9)).value == 9
    with pytest.raises(UndefinedDistanceError):
        min_distance(zero_code(5))
    r = min_distance(HAMMING, "information_set")
    assert r.value == 3 and r.certificate.weight == 3 and HAMMING.contains(r.certificate)


def test_coset_min_weight_examples():
    r = coset_min_weight(from_rows(["1111", "1100"]), from_rows(["1111"]))
    assert r.value == 2 and str(r.certificate) in {"1100", "0011"}
    assert coset_min_weight(from_rows(["110", "011"]), from_rows(["110"])).value == 2
    assert coset_min_weight(full_space(2), zero_code(2)).value == 1
    with pytest.raises(ContainmentError):
        coset_min_weight(from_rows(["110"]), from_rows(["011"]))
    with pytest.raises(UndefinedDistanceError):
        coset_min_weight(HAMMING, HAMMING)


def _brute_classify(C):
    ws = [w.bit_count() for w in words(C)]
    so = all((a & b).bit_count() % 2 == 0 for a in C.rows for b in C.rows)
    return all(w % 2 == 0 for w in ws), all(w % 4 == 0 for w in ws), so


codes = st.integers(1, 10).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=6).map(lambda rows: LinearCode(BitMatrix(n, tuple(rows)))))


@settings(max_examples=150, deadline=None)
@given(codes)
def test_code_invariants(C):
    f = classify(C)
    assert (f.is_even, f.is_doubly_even, f.is_self_orthogonal) == _brute_classify(C)
    assert not f.is_doubly_even or f.is_even
    assert not f.is_self_dual or f.is_self_orthogonal
    assert not f.is_self_orthogonal or f.is_even
    if f.is_self_orthogonal:
        assert C.is_subcode_of(C.dual)
    if f.is_self_dual:
        assert 2 * C.k == C.n and C == C.dual
    assert C.dual.dual == C
    assert C.is_subcode_of(schur_square(C))
    for i in range(C.n) if C.n > 1 else ():
        assert shorten(C, i).dual == puncture(C.dual, i)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_distance_engines_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 14)
    C1 = random_code(rng, n, rng.randint(1, min(n, 9)))
    C2 = random_subcode(rng, C1, rng.randint(0, C1.k - 1))
    if C2.k == C1.k:
        return
    truth = brute_force_coset_min_weight(C1, C2)
    for method in ("exhaustive", "information_set", "syndrome", "auto"):
        r = coset_min_weight(C1, C2, method, seed=seed)
        assert r.value == truth, method
        assert r.certificate.weight == truth
        assert C1.contains(r.certificate) and not C2.contains(r.certificate)


def test_self_dual_shortening_property():
    for C in bundled_selfdual_codes().values():
        for i in range(C.n):
            s = shorten(C, i)
            assert s.k == C.n // 2 - 1 and classify(s).is_self_orthogonal


def test_poly_bits():
    assert poly_from_bits("1101") == 0b1011
