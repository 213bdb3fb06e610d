"""Binary cyclic codes and the factorisation of ``x^n - 1`` over GF(2).

Polynomials are int bitsets, bit ``j`` being the coefficient of ``x^j``.
"""

from __future__ import annotations

from itertools import product

from ..exceptions import InvalidGeneratorError
from ..gf2 import BitMatrix
from .code import LinearCode


def deg(p: int) -> int:
    return p.bit_length() - 1


def pmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = deg(b)
    while a and deg(a) >= db:
        s = deg(a) - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def pmod(a: int, b: int) -> int:
    return pdivmod(a, b)[1]


def poly_from_bits(s: str) -> int:
    """Parse a low-degree-first coefficient string (``1101`` = 1 + x + x^3)."""
    value = 0
    for j, ch in enumerate(s.strip()):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid coefficient {ch!r}")
    return value


def poly_to_bits(p: int) -> str:
    return "".join("1" if (p >> j) & 1 else "0" for j in range(max(deg(p), 0) + 1))


def poly_from_exponents(exps) -> int:
    value = 0
    for e in exps:
        value ^= 1 << e
    return value


def cyclic_code(n: int, g: int | str) -> LinearCode:
    """Cyclic code of length ``n`` generated by ``g(x)`` (must divide ``x^n - 1``)."""
    if isinstance(g, str):
        g = poly_from_bits(g)
    if n < 1:
        raise InvalidGeneratorError("length must be positive")
    if g == 0 or pmod((1 << n) | 1, g) != 0:
        raise InvalidGeneratorError(f"g(x) does not divide x^{n} - 1")
    dg = deg(g)
    rows = tuple(g << j for j in range(n - dg))
    return LinearCode(BitMatrix(n, rows))


def cyclotomic_cosets(n: int) -> list[list[int]]:
    """2-cyclotomic cosets modulo odd ``n``, each sorted, ordered by least element."""
    seen: set[int] = set()
    cosets = []
    for s in range(n):
        if s in seen:
            continue
        coset = []
        x = s
        while x not in coset:
            coset.append(x)
            x = (2 * x) % n
        seen.update(coset)
        cosets.append(sorted(coset))
    return cosets


def multiplicative_order(n: int) -> int:
    m, x = 1, 2 % n
    while x != 1 % n:
        x = (2 * x) % n
        m += 1
    return m


def _is_irreducible(p: int) -> bool:
    d = deg(p)
    if d <= 0:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if pmod(p, q) == 0:
            return False
    return True


def _field_modulus(m: int) -> int:
    for p in range((1 << m) | 1, 1 << (m + 1), 2):
        if _is_irreducible(p):
            return p
    raise ValueError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class _Field:
    """GF(2^m) with elements as ints reduced modulo a fixed irreducible polynomial."""

    def __init__(self, m: int):
        self.m = m
        self.modulus = _field_modulus(m)

    def mul(self, a: int, b: int) -> int:
        return pmod(pmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def root_of_unity(self, n: int) -> int:
        """An element of multiplicative order exactly ``n`` (``n`` divides ``2^m - 1``)."""
        q = (1 << self.m) - 1
        primes = _prime_factors(n)
        for beta in range(2, 1 << self.m):
            alpha = self.pow(beta, q // n)
            if self.pow(alpha, n) != 1:
                continue  # pragma: no cover
            if all(self.pow(alpha, n // p) != 1 for p in primes):
                return alpha
        raise ValueError(f"no element of order {n}")  # pragma: no cover


def _minimal_polynomial(field: _Field, alpha: int, coset: list[int]) -> int:
    # product of (x + alpha^j) with coefficients in GF(2^m), lowest degree first
    coeffs = [1]
    for j in coset:
        root = field.pow(alpha, j)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= field.mul(c, root)
        coeffs = nxt
    out = 0
    for i, c in enumerate(coeffs):
        if c not in (0, 1):
            raise ArithmeticError("minimal polynomial left GF(2)")  # pragma: no cover
        out |= c << i
    return out


def irreducible_factors(n: int) -> list[int]:
    """Irreducible factors of ``x^n - 1`` for odd ``n``, one per cyclotomic coset."""
    if n % 2 == 0:
        raise InvalidGeneratorError("even lengths have repeated factors and are not supported")
    if n == 1:
        return [0b11]
    field = _Field(multiplicative_order(n))
    alpha = field.root_of_unity(n)
    return [_minimal_polynomial(field, alpha, c) for c in cyclotomic_cosets(n)]


def cyclic_divisors(n: int) -> list[int]:
    """All monic divisors of ``x^n - 1`` (odd ``n``), sorted by (degree, value)."""
    if n % 2 == 0 or n < 1:
        raise InvalidGeneratorError("cyclic_divisors supports odd n only")
    factors = irreducible_factors(n)
    divisors = set()
    for choice in product((0, 1), repeat=len(factors)):
        p = 1
        for f, c in zip(factors, choice):
            if c:
                p = pmul(p, f)
        divisors.add(p)
    return sorted(divisors, key=lambda p: (deg(p), p))


def cyclic_shift(v: int, n: int, s: int = 1) -> int:
    s %= n
    mask = (1 << n) - 1
    return ((v << s) | (v >> (n - s))) & mask
