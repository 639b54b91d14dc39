"""
Characteristic polynomials and their irreducible factors over GF(q).

Polynomials are coefficient lists from the leading coefficient down, the
convention of sympy's dense GF(p) arithmetic which this module builds on.
Factors are produced degree by degree (distinct-degree splitting followed by
equal-degree splitting driven by a seeded random source), so callers can stop
at the first usable factor.
"""

import random
from typing import Iterator, List

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_degree,
    gf_from_int_poly,
    gf_gcd,
    gf_monic,
    gf_mul,
    gf_pow_mod,
    gf_quo,
    gf_rem,
    gf_sub,
)

from .linalg import product_mod
from .matrix import Mat

Poly = List[int]


def _clean(f) -> Poly:
    return [int(c) for c in f]


def poly_from_low(coefficients_low_first, q: int) -> Poly:
    return _clean(gf_from_int_poly(list(reversed([int(c) for c in coefficients_low_first])), q))


def poly_mul(f: Poly, g: Poly, q: int) -> Poly:
    return _clean(gf_mul(f, g, q, ZZ))


def poly_degree(f: Poly) -> int:
    return gf_degree(f)


def charpoly(a: Mat) -> Poly:
    """Characteristic polynomial of a square matrix (monic, leading first).

    Built from relative minimal polynomials of cyclic subspaces: each new
    Krylov chain is reduced modulo the invariant subspace spanned so far.
    """
    q = a.q
    n = a.rows
    m = a.entries.astype(np.int64)
    inv = a.field.inverse_table()

    # rows [0, count) are in use; each is kept reduced against the others
    basis = np.zeros((n, n), dtype=np.int64)
    basis_poly = np.zeros((n, n + 1), dtype=np.int64)
    pivots: List[int] = []
    result: Poly = [1]

    while len(pivots) < n:
        count = len(pivots)
        taken = set(pivots)
        seed_col = next(c for c in range(n) if c not in taken)
        # rows of basis satisfy row = poly(a) applied to the seed, modulo the
        # invariant subspace completed before this chain
        basis_poly[:count] = 0
        v = np.zeros(n, dtype=np.int64)
        v[seed_col] = 1
        poly = np.zeros(n + 1, dtype=np.int64)
        poly[0] = 1
        degree = 0
        while True:
            if count:
                c = v[pivots]
                v = (v - product_mod(c, basis[:count], q)) % q
                poly = (poly - product_mod(c, basis_poly[:count], q)) % q
            nonzero = np.flatnonzero(v)
            if nonzero.size == 0:
                break
            piv = int(nonzero[0])
            scale = inv[v[piv]]
            v = (v * scale) % q
            poly = (poly * scale) % q
            touched = np.flatnonzero(basis[:count, piv])
            if touched.size:
                column = basis[touched, piv]
                basis[touched] = (basis[touched] - np.outer(column, v)) % q
                basis_poly[touched] = (basis_poly[touched] - np.outer(column, poly)) % q
            basis[count] = v
            basis_poly[count] = poly
            pivots.append(piv)
            count += 1
            degree += 1
            v = product_mod(v, m, q)
            poly = np.roll(poly, 1)

        relative = poly[: degree + 1]
        relative = (relative * inv[int(relative[degree])]) % q
        result = poly_mul(result, [int(c) for c in relative[::-1]], q)

    return result


def irreducible_factors(
    f: Poly, q: int, rng: random.Random, max_degree: int = 0
) -> Iterator[Poly]:
    """Yield the distinct monic irreducible factors of f by increasing degree.

    Stops after degree max_degree when it is positive.
    """
    _, f = gf_monic(f, q, ZZ)
    f = _clean(f)
    n = gf_degree(f)
    if n <= 0:
        return
    x = [1, 0]
    h = x
    found: Poly = [1]
    d = 0
    while True:
        d += 1
        if (max_degree and d > max_degree) or d > n - gf_degree(found):
            return
        h = _clean(gf_pow_mod(h, q, f, q, ZZ))
        g = _clean(gf_gcd(f, gf_sub(h, x, q, ZZ), q, ZZ))
        common = _clean(gf_gcd(g, found, q, ZZ))
        if gf_degree(common) > 0:
            g = _clean(gf_quo(g, common, q, ZZ))
        if gf_degree(g) <= 0:
            continue
        factors = sorted(_equal_degree_split(g, d, q, rng))
        for factor in factors:
            yield factor
        found = _clean(gf_mul(found, g, q, ZZ))


def _equal_degree_split(f: Poly, d: int, q: int, rng: random.Random) -> List[Poly]:
    """Split a squarefree product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = gf_degree(f)
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(q) for _ in range(n)]
        a = _clean(gf_from_int_poly(a, q))
        if gf_degree(a) <= 0:
            continue
        if q == 2:
            t = a
            power = a
            for _ in range(d - 1):
                power = _clean(gf_pow_mod(power, 2, f, q, ZZ))
                t = _clean(gf_add(t, power, q, ZZ))
            g = t
        else:
            exponent = (q**d - 1) // 2
            g = _clean(gf_sub(gf_pow_mod(a, exponent, f, q, ZZ), [1], q, ZZ))
        g = _clean(gf_gcd(f, g, q, ZZ))
        k = gf_degree(g)
        if 0 < k < n:
            other = _clean(gf_quo(f, g, q, ZZ))
            return _equal_degree_split(g, d, q, rng) + _equal_degree_split(
                other, d, q, rng
            )


def evaluate_at(f: Poly, a: Mat) -> Mat:
    """f(a) by Horner's rule."""
    q = a.q
    n = a.rows
    result = np.zeros((n, n), dtype=np.int64)
    diagonal = np.arange(n)
    m = a.entries.astype(np.int64)
    for c in f:
        result = product_mod(result, m, q)
        result[diagonal, diagonal] = (result[diagonal, diagonal] + int(c)) % q
    return Mat(a.field, result)


def poly_rem(f: Poly, g: Poly, q: int) -> Poly:
    return _clean(gf_rem(f, g, q, ZZ))
