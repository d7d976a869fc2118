"""Shared test utilities: independent oracles and seeded random generators."""

import random

from gmpy2 import mpq

from tame2.autmap import (
    AffineShift,
    AutoMap,
    ElementaryX,
    ElementaryY,
    LinearFactor,
)
from tame2.errors import NotAUnit
from tame2.poly import Poly2
from tame2.ring import QQ, TruncatedRing


def naive_substitute(h, F, G):
    """Substitution by direct power summation; independent of the Horner
    path used by Poly2.substitute."""
    R = h.ring
    out = Poly2.zero(R)
    for (i, j), c in h.terms.items():
        out = out + (F**i * G**j).scale(c)
    return out


def random_point(rng, ring):
    return random_elem(rng, ring), random_elem(rng, ring)


def random_elem(rng, ring, nonzero=False):
    if isinstance(ring, TruncatedRing):
        while True:
            x = tuple(random_elem(rng, ring.base) for _ in range(ring.m))
            if not (nonzero and ring.is_zero(x)):
                return x
    if ring is QQ or ring == QQ:
        lo = 1 if nonzero else 0
        num = rng.choice([n for n in range(-3, 4) if abs(n) >= lo])
        den = rng.choice([1, 1, 1, 2])
        return mpq(num, den)
    if hasattr(ring, "p"):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, ring.p)
    # integers
    lo = 1 if nonzero else 0
    n = rng.choice([n for n in range(-3, 4) if abs(n) >= lo])
    return ring.from_int(n)


def random_poly(rng, ring, max_deg=3, n_terms=4, nonzero=False):
    terms = {}
    for _ in range(n_terms):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg - i)
        terms[(i, j)] = random_elem(rng, ring)
    f = Poly2(ring, terms)
    if nonzero and f.is_zero:
        return Poly2.constant(ring, random_elem(rng, ring, nonzero=True))
    return f


def random_univariate(rng, ring, degree, var):
    """Univariate polynomial of exact degree `degree` in X or Y."""
    terms = {}
    for d in range(degree):
        c = random_elem(rng, ring)
        if not ring.is_zero(c):
            terms[(0, d) if var == "Y" else (d, 0)] = c
    terms[(0, degree) if var == "Y" else (degree, 0)] = random_elem(
        rng, ring, nonzero=True
    )
    return Poly2(ring, terms)


def random_linear_factor(rng, ring):
    while True:
        entries = [random_elem(rng, ring) for _ in range(4)]
        try:
            return LinearFactor(ring, *entries)
        except NotAUnit:
            continue


def random_tame_factors(rng, ring, max_factors=6, max_deg=3, comp_cap=24):
    """Random word in elementary / linear / shift generators.  Factor
    coordinate degrees stay at most max_deg; the composite degree is kept
    under comp_cap by downgrading a factor to degree one when the running
    degree estimate would overflow."""
    n = rng.randint(0, max_factors)
    factors = []
    deg = 1
    for _ in range(n):
        roll = rng.random()
        if roll < 0.70:
            d = rng.randint(1, max_deg)
            if deg * d > comp_cap:
                d = 1
            deg *= d
            if rng.random() < 0.5:
                factors.append(ElementaryX(random_univariate(rng, ring, d, "Y")))
            else:
                factors.append(ElementaryY(random_univariate(rng, ring, d, "X")))
        elif roll < 0.90:
            factors.append(random_linear_factor(rng, ring))
        else:
            factors.append(
                AffineShift(ring, random_elem(rng, ring), random_elem(rng, ring))
            )
    return factors


def random_elementary_factors(rng, ring, max_factors=6, max_deg=3, comp_cap=24):
    """Like random_tame_factors but one-sided elementary only (so the
    product is special by construction)."""
    n = rng.randint(0, max_factors)
    factors = []
    deg = 1
    for _ in range(n):
        d = rng.randint(1, max_deg)
        if deg * d > comp_cap:
            d = 1
        deg *= d
        if rng.random() < 0.5:
            factors.append(ElementaryX(random_univariate(rng, ring, d, "Y")))
        else:
            factors.append(ElementaryY(random_univariate(rng, ring, d, "X")))
    return factors


def random_sl2(rng, ring, max_steps=6):
    """Product of random elementary matrices, so determinant one."""
    from tame2.tame_field import ElementaryMatrix, mat_mul

    M = ((ring.one, ring.zero), (ring.zero, ring.one))
    for _ in range(rng.randint(0, max_steps)):
        pos = "upper" if rng.random() < 0.5 else "lower"
        em = ElementaryMatrix(ring, pos, random_elem(rng, ring))
        M = mat_mul(ring, M, em.matrix())
    return M


def random_non_automorphism(rng, ring, max_deg=3):
    """Random map whose Jacobian determinant is not a constant unit, hence
    certainly not invertible."""
    while True:
        F = random_poly(rng, ring, max_deg, 4)
        G = random_poly(rng, ring, max_deg, 4)
        phi = AutoMap(ring, F, G)
        if phi.degree() < 1:
            continue
        det = phi.jacobian_det()
        if not (det.is_constant() and ring.is_unit(det.constant_value())):
            return phi


def random_integral_potential(rng, max_deg=5, n_terms=4):
    """Rational polynomial whose monomial coefficients are e / gcd(a, b), so
    both partials are integral."""
    import math

    terms = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_deg)
        b = rng.randint(0 if a else 1, max_deg)
        e = rng.randint(-6, 6)
        if e == 0:
            continue
        g = math.gcd(a, b)
        terms[(a, b)] = mpq(e, g if g else 1)
    return Poly2(QQ, terms)


def seeded(name, salt=0):
    return random.Random(f"{name}:{salt}")
