"""The potential calculus for square-zero extensions.

A potential h turns into the special map (X + t h_Y, Y - t h_X); conjugating
by a special map alpha = (f, g) substitutes (f, g) into the potential, so a
single elementary factor conjugated by alpha realizes a power of one of its
coordinates.  find_potential inverts the construction by termwise
integration; monomial_to_powers splits a monomial into a rational combination
of powers of linear forms via an exact Vandermonde solve; lift_decompose uses
all of this to rewrite any special automorphism over QQ[t]/(t^m) as a
composition of one-sided elementary factors, clearing one t-layer per round.
"""

import math

from gmpy2 import mpq

from .autmap import (
    AutoMap,
    Certificate,
    ElementaryX,
    ElementaryY,
    apply_factor_list,
    embed_factor,
    invert_factor_list,
    simplify_factors,
    t_layer_parts,
)
from .errors import (
    CharacteristicObstruction,
    MixedRings,
    NotAUnit,
    NotClosed,
    NotSpecial,
    UnsupportedRing,
)
from .poly import Poly2, poly_layer
from .ring import QQ, TruncatedRing, reduce_hom


class Potential:
    """A polynomial over a ring containing the rationals, with its two
    partials cached."""

    __slots__ = ("h", "h_x", "h_y")

    def __init__(self, h):
        if not h.ring.has_rationals:
            raise UnsupportedRing("potentials live over rings containing QQ")
        self.h = h
        self.h_x = h.partial_x()
        self.h_y = h.partial_y()

    def __add__(self, other):
        return Potential(self.h + other.h)

    def __eq__(self, other):
        return isinstance(other, Potential) and other.h == self.h

    def __repr__(self):
        return f"Potential({self.h!r})"


def phi_of(pot, ring):
    """(X + t h_Y, Y - t h_X) over a square-zero extension, reducing the
    partials' coefficients into the base ring."""
    if not isinstance(ring, TruncatedRing) or ring.m != 2:
        raise UnsupportedRing(f"{ring!r} is not a square-zero extension")
    hom = reduce_hom(pot.h.ring, ring.base)
    u = hom.poly(pot.h_y)
    v = hom.poly(pot.h_x)
    X = Poly2.variable(ring, "X")
    Y = Poly2.variable(ring, "Y")
    F = X + Poly2(ring, {e: ring.place(c, 1) for e, c in u.terms.items()})
    G = Y - Poly2(ring, {e: ring.place(c, 1) for e, c in v.terms.items()})
    phi = AutoMap(ring, F, G)
    assert phi.is_special()
    return phi


def conjugate_phi(pot, alpha):
    """Conjugation acts on potentials by substitution: the potential of
    alpha^-1 (X + t h_Y, Y - t h_X) alpha is h(f, g) for alpha = (f, g)."""
    if alpha.ring != pot.h.ring:
        raise MixedRings("conjugating map must live over the potential's ring")
    if not alpha.is_special():
        raise NotSpecial("conjugation requires Jacobian determinant one")
    return Potential(pot.h.substitute(alpha.F, alpha.G))


def _integrate_x(f):
    R = f.ring
    out = {}
    for (i, j), c in f.terms.items():
        k = R.from_int(i + 1)
        if not R.is_unit(k):
            raise CharacteristicObstruction(f"{i + 1} is not a unit in {R!r}")
        out[(i + 1, j)] = R.mul(c, R.inv(k))
    return Poly2(R, out)


def _integrate_y(f):
    R = f.ring
    out = {}
    for (i, j), c in f.terms.items():
        k = R.from_int(j + 1)
        if not R.is_unit(k):
            raise CharacteristicObstruction(f"{j + 1} is not a unit in {R!r}")
        out[(i, j + 1)] = R.mul(c, R.inv(k))
    return Poly2(R, out)


def find_potential(g, h):
    """A potential p with p_Y = g and p_X = -h, when div(g, h) = 0.

    Built by termwise integration from the base point (0, 0):
    p = -int_0^X h(s, Y) ds + int_0^Y g(0, s) ds; both identities are
    re-verified before returning."""
    if g.ring != h.ring:
        raise MixedRings("the two layer polynomials must share a ring")
    R = g.ring
    if not R.has_rationals:
        raise CharacteristicObstruction(
            f"potential integration needs a ring containing QQ, got {R!r}"
        )
    if not (g.partial_x() + h.partial_y()).is_zero:
        raise NotClosed("divergence is nonzero; no potential exists")
    g0 = Poly2(R, {e: c for e, c in g.terms.items() if e[0] == 0})
    p = -_integrate_x(h) + _integrate_y(g0)
    if p.partial_y() != g or p.partial_x() != -h:
        raise AssertionError("potential verification failed")
    return Potential(p)


def _divide_out_root(W, a):
    """Synthetic division of W (coefficients low to high) by z - a; a must
    be a root."""
    quota = [0] * (len(W) - 1)
    carry = 0
    for i in range(len(quota) - 1, -1, -1):
        carry = W[i + 1] + a * carry
        quota[i] = carry
    assert W[0] + a * carry == 0
    return quota


def monomial_to_powers(n, m):
    """Write X^n Y^m as a rational combination of (X + aY)^(n+m).

    Nodes are a = 0, 1, ..., n+m; the binomial-weighted Vandermonde system
    is solved through the Lagrange basis of the node polynomial, and the
    combination is re-expanded and compared before returning.  Returns the
    (a, c) pairs with c nonzero."""
    if n < 0 or m < 0 or n + m < 1:
        raise ValueError("exponents must be nonnegative with positive total")
    k = n + m
    # W(z) = prod_b (z - b); the z^m coefficient of W / ((z - a) W'(a))
    # solves sum_a c_a a^j = delta(j, m), and the binomial weight rescales.
    W = [1]
    for b in range(k + 1):
        W = [0] + W
        for i in range(len(W) - 1):
            W[i] -= b * W[i + 1]
    binom = math.comb(k, m)
    out = []
    for a in range(k + 1):
        quota = _divide_out_root(W, a)
        wprime = (-1) ** (k - a) * math.factorial(a) * math.factorial(k - a)
        c = mpq(quota[m], wprime * binom)
        if c != 0:
            out.append((mpq(a), c))
    # re-expand sum_a c_a (X + aY)^k through the binomial theorem
    expanded = [mpq(0)] * (k + 1)  # coefficient of X^(k-j) Y^j
    for a, c in out:
        power = mpq(1)
        for j in range(k + 1):
            expanded[j] += c * math.comb(k, j) * power
            power *= a
    want = [mpq(1) if j == m else mpq(0) for j in range(k + 1)]
    if expanded != want:
        raise AssertionError("power-sum split failed to re-expand")
    return out


def factor_phi_monomial(ring, r, n, m):
    """Elementary factors composing to (X + r d(X^n Y^m)/dY, Y - r d/dX).

    r must sit in a square-zero layer of the truncated ring for the
    composition to be exact.  The monomial is split into powers of linear
    forms; each summand b (X + aY)^k contributes the conjugated factor
    triple alpha^-1 (X, Y - k b r X^(k-1)) alpha with alpha = (X + aY, Y).
    """
    if not isinstance(ring, TruncatedRing):
        raise UnsupportedRing(f"{ring!r} is not a truncated ring")
    if ring.is_zero(r):
        return []
    if n + m < 1:
        raise ValueError("the constant monomial has no factor form")

    def scaled(q):
        # q * r as a ring element; failures mean the split's rational
        # weights have no image in this characteristic
        return ring.mul(_into(ring, q), r)

    if n == 0:
        # (X + m r Y^(m-1), Y), a single elementary factor
        return [ElementaryX(Poly2.monomial(ring, scaled(m), 0, m - 1))]
    if m == 0:
        return [ElementaryY(Poly2.monomial(ring, ring.neg(scaled(n)), n - 1, 0))]
    k = n + m
    out = []
    for a, b in monomial_to_powers(n, m):
        eps = ElementaryY(Poly2.monomial(ring, ring.neg(scaled(k * b)), k - 1, 0))
        if a == 0:
            out.append(eps)
            continue
        alpha = ElementaryX(Poly2.monomial(ring, _into(ring, a), 0, 1))
        out.extend([alpha.inverse(), eps, alpha])
    return out


def _into(ring, q):
    from .errors import DenominatorDivisibleByP

    try:
        return ring.from_rational(mpq(q))
    except (NotAUnit, DenominatorDivisibleByP) as exc:
        raise CharacteristicObstruction(str(exc)) from None


def layer_clearing_factors(ring, pot_h, j):
    """Elementary factors composing to the layer-j image of a potential,
    exactly modulo layers above j.

    Contributions are merged per conjugating node: all pure-Y monomials fold
    into one (X + f(Y), Y), and for each node a the summands b (X + aY)^k of
    the remaining monomials accumulate into a single conjugated
    (X, Y - t^j q(X)).  This keeps the factor count linear in the degree."""
    base = ring.base
    pure_y = {}
    by_node = {}
    for (n, m), c in pot_h.sorted_terms():
        if n == 0 and m == 0:
            continue
        if n == 0:
            pure_y[m - 1] = pure_y.get(m - 1, mpq(0)) + m * c
            continue
        k = n + m
        for a, b in monomial_to_powers(n, m):
            acc = by_node.setdefault(a, {})
            acc[k - 1] = acc.get(k - 1, mpq(0)) + k * b * c
    factors = []
    if pure_y:
        f = Poly2(
            ring,
            {(0, e): ring.place(_into(base, q), j) for e, q in pure_y.items()},
        )
        if not f.is_zero:
            factors.append(ElementaryX(f))
    for a in sorted(by_node):
        q = Poly2(
            ring,
            {(e, 0): ring.place(_into(base, -w), j) for e, w in by_node[a].items()},
        )
        if q.is_zero:
            continue
        eps = ElementaryY(q)
        if a == 0:
            factors.append(eps)
        else:
            alpha = ElementaryX(Poly2.monomial(ring, _into(ring, a), 0, 1))
            factors.extend([alpha.inverse(), eps, alpha])
    return factors


def lift_decompose(phi):
    """All-elementary certificate for a special automorphism over
    QQ[t]/(t^m).

    The residue mod t is decomposed over the field and lifted verbatim; the
    leftover is (X + H1, Y + H2) with H's supported in layers >= j, and the
    layer-j part is cleared through its potential.  Errors the conjugation
    formula leaves in layer 2j are absorbed by later rounds, so m - 1 rounds
    finish the job exactly.
    """
    from .tame_field import sa_to_ea_factors

    R = phi.ring
    if not isinstance(R, TruncatedRing):
        raise UnsupportedRing(f"{R!r} is not a truncated ring")
    if R.base != QQ:
        if R.base.characteristic() != 0:
            raise CharacteristicObstruction(
                "positive-characteristic residue fields need the mod-p machinery"
            )
        raise UnsupportedRing(f"residue ring {R.base!r} is not QQ")
    if not phi.is_special():
        raise NotSpecial("lifting requires Jacobian determinant one")

    kill_t = reduce_hom(R, QQ)
    base_cert = sa_to_ea_factors(kill_t.automap(phi))
    factors = [embed_factor(fac, R) for fac in base_cert.factors]
    rho = apply_factor_list(R, invert_factor_list(factors)).compose(phi)

    for j in range(1, R.m):
        P, Q = t_layer_parts(rho)
        for layer in range(j):
            assert poly_layer(P, layer).is_zero and poly_layer(Q, layer).is_zero
        u = poly_layer(P, j)
        v = poly_layer(Q, j)
        if u.is_zero and v.is_zero:
            continue
        pot = find_potential(u, v)
        new = layer_clearing_factors(R, pot.h, j)
        factors.extend(new)
        rho = apply_factor_list(R, invert_factor_list(new)).compose(rho)

    if not rho.is_identity():
        raise AssertionError("layered lifting did not reach the identity")
    return Certificate(R, phi, simplify_factors(factors))


class PowerTerm:
    """One summand c * f^m of a sum-of-powers potential, together with the
    elementary factors witnessing f as a coordinate."""

    __slots__ = ("coeff", "power", "f", "origin", "coordinate")

    def __init__(self, coeff, power, f, origin, coordinate):
        if coordinate not in ("first", "second"):
            raise ValueError("coordinate must be 'first' or 'second'")
        witness = apply_factor_list(f.ring, origin)
        got = witness.F if coordinate == "first" else witness.G
        if got != f:
            raise ValueError("origin factors do not witness f as a coordinate")
        self.coeff = mpq(coeff)
        self.power = int(power)
        self.f = f
        self.origin = list(origin)
        self.coordinate = coordinate

    def potential_part(self):
        return (self.f ** self.power).scale(self.f.ring.from_rational(self.coeff))

    def factors(self, ring):
        """Conjugated elementary factors for this summand over a square-zero
        extension of the term's coefficient ring."""
        d = self.coeff * self.power
        return conjugated_power_factors(
            ring, d, self.power, self.origin, self.coordinate
        )


def conjugated_power_factors(ring, d, power, origin, coordinate):
    """Factors composing to the image of the potential (d/power) f^power,
    where f is the recorded coordinate of the composition of origin.

    d must reduce into the base ring (this is the constructibility condition
    on the summand); the resulting list is empty when d reduces to zero."""
    if not isinstance(ring, TruncatedRing) or ring.m != 2:
        raise UnsupportedRing(f"{ring!r} is not a square-zero extension")
    dbar = _into(ring.base, d)
    if ring.base.is_zero(dbar):
        return []
    dt = ring.place(dbar, 1)
    if coordinate == "first":
        eps = ElementaryY(Poly2.monomial(ring, ring.neg(dt), power - 1, 0))
    else:
        eps = ElementaryX(Poly2.monomial(ring, dt, 0, power - 1))
    lifted = []
    for fac in origin:
        if fac.ring != ring.base:
            from .errors import DenominatorDivisibleByP
            from .ring import reduce_hom

            try:
                fac = reduce_hom(fac.ring, ring.base).factor(fac)
            except DenominatorDivisibleByP as exc:
                raise CharacteristicObstruction(str(exc)) from None
        lifted.append(embed_factor(fac, ring))
    return invert_factor_list(lifted) + [eps] + lifted


class SumOfPowersForm:
    """A potential presented as a sum of coefficient-weighted coordinate
    powers, convertible into an all-elementary certificate."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = list(terms)

    def potential(self):
        if not self.terms:
            raise ValueError("empty form has no designated ring")
        total = Poly2.zero(self.terms[0].f.ring)
        for term in self.terms:
            total = total + term.potential_part()
        return Potential(total)

    def factors(self, ring):
        out = []
        for term in self.terms:
            out.extend(term.factors(ring))
        return out
