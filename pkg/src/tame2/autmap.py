"""Polynomial maps as group elements.

An AutoMap is an ordered pair (F, G) of bivariate polynomials acting by
substitution; no invertibility is assumed at construction.  Factors are the
generators certificates are written in: one-sided elementary maps, invertible
linear maps, and translations.  A Certificate is an ordered factor list whose
composition is claimed to equal a target map; verification recomposes and
compares exactly.
"""

from .errors import (
    MixedRings,
    NotAnAutomorphism,
    NotAUnit,
    NotInvertible,
    UnsupportedRing,
)
from .poly import Poly2, jacobian_det, poly_layer
from .ring import TruncatedRing, reduce_hom


class AutoMap:
    __slots__ = ("ring", "F", "G")

    def __init__(self, ring, F, G):
        if F.ring != ring or G.ring != ring:
            raise MixedRings("coordinates must share the map's ring")
        self.ring = ring
        self.F = F
        self.G = G

    @classmethod
    def identity(cls, ring):
        return cls(ring, Poly2.variable(ring, "X"), Poly2.variable(ring, "Y"))

    def compose(self, inner):
        """self after inner: (F1, G1) o (F2, G2) = (F1(F2, G2), G1(F2, G2))."""
        if inner.ring != self.ring:
            raise MixedRings(f"{self.ring!r} vs {inner.ring!r}")
        return AutoMap(
            self.ring,
            self.F.substitute(inner.F, inner.G),
            self.G.substitute(inner.F, inner.G),
        )

    def __eq__(self, other):
        if not isinstance(other, AutoMap):
            return NotImplemented
        return self.ring == other.ring and self.F == other.F and self.G == other.G

    def is_identity(self):
        return self == AutoMap.identity(self.ring)

    def degree(self):
        return max(self.F.total_degree(), self.G.total_degree())

    def jacobian_det(self):
        return jacobian_det(self.F, self.G)

    def is_special(self):
        """Jacobian determinant exactly one."""
        return self.jacobian_det() == Poly2.constant(self.ring, self.ring.one)

    def unit_jacobian(self):
        """Jacobian determinant a constant unit of the ring."""
        d = self.jacobian_det()
        return d.is_constant() and self.ring.is_unit(d.constant_value())

    def __repr__(self):
        return f"AutoMap({self.F!r}, {self.G!r})"


class ElementaryX:
    """(X + f(Y), Y) for a univariate f."""

    __slots__ = ("f",)

    def __init__(self, f):
        if not f.is_univariate_in("Y"):
            raise ValueError("ElementaryX takes a polynomial in Y only")
        self.f = f

    @property
    def ring(self):
        return self.f.ring

    def as_map(self):
        R = self.ring
        return AutoMap(R, Poly2.variable(R, "X") + self.f, Poly2.variable(R, "Y"))

    def inverse(self):
        return ElementaryX(-self.f)

    def __eq__(self, other):
        return isinstance(other, ElementaryX) and other.f == self.f

    def __repr__(self):
        return f"ElementaryX({self.f!r})"


class ElementaryY:
    """(X, Y + f(X)) for a univariate f."""

    __slots__ = ("f",)

    def __init__(self, f):
        if not f.is_univariate_in("X"):
            raise ValueError("ElementaryY takes a polynomial in X only")
        self.f = f

    @property
    def ring(self):
        return self.f.ring

    def as_map(self):
        R = self.ring
        return AutoMap(R, Poly2.variable(R, "X"), Poly2.variable(R, "Y") + self.f)

    def inverse(self):
        return ElementaryY(-self.f)

    def __eq__(self, other):
        return isinstance(other, ElementaryY) and other.f == self.f

    def __repr__(self):
        return f"ElementaryY({self.f!r})"


class LinearFactor:
    """(aX + bY, cX + dY) for an invertible matrix ((a, b), (c, d))."""

    __slots__ = ("ring", "a", "b", "c", "d")

    def __init__(self, ring, a, b, c, d):
        det = ring.sub(ring.mul(a, d), ring.mul(b, c))
        if not ring.is_unit(det):
            raise NotAUnit("linear factor must have unit determinant")
        self.ring = ring
        self.a, self.b, self.c, self.d = a, b, c, d

    def det(self):
        R = self.ring
        return R.sub(R.mul(self.a, self.d), R.mul(self.b, self.c))

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def as_map(self):
        R = self.ring
        F = Poly2(R, {(1, 0): self.a, (0, 1): self.b})
        G = Poly2(R, {(1, 0): self.c, (0, 1): self.d})
        return AutoMap(R, F, G)

    def inverse(self):
        R = self.ring
        e = R.inv(self.det())
        return LinearFactor(
            R,
            R.mul(e, self.d),
            R.neg(R.mul(e, self.b)),
            R.neg(R.mul(e, self.c)),
            R.mul(e, self.a),
        )

    def __eq__(self, other):
        return (
            isinstance(other, LinearFactor)
            and other.ring == self.ring
            and other.matrix() == self.matrix()
        )

    def __repr__(self):
        return f"LinearFactor({self.matrix()!r})"


class AffineShift:
    """(X + a, Y + b)."""

    __slots__ = ("ring", "a", "b")

    def __init__(self, ring, a, b):
        self.ring = ring
        self.a = a
        self.b = b

    def as_map(self):
        R = self.ring
        F = Poly2.variable(R, "X") + Poly2.constant(R, self.a)
        G = Poly2.variable(R, "Y") + Poly2.constant(R, self.b)
        return AutoMap(R, F, G)

    def inverse(self):
        R = self.ring
        return AffineShift(R, R.neg(self.a), R.neg(self.b))

    def __eq__(self, other):
        return (
            isinstance(other, AffineShift)
            and other.ring == self.ring
            and (other.a, other.b) == (self.a, self.b)
        )

    def __repr__(self):
        return f"AffineShift({self.a!r}, {self.b!r})"


FACTOR_TYPES = (ElementaryX, ElementaryY, LinearFactor, AffineShift)


def apply_factor_list(ring, factors):
    """Compose a factor list; the leftmost factor is applied last."""
    acc = AutoMap.identity(ring)
    for fac in reversed(factors):
        if fac.ring != ring:
            raise MixedRings("factor ring differs from the composition ring")
        acc = fac.as_map().compose(acc)
    return acc


def invert_factor_list(factors):
    return [fac.inverse() for fac in reversed(factors)]


def simplify_factors(factors):
    """Drop identity factors and merge adjacent one-sided factors of the
    same kind; the composition is unchanged."""
    out = []
    for fac in factors:
        if isinstance(fac, (ElementaryX, ElementaryY)) and fac.f.is_zero:
            continue
        if isinstance(fac, AffineShift):
            R = fac.ring
            if R.is_zero(fac.a) and R.is_zero(fac.b):
                continue
        if isinstance(fac, LinearFactor):
            R = fac.ring
            if fac.matrix() == ((R.one, R.zero), (R.zero, R.one)):
                continue
        if out and type(out[-1]) is type(fac) and isinstance(fac, (ElementaryX, ElementaryY)):
            merged = out[-1].f + fac.f
            out.pop()
            if not merged.is_zero:
                out.append(type(fac)(merged))
            continue
        out.append(fac)
    return out


class Certificate:
    """target = factors[0] o factors[1] o ... (leftmost applied last)."""

    __slots__ = ("ring", "target", "factors")

    def __init__(self, ring, target, factors):
        self.ring = ring
        self.target = target
        self.factors = list(factors)

    def composed(self):
        return apply_factor_list(self.ring, self.factors)

    def verify(self):
        return self.composed() == self.target

    def is_elementary_only(self):
        return all(isinstance(f, (ElementaryX, ElementaryY)) for f in self.factors)

    def __repr__(self):
        return f"Certificate({len(self.factors)} factors)"


def verify_certificate(cert):
    return cert.verify()


def nagata(ring, r):
    """(X - 2Y w - r w^2, Y + r w) with w = r X + Y^2."""
    X = Poly2.variable(ring, "X")
    Y = Poly2.variable(ring, "Y")
    w = X.scale(r) + Y * Y
    two = Poly2.constant(ring, ring.from_int(2))
    F = X - two * Y * w - (w * w).scale(r)
    G = Y + w.scale(r)
    return AutoMap(ring, F, G)


def recognize_factor(phi):
    """Return an equivalent single Factor when phi has one-sided elementary
    form, else None."""
    R = phi.ring
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    if phi.G == Y:
        f = phi.F - X
        if f.is_univariate_in("Y"):
            return ElementaryX(f)
    if phi.F == X:
        f = phi.G - Y
        if f.is_univariate_in("X"):
            return ElementaryY(f)
    return None


def _invert_affine(phi):
    R = phi.ring
    a, b, e = phi.F.coefficient(1, 0), phi.F.coefficient(0, 1), phi.F.coefficient(0, 0)
    c, d, f = phi.G.coefficient(1, 0), phi.G.coefficient(0, 1), phi.G.coefficient(0, 0)
    try:
        lin = LinearFactor(R, a, b, c, d)
    except NotAUnit:
        raise NotInvertible("linear part has non-unit determinant") from None
    inv = lin.inverse()
    # phi = Shift(e, f) o Linear, so phi^-1 = Linear^-1 o Shift(-e, -f)
    shift = AffineShift(R, R.neg(e), R.neg(f))
    return inv.as_map().compose(shift.as_map())


def try_invert(phi):
    """Inverse of phi, verified by composition on both sides before return.

    Dispatch: single-factor forms directly; fields through the degree
    reduction of jvdk_decompose; truncated rings by inverting the reduction
    and correcting the nilpotent residual layer by layer.
    """
    R = phi.ring
    fac = recognize_factor(phi)
    if fac is not None:
        psi = fac.inverse().as_map()
    elif phi.degree() <= 1:
        psi = _invert_affine(phi)
    elif R.is_field:
        from .tame_field import jvdk_decompose

        try:
            cert = jvdk_decompose(phi)
        except NotAnAutomorphism as exc:
            raise NotInvertible(f"degree reduction failed: {exc}") from None
        psi = apply_factor_list(R, invert_factor_list(cert.factors))
    elif isinstance(R, TruncatedRing):
        psi = _invert_truncated(phi)
    else:
        raise UnsupportedRing(f"no inversion algorithm over {R!r}")
    ident = AutoMap.identity(R)
    if phi.compose(psi) != ident or psi.compose(phi) != ident:
        raise NotInvertible("candidate inverse failed the composition check")
    return psi


def _invert_truncated(phi):
    R = phi.ring
    base_hom = reduce_hom(R, R.base)
    try:
        red_inv = try_invert(base_hom.automap(phi))
    except NotInvertible as exc:
        raise NotInvertible(f"reduction not invertible: {exc}") from None
    lift = AutoMap(
        R,
        _embed_poly(red_inv.F, R),
        _embed_poly(red_inv.G, R),
    )
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    psi = lift
    # Each correction flips the sign of the residual shift; the error it
    # leaves sits in the square of the residual's layer, so at most m rounds.
    for _ in range(R.m + 1):
        rho = phi.compose(psi)
        P = rho.F - X
        Q = rho.G - Y
        if P.is_zero and Q.is_zero:
            return psi
        sigma = AutoMap(R, X - P, Y - Q)
        psi = psi.compose(sigma)
    raise NotInvertible("nilpotent correction did not terminate")


def _embed_poly(f, ext):
    return Poly2(ext, {e: ext.embed(c) for e, c in f.terms.items()})


def embed_factor(fac, ext):
    """Lift a factor over the base ring into a truncated extension."""
    from .ring import embed_hom

    return embed_hom(fac.ring, ext).factor(fac)


def embed_map(phi, ext):
    from .ring import embed_hom

    return embed_hom(phi.ring, ext).automap(phi)


def t_layer_parts(phi):
    """For phi = (X + P, Y + Q) over a truncated ring, the pair (P, Q)."""
    R = phi.ring
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    return phi.F - X, phi.G - Y


def t_layer_polys(phi, k):
    """Layer-k parts of (phi.F - X, phi.G - Y) over the base ring."""
    P, Q = t_layer_parts(phi)
    return poly_layer(P, k), poly_layer(Q, k)
