"""Constructive decomposition over fields.

jvdk_decompose runs the classical degree-reduction argument: while a
coordinate has degree above one, the leading form of the bigger coordinate
must be a scalar multiple of a power of the smaller one's, and composing with
the elementary map that kills it strictly drops the degree.  Success yields a
certificate; failure of the divisibility or proportionality conditions proves
the map is not an automorphism, so the same routine doubles as the
invertibility decision over a field.

sl2_to_elementary factors a determinant-one matrix over a field or a local
truncated ring into elementary matrices, following the unit-entry row
reduction and the two fixed identities for the antidiagonal and diagonal
residues.  sa_to_ea_factors chains both to express any special automorphism
over a field using one-sided elementary factors only.
"""

from .autmap import (
    AffineShift,
    Certificate,
    ElementaryX,
    ElementaryY,
    LinearFactor,
    simplify_factors,
)
from .errors import (
    DeterminantNotOne,
    NotAnAutomorphism,
    NotSpecial,
    NoUnitEntry,
    UnsupportedRing,
)
from .poly import Poly2


class ReductionTrace:
    """Audit log of the degree reduction: one entry per reducing factor,
    recording the combined coordinate degree before and after."""

    def __init__(self):
        self.steps = []

    def record(self, factor, before, after):
        self.steps.append((factor, before, after))

    def strictly_decreasing(self):
        return all(after < before for _, before, after in self.steps)


def _match_scalar(f, g):
    """Scalar c with f == c * g, or None.  c is read off one coefficient and
    then checked against the whole form."""
    if g.is_zero:
        return None
    e, lead = g.sorted_terms()[0]
    top = f.terms.get(e)
    if top is None:
        return None
    R = f.ring
    c = R.mul(top, R.inv(lead))
    if f == g.scale(c):
        return c
    return None


def _rotation(R):
    return LinearFactor(R, R.zero, R.one, R.neg(R.one), R.zero)


def jvdk_decompose(phi, trace=None):
    """Factor an automorphism over a field into elementary, linear and shift
    factors; raise NotAnAutomorphism when the reduction gets stuck."""
    R = phi.ring
    if not R.is_field:
        raise UnsupportedRing(f"degree reduction needs a field, got {R!r}")
    applied = []  # maps applied on the left, in order
    cur = phi
    while cur.degree() > 1:
        F, G = cur.F, cur.G
        dF, dG = F.total_degree(), G.total_degree()
        if min(dF, dG) < 1:
            raise NotAnAutomorphism("a coordinate is constant")
        if dF == dG:
            # break the tie by cancelling one leading form against the other
            c = _match_scalar(F.leading_form(), G.leading_form())
            if c is not None:
                step = LinearFactor(R, R.one, R.neg(c), R.zero, R.one)
            else:
                c = _match_scalar(G.leading_form(), F.leading_form())
                if c is None:
                    raise NotAnAutomorphism(
                        "equal-degree leading forms are not proportional"
                    )
                step = LinearFactor(R, R.one, R.zero, R.neg(c), R.one)
        elif dF < dG:
            step = _rotation(R)
        else:
            if dF % dG != 0:
                raise NotAnAutomorphism(
                    f"degree {dG} does not divide degree {dF}"
                )
            k = dF // dG
            c = _match_scalar(F.leading_form(), G.leading_form() ** k)
            if c is None:
                raise NotAnAutomorphism(
                    "leading form is not proportional to the required power"
                )
            step = ElementaryX(Poly2.monomial(R, R.neg(c), 0, k))
        before = cur.F.total_degree() + cur.G.total_degree()
        cur = step.as_map().compose(cur)
        after = cur.F.total_degree() + cur.G.total_degree()
        if not isinstance(step, LinearFactor) or step.matrix() != _rotation(R).matrix():
            if trace is not None:
                trace.record(step, before, after)
            if after >= before:
                raise NotAnAutomorphism("degree reduction failed to make progress")
        applied.append(step)
    # affine tail: cur = Shift o Linear
    a, b = cur.F.coefficient(1, 0), cur.F.coefficient(0, 1)
    c2, d2 = cur.G.coefficient(1, 0), cur.G.coefficient(0, 1)
    e, f = cur.F.coefficient(0, 0), cur.G.coefficient(0, 0)
    det = R.sub(R.mul(a, d2), R.mul(b, c2))
    if not R.is_unit(det):
        raise NotAnAutomorphism("linear part is singular")
    factors = [step.inverse() for step in applied]
    if not (R.is_zero(e) and R.is_zero(f)):
        factors.append(AffineShift(R, e, f))
    ident = ((R.one, R.zero), (R.zero, R.one))
    if ((a, b), (c2, d2)) != ident:
        factors.append(LinearFactor(R, a, b, c2, d2))
    return Certificate(R, phi, factors)


def jvdk_decompose_traced(phi):
    trace = ReductionTrace()
    cert = jvdk_decompose(phi, trace=trace)
    return cert, trace


class ElementaryMatrix:
    """Unit-diagonal 2x2 matrix with a single off-diagonal entry."""

    __slots__ = ("ring", "pos", "value")

    def __init__(self, ring, pos, value):
        if pos not in ("upper", "lower"):
            raise ValueError("pos must be 'upper' or 'lower'")
        self.ring = ring
        self.pos = pos
        self.value = value

    def matrix(self):
        R = self.ring
        if self.pos == "upper":
            return ((R.one, self.value), (R.zero, R.one))
        return ((R.one, R.zero), (self.value, R.one))

    def inverse(self):
        return ElementaryMatrix(self.ring, self.pos, self.ring.neg(self.value))

    def as_factor(self):
        R = self.ring
        if self.pos == "upper":
            return ElementaryX(Poly2.monomial(R, self.value, 0, 1))
        return ElementaryY(Poly2.monomial(R, self.value, 1, 0))

    def __eq__(self, other):
        return (
            isinstance(other, ElementaryMatrix)
            and (other.ring, other.pos, other.value) == (self.ring, self.pos, self.value)
        )

    def __repr__(self):
        return f"ElementaryMatrix({self.pos}, {self.value!r})"


def mat_mul(R, A, B):
    (a, b), (c, d) = A
    (e, f), (g, h) = B
    return (
        (R.add(R.mul(a, e), R.mul(b, g)), R.add(R.mul(a, f), R.mul(b, h))),
        (R.add(R.mul(c, e), R.mul(d, g)), R.add(R.mul(c, f), R.mul(d, h))),
    )


def mat_det(R, A):
    (a, b), (c, d) = A
    return R.sub(R.mul(a, d), R.mul(b, c))


def antidiagonal_swap_factors(R):
    """((0, 1), (-1, 0)) as a product of three elementary matrices."""
    one = R.one
    return [
        ElementaryMatrix(R, "upper", one),
        ElementaryMatrix(R, "lower", R.neg(one)),
        ElementaryMatrix(R, "upper", one),
    ]


def diagonal_unit_factors(R, a):
    """diag(a, a^-1) as a product of five elementary matrices."""
    if a == R.one:
        return []
    ainv = R.inv(a)
    one = R.one
    return [
        ElementaryMatrix(R, "upper", a),
        ElementaryMatrix(R, "lower", R.neg(ainv)),
        ElementaryMatrix(R, "upper", R.sub(a, one)),
        ElementaryMatrix(R, "lower", one),
        ElementaryMatrix(R, "upper", R.neg(one)),
    ]


def sl2_to_elementary(ring, M):
    """Factor a determinant-one matrix over a field or local truncated ring
    into elementary matrices whose product is M.

    The first unit entry in reading order is used to clear its row and
    column with two row operations; the remaining diagonal or antidiagonal
    matrix expands through the fixed five- and three-factor identities.
    """
    R = ring
    (a, b), (c, d) = M
    if mat_det(R, M) != R.one:
        raise DeterminantNotOne(f"matrix has determinant {mat_det(R, M)!r}")

    ops = []  # row operations applied on the left, in order

    def row_op(pos, value, current):
        if R.is_zero(value):
            return current
        op = ElementaryMatrix(R, pos, value)
        ops.append(op)
        return mat_mul(R, op.matrix(), current)

    cur = M
    if R.is_unit(a):
        # row2 -= (c/a) row1, then row1 -= (a b) row2 leaves diag(a, 1/a)
        cur = row_op("lower", R.neg(R.mul(c, R.inv(a))), cur)
        cur = row_op("upper", R.neg(R.mul(a, b)), cur)
        residue = diagonal_unit_factors(R, cur[0][0])
    elif R.is_unit(b):
        cur = row_op("lower", R.neg(R.mul(d, R.inv(b))), cur)
        cur = row_op("upper", R.mul(cur[0][0], b), cur)
        bb = cur[0][1]
        residue = antidiagonal_swap_factors(R) + diagonal_unit_factors(R, R.inv(bb))
    elif R.is_unit(c):
        cur = row_op("upper", R.neg(R.mul(a, R.inv(c))), cur)
        cur = row_op("lower", R.mul(cur[1][1], c), cur)
        bb = cur[0][1]  # equals -1/c
        residue = antidiagonal_swap_factors(R) + diagonal_unit_factors(R, R.inv(bb))
    elif R.is_unit(d):
        cur = row_op("upper", R.neg(R.mul(b, R.inv(d))), cur)
        cur = row_op("lower", R.neg(R.mul(c, d)), cur)
        residue = diagonal_unit_factors(R, cur[0][0])
    else:
        raise NoUnitEntry(
            "no unit entry in a determinant-one matrix; the ring is not local"
        )

    factors = [op.inverse() for op in ops] + residue
    check = ((R.one, R.zero), (R.zero, R.one))
    for em in factors:
        check = mat_mul(R, check, em.matrix())
    if check != M:
        raise AssertionError("elementary factorization failed to recompose")
    return factors


def sa_to_ea_factors(phi):
    """All-elementary certificate for a special automorphism over a field."""
    if not phi.is_special():
        raise NotSpecial("map must have Jacobian determinant one")
    R = phi.ring
    cert = jvdk_decompose(phi)
    out = []
    for fac in cert.factors:
        if isinstance(fac, (ElementaryX, ElementaryY)):
            out.append(fac)
        elif isinstance(fac, AffineShift):
            out.append(ElementaryX(Poly2.constant(R, fac.a)))
            out.append(ElementaryY(Poly2.constant(R, fac.b)))
        elif isinstance(fac, LinearFactor):
            # specialness forces determinant one here
            for em in sl2_to_elementary(R, fac.matrix()):
                out.append(em.as_factor())
        else:
            raise AssertionError(f"unexpected factor {fac!r}")
    return Certificate(R, phi, simplify_factors(out))
