"""Reference inputs replayed by the `paper-examples` CLI command and the
acceptance suite.

Three families live here: the square-zero non-tame maps (X + t X^p Y^(p-1), Y)
over GF(p)[t]/(t^2); the known tame companion (X + t X^2 Y, Y - t X Y^2) at
p = 2 together with its reference power-sum combination and explicit factor
list over ZZ[t]/(t^2); and the 35-term combination summing to (2/3) X^3 Y^3,
whose rescalings certify tameness of the cubic family for p in {3, 5}.
"""

from gmpy2 import mpq

from .autmap import AutoMap, Certificate, ElementaryX, ElementaryY
from .charp import Shape
from .phih import PowerTerm, SumOfPowersForm
from .poly import Poly2
from .ring import GF, QQ, ZZ, dual


def square_zero_nontame(p):
    """(X + t X^p Y^(p-1), Y) over GF(p)[t]/(t^2); not tame for any p."""
    R = dual(GF(p))
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    F = X + Poly2.monomial(R, R.t, p, p - 1)
    return AutoMap(R, F, Y)


def tame_companion_p2():
    """(X + t X^2 Y, Y - t X Y^2) over GF(2)[t]/(t^2); tame."""
    R = dual(GF(2))
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    return AutoMap(R, X + Poly2.monomial(R, R.t, 2, 1), Y - Poly2.monomial(R, R.t, 1, 2))


def cubic_family_map(p):
    """(X + t X^3 Y^2, Y - t X^2 Y^3) over GF(p)[t]/(t^2), the image of the
    potential with partials X^3 Y^2 and X^2 Y^3."""
    R = dual(GF(p))
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    return AutoMap(R, X + Poly2.monomial(R, R.t, 3, 2), Y - Poly2.monomial(R, R.t, 2, 3))


# (coefficient, shape, power) triples summing to (1/2) X^2 Y^2.
HALF_SQUARE_TERMS = (
    (mpq(1, 4), Shape("x_plus_ay", 1), 4),
    (mpq(-1, 3), Shape("y_plus_xk", 2), 3),
    (mpq(1, 2), Shape("y_plus_xk", 4), 2),
    (mpq(-1, 2), Shape("y_plus_xk", 3), 2),
    (mpq(-1, 2), Shape("x_plus_yk", 3), 2),
    (mpq(-1, 2), Shape("x"), 8),
    (mpq(5, 6), Shape("x"), 6),
    (mpq(1, 2), Shape("y"), 6),
    (mpq(-1, 4), Shape("x"), 4),
    (mpq(-1, 4), Shape("y"), 4),
    (mpq(1, 3), Shape("y"), 3),
    (mpq(1, 2), Shape("x"), 2),
)

# (coefficient, shape, power) triples summing to (2/3) X^3 Y^3.
TRICUBIC_TERMS = (
    (mpq(-1, 6), Shape("x_plus_ay", 1), 6),
    (mpq(1), Shape("y_plus_xk", 3), 4),
    (mpq(5, 4), Shape("x_plus_yk", 2), 4),
    (mpq(5, 4), Shape("y_plus_xk", 2), 4),
    (mpq(-2), Shape("y_plus_xk", 6), 3),
    (mpq(-5, 3), Shape("x_plus_yk", 4), 3),
    (mpq(-5, 3), Shape("y_plus_xk", 4), 3),
    (mpq(-5, 3), Shape("x_plus_yk", 3), 3),
    (mpq(-5, 3), Shape("y_plus_xk", 3), 3),
    (mpq(3), Shape("y_plus_xk", 12), 2),
    (mpq(-2), Shape("y_plus_xk", 9), 2),
    (mpq(5, 2), Shape("x_plus_yk", 8), 2),
    (mpq(5, 2), Shape("y_plus_xk", 8), 2),
    (mpq(1, 2), Shape("x_plus_yk", 5), 2),
    (mpq(1, 2), Shape("y_plus_xk", 5), 2),
    (mpq(-3), Shape("x"), 24),
    (mpq(4), Shape("x"), 18),
    (mpq(-5, 2), Shape("x"), 16),
    (mpq(-5, 2), Shape("y"), 16),
    (mpq(2, 3), Shape("x"), 12),
    (mpq(5, 3), Shape("y"), 12),
    (mpq(-1, 2), Shape("x"), 10),
    (mpq(-1, 2), Shape("y"), 10),
    (mpq(5, 3), Shape("x"), 9),
    (mpq(5, 3), Shape("y"), 9),
    (mpq(-5, 4), Shape("x"), 8),
    (mpq(-5, 4), Shape("y"), 8),
    (mpq(1, 6), Shape("x"), 6),
    (mpq(1, 6), Shape("y"), 6),
    (mpq(-5, 4), Shape("x"), 4),
    (mpq(-9, 4), Shape("y"), 4),
    (mpq(10, 3), Shape("x"), 3),
    (mpq(16, 3), Shape("y"), 3),
    (mpq(-3), Shape("x"), 2),
    (mpq(-4), Shape("y"), 2),
)


def combination_form(terms, scale=mpq(1)):
    """The (rescaled) terms as a SumOfPowersForm over QQ."""
    out = []
    for coeff, shape, power in terms:
        out.append(
            PowerTerm(
                coeff * scale,
                power,
                shape.poly(QQ),
                shape.origin(QQ),
                shape.coordinate,
            )
        )
    return SumOfPowersForm(out)


def combination_potential(terms, scale=mpq(1)):
    """Exact rational expansion of sum(scale * c * f^m)."""
    return combination_form(terms, scale).potential().h


def combination_certificate(terms, p, scale):
    """All-elementary certificate over GF(p)[t]/(t^2) for the map whose
    t-layer is the mod-p image of the scaled combination's partials."""
    R = dual(GF(p))
    factors = combination_form(terms, scale).factors(R)
    pot = combination_potential(terms, scale)
    hom_u = pot.partial_y().map_coefficients(GF(p).from_rational, GF(p))
    hom_v = pot.partial_x().map_coefficients(GF(p).from_rational, GF(p))
    X = Poly2.variable(R, "X")
    Y = Poly2.variable(R, "Y")
    target = AutoMap(
        R,
        X + Poly2(R, {e: R.place(c, 1) for e, c in hom_u.terms.items()}),
        Y - Poly2(R, {e: R.place(c, 1) for e, c in hom_v.terms.items()}),
    )
    return Certificate(R, target, factors)


def explicit_factor_list_zz():
    """The reference 17-factor list over ZZ[t]/(t^2) whose composition,
    reduced mod 2, equals the tame companion map.

    The head merges the pure-power contributions into one factor per side;
    the five conjugated triples follow, each alpha^-1 eps alpha."""
    R = dual(ZZ)
    t = R.t

    def ex(*monos):
        return ElementaryX(Poly2(R, {e: c for e, c in monos}))

    def ey(*monos):
        return ElementaryY(Poly2(R, {e: c for e, c in monos}))

    def tc(n):
        return R.mul(t, R.from_int(n))

    eps0_x = ex(((0, 2), tc(1)), ((0, 3), tc(-1)), ((0, 5), tc(3)))
    eps0_y = ey(((1, 0), tc(-1)), ((3, 0), tc(1)), ((5, 0), tc(-5)), ((7, 0), tc(4)))
    alpha1 = ex(((0, 1), R.one))
    eps1 = ey(((3, 0), tc(-1)))
    alpha2 = ey(((2, 0), R.one))
    eps2 = ex(((0, 2), tc(-1)))
    alpha3 = ey(((4, 0), R.one))
    eps3 = ex(((0, 1), tc(1)))
    alpha4 = ey(((3, 0), R.one))
    eps4 = ex(((0, 1), tc(-1)))
    alpha5 = ex(((0, 3), R.one))
    eps5 = ey(((1, 0), tc(1)))
    factors = [eps0_x, eps0_y]
    for alpha, eps in (
        (alpha1, eps1),
        (alpha2, eps2),
        (alpha3, eps3),
        (alpha4, eps4),
        (alpha5, eps5),
    ):
        factors.extend([alpha.inverse(), eps, alpha])
    return R, factors
