"""Tameness decisions over GF(p)[t]/(t^2).

A special map phi normalizes to a residue certificate times (X + tu, Y + tv).
Tameness then hinges on whether (u, v) are the mod-p partials of a rational
potential H whose partials are integral.  Integrality acts one monomial at a
time: the X^a Y^b coefficient must be e / gcd(a, b) for an integer e, leaving
two congruences in e mod p.  An unsolvable pair is a certified obstruction
(the map is not tame); otherwise a bounded search solves for a sum of
coordinate powers realizing (u, v) and assembles the all-elementary
certificate, and when the bounded system is infeasible the verdict is
honestly inconclusive.
"""

import math
from dataclasses import dataclass

import numpy as np

from .autmap import (
    AutoMap,
    Certificate,
    LinearFactor,
    apply_factor_list,
    embed_factor,
    invert_factor_list,
    t_layer_polys,
)
from .errors import (
    DivergenceNonZero,
    NotSpecial,
    UnsupportedRing,
)
from .poly import Poly2
from .ring import GF, PrimeField, dual, is_dual
from .tame_field import sa_to_ea_factors


@dataclass(frozen=True)
class SearchBounds:
    """Bounds for the sum-of-powers search: maximal power per basis shape,
    coefficient range for the X + aY shapes, and maximal degree k for the
    Y + X^k and X + Y^k shapes."""

    max_power: int = 8
    coeff_range: int = 2
    max_aux_degree: int = 4


DEFAULT_BOUNDS = SearchBounds()


def _dual_prime_ring(ring):
    if not (is_dual(ring) and isinstance(ring.base, PrimeField)):
        raise UnsupportedRing(f"{ring!r} is not GF(p)[t]/(t^2)")
    return ring.base.p


def normalize(phi):
    """Split a special map over GF(p)[t]/(t^2) into an all-elementary
    residue certificate and the leftover t-layer pair.

    Returns (prefix, (u, v)) with prefix a certificate over GF(p) for
    phi mod t and lifted-prefix-inverse composed with phi = (X + tu, Y + tv).
    The divergence u_X + v_Y vanishes; this is asserted.

    The prefix depends on the tie-breaking choices of the degree reduction,
    so it is deterministic but not canonical."""
    R = phi.ring
    p = _dual_prime_ring(R)
    if not phi.is_special():
        raise NotSpecial("normalization requires Jacobian determinant one")
    from .ring import reduce_hom

    residue = reduce_hom(R, GF(p)).automap(phi)
    prefix = sa_to_ea_factors(residue)
    lifted = [embed_factor(fac, R) for fac in prefix.factors]
    delta = apply_factor_list(R, invert_factor_list(lifted)).compose(phi)
    zero_u, zero_v = t_layer_polys(delta, 0)
    assert zero_u.is_zero and zero_v.is_zero
    u, v = t_layer_polys(delta, 1)
    if not (u.partial_x() + v.partial_y()).is_zero:
        raise DivergenceNonZero("t-layer of a special map must be divergence free")
    return prefix, (u, v)


@dataclass
class ObstructionWitness:
    """An H-monomial whose integrality congruences are unsolvable mod p.

    For the monomial X^a Y^b with g = gcd(a, b), the coefficient must be
    e / g with e integral, forcing (b/g) e = target_u and (a/g) e = target_v
    mod p.  Construction re-checks that the pair really has no solution
    (by full residue enumeration for small p)."""

    monomial: tuple
    modulus: int
    cong_u: tuple  # (coefficient of e, target) mod p, from the u side
    cong_v: tuple
    explanation: str = ""

    def __post_init__(self):
        if self.solutions():
            raise ValueError("obstruction witness is spuriously solvable")

    def solutions(self):
        return congruence_solutions(self.modulus, [self.cong_u, self.cong_v])


@dataclass
class NoObstruction:
    """Per-monomial residue solution sets surviving the integrality check."""

    solutions: dict


def congruence_solutions(p, congs):
    """Residues solving every congruence coef * e = target mod p."""
    if p <= 1024:
        # small moduli: enumerate every residue
        return [
            e
            for e in range(p)
            if all((coef * e - target) % p == 0 for coef, target in congs)
        ]
    # large moduli: each congruence with an invertible coefficient pins e;
    # the coefficients b/g and a/g are coprime, so they are never both zero
    # mod p and the solution set is a singleton or empty
    pinned = None
    for coef, target in congs:
        coef %= p
        target %= p
        if coef == 0:
            if target != 0:
                return []
            continue
        e = target * pow(coef, p - 2, p) % p
        if pinned is None:
            pinned = e
        elif pinned != e:
            return []
    if pinned is None:
        raise AssertionError("congruence coefficients cannot all vanish mod p")
    return [pinned]


def obstruction_check(u, v):
    """Necessary condition for tameness of (X + tu, Y + tv) over
    GF(p)[t]/(t^2).

    Scans every potential monomial hit by the shifted supports of u and v.
    Returns an ObstructionWitness when some monomial's congruence pair has
    no residue solution, else NoObstruction with the solution sets."""
    R = u.ring
    if not isinstance(R, PrimeField) or v.ring != R:
        raise UnsupportedRing("obstruction check runs over a prime field")
    p = R.p
    if not (u.partial_x() + v.partial_y()).is_zero:
        raise DivergenceNonZero("inputs must satisfy u_X + v_Y = 0")
    candidates = {(i, j + 1) for i, j in u.terms}
    candidates |= {(i + 1, j) for i, j in v.terms}
    solutions = {}
    for a, b in sorted(candidates, key=lambda e: (e[0] + e[1], e[0]), reverse=True):
        g = math.gcd(a, b)
        congs = []
        if b >= 1:
            congs.append(((b // g) % p, u.coefficient(a, b - 1)))
        if a >= 1:
            congs.append(((a // g) % p, R.neg(v.coefficient(a - 1, b))))
        sols = congruence_solutions(p, congs)
        if not sols:
            cong_u, cong_v = congs
            return ObstructionWitness(
                monomial=(a, b),
                modulus=p,
                cong_u=cong_u,
                cong_v=cong_v,
                explanation=(
                    f"the X^{a}Y^{b} coefficient of a potential must be e/{g} "
                    f"with {cong_u[0]}e = {cong_u[1]} and {cong_v[0]}e = "
                    f"{cong_v[1]} mod {p}, which no residue satisfies"
                ),
            )
        solutions[(a, b)] = tuple(sols)
    return NoObstruction(solutions)


class Shape:
    """A basis coordinate for the sum-of-powers search.

    kinds: 'x', 'y', 'x_plus_ay' (param a), 'y_plus_xk' (param k),
    'x_plus_yk' (param k).  Each is a coordinate of a one-factor elementary
    witness (or of the identity for the pure variables)."""

    __slots__ = ("kind", "param")

    def __init__(self, kind, param=None):
        self.kind = kind
        self.param = param

    def poly(self, ring):
        X = Poly2.variable(ring, "X")
        Y = Poly2.variable(ring, "Y")
        if self.kind == "x":
            return X
        if self.kind == "y":
            return Y
        if self.kind == "x_plus_ay":
            return X + Y.scale(ring.from_int(self.param))
        if self.kind == "y_plus_xk":
            return Y + Poly2.monomial(ring, ring.one, self.param, 0)
        if self.kind == "x_plus_yk":
            return X + Poly2.monomial(ring, ring.one, 0, self.param)
        raise ValueError(f"unknown shape kind {self.kind!r}")

    @property
    def coordinate(self):
        return "second" if self.kind in ("y", "y_plus_xk") else "first"

    def origin(self, ring):
        """Elementary factors whose composition has this shape as the
        recorded coordinate; empty for the pure variables."""
        from .autmap import ElementaryX, ElementaryY

        if self.kind in ("x", "y"):
            return []
        if self.kind == "x_plus_ay":
            return [ElementaryX(Poly2.monomial(ring, ring.from_int(self.param), 0, 1))]
        if self.kind == "y_plus_xk":
            return [ElementaryY(Poly2.monomial(ring, ring.one, self.param, 0))]
        return [ElementaryX(Poly2.monomial(ring, ring.one, 0, self.param))]

    def label(self):
        if self.kind == "x":
            return "X"
        if self.kind == "y":
            return "Y"
        if self.kind == "x_plus_ay":
            return f"X{self.param:+d}Y"
        if self.kind == "y_plus_xk":
            return f"Y+X^{self.param}"
        return f"X+Y^{self.param}"

    def __repr__(self):
        return f"Shape({self.label()})"


def shape_basis(bounds):
    """The documented, ordered shape list: X, Y, then X + aY by increasing
    |a| with the positive sign first, then Y + X^k, then X + Y^k."""
    shapes = [Shape("x"), Shape("y")]
    for a in range(1, bounds.coeff_range + 1):
        shapes.append(Shape("x_plus_ay", a))
        shapes.append(Shape("x_plus_ay", -a))
    for k in range(2, bounds.max_aux_degree + 1):
        shapes.append(Shape("y_plus_xk", k))
    for k in range(2, bounds.max_aux_degree + 1):
        shapes.append(Shape("x_plus_yk", k))
    return shapes


def _solve_mod_p(A, b, p):
    """One solution of A x = b over GF(p) (free variables set to zero), or
    None when the system is inconsistent.  A is dense, reduced mod p."""
    rows, cols = A.shape
    M = np.concatenate([A, b.reshape(-1, 1)], axis=1) % p
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(M[r:, c])[0]
        if hits.size == 0:
            continue
        pr = r + int(hits[0])
        if pr != r:
            M[[r, pr]] = M[[pr, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = M[r] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            M[nz] = (M[nz] - np.outer(col[nz], M[r])) % p
        pivots.append(c)
        r += 1
    if any(bool(v) for v in M[r:, cols]):
        return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = int(M[i, cols])
    return x


def search_sum_of_powers(u, v, bounds=DEFAULT_BOUNDS):
    """Bounded search for an all-elementary certificate of (X + tu, Y + tv)
    over GF(p)[t]/(t^2).

    A potential sum(c * f^m) has mod-p partials sum(d * f^(m-1) f_Y) and
    sum(d * f^(m-1) f_X) with d = m c required integral, so solvability is a
    linear system over GF(p) in the reduced d's; any solution lifts with
    c = d / m, which automatically satisfies the integrality condition.
    The returned certificate uses the first solution under the documented
    basis order (pivots greedy, free variables zero).  None when the bounded
    system is infeasible."""
    R = u.ring
    if not isinstance(R, PrimeField) or v.ring != R:
        raise UnsupportedRing("search runs over a prime field")
    p = R.p
    dual_ring = dual(R)
    target = AutoMap(
        dual_ring,
        Poly2.variable(dual_ring, "X")
        + Poly2(dual_ring, {e: dual_ring.place(c, 1) for e, c in u.terms.items()}),
        Poly2.variable(dual_ring, "Y")
        + Poly2(dual_ring, {e: dual_ring.place(c, 1) for e, c in v.terms.items()}),
    )
    if u.is_zero and v.is_zero:
        return Certificate(dual_ring, target, [])

    shapes = shape_basis(bounds)
    columns = []  # (shape, m, du terms, dv terms)
    support = set(u.terms) | set(v.terms)
    for shape in shapes:
        f = shape.poly(R)
        f_x, f_y = f.partial_x(), f.partial_y()
        power = Poly2.constant(R, R.one)  # f^(m-1)
        for m in range(1, bounds.max_power + 1):
            du = power * f_y
            dv = power * f_x
            if not (du.is_zero and dv.is_zero):
                columns.append((shape, m, du, dv))
                support |= set(du.terms) | set(dv.terms)
            power = power * f
    mono_index = {
        e: i
        for i, e in enumerate(
            sorted(support, key=lambda e: (e[0] + e[1], e[0]), reverse=True)
        )
    }
    n_rows = 2 * len(mono_index)
    # int64 is safe while p**2 fits; larger moduli fall back to exact
    # Python integers in an object array
    dtype = np.int64 if p < (1 << 31) else object
    A = np.zeros((n_rows, len(columns)), dtype=dtype)
    for col, (_, _, du, dv) in enumerate(columns):
        for e, c in du.terms.items():
            A[2 * mono_index[e], col] = c
        for e, c in dv.terms.items():
            A[2 * mono_index[e] + 1, col] = c
    rhs = np.zeros(n_rows, dtype=dtype)
    for e, c in u.terms.items():
        rhs[2 * mono_index[e]] = c
    for e, c in v.terms.items():
        rhs[2 * mono_index[e] + 1] = R.neg(c)

    x = _solve_mod_p(A, rhs, p)
    if x is None:
        return None

    from .phih import conjugated_power_factors

    factors = []
    for col, (shape, m, _, _) in enumerate(columns):
        d = int(x[col])
        if d == 0:
            continue
        factors.extend(
            conjugated_power_factors(
                dual_ring, d, m, shape.origin(R), shape.coordinate
            )
        )
    cert = Certificate(dual_ring, target, factors)
    if not cert.verify():
        raise AssertionError("sum-of-powers certificate failed to recompose")
    return cert


@dataclass
class Tame:
    certificate: Certificate

    verdict = "tame"


@dataclass
class NotTame:
    witness: ObstructionWitness | None
    reason: str = ""

    verdict = "not_tame"


@dataclass
class Inconclusive:
    constraints: dict
    bounds: SearchBounds

    verdict = "inconclusive"


def decide_tameness(phi, bounds=DEFAULT_BOUNDS):
    """Full pipeline over GF(p)[t]/(t^2): normalize, run the per-monomial
    obstruction, then the bounded sum-of-powers search.

    Tame certificates are verified and obstruction witnesses re-checked
    before they are returned; a failed bounded search yields Inconclusive,
    never NotTame."""
    R = phi.ring
    p = _dual_prime_ring(R)
    det = phi.jacobian_det()
    pre = []
    if not phi.is_special():
        if not (det.is_constant() and R.is_unit(det.constant_value())):
            return NotTame(
                witness=None,
                reason="Jacobian determinant is not a constant unit",
            )
        c = det.constant_value()
        pre = [LinearFactor(R, c, R.zero, R.zero, R.one)]
        phi_special = pre[0].inverse().as_map().compose(phi)
    else:
        phi_special = phi

    prefix, (u, v) = normalize(phi_special)
    result = obstruction_check(u, v)
    if isinstance(result, ObstructionWitness):
        return NotTame(witness=result)

    cert_uv = search_sum_of_powers(u, v, bounds)
    if cert_uv is None:
        return Inconclusive(constraints=result.solutions, bounds=bounds)
    lifted_prefix = [embed_factor(fac, R) for fac in prefix.factors]
    full = Certificate(R, phi, pre + lifted_prefix + cert_uv.factors)
    if not full.verify():
        raise AssertionError("assembled tameness certificate failed to recompose")
    return Tame(certificate=full)
