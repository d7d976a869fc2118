"""Sparse exact bivariate polynomials.

A Poly2 stores a map from exponent pairs (i, j), meaning X^i Y^j, to nonzero
coefficients of its ring.  All operations are exact and return new values;
nothing is mutated after construction.
"""

from .errors import MixedRings, ZeroPolynomial
from .ring import TruncatedRing


def _grlex(e):
    i, j = e
    return (i + j, i)


class Poly2:
    __slots__ = ("ring", "terms", "_layers")

    def __init__(self, ring, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if not ring.is_zero(c):
                    clean[e] = c
        self.ring = ring
        self.terms = clean
        self._layers = None

    @classmethod
    def _raw(cls, ring, terms):
        # internal: terms already free of zeros
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._layers = None
        return p

    @classmethod
    def zero(cls, ring):
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring, c):
        if ring.is_zero(c):
            return cls.zero(ring)
        return cls._raw(ring, {(0, 0): c})

    @classmethod
    def variable(cls, ring, name):
        if name == "X":
            return cls._raw(ring, {(1, 0): ring.one})
        if name == "Y":
            return cls._raw(ring, {(0, 1): ring.one})
        raise ValueError(f"unknown variable {name!r}")

    @classmethod
    def monomial(cls, ring, c, i, j):
        if ring.is_zero(c):
            return cls.zero(ring)
        return cls._raw(ring, {(i, j): c})

    # -- basic queries ----------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_value(self):
        return self.terms.get((0, 0), self.ring.zero)

    def coefficient(self, i, j):
        return self.terms.get((i, j), self.ring.zero)

    def total_degree(self):
        """Maximal i + j over the support; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for i, j in self.terms)

    def leading_form(self):
        """Sub-polynomial of top total degree."""
        d = self.total_degree()
        if d < 0:
            raise ZeroPolynomial("the zero polynomial has no leading form")
        return Poly2._raw(
            self.ring, {e: c for e, c in self.terms.items() if e[0] + e[1] == d}
        )

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order (X before Y)."""
        return sorted(self.terms.items(), key=lambda t: _grlex(t[0]), reverse=True)

    def is_univariate_in(self, var):
        k = 1 if var == "X" else 0
        return all(e[k] == 0 for e in self.terms)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly2):
            raise TypeError(f"expected Poly2, got {other!r}")
        if other.ring != self.ring:
            raise MixedRings(f"{self.ring!r} vs {other.ring!r}")

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __add__(self, other):
        self._check(other)
        R = self.ring
        t = dict(self.terms)
        for e, c in other.terms.items():
            if e in t:
                s = R.add(t[e], c)
                if R.is_zero(s):
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return Poly2._raw(R, t)

    def __neg__(self):
        R = self.ring
        return Poly2._raw(R, {e: R.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        R = self.ring
        if isinstance(R, TruncatedRing):
            return _mul_truncated(self, other)
        if not self.terms or not other.terms:
            return Poly2.zero(R)
        out = {}
        add, mul = R.add, R.mul
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                p = mul(c1, c2)
                if e in out:
                    out[e] = add(out[e], p)
                else:
                    out[e] = p
        iz = R.is_zero
        return Poly2._raw(R, {e: c for e, c in out.items() if not iz(c)})

    def scale(self, c):
        R = self.ring
        if R.is_zero(c):
            return Poly2.zero(R)
        out = {}
        for e, x in self.terms.items():
            p = R.mul(c, x)
            if not R.is_zero(p):
                out[e] = p
        return Poly2._raw(R, out)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        if isinstance(self.ring, TruncatedRing) and n > 2:
            return _pow_truncated(self, n)
        return _binary_pow(self, n)

    # -- calculus ---------------------------------------------------------

    def partial_x(self):
        R = self.ring
        out = {}
        for (i, j), c in self.terms.items():
            if i == 0:
                continue
            k = R.mul(c, R.from_int(i))
            if not R.is_zero(k):
                out[(i - 1, j)] = k
        return Poly2._raw(R, out)

    def partial_y(self):
        R = self.ring
        out = {}
        for (i, j), c in self.terms.items():
            if j == 0:
                continue
            k = R.mul(c, R.from_int(j))
            if not R.is_zero(k):
                out[(i, j - 1)] = k
        return Poly2._raw(R, out)

    def substitute(self, F, G):
        """Exact h(F, G), Horner evaluation one variable at a time."""
        self._check(F)
        self._check(G)
        R = self.ring
        if not self.terms:
            return Poly2.zero(R)
        rows = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(i, {})[j] = c
        evaluated = {i: _eval_univariate(R, jmap, G) for i, jmap in rows.items()}
        return _horner(R, evaluated, F)

    def evaluate(self, x, y):
        """Value at a point of R^2, by direct term summation."""
        R = self.ring
        out = R.zero
        for (i, j), c in self.terms.items():
            out = R.add(out, R.mul(c, R.mul(R.pow(x, i), R.pow(y, j))))
        return out

    def map_coefficients(self, fn, new_ring):
        return Poly2(new_ring, {e: fn(c) for e, c in self.terms.items()})

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "Poly2(0)"
        bits = []
        for (i, j), c in self.sorted_terms():
            mono = ""
            if i:
                mono += f"X^{i}"
            if j:
                mono += f"Y^{j}"
            bits.append(f"{c!r}*{mono}" if mono else f"{c!r}")
        return "Poly2(" + " + ".join(bits) + ")"


def _eval_univariate(R, coeffs, G):
    """Evaluate sum(c_j * G^j) for a sparse exponent map {j: c_j}."""
    exps = sorted(coeffs, reverse=True)
    acc = Poly2.constant(R, coeffs[exps[0]])
    prev = exps[0]
    for j in exps[1:]:
        acc = acc * (G ** (prev - j)) + Poly2.constant(R, coeffs[j])
        prev = j
    if prev:
        acc = acc * (G**prev)
    return acc


def _horner(R, rows, F):
    """Evaluate sum(rows[i] * F^i) for a sparse exponent map {i: Poly2}."""
    exps = sorted(rows, reverse=True)
    acc = rows[exps[0]]
    prev = exps[0]
    for i in exps[1:]:
        acc = acc * (F ** (prev - i)) + rows[i]
        prev = i
    if prev:
        acc = acc * (F**prev)
    return acc


def _binary_pow(f, n):
    out = Poly2.constant(f.ring, f.ring.one)
    base = f
    while n:
        if n & 1:
            out = out * base
        n >>= 1
        if n:
            base = base * base
    return out


def _pow_truncated(f, n):
    """Power over base[t]/(t^m) through the binomial split f = B + N with N
    nilpotent: only the first m binomial terms survive, so the cost is a few
    base-layer products rather than repeated full squarings."""
    import math

    R = f.ring
    m = R.m
    layers = _split_layers(f, R)
    B = Poly2._raw(R, {e: R.place(c, 0) for e, c in layers[0].items()})
    N = f - B
    if N.is_zero or B.is_zero:
        return _binary_pow(f, n)
    top = min(m - 1, n)
    npows = [Poly2.constant(R, R.one)]
    for _ in range(top):
        npows.append(npows[-1] * N)
    acc = _binary_pow(B, n - top)
    out = Poly2.zero(R)
    for i in range(top, -1, -1):
        out = out + (acc * npows[i]).scale(R.from_int(math.comb(n, i)))
        if i > 0:
            acc = acc * B
    return out


def _base_ops(base):
    """(add, mul, is_zero) closures without method dispatch for the common
    base rings; tuples (nested truncations) fall back to the generic path."""
    if isinstance(base, TruncatedRing):
        return base.add, base.mul, base.is_zero
    if hasattr(base, "p"):
        p = base.p
        return (
            lambda x, y: (x + y) % p,
            lambda x, y: x * y % p,
            lambda x: x == 0,
        )
    import operator

    return operator.add, operator.mul, lambda x: x == 0


def _split_layers(f, R):
    """Decompose a polynomial over a truncated ring into per-layer maps of
    base-ring coefficients; cached on the instance."""
    if f._layers is not None:
        return f._layers
    iz = _base_ops(R.base)[2]
    layers = [dict() for _ in range(R.m)]
    for e, c in f.terms.items():
        for k, ck in enumerate(c):
            if not iz(ck):
                layers[k][e] = ck
    f._layers = layers
    return layers


def _mul_truncated(a, b):
    """Product over base[t]/(t^m), skipping layer pairs killed by t^m = 0.

    This avoids the quadratic blow-up of multiplying polynomials whose large
    parts sit in nilpotent layers."""
    R = a.ring
    base = R.base
    m = R.m
    la, lb = _split_layers(a, R), _split_layers(b, R)
    out_layers = [dict() for _ in range(m)]
    add, mul, iz = _base_ops(base)
    for ka, fa in enumerate(la):
        if not fa:
            continue
        for kb in range(m - ka):
            gb = lb[kb]
            if not gb:
                continue
            acc = out_layers[ka + kb]
            for (i1, j1), c1 in fa.items():
                for (i2, j2), c2 in gb.items():
                    e = (i1 + i2, j1 + j2)
                    p = mul(c1, c2)
                    if e in acc:
                        acc[e] = add(acc[e], p)
                    else:
                        acc[e] = p
    support = set()
    for layer in out_layers:
        support.update(layer)
    zero = base.zero
    terms = {}
    for e in support:
        vec = []
        nonzero = False
        for layer in out_layers:
            c = layer.get(e, zero)
            vec.append(c)
            if not nonzero and not iz(c):
                nonzero = True
        if nonzero:
            terms[e] = tuple(vec)
    return Poly2._raw(R, terms)


def poly_layer(f, k):
    """The t^k layer of a polynomial over a truncated ring, as a polynomial
    over the base ring."""
    R = f.ring
    if not isinstance(R, TruncatedRing):
        raise MixedRings(f"{R!r} is not a truncated ring")
    base = R.base
    return Poly2(base, {e: c[k] for e, c in f.terms.items()})


def poly_place(f, ext, k):
    """Embed a base-ring polynomial into layer k of a truncated extension."""
    if not isinstance(ext, TruncatedRing) or ext.base != f.ring:
        raise MixedRings(f"{ext!r} does not extend {f.ring!r}")
    return Poly2(ext, {e: ext.place(c, k) for e, c in f.terms.items()})


class JacobianMatrix:
    """The 2x2 matrix of partials of a polynomial map (F, G)."""

    __slots__ = ("f_x", "f_y", "g_x", "g_y")

    def __init__(self, F, G):
        F._check(G)
        self.f_x = F.partial_x()
        self.f_y = F.partial_y()
        self.g_x = G.partial_x()
        self.g_y = G.partial_y()

    def det(self):
        return self.f_x * self.g_y - self.f_y * self.g_x


def jacobian_det(F, G):
    """det J(F, G) = F_X * G_Y - F_Y * G_X, exactly."""
    return JacobianMatrix(F, G).det()
