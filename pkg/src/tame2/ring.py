"""Exact coefficient rings and the canonical reductions between them.

Elements are plain Python values owned by a ring descriptor: ints for the
integers, gmpy2 rationals for the rationals, canonical residues in [0, p)
for prime fields, and fixed-length coefficient tuples for the truncated
extensions R[t]/(t^m).  The square-zero extension R[t]/(t^2) is the m = 2
case of the same construction, so both spellings share one code path.

Descriptors are immutable and interned where possible; every operation is a
pure function, so values can be shared freely between threads.
"""

import functools

from gmpy2 import mpq

from .errors import (
    DenominatorDivisibleByP,
    MixedRings,
    NoCanonicalMap,
    NotAUnit,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)

# Deterministic Miller-Rabin witness set, sufficient for all n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA = tuple(p for p in range(2, 400) if all(p % q for q in range(2, p)))


def is_prime(n):
    """Primality check: deterministic below 2**64, Miller-Rabin with a fixed
    witness set above (no randomness, so results are reproducible)."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    witnesses = _MR_WITNESSES if n < (1 << 64) else _MR_EXTRA
    for a in witnesses:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Ring:
    """Abstract coefficient ring.

    Subclasses provide ``zero``/``one`` and the arithmetic on raw values.
    Cross-ring mixing is guarded where descriptors actually meet (polynomials
    and maps carry their ring); the raw element operations here assume
    operands of the right shape and raise MixedRings on structural mismatch.
    """

    is_field = False
    has_rationals = False  # True when the ring contains the rationals

    def add(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x):
        raise NotImplementedError

    def is_unit(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def from_rational(self, q):
        raise NotImplementedError

    def pow(self, x, n):
        if n < 0:
            return self.pow(self.inv(x), -n)
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, x)
            n >>= 1
            if n:
                x = self.mul(x, x)
        return out

    def characteristic(self):
        raise NotImplementedError


class IntegerRing(Ring):
    zero = 0
    one = 1

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x == 1 or x == -1

    def inv(self, x):
        if x == 1 or x == -1:
            return x
        raise NotAUnit(f"{x} is not a unit in ZZ")

    def from_int(self, n):
        return int(n)

    def from_rational(self, q):
        q = mpq(q)
        if q.denominator != 1:
            raise NotAUnit(f"{q} is not an integer")
        return int(q.numerator)

    def characteristic(self):
        return 0

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash(IntegerRing)

    def __repr__(self):
        return "ZZ"


class RationalRing(Ring):
    zero = mpq(0)
    one = mpq(1)
    is_field = True
    has_rationals = True

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x != 0

    def inv(self, x):
        if x == 0:
            raise NotAUnit("0 is not a unit in QQ")
        return 1 / mpq(x)

    def from_int(self, n):
        return mpq(n)

    def from_rational(self, q):
        return mpq(q)

    def characteristic(self):
        return 0

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash(RationalRing)

    def __repr__(self):
        return "QQ"


ZZ = IntegerRing()
QQ = RationalRing()


class PrimeField(Ring):
    """GF(p) with canonical residues in [0, p).  p may be arbitrarily large;
    primality is verified at construction."""

    is_field = True

    def __init__(self, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, x, y):
        return (x + y) % self.p

    def mul(self, x, y):
        return x * y % self.p

    def neg(self, x):
        return -x % self.p

    def is_zero(self, x):
        return x == 0

    def is_unit(self, x):
        return x % self.p != 0

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise NotAUnit(f"0 is not a unit in GF({self.p})")
        return pow(x, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def from_rational(self, q):
        q = mpq(q)
        den = int(q.denominator) % self.p
        if den == 0:
            raise DenominatorDivisibleByP(
                f"{q} has no residue mod {self.p}: denominator divisible by {self.p}"
            )
        return int(q.numerator) % self.p * self.inv(den) % self.p

    def elements(self):
        return range(self.p)

    def characteristic(self):
        return self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash((PrimeField, self.p))

    def __repr__(self):
        return f"GF({self.p})"


@functools.lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


class TruncatedRing(Ring):
    """base[t]/(t^m): elements are length-m coefficient tuples over the base,
    multiplication truncates t^m.  m = 2 is the square-zero (dual) case."""

    def __init__(self, base, m):
        m = int(m)
        if m < 1:
            raise ValueError("truncation order must be positive")
        self.base = base
        self.m = m
        self.zero = (base.zero,) * m
        self.one = (base.one,) + (base.zero,) * (m - 1)
        self.has_rationals = base.has_rationals

    @property
    def t(self):
        if self.m < 2:
            raise ValueError("t vanishes when the truncation order is 1")
        return self.place(self.base.one, 1)

    def place(self, c, k):
        """The element c * t^k."""
        if not 0 <= k < self.m:
            raise ValueError(f"layer {k} out of range for t^{self.m} = 0")
        out = [self.base.zero] * self.m
        out[k] = c
        return tuple(out)

    def embed(self, c):
        return self.place(c, 0)

    def layer(self, x, k):
        return x[k]

    def _check(self, x):
        if not isinstance(x, tuple) or len(x) != self.m:
            raise MixedRings(f"expected a length-{self.m} coefficient tuple, got {x!r}")

    def add(self, x, y):
        self._check(x)
        self._check(y)
        b = self.base
        return tuple(b.add(a, c) for a, c in zip(x, y))

    def neg(self, x):
        self._check(x)
        b = self.base
        return tuple(b.neg(a) for a in x)

    def mul(self, x, y):
        self._check(x)
        self._check(y)
        b = self.base
        m = self.m
        out = [b.zero] * m
        for i, xi in enumerate(x):
            if b.is_zero(xi):
                continue
            for j in range(m - i):
                yj = y[j]
                if b.is_zero(yj):
                    continue
                out[i + j] = b.add(out[i + j], b.mul(xi, yj))
        return tuple(out)

    def is_zero(self, x):
        b = self.base
        return all(b.is_zero(c) for c in x)

    def is_unit(self, x):
        return self.base.is_unit(x[0])

    def inv(self, x):
        self._check(x)
        # Newton iteration y -> y(2 - xy) doubles the number of exact layers.
        y = self.embed(self.base.inv(x[0]))
        two = self.from_int(2)
        k = 1
        while k < self.m:
            y = self.mul(y, self.sub(two, self.mul(x, y)))
            k *= 2
        return y

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def from_rational(self, q):
        return self.embed(self.base.from_rational(q))

    def characteristic(self):
        return self.base.characteristic()

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedRing)
            and other.m == self.m
            and other.base == self.base
        )

    def __hash__(self):
        return hash((TruncatedRing, self.base, self.m))

    def __repr__(self):
        return f"{self.base!r}[t]/(t^{self.m})"


@functools.lru_cache(maxsize=None)
def truncated(base, m):
    return TruncatedRing(base, m)


def dual(base):
    """The square-zero extension base[t]/(t^2)."""
    return truncated(base, 2)


def is_dual(ring):
    return isinstance(ring, TruncatedRing) and ring.m == 2


class Hom:
    """A coefficient map between two rings, liftable to polynomials, maps
    and certificate factors."""

    def __init__(self, src, dst, fn):
        self.src = src
        self.dst = dst
        self._fn = fn

    def __call__(self, x):
        return self._fn(x)

    def poly(self, f):
        from .poly import Poly2

        if f.ring != self.src:
            raise MixedRings(f"polynomial over {f.ring!r}, hom expects {self.src!r}")
        return Poly2(self.dst, {e: self._fn(c) for e, c in f.terms.items()})

    def automap(self, phi):
        from .autmap import AutoMap

        return AutoMap(self.dst, self.poly(phi.F), self.poly(phi.G))

    def factor(self, fac):
        from .autmap import AffineShift, ElementaryX, ElementaryY, LinearFactor

        if isinstance(fac, ElementaryX):
            return ElementaryX(self.poly(fac.f))
        if isinstance(fac, ElementaryY):
            return ElementaryY(self.poly(fac.f))
        if isinstance(fac, LinearFactor):
            fn = self._fn
            return LinearFactor(self.dst, fn(fac.a), fn(fac.b), fn(fac.c), fn(fac.d))
        if isinstance(fac, AffineShift):
            return AffineShift(self.dst, self._fn(fac.a), self._fn(fac.b))
        raise TypeError(f"not a factor: {fac!r}")


def reduce_hom(src, dst):
    """The canonical surjection src -> dst, or NoCanonicalMap.

    Supported: identity maps; ZZ -> GF(p); the partial QQ -> GF(p) defined on
    p-free denominators (failures surface element-wise); truncation-order
    reduction and base reduction for truncated rings; killing t entirely.
    """
    if src == dst:
        return Hom(src, dst, lambda x: x)
    if isinstance(src, TruncatedRing):
        if isinstance(dst, TruncatedRing) and dst.m <= src.m:
            try:
                bh = reduce_hom(src.base, dst.base)
            except NoCanonicalMap:
                pass
            else:
                k = dst.m
                return Hom(src, dst, lambda x: tuple(bh(c) for c in x[:k]))
        bh = reduce_hom(src.base, dst)
        return Hom(src, dst, lambda x: bh(x[0]))
    if isinstance(src, IntegerRing) and isinstance(dst, PrimeField):
        return Hom(src, dst, dst.from_int)
    if isinstance(src, RationalRing) and isinstance(dst, PrimeField):
        return Hom(src, dst, dst.from_rational)
    raise NoCanonicalMap(f"no canonical map {src!r} -> {dst!r}")


def embed_hom(base, ext):
    """The constant-coefficient section base -> base[t]/(t^m).  Not a
    canonical surjection; used to lift residue certificates."""
    if not isinstance(ext, TruncatedRing) or ext.base != base:
        raise NoCanonicalMap(f"{ext!r} is not a truncated extension of {base!r}")
    return Hom(base, ext, ext.embed)
