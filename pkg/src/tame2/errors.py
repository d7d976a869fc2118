"""Exception hierarchy shared by all tame2 modules."""


class TameError(Exception):
    """Base class for all library errors."""


class MixedRings(TameError):
    """Two operands belong to different coefficient rings."""


class NotAUnit(TameError):
    """Inversion was requested for a non-invertible ring element."""


class NoCanonicalMap(TameError):
    """No canonical reduction homomorphism exists between the two rings."""


class DenominatorDivisibleByP(TameError):
    """A rational with p in its denominator has no residue mod p."""


class ZeroPolynomial(TameError):
    """The zero polynomial has no leading form."""


class NotAnAutomorphism(TameError):
    """The polynomial map is not invertible (degree reduction got stuck
    or the linear part is singular)."""


class NotInvertible(TameError):
    """No inverse could be produced; the message records why."""


class UnsupportedRing(TameError):
    """The requested operation has no algorithm over this ring."""


class NotSpecial(TameError):
    """The map does not have Jacobian determinant one."""


class NotClosed(TameError):
    """The divergence of the given vector of polynomials is nonzero, so
    no potential exists."""


class CharacteristicObstruction(TameError):
    """An exponent that must be inverted is not a unit in the ring."""


class DivergenceNonZero(TameError):
    """The t-layer of a special map must have divergence zero."""


class DeterminantNotOne(TameError):
    """Elementary factorization requires a matrix of determinant one."""


class NoUnitEntry(TameError):
    """No unit entry was found in the matrix; over a local ring with
    determinant one this indicates an internal bug or ring misuse."""


class ParseError(TameError):
    """Input text does not conform to the grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)
        self.position = position


class UnknownRing(ParseError):
    """Ring expression not recognized."""
