"""Exception hierarchy. Every failure mode the library reports deliberately
gets its own class so callers can branch on geometry rather than on strings."""


class EvolabError(Exception):
    """Base class for all library errors."""


# -- spherical polygons / coordinate spaces ---------------------------------

class NonGeneric(EvolabError):
    """A cyclic window of direction vectors is (numerically) linearly dependent."""


class DegenerateNormal(EvolabError):
    """Orthogonal complement of a direction window is not 1-dimensional."""


class RankDeficient(EvolabError):
    """Null space of the direction matrix does not have dimension n - m."""


class ClosureViolation(EvolabError):
    """Signed side lengths do not close up: ||sum x_i v_i|| above tolerance."""


class NotAligned(EvolabError):
    """An edge of a vertex polygon has an off-axis component above tolerance."""


# -- isometries --------------------------------------------------------------

class NoFixedPoint(EvolabError):
    """The linear fixed-point system is inconsistent."""


class NonUnique(EvolabError):
    """Fixed-point set has positive dimension (non-generic isometry)."""

    def __init__(self, msg, point=None):
        super().__init__(msg)
        self.point = point  # a representative (minimum-norm) fixed point


class NoInvariantLine(EvolabError):
    """Orthogonal part has no real eigenvalue +-1 within tolerance."""


# -- evolutes ----------------------------------------------------------------

class AffinelyDegenerate(EvolabError):
    """A window of m+1 vertices is affinely dependent."""

    def __init__(self, msg, window=None):
        super().__init__(msg)
        self.window = window


class NoFixedVector(EvolabError):
    """Reflection composition has no eigenvalue within tolerance of 1."""


class AmbiguousKernel(EvolabError):
    """Eigenspace at 1 of the reflection composition has dimension > 1."""


class WindowDegenerate(EvolabError):
    """m vertices meant to span a reflection hyperplane are affinely dependent."""


# -- pairing / spectra -------------------------------------------------------

class WindowMismatch(EvolabError):
    """Support-number window representatives disagree beyond tolerance."""


class DegeneratePairing(EvolabError):
    """Pairing matrix numerically singular (non-generic configuration)."""


class DegenerateForm(EvolabError):
    """Symplectic form singular on the space it is supposed to be defined on."""


class PairingFailure(EvolabError):
    """A nonzero eigenvalue has no partner within the pairing tolerance."""

    def __init__(self, msg, gap=None):
        super().__init__(msg)
        self.gap = gap


# -- iteration ---------------------------------------------------------------

class PointPolygon(EvolabError):
    """All vertices coincide; the polygon cannot be rescaled."""


class IterationDiverged(EvolabError):
    """A coordinate exceeded the divergence guard before normalization."""


# -- curves ------------------------------------------------------------------

class NonSimpleZero(EvolabError):
    """Profile and its derivative vanish together within tolerance."""


class VanishingTorsion(EvolabError):
    """Torsion vanishes away from cusps; the evolute formula breaks down."""


class MismatchedIndicatrix(EvolabError):
    """Curve pairing arguments do not live on dual indicatrices."""


class InvalidParameter(EvolabError):
    """Parameter outside its admissible range."""
