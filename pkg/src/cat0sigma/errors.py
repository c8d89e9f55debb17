"""Exception types shared across the package."""


class Cat0SigmaError(Exception):
    """Base class for all errors raised by this package."""


class ZeroCharacter(Cat0SigmaError):
    """The zero character has no ray class on the character sphere."""


class DimensionMismatch(Cat0SigmaError):
    """Operands live on character spheres of different dimensions."""


class NotTranslationAction(Cat0SigmaError):
    """The action is not by Euclidean translations."""


class WrongSpace(Cat0SigmaError):
    """A point or ray does not belong to the given model space."""


class ParameterOutOfRange(Cat0SigmaError):
    """A geodesic parameter lies outside [0, d(a, b)]."""


class DegenerateTriangle(Cat0SigmaError):
    """Comparison angle undefined: a side at the apex has length zero."""


class NotAsymptotic(Cat0SigmaError):
    """The two rays have different endpoints."""


class UnknownGenerator(Cat0SigmaError):
    """A word uses a letter that is not a declared generator."""


class DepthExhausted(Cat0SigmaError):
    """A depth-bounded tree search hit its bound before deciding."""


class EndNotFixed(Cat0SigmaError):
    """A generator moves the boundary point, so no character is induced."""


class EmptyConfiguration(Cat0SigmaError):
    """A control configuration must contain at least one point."""


class NotClosed(Cat0SigmaError):
    """The map sends a configuration label outside the configuration."""


class UnsupportedNumberForm(Cat0SigmaError):
    """Boundary value not given exactly (rational, infinity, or a + b*sqrt(d))."""


class UnknownVertex(Cat0SigmaError):
    """Vertex is not in the graph."""


class DegreeOutOfRange(Cat0SigmaError):
    """Degree n lies outside the range covered by the piecewise formula."""


class InvalidChain(Cat0SigmaError):
    """The length chain fl(stabilizers) <= cl(chi) <= fl(G) is violated."""


class UnsupportedDimension(Cat0SigmaError):
    """Sphere drawing supports only k = 1, 2, 3."""
