"""Exception types shared across the workbench."""


class HgaError(Exception):
    """Base class for all workbench errors."""


class InvalidPresentation(HgaError):
    pass


class NotAdmissible(HgaError):
    """Ideal not admissible within the path-length cap."""


class EmptyIdempotent(HgaError):
    pass


class UnknownVertex(HgaError):
    pass


class UnknownArrow(HgaError):
    pass


class AlgebraMismatch(HgaError):
    """Two representations live over different algebras."""


class ArityMismatch(HgaError):
    """Tuples with different (d, m) parameters."""


class NotGorensteinVerified(HgaError):
    """Gorenstein-projective test called before the algebra was certified."""


class LabelMatchFailed(HgaError):
    """No digraph isomorphism between Ext pattern and intertwining pattern."""


class ScaleExceeded(HgaError):
    pass


class NoCommutativeSquare(HgaError):
    pass


class NotReducible(HgaError):
    """Neither the primal nor the dual fabric recipe applies to a square."""


class NotGentle(HgaError):
    pass


class AdjacencyViolation(HgaError):
    """Index set for the tilting family violates the non-adjacency condition."""


class UnsupportedSummand(HgaError):
    """Shifted-projective summands are out of scope."""
