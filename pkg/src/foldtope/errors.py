"""Domain errors. All derive from FoldtopeError so callers can catch one type."""


class FoldtopeError(ValueError):
    pass


class NonSimple(FoldtopeError):
    pass


class InessentialVertex(FoldtopeError):
    pass


class DegenerateEdge(FoldtopeError):
    pass


class LengthMismatch(FoldtopeError):
    pass


class AngleExcess(FoldtopeError):
    pass


class NotConvex(FoldtopeError):
    pass


class ResultCapExceeded(FoldtopeError):
    pass


class IncommensurableEdges(FoldtopeError):
    pass


class MidpointOffset(FoldtopeError):
    pass


class ViolatedTriangleInequality(FoldtopeError):
    pass


class NegativeCayleyMenger(FoldtopeError):
    pass


class Unbalanced(FoldtopeError):
    pass


class InvalidDigits(FoldtopeError):
    pass


class CutTreeInvalid(FoldtopeError):
    pass
