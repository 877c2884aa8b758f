"""Exception types.  Every library error derives from :class:`ApproachError`."""
from __future__ import annotations


class ApproachError(ValueError):
    """Base class; the CLI maps these to exit code 2."""

    def payload(self) -> dict:
        return {"error": type(self).__name__, "message": str(self)}


class NonzeroDiagonal(ApproachError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"q({point}, {point}) must be 0")

    def payload(self):
        return {**super().payload(), "point": self.point}


class TriangleViolation(ApproachError):
    def __init__(self, i, j, k, lhs, rhs):
        self.triple = (i, j, k)
        self.lhs, self.rhs = lhs, rhs
        super().__init__(f"q({i},{k}) = {lhs} exceeds q({i},{j}) + q({j},{k}) = {rhs}")

    def payload(self):
        return {**super().payload(), "triple": list(self.triple)}


class UnknownPoint(ApproachError):
    pass


class EmptySubspace(ApproachError):
    pass


class NotAPreorder(ApproachError):
    pass


class UnboundedInput(ApproachError):
    pass


class CarrierMismatch(ApproachError):
    pass


class EmptySet(ApproachError):
    pass


class NotSeparated(ApproachError):
    pass


class InvalidScale(ApproachError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)

    def payload(self):
        out = super().payload()
        if self.pair is not None:
            out["pair"] = [str(p) for p in self.pair]
        return out


class NotContractive(ApproachError):
    pass


class NotUpperRegular(ApproachError):
    pass


class NotLowerRegular(ApproachError):
    pass


class NotOrdered(ApproachError):
    pass


class SandwichViolated(ApproachError):
    pass


class StageSeparationFailure(ApproachError):
    """A stage pair of the staged interpolation has no Urysohn function."""

    def __init__(self, m, k, n, reason):
        self.m, self.k, self.n = m, k, n
        self.reason = reason
        super().__init__(f"stage (m={m}, k={k}, n={n}): {reason}")

    def payload(self):
        return {**super().payload(), "m": self.m, "k": self.k, "n": self.n}


class SpaceIsNormal(ApproachError):
    pass


class OutOfBound(ApproachError):
    pass


class PreconditionFailed(ApproachError):
    pass


class InstanceTooLarge(ApproachError):
    pass


class UnknownEntry(ApproachError):
    pass


class BadParams(ApproachError):
    pass
