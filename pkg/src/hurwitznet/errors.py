"""Exception types shared across the package."""


class WeightMismatch(ValueError):
    """Partitions that must share a weight do not."""


class TruncationTooSmall(ValueError):
    """A Schur evaluation was requested beyond the truncation weight of the point."""


class ZeroDenominatorContent(ZeroDivisionError):
    """A denominator content product (b)_lambda vanished."""


class SingularSpecialization(ValueError):
    """A named power-sum specialization is singular (e.g. t a low-order root of unity)."""


class NetworkSyntaxError(ValueError):
    """Malformed network DSL input."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DuplicateDart(ValueError):
    """The same dart token occurs twice in a network."""


class MissingPartner(ValueError):
    """A dart occurs without its conjugate partner."""


class DisconnectedNetwork(ValueError):
    """The loops are not connected through chords and links."""


class UnknownPair(KeyError):
    """A contraction names a pair that is not present."""


class DimensionMismatch(ValueError):
    """Matrix shapes are incompatible with each other or with N."""


class SizeGuardExceeded(RuntimeError):
    """A brute-force enumeration would exceed the configured state budget."""

    def __init__(self, message: str, estimated_cost: int):
        super().__init__(f"{message} (estimated cost {estimated_cost})")
        self.estimated_cost = estimated_cost


class InfeasibleConstraintWarning(UserWarning):
    """No profile tuple satisfies the Riemann-Hurwitz constraint; the sum is 0."""
