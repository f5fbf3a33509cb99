"""Exception types shared across the afo package."""


class AfoError(Exception):
    """Base class for every error raised by this package."""


class LatticeError(AfoError):
    """Base class for lattice construction and query errors."""


class UnknownNode(LatticeError):
    pass


class CycleInCovers(LatticeError):
    pass


class RedundantCover(LatticeError):
    pass


class NonUniqueJoin(LatticeError):
    pass


class NonUniqueMeet(LatticeError):
    pass


class UnknownExpression(AfoError):
    pass


class EmptySet(AfoError):
    """An operation that needs a non-empty set received an empty one."""


class UnknownArgument(AfoError):
    pass


class TargetsNotInFramework(AfoError):
    pass


class IdCollision(AfoError):
    pass


class AfoFileError(AfoError):
    """Base class for errors found in an .afo document; carries a line number."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class AfoSyntaxError(AfoFileError):
    pass


class UnknownReference(AfoFileError):
    pass


class DuplicateDeclaration(AfoFileError):
    pass
