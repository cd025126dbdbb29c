"""Exception hierarchy shared by all envlab modules."""


class EnvlabError(Exception):
    """Base class for all envlab errors."""


class ValidationError(EnvlabError):
    """Bad input data (exit code 1 at the CLI)."""


class ResourceError(EnvlabError):
    """A configured cap or budget was exhausted (exit code 2 at the CLI)."""


class NotPrime(ValidationError):
    pass


class DegreeZero(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NotUnipotent(ValidationError):
    pass


class CharTooSmall(ValidationError):
    pass


class NotDominant(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


class NotCompatible(ValidationError):
    pass


class NotDivisor(ValidationError):
    pass


class OrderDivisibleByEll(ValidationError):
    pass


class CharDividesIndex(ValidationError):
    pass


class NotSemisimple(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotIrreducible(ValidationError):
    pass


class EmptyAlgebra(ValidationError):
    pass


class UnknownPredicate(ValidationError):
    pass


class RandomBudgetExceeded(ResourceError):
    """MeatAxe ran out of random algebra elements; reseed or raise the budget."""


class ClosureOverflow(ResourceError):
    """Group closure exceeded the element cap."""


class SearchBudgetExceeded(ResourceError):
    """Equivalence search exhausted its candidate budget; verdict is undecided."""


class UsageError(EnvlabError):
    """Bad command line (exit code 64 at the CLI)."""
