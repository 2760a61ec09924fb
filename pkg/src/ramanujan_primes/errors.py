"""Exception hierarchy shared by all modules."""


class RamanujanError(Exception):
    """Base class for every error raised by this package."""


class InvalidDatumError(RamanujanError, ValueError):
    """A Hecke datum or class violates its invariants (e.g. non-unit central value)."""


class InvalidClassError(RamanujanError, ValueError):
    """A Satake class fails the unitarity symmetry."""


class NumericError(RamanujanError, ArithmeticError):
    """An iterative numeric routine failed to reach its tolerance."""


class DomainError(RamanujanError, ValueError):
    """Evaluation point outside the region where the quantity is defined."""


class PoleError(DomainError):
    """Evaluation at a pole; ``order`` is the total pole order there."""

    def __init__(self, message, order=1):
        super().__init__(message)
        self.order = order


class IncompleteDataError(RamanujanError, ValueError):
    """A corpus is missing a prime required by the requested window."""

    def __init__(self, missing):
        self.missing = sorted(missing)
        names = ", ".join(str(p) for p in self.missing[:20])
        more = "" if len(self.missing) <= 20 else f" (+{len(self.missing) - 20} more)"
        super().__init__(f"missing data for prime(s): {names}{more}")


class CorpusParseError(RamanujanError, ValueError):
    """Malformed corpus input; ``lineno`` is 1-based (0 when not line specific)."""

    def __init__(self, message, lineno=0):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


class DuplicatePrimeError(CorpusParseError):
    pass


class CorpusValidationError(CorpusParseError):
    """Row is well formed but semantically invalid (composite p, bad weight, ...)."""
