"""Exception types shared across the package."""


class CommCertError(Exception):
    """Base class for all package-specific errors."""


class RingMismatch(CommCertError, ValueError):
    """Operands live in different rings."""


class ShapeMismatch(CommCertError, ValueError):
    """Matrix sizes are incompatible."""


class NoncommutativeCoefficients(CommCertError, ValueError):
    """Operation requires commutative coefficients (determinants etc.)."""


class SizeTooSmall(CommCertError, ValueError):
    """Construction needs a larger matrix size."""


class EmptySum(CommCertError, ValueError):
    """A direct sum needs at least one summand."""


class InvalidWitness(CommCertError, ValueError):
    """A unit witness fails its defining identity."""


class NotACommutator(CommCertError, ValueError):
    """A factor that must carry a commutator witness does not."""


class InadmissibleInput(CommCertError, ValueError):
    """Element violates the boundary conditions of the dimension-drop algebra."""


class OutOfDomain(CommCertError, ValueError):
    """Evaluation point lies outside the allowed domain."""


class UnknownStructure(CommCertError, ValueError):
    """No bound rule applies to the described ring structure."""


class CounterexampleFound(CommCertError, ValueError):
    """A brute-force structural check found a violating element."""


class IdentityFailed(CommCertError, ValueError):
    """A free-algebra identity check failed."""


class SpecFormatError(CommCertError, ValueError):
    """Malformed ring spec string or JSON document."""
