class AlbertError(Exception):
    """Base class for every error raised by the toolkit."""


class MalformedInput(AlbertError, ValueError):
    """Input that cannot be parsed or has the wrong shape."""


class DimensionMismatch(MalformedInput):
    pass


class FieldMismatch(MalformedInput):
    pass


class PreconditionError(AlbertError, ValueError):
    """A mathematical precondition of an operation is violated."""


class IndeterminacyError(PreconditionError):
    """The input lies in the indeterminacy locus of a rational map."""
