"""Error taxonomy shared across the library and the CLI exit codes."""


class MCVError(Exception):
    """Base class for library errors."""


class InputError(MCVError):
    """Malformed input: bad JSON shapes, unparsable rationals, unknown ids."""

    exit_code = 1


class PreconditionError(MCVError):
    """A mathematical precondition fails (non-integrable input, lambda = 0,
    dimension mismatches between otherwise well-formed values)."""

    exit_code = 2


class InternalInvariantError(MCVError):
    """An invariant the theory guarantees was violated at runtime: a bug."""

    exit_code = 3
