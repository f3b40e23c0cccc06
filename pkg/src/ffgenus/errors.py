"""Exception types shared across the package, mapped to CLI exit codes."""


class SchemaError(ValueError):
    """Malformed descriptor or job input (exit 1)."""


class CapExceeded(RuntimeError):
    """A configured enumeration cap would be exceeded (exit 2)."""


class VerificationFailure(RuntimeError):
    """An oracle verdict failed on a user computation (exit 3)."""


class InternalCheckError(AssertionError):
    """Two theorem-backed computations of the same quantity disagree (exit 4)."""


class TrivialExtension(ValueError):
    """The descriptor defines the trivial extension of the base field."""
