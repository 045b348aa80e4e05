class LcpKitError(Exception):
    pass


class EmbeddedSentinel(LcpKitError, ValueError):
    pass


class TooLarge(LcpKitError, ValueError):
    pass


class OutOfRange(LcpKitError, IndexError):
    pass


class NotFound(LcpKitError, LookupError):
    pass


class QueueUnderflow(LcpKitError, RuntimeError):
    pass


class QueueResidue(LcpKitError, RuntimeError):
    pass


class InconsistentInputs(LcpKitError, ValueError):
    pass


class FormatError(LcpKitError, ValueError):
    """Raised when a serialized array has a bad magic string or length."""
