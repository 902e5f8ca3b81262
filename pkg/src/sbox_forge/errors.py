class SBoxForgeError(Exception):
    """Base class for errors raised by sbox_forge."""


class InvalidTableError(SBoxForgeError, ValueError):
    """A lookup table has the wrong length or out-of-range entries."""


class GenerationStalled(SBoxForgeError):
    """The chaotic stream failed to yield 256 distinct octets within budget."""


class RefinementFailed(SBoxForgeError):
    """Refinement could not remove every fixed point within its pass budget."""
