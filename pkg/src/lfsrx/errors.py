"""Exception hierarchy shared by the generator, analysis and CLI layers."""


class LfsrxError(ValueError):
    """Base class for all errors raised by lfsrx."""


class ConfigError(LfsrxError):
    """Invalid register or generator configuration."""


class SeedError(LfsrxError):
    """Seed that would lock the register (all-zero seed in standard mode)."""


class RangeError(LfsrxError):
    """Register too long for exhaustive full-period enumeration."""


class LengthError(LfsrxError):
    """Bit sequence of the wrong length for a fixed-size test."""


class UsageError(LfsrxError):
    """Analysis requested on a stream that cannot support it."""
