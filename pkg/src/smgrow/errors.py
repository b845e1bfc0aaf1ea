"""Exception types shared across the package."""


class SmgrowError(Exception):
    """Base class for all domain errors raised by smgrow."""


class DataError(SmgrowError):
    """Malformed or unsupported group data."""


class LevelMismatchError(SmgrowError):
    """Operands live at different tree levels."""


class ExactnessError(SmgrowError):
    """An exact operation was requested where only bounded ones exist."""


class TorsionStructureError(SmgrowError):
    """A torsion-graph section failed to normalize to splitter-times-mixer form."""
