"""Exception types shared across the package."""


class InputError(ValueError):
    """Caller supplied data that violates a documented precondition."""


class StructureError(ValueError):
    """A combinatorial structure failed an internal validity check."""


class FormatError(ValueError):
    """Serialized data does not follow the documented schema."""
