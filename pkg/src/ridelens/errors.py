"""Exception types shared across the pipeline."""


class RideLensError(Exception):
    """Base class for all domain errors raised by this package."""


class ConfigError(RideLensError):
    """Config file missing, unreadable, or failing validation."""


class SchemaError(RideLensError):
    """A mapped source column is absent from the input file."""


class EmptyInputError(RideLensError):
    """An input file yielded zero usable rows."""


class GeometryError(RideLensError):
    """A boundary ring is unclosed or degenerate."""


class ProbeFormatError(RideLensError):
    """A probe document has an unknown version or a malformed shape."""


class NoMatchingTripsError(RideLensError):
    """A planner filter matched zero trips.

    Carries the applied filters so callers can echo them back to the user.
    """

    def __init__(self, message: str, filters: dict | None = None):
        super().__init__(message)
        self.filters = dict(filters or {})


class EmptyDayError(RideLensError):
    """No location pings on the requested animation date.

    ``available`` lists ISO dates that do have pings.
    """

    def __init__(self, message: str, available: list[str] | None = None):
        super().__init__(message)
        self.available = list(available or [])
