class ConfigurationError(ValueError):
    """A simulation config or stream id is outside its valid range."""


class DomainError(ValueError):
    """An analytic or statistical quantity was requested outside the domain where it is defined."""


class UsageError(ValueError):
    """An API was called in a way that breaks one of its invariants (e.g. non-consecutive indices)."""
