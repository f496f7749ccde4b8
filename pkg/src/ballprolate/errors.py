"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter is outside its admissible range."""


class DomainError(ValueError):
    """An evaluation point lies outside the operation's domain."""


class PoleError(DomainError):
    """Evaluation requested on the polar axis where the spherical frame degenerates."""


class ConfigurationError(ValueError):
    """Mismatched objects were combined (e.g. rule weight vs. operator weight)."""


class SamplingError(RuntimeError):
    """A sample-point selection failed to produce usable points."""
