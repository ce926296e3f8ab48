"""Exception hierarchy shared across the service."""


class EdurouteError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EdurouteError):
    """Input failed a precondition (empty text, malformed record, ...)."""


class NotFoundError(EdurouteError):
    """A referenced entity (session, document) does not exist."""


class ConfigError(EdurouteError):
    """Configuration file is unparseable or violates an invariant."""


class TrainingError(EdurouteError):
    """Training preconditions not met (e.g. single-class dataset)."""


class DivergenceError(TrainingError):
    """Training produced a non-finite loss; usually the lr is too high."""


class UnavailableError(EdurouteError):
    """A required component (model, index, backend) is not loaded/reachable."""


class BackendUnavailableError(UnavailableError):
    """The generation backend failed or timed out."""


class RetrievalUnavailableError(UnavailableError):
    """The embedding endpoint or index is unusable."""


class RequestTimeout(EdurouteError):
    """The per-request budget was exhausted before all stages finished."""
