"""Error taxonomy shared by the library, the service layer, and the CLI."""


class NavError(Exception):
    """Base class for every expected failure mode."""

    code = "error"


class ParseError(NavError):
    """Input document could not be read at all (syntax, not content)."""

    code = "parse-error"


class ValidationError(NavError):
    """Structurally readable input that violates a documented rule."""

    code = "validation-error"


class NotFound(NavError):
    code = "not-found"


class Conflict(NavError):
    """State already moved on (duplicate vote, resolved proposal)."""

    code = "conflict"


class Rejected(NavError):
    """Request understood but refused by a domain rule."""

    code = "rejected"


class UnanalyzableQuery(NavError):
    """Query text left no lemmas after stop-filtering."""

    code = "unanalyzable-query"


class NoQueryableTerms(NavError):
    """Node label left no lemmas to build an outbound query from."""

    code = "no-queryable-terms"


class ConfigError(NavError):
    code = "config-error"
