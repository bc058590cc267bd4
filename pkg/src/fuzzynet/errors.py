"""Engine error hierarchy.

Every error carries a stable machine-readable ``code`` so the HTTP layer can
map it to exactly one API error, and an optional ``entity`` naming the
offending object (term, procedure, session, ...).
"""
from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "engine.error"

    def __init__(self, message: str, entity: str | None = None):
        super().__init__(message)
        self.entity = entity

    def to_api_error(self) -> dict:
        return {"code": self.code, "message": str(self), "entity": self.entity}


class InvalidMembershipError(EngineError):
    """Membership function corners out of order or out of the unit range."""

    code = "mf.invalid"


class UnknownLevelError(EngineError):
    """Interpretation level name is not one of the five known levels."""

    code = "level.unknown"


class UniverseMismatchError(EngineError):
    """Two fuzzy values do not share a universe (elements, procedures, levels)."""

    code = "universe.mismatch"


class DegenerateInputError(EngineError):
    """Input is structurally valid but carries no mass (all-zero, empty)."""

    code = "input.degenerate"


class PairingError(EngineError):
    """Value lists cannot be paired (length or kind mismatch, empty list)."""

    code = "pairing.mismatch"


class UnknownEntityError(EngineError):
    code = "entity.unknown"


class DuplicateEntityError(EngineError):
    code = "entity.duplicate"


class SessionClosedError(EngineError):
    code = "session.closed"


class EmptyKnowledgeBaseError(EngineError):
    code = "kb.empty"


class DocumentParseError(EngineError):
    """Knowledge-base file is not syntactically valid."""

    code = "kb.parse"


class DocumentValidationError(EngineError):
    """Knowledge-base document violates the format; collects every problem."""

    code = "kb.invalid"

    def __init__(self, errors: list[str], entity: str | None = None):
        self.errors = list(errors)
        summary = "; ".join(self.errors)
        super().__init__(f"{len(self.errors)} validation error(s): {summary}", entity)


class GradingError(EngineError):
    """An edge could not be regraded; message names the edge."""

    code = "grading.edge"
