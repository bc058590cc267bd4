"""Interactive assistance: match a query to procedures, learn from feedback.

``diagnose`` ranks candidate procedures for a user's goal term.  ``confirm``
reinforces the confirmed interpretation (membership drifts toward the
strongest truth level); ``reject`` weakens it (drift toward the weakest).
Every knowledge-base change is captured as a replayable delta.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    DegenerateInputError,
    DuplicateEntityError,
    EmptyKnowledgeBaseError,
    PairingError,
    SessionClosedError,
    UnknownEntityError,
)
from .membership import (
    DEFAULT_LEVEL_FUNCTIONS,
    InterpretationLevel,
    LevelProfile,
    TrapezoidMF,
)
from .network import SemanticNet
from .similarity import sim_user_vars
from .variables import UserVariable

__all__ = [
    "ETA_DEFAULT",
    "SCORE_FLOOR",
    "Query",
    "Candidate",
    "LearningDelta",
    "SessionStatus",
    "DialogueSession",
    "diagnose",
    "confirm",
    "reject",
    "learn_term",
    "apply_delta",
    "replay",
]

ETA_DEFAULT = 0.2
#: Scores below this floor are treated as "no plausible candidate": the
#: session opens empty and the caller should offer to be taught instead.
SCORE_FLOOR = 0.05


@dataclass(frozen=True)
class Query:
    """A user request: goal term (verb), optional object term and context tags."""

    goal: str
    obj: str = ""
    context: tuple[str, ...] = ()

    def __post_init__(self):
        if not str(self.goal).strip():
            raise DegenerateInputError("query goal term must be non-empty")
        object.__setattr__(self, "goal", str(self.goal).strip())
        object.__setattr__(self, "obj", str(self.obj).strip())
        object.__setattr__(self, "context", tuple(str(tag).strip() for tag in self.context))

    def to_jsonable(self) -> dict:
        return {"goal": self.goal, "object": self.obj, "context": list(self.context)}

    @classmethod
    def from_jsonable(cls, data: dict) -> "Query":
        return cls(
            goal=data.get("goal", ""),
            obj=data.get("object", ""),
            context=tuple(data.get("context", ())),
        )


@dataclass(frozen=True)
class Candidate:
    """One ranked interpretation of the query.

    ``term`` is the user term whose profile produced the score; for an
    unknown goal term it is the known term the score was transferred from,
    with ``via`` naming the context tag that licensed the transfer and
    ``transfer_similarity`` its weight.
    """

    procedure: str
    score: float
    level: str
    term: str
    attribute: str
    centroids: tuple[tuple[str, float], ...]
    via: str | None = None
    transfer_similarity: float | None = None

    def to_jsonable(self) -> dict:
        return {
            "procedure": self.procedure,
            "score": self.score,
            "level": self.level,
            "term": self.term,
            "attribute": self.attribute,
            "centroids": dict(self.centroids),
            "via": self.via,
            "transfer_similarity": self.transfer_similarity,
        }


@dataclass(frozen=True)
class LearningDelta:
    """One replayable knowledge-base change.

    ``action`` is "learn" (new link inserted), "confirm" or "reject" (an
    existing membership function blended).  ``new`` carries the resulting
    corners verbatim, so replay is exact regardless of arithmetic.
    """

    action: str
    attribute: str
    term: str
    procedure: str
    level: str
    old: tuple[float, float, float, float] | None
    new: tuple[float, float, float, float]
    eta: float | None = None

    def to_jsonable(self) -> dict:
        return {
            "action": self.action,
            "attribute": self.attribute,
            "term": self.term,
            "procedure": self.procedure,
            "level": self.level,
            "old": list(self.old) if self.old is not None else None,
            "new": list(self.new),
            "eta": self.eta,
        }

    @classmethod
    def from_jsonable(cls, data: dict) -> "LearningDelta":
        old = data.get("old")
        return cls(
            action=data["action"],
            attribute=data["attribute"],
            term=data["term"],
            procedure=data["procedure"],
            level=data["level"],
            old=tuple(old) if old is not None else None,
            new=tuple(data["new"]),
            eta=data.get("eta"),
        )


class SessionStatus(str, Enum):
    OPEN = "open"
    CONFIRMED = "confirmed"
    REJECTED = "rejected"  # reserved for wire compatibility; rejecting every
    # candidate closes the session as ABANDONED instead
    ABANDONED = "abandoned"


@dataclass(frozen=True)
class DialogueSession:
    """One diagnose/confirm/reject exchange; updates are functional."""

    id: str
    query: Query
    candidates: tuple[Candidate, ...]
    status: SessionStatus = SessionStatus.OPEN
    target_term: str | None = None
    rejected: tuple[str, ...] = ()
    deltas: tuple[LearningDelta, ...] = ()

    def find(self, candidate_id: str) -> Candidate:
        for candidate in self.candidates:
            if candidate.procedure == candidate_id:
                return candidate
        raise UnknownEntityError(
            f"session {self.id} has no candidate {candidate_id!r}", entity=candidate_id
        )

    def to_jsonable(self) -> dict:
        return {
            "id": self.id,
            "status": self.status.value,
            "query": self.query.to_jsonable(),
            "target_term": self.target_term,
            "candidates": [candidate.to_jsonable() for candidate in self.candidates],
            "rejected": list(self.rejected),
            "deltas": [delta.to_jsonable() for delta in self.deltas],
        }


def normalize_goal(goal: str) -> str:
    """Canonical term id for a goal verb: "rub" -> "to-rub"."""
    goal = goal.strip().lower()
    return goal if goal.startswith("to-") else f"to-{goal}"


def resolve_goal_term(net: SemanticNet, goal: str) -> tuple[str, str] | None:
    """Find (attribute, term) for a goal word, trying the exact spelling
    first and the canonical "to-" spelling second."""
    for candidate in (goal.strip(), goal.strip().lower(), normalize_goal(goal)):
        for attr in sorted(net.user_attributes):
            if candidate in net.user_attributes[attr]:
                return attr, candidate
    return None


def _score_term(attr: str, term: str, var: UserVariable) -> list[Candidate]:
    candidates = []
    for proc, profile in var:
        level = profile.dominant_level()
        evidence = tuple((lv.key, mf.centroid()) for lv, mf in profile)
        candidates.append(
            Candidate(
                procedure=proc,
                score=profile[level].centroid(),
                level=level.key,
                term=term,
                attribute=attr,
                centroids=evidence,
            )
        )
    return candidates


def _score_transfer(net: SemanticNet, query: Query, decimals: int | None) -> list[Candidate]:
    """Score an unknown goal term through known terms named in the context.

    Context tags that resolve to known terms act as proxies.  Every known
    term of the same attribute is weighted by its best similarity to a proxy
    (a proxy weighs itself 1), and passes that fraction of its own
    per-procedure scores on.  Each procedure keeps its single best offer.
    """
    proxies: list[tuple[str, str]] = []
    for tag in query.context:
        resolved = resolve_goal_term(net, tag)
        if resolved is not None and resolved not in proxies:
            proxies.append(resolved)
    if not proxies:
        return []
    best: dict[str, Candidate] = {}
    for attr in sorted(net.user_attributes):
        attr_proxies = [term for (proxy_attr, term) in proxies if proxy_attr == attr]
        if not attr_proxies:
            continue
        table = net.user_attributes[attr]
        for term in sorted(table):
            var = table[term]
            weight = 0.0
            via = None
            for proxy in attr_proxies:
                if term == proxy:
                    value = 1.0
                else:
                    try:
                        value = sim_user_vars(var, table[proxy], decimals).ratio
                    except (PairingError, DegenerateInputError):
                        continue
                if value > weight:
                    weight = value
                    via = proxy
            if via is None:
                continue
            for base in _score_term(attr, term, var):
                transferred = replace(
                    base,
                    score=weight * base.score,
                    via=via,
                    transfer_similarity=weight,
                )
                current = best.get(base.procedure)
                if (
                    current is None
                    or transferred.score > current.score
                    or (transferred.score == current.score and transferred.term < current.term)
                ):
                    best[base.procedure] = transferred
    return list(best.values())


def diagnose(
    net: SemanticNet,
    query: Query,
    session_id: str = "s1",
    decimals: int | None = 2,
) -> DialogueSession:
    """Rank candidate procedures for a query.

    A known goal term is scored per linked procedure by the centroid of its
    strongest level.  An unknown term borrows scores from known terms via
    context-tag similarity.  Candidates below the score floor are dropped;
    an empty list leaves the session open for teaching.
    """
    if not any(net.user_attributes.values()):
        raise EmptyKnowledgeBaseError(
            "the knowledge base has no user terms yet; teach one first"
        )
    resolved = resolve_goal_term(net, query.goal)
    if resolved is not None:
        attr, term = resolved
        candidates = _score_term(attr, term, net.user_variable(attr, term))
        target_term = None
    else:
        candidates = _score_transfer(net, query, decimals)
        target_term = normalize_goal(query.goal)
    ranked = sorted(
        (c for c in candidates if c.score >= SCORE_FLOOR),
        key=lambda c: (-c.score, c.procedure),
    )
    return DialogueSession(
        id=session_id,
        query=query,
        candidates=tuple(ranked),
        status=SessionStatus.OPEN,
        target_term=target_term,
    )


def _require_open(session: DialogueSession):
    if session.status is not SessionStatus.OPEN:
        raise SessionClosedError(
            f"session {session.id} is already {session.status.value}", entity=session.id
        )


def _blend(
    net: SemanticNet,
    attribute: str,
    term: str,
    proc: str,
    target: InterpretationLevel,
    eta: float,
    action: str,
) -> tuple[SemanticNet, LearningDelta]:
    var = net.user_variable(attribute, term)
    profile = var.profile(proc)
    if profile is None:
        raise UnknownEntityError(
            f"term {term!r} has no profile for procedure {proc!r}", entity=proc
        )
    level = profile.dominant_level()
    old = profile[level]
    new = old.blend_toward(DEFAULT_LEVEL_FUNCTIONS[target], eta)
    updated = net.with_profile_function(attribute, term, proc, level, new)
    delta = LearningDelta(
        action=action,
        attribute=attribute,
        term=term,
        procedure=proc,
        level=level.key,
        old=old.corners,
        new=new.corners,
        eta=eta,
    )
    return updated, delta


def confirm(
    net: SemanticNet,
    session: DialogueSession,
    candidate_id: str,
    eta: float = ETA_DEFAULT,
) -> tuple[SemanticNet, DialogueSession, list[LearningDelta]]:
    """Accept a candidate: its membership drifts toward the strongest level.

    If the session's goal term was unknown, the term is first learned (linked
    to the confirmed procedure at the evidence level) and the new link is
    what gets reinforced — both steps are recorded as separate deltas.
    Closes the session.
    """
    _require_open(session)
    candidate = session.find(candidate_id)
    if candidate.procedure in session.rejected:
        raise UnknownEntityError(
            f"candidate {candidate_id!r} was already rejected in session {session.id}",
            entity=candidate_id,
        )
    deltas: list[LearningDelta] = []
    if session.target_term is not None:
        source_profile = net.user_variable(candidate.attribute, candidate.term).profile(
            candidate.procedure
        )
        level = source_profile.dominant_level() if source_profile else InterpretationLevel.HALF_TRUE
        net, learned = learn_term(
            net, session.target_term, candidate.procedure, level, candidate.attribute
        )
        deltas.append(learned)
        blend_term = session.target_term
    else:
        blend_term = candidate.term
    net, blended = _blend(
        net,
        candidate.attribute,
        blend_term,
        candidate.procedure,
        InterpretationLevel.QUITE_TRUE,
        eta,
        "confirm",
    )
    deltas.append(blended)
    updated = replace(
        session,
        status=SessionStatus.CONFIRMED,
        deltas=session.deltas + tuple(deltas),
    )
    return net, updated, deltas


def reject(
    net: SemanticNet,
    session: DialogueSession,
    candidate_id: str,
    eta: float = ETA_DEFAULT,
) -> tuple[SemanticNet, DialogueSession, list[LearningDelta]]:
    """Refuse a candidate: its membership drifts toward the weakest level.

    The session stays open for the remaining candidates; rejecting the last
    one abandons it.
    """
    _require_open(session)
    candidate = session.find(candidate_id)
    if candidate.procedure in session.rejected:
        raise UnknownEntityError(
            f"candidate {candidate_id!r} was already rejected in session {session.id}",
            entity=candidate_id,
        )
    net, delta = _blend(
        net,
        candidate.attribute,
        candidate.term,
        candidate.procedure,
        InterpretationLevel.NOT_TRUE,
        eta,
        "reject",
    )
    rejected = session.rejected + (candidate.procedure,)
    status = (
        SessionStatus.ABANDONED
        if len(rejected) == len(session.candidates)
        else SessionStatus.OPEN
    )
    updated = replace(
        session,
        status=status,
        rejected=rejected,
        deltas=session.deltas + (delta,),
    )
    return net, updated, [delta]


def learn_term(
    net: SemanticNet,
    term: str,
    procedure: str,
    level: InterpretationLevel | str,
    attribute: str | None = None,
) -> tuple[SemanticNet, LearningDelta]:
    """Link a (possibly new) user term to a procedure at a truth level.

    The link starts from the default membership function of that level.
    Re-learning an existing link is refused — feedback, not teaching, is how
    existing links move.
    """
    if isinstance(level, str):
        level = InterpretationLevel.from_key(level)
    if attribute is None:
        attribute = net.sole_user_attribute()
    if attribute not in net.user_attributes:
        raise UnknownEntityError(f"unknown user attribute {attribute!r}", entity=attribute)
    if procedure not in net.procedures:
        raise UnknownEntityError(f"unknown procedure {procedure!r}", entity=procedure)
    term = str(term).strip()
    if not term:
        raise DegenerateInputError("term must be non-empty")
    mf = DEFAULT_LEVEL_FUNCTIONS[level]
    table = net.user_attributes[attribute]
    existing = table.get(term)
    if existing is not None:
        if existing.profile(procedure) is not None:
            raise DuplicateEntityError(
                f"term {term!r} is already linked to procedure {procedure!r}", entity=term
            )
        var = existing.with_profile(procedure, LevelProfile(((level, mf),)))
        updated = net.with_user_variable(attribute, term, var)
    else:
        updated = net.add_user_term(
            attribute, term, UserVariable.of({procedure: LevelProfile(((level, mf),))})
        )
    delta = LearningDelta(
        action="learn",
        attribute=attribute,
        term=term,
        procedure=procedure,
        level=level.key,
        old=None,
        new=mf.corners,
    )
    return updated, delta


def apply_delta(net: SemanticNet, delta: LearningDelta) -> SemanticNet:
    """Apply one recorded delta: set the (term, procedure, level) function to
    the recorded corners, creating the term if needed."""
    level = InterpretationLevel.from_key(delta.level)
    mf = TrapezoidMF.from_corners(delta.new)
    table = net.user_attributes.get(delta.attribute)
    if table is None:
        raise UnknownEntityError(
            f"unknown user attribute {delta.attribute!r}", entity=delta.attribute
        )
    if delta.term in table:
        return net.with_profile_function(delta.attribute, delta.term, delta.procedure, level, mf)
    var = UserVariable.of({delta.procedure: LevelProfile(((level, mf),))})
    return net.add_user_term(delta.attribute, delta.term, var)


def replay(net: SemanticNet, deltas) -> SemanticNet:
    """Fold a delta stream over an initial network; exact reproduction."""
    for delta in deltas:
        net = apply_delta(net, delta)
    return net
