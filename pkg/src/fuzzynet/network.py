"""The semantic network: procedures, attributes, objects, classes, instances, edges.

The network is a frozen value; mutation helpers return a new network.  All
name -> thing maps are plain dicts treated as immutable by convention (the
dataclass is frozen, so rebinding is impossible; callers must not mutate the
dicts in place).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import (
    DuplicateEntityError,
    InvalidMembershipError,
    UnknownEntityError,
)
from .membership import InterpretationLevel, LevelProfile, TrapezoidMF
from .variables import SystemVariable, UserVariable

__all__ = [
    "KIND_SYSTEM",
    "KIND_USER",
    "EDGE_KIND_OF",
    "EDGE_IS_A",
    "AttributeRef",
    "InstanceValue",
    "Edge",
    "SemanticNet",
]

KIND_SYSTEM = "system"
KIND_USER = "user"

EDGE_KIND_OF = "kind-of"  # class -> class
EDGE_IS_A = "is-a"        # instance -> class


@dataclass(frozen=True)
class AttributeRef:
    """How an object or class picks up an attribute.

    ``kind`` selects the attribute table (system or user).  ``select`` names
    the variables taken from that attribute: row procedures for system
    attributes, terms for user attributes.
    """

    kind: str
    attribute: str
    select: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in (KIND_SYSTEM, KIND_USER):
            raise InvalidMembershipError(f"unknown attribute kind {self.kind!r}")
        if not self.select:
            raise InvalidMembershipError(
                f"attribute reference {self.attribute!r} selects no variables"
            )
        object.__setattr__(self, "select", tuple(str(s) for s in self.select))


@dataclass(frozen=True)
class InstanceValue:
    """One observed value of an instance: a concrete variable of either kind."""

    kind: str
    variable: SystemVariable | UserVariable

    def __post_init__(self):
        if self.kind == KIND_SYSTEM:
            if not isinstance(self.variable, SystemVariable):
                raise InvalidMembershipError("system instance value needs a system variable")
        elif self.kind == KIND_USER:
            if not isinstance(self.variable, UserVariable):
                raise InvalidMembershipError("user instance value needs a user variable")
        else:
            raise InvalidMembershipError(f"unknown instance value kind {self.kind!r}")


@dataclass(frozen=True)
class Edge:
    """A graded structural link.

    ``kind-of`` relates a class to a broader class; ``is-a`` relates an
    instance to a class.  ``degree`` is the strength in [0, 1], normally
    derived by grading rather than set by hand.
    """

    source: str
    target: str
    kind: str
    degree: float

    def __post_init__(self):
        if self.kind not in (EDGE_KIND_OF, EDGE_IS_A):
            raise InvalidMembershipError(f"unknown edge kind {self.kind!r}")
        degree = float(self.degree)
        if not 0.0 <= degree <= 1.0:
            raise InvalidMembershipError(
                f"edge degree out of [0, 1]: {degree} on {self.source!r} -> {self.target!r}"
            )
        object.__setattr__(self, "degree", degree)


@dataclass(frozen=True)
class SemanticNet:
    """Immutable container for the whole knowledge base.

    * ``procedures`` — ids of the actions the net reasons about.
    * ``system_attributes`` — attribute -> row procedure -> SystemVariable.
      The row procedure anchors the variable (degrees relate *other*
      procedures to it).
    * ``user_attributes`` — attribute -> term -> UserVariable.  Terms are the
      words users actually type.
    * ``objects`` / ``classes`` — named bundles of attribute references.
    * ``instances`` — named lists of observed values.
    * ``edges`` — graded kind-of / is-a links.
    """

    procedures: tuple[str, ...] = ()
    system_attributes: Mapping[str, Mapping[str, SystemVariable]] = field(default_factory=dict)
    user_attributes: Mapping[str, Mapping[str, UserVariable]] = field(default_factory=dict)
    objects: Mapping[str, tuple[AttributeRef, ...]] = field(default_factory=dict)
    classes: Mapping[str, tuple[AttributeRef, ...]] = field(default_factory=dict)
    instances: Mapping[str, tuple[InstanceValue, ...]] = field(default_factory=dict)
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "procedures", tuple(sorted(set(self.procedures))))

    # ---- resolvers -------------------------------------------------------

    def system_variable(self, attribute: str, row: str) -> SystemVariable:
        table = self.system_attributes.get(attribute)
        if table is None:
            raise UnknownEntityError(f"unknown system attribute {attribute!r}", entity=attribute)
        var = table.get(row)
        if var is None:
            raise UnknownEntityError(
                f"system attribute {attribute!r} has no row for {row!r}", entity=row
            )
        return var

    def user_variable(self, attribute: str, term: str) -> UserVariable:
        table = self.user_attributes.get(attribute)
        if table is None:
            raise UnknownEntityError(f"unknown user attribute {attribute!r}", entity=attribute)
        var = table.get(term)
        if var is None:
            raise UnknownEntityError(
                f"user attribute {attribute!r} has no term {term!r}", entity=term
            )
        return var

    def object_refs(self, name: str) -> tuple[AttributeRef, ...]:
        refs = self.objects.get(name)
        if refs is None:
            raise UnknownEntityError(f"unknown object {name!r}", entity=name)
        return refs

    def class_refs(self, name: str) -> tuple[AttributeRef, ...]:
        refs = self.classes.get(name)
        if refs is None:
            raise UnknownEntityError(f"unknown class {name!r}", entity=name)
        return refs

    def instance_values(self, name: str) -> tuple[InstanceValue, ...]:
        values = self.instances.get(name)
        if values is None:
            raise UnknownEntityError(f"unknown instance {name!r}", entity=name)
        return values

    def resolve_ref(self, ref: AttributeRef) -> list[SystemVariable | UserVariable]:
        """Variables selected by an attribute reference, in ``select`` order."""
        out: list[SystemVariable | UserVariable] = []
        for key in ref.select:
            if ref.kind == KIND_SYSTEM:
                out.append(self.system_variable(ref.attribute, key))
            else:
                out.append(self.user_variable(ref.attribute, key))
        return out

    def find_term(self, term: str) -> tuple[str, str] | None:
        """Locate a user term by exact id; returns (attribute, term) or None."""
        for attr in sorted(self.user_attributes):
            if term in self.user_attributes[attr]:
                return attr, term
        return None

    def find_system_row(self, row: str) -> tuple[str, str] | None:
        """Locate a system attribute row by id; returns (attribute, row) or None."""
        for attr in sorted(self.system_attributes):
            if row in self.system_attributes[attr]:
                return attr, row
        return None

    def terms(self, attribute: str | None = None) -> list[tuple[str, str]]:
        """All (attribute, term) pairs, optionally restricted to one attribute."""
        names = [attribute] if attribute is not None else sorted(self.user_attributes)
        out: list[tuple[str, str]] = []
        for attr in names:
            table = self.user_attributes.get(attr)
            if table is None:
                raise UnknownEntityError(f"unknown user attribute {attr!r}", entity=attr)
            for term in sorted(table):
                out.append((attr, term))
        return out

    def sole_user_attribute(self) -> str:
        if len(self.user_attributes) != 1:
            raise UnknownEntityError(
                "attribute must be named explicitly when the net has "
                f"{len(self.user_attributes)} user attributes",
                entity=None,
            )
        return next(iter(self.user_attributes))

    # ---- functional updates ---------------------------------------------

    def with_user_variable(self, attribute: str, term: str, var: UserVariable) -> "SemanticNet":
        """New net with term ``term`` of ``attribute`` set to ``var`` (insert or replace)."""
        if attribute not in self.user_attributes:
            raise UnknownEntityError(f"unknown user attribute {attribute!r}", entity=attribute)
        tables = {attr: dict(table) for attr, table in self.user_attributes.items()}
        tables[attribute][term] = var
        return replace(self, user_attributes=tables)

    def add_user_term(self, attribute: str, term: str, var: UserVariable) -> "SemanticNet":
        """Like :meth:`with_user_variable`, but refuses to overwrite."""
        if attribute in self.user_attributes and term in self.user_attributes[attribute]:
            raise DuplicateEntityError(
                f"term {term!r} already exists in attribute {attribute!r}", entity=term
            )
        return self.with_user_variable(attribute, term, var)

    def with_profile_function(
        self,
        attribute: str,
        term: str,
        proc: str,
        level: InterpretationLevel,
        mf: TrapezoidMF,
    ) -> "SemanticNet":
        """New net with one (term, procedure, level) membership function replaced."""
        var = self.user_variable(attribute, term)
        profile = var.profile(proc)
        if profile is None:
            profile = LevelProfile(((level, mf),))
        else:
            profile = profile.with_function(level, mf)
        return self.with_user_variable(attribute, term, var.with_profile(proc, profile))

    def with_edges(self, edges: Iterable[Edge]) -> "SemanticNet":
        return replace(self, edges=tuple(edges))
