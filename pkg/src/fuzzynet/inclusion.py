"""Graded inclusion: variables, attributes, classes, instances, and edge grading.

Inclusion is the asymmetric "how much of A sits inside B" measure that grades
the hierarchy edges: kind-of degrees come from class inclusion, is-a degrees
from instance membership.
"""
from __future__ import annotations

from .errors import (
    DegenerateInputError,
    EngineError,
    GradingError,
    PairingError,
    UnknownEntityError,
)
from .membership import InterpretationLevel
from .network import (
    EDGE_IS_A,
    EDGE_KIND_OF,
    KIND_SYSTEM,
    AttributeRef,
    Edge,
    SemanticNet,
)
from .variables import SystemVariable, UserVariable

__all__ = [
    "include_system",
    "include_user",
    "include_variables",
    "include_named",
    "include_attributes",
    "include_classes",
    "instance_membership",
    "grade_network",
]


def include_system(a: SystemVariable, b: SystemVariable) -> float:
    """Inclusion of system variable ``a`` in ``b``.

    Sum of min(degree_a, degree_b) over a's procedures divided by the sum of
    a's degrees; procedures missing from ``b`` contribute 0.  Returns exactly
    1.0 iff every degree of ``a`` is dominated by ``b``'s.
    """
    numerator = 0.0
    denominator = 0.0
    for proc, degree in a:
        numerator += min(degree, b.degree(proc))
        denominator += degree
    if denominator <= 0.0:
        raise DegenerateInputError("inclusion is undefined when the left variable is all-zero")
    return numerator / denominator


def include_user(t: UserVariable, s: UserVariable, decimals: int | None = 2) -> float:
    """Inclusion of user variable ``t`` in ``s`` over defuzzified centroids.

    Per procedure p of ``t``: numerator is the mean over t's levels of
    min(centroid_t, centroid_s), where levels or procedures missing from
    ``s`` count 0 (no support); denominator is the mean of t's centroids.
    The result is the ratio of the summed numerators to the summed
    denominators.  Normalizing the numerator by t's own level count (not the
    shared count) keeps the result in [0, 1].

    ``decimals`` truncates centroids first (2 matches published tables); pass
    ``None`` for full precision.
    """
    cent_t = t.centroids(decimals)
    cent_s = s.centroids(decimals)
    numerator = 0.0
    denominator = 0.0
    for proc in t.procedures:
        row_t = cent_t[proc]
        row_s = cent_s.get(proc, {})
        count = len(row_t)
        num = 0.0
        den = 0.0
        for level, value in row_t.items():
            num += min(value, row_s.get(level, 0.0))
            den += value
        numerator += num / count
        denominator += den / count
    if denominator <= 0.0:
        raise DegenerateInputError(
            "inclusion is undefined when the left variable's centroids are all zero"
        )
    return numerator / denominator


def include_variables(
    a: SystemVariable | UserVariable,
    b: SystemVariable | UserVariable,
    decimals: int | None = 2,
) -> float:
    """Kind-dispatching inclusion; both variables must be of the same kind."""
    if isinstance(a, SystemVariable) and isinstance(b, SystemVariable):
        return include_system(a, b)
    if isinstance(a, UserVariable) and isinstance(b, UserVariable):
        return include_user(a, b, decimals)
    raise PairingError(
        f"cannot include a {type(a).__name__} in a {type(b).__name__};"
        " variables must be paired by kind"
    )


def include_named(net: SemanticNet, a: str, b: str, decimals: int | None = 2) -> float:
    """Inclusion between two variables looked up by id.

    Both ids must name user terms, or both must name system attribute rows;
    the kinds cannot mix.
    """
    user_a = net.find_term(a)
    user_b = net.find_term(b)
    if user_a and user_b:
        return include_user(net.user_variable(*user_a), net.user_variable(*user_b), decimals)
    system_a = net.find_system_row(a)
    system_b = net.find_system_row(b)
    if system_a and system_b:
        return include_system(net.system_variable(*system_a), net.system_variable(*system_b))
    if (user_a or system_a) and (user_b or system_b):
        raise PairingError(
            f"cannot include {a!r} in {b!r}: one is a user term, the other a system row"
        )
    missing = b if (user_a or system_a) else a
    raise UnknownEntityError(
        f"{missing!r} is neither a user term nor a system attribute row", entity=missing
    )


def _paired_variables(net: SemanticNet, ref_a: AttributeRef, ref_b: AttributeRef):
    if ref_a.kind != ref_b.kind:
        raise PairingError(
            f"attribute kinds differ: {ref_a.attribute!r} is {ref_a.kind},"
            f" {ref_b.attribute!r} is {ref_b.kind}"
        )
    if len(ref_a.select) != len(ref_b.select):
        raise PairingError(
            f"attributes select different variable counts:"
            f" {ref_a.attribute!r} has {len(ref_a.select)},"
            f" {ref_b.attribute!r} has {len(ref_b.select)}"
        )
    return list(zip(net.resolve_ref(ref_a), net.resolve_ref(ref_b)))


def include_attributes(
    net: SemanticNet,
    ref_a: AttributeRef,
    ref_b: AttributeRef,
    decimals: int | None = 2,
) -> float:
    """Mean of pairwise variable inclusions; variables pair positionally."""
    pairs = _paired_variables(net, ref_a, ref_b)
    parts = [include_variables(va, vb, decimals) for va, vb in pairs]
    return sum(parts) / len(parts)


def include_classes(
    net: SemanticNet,
    class_a: str,
    class_b: str,
    decimals: int | None = 2,
) -> float:
    """Mean of positional attribute inclusions; grades the kind-of edge a -> b."""
    refs_a = net.class_refs(class_a)
    refs_b = net.class_refs(class_b)
    if len(refs_a) != len(refs_b):
        raise PairingError(
            f"classes have different attribute counts: {class_a!r} has"
            f" {len(refs_a)}, {class_b!r} has {len(refs_b)}"
        )
    if not refs_a:
        raise DegenerateInputError(f"class {class_a!r} has no attributes to compare")
    parts = [
        include_attributes(net, ra, rb, decimals) for ra, rb in zip(refs_a, refs_b)
    ]
    return sum(parts) / len(parts)


def instance_membership(
    net: SemanticNet,
    instance: str,
    cls: str,
    decimals: int | None = 2,
) -> float:
    """Membership of an instance in a class; grades the is-a edge.

    Instance values align positionally with the class's attributes.  An
    attribute may select several variables; the value's inclusion in the
    attribute is taken as the best (max) inclusion over those variables,
    i.e. the value only needs to fit one of them.
    """
    values = net.instance_values(instance)
    refs = net.class_refs(cls)
    if len(values) != len(refs):
        raise PairingError(
            f"instance {instance!r} has {len(values)} values but class"
            f" {cls!r} has {len(refs)} attributes"
        )
    if not values:
        raise DegenerateInputError(
            f"instance {instance!r} has no values to grade against {cls!r}"
        )
    parts = []
    for value, ref in zip(values, refs):
        if value.kind != ref.kind:
            raise PairingError(
                f"instance {instance!r} value kind {value.kind} does not match"
                f" attribute {ref.attribute!r} kind {ref.kind}"
            )
        candidates = net.resolve_ref(ref)
        parts.append(
            max(include_variables(value.variable, var, decimals) for var in candidates)
        )
    return sum(parts) / len(parts)


def grade_network(net: SemanticNet, decimals: int | None = 2) -> SemanticNet:
    """Recompute every edge degree: kind-of via class inclusion, is-a via
    instance membership.  Node structure is untouched; the operation is
    idempotent because degrees depend only on node content.
    """
    graded: list[Edge] = []
    for edge in net.edges:
        try:
            if edge.kind == EDGE_KIND_OF:
                degree = include_classes(net, edge.source, edge.target, decimals)
            else:
                degree = instance_membership(net, edge.source, edge.target, decimals)
        except EngineError as exc:
            raise GradingError(
                f"cannot grade {edge.kind} edge {edge.source!r} -> {edge.target!r}: {exc}",
                entity=f"{edge.source}->{edge.target}",
            ) from exc
        graded.append(Edge(edge.source, edge.target, edge.kind, degree))
    return net.with_edges(graded)
