"""Symmetric similarity between variables, attributes, and objects.

Similarity is a max-min ratio: for each procedure shared by both sides,
aggregate per-level minima and maxima of defuzzified centroids, then divide
the best intersection by the best union.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateInputError, PairingError, UnknownEntityError
from .membership import round_nearest
from .network import AttributeRef, SemanticNet
from .variables import SystemVariable, UserVariable

__all__ = [
    "SimilarityReport",
    "sim_user_vars",
    "sim_system_vars",
    "sim_variables",
    "sim_attributes",
    "sim_objects",
    "term_similarity",
]


@dataclass(frozen=True)
class SimilarityReport:
    """Full audit trail of one user-variable similarity computation.

    ``intersections`` / ``unions`` hold the per-procedure aggregates f_min(p)
    and f_max(p) over shared levels; the final ratio divides the rounded
    maxima.  ``centroids_*`` are the (possibly truncated) centroid tables the
    aggregates were computed from, keyed procedure -> level key -> value.
    """

    a: str
    b: str
    intersections: tuple[tuple[str, float], ...]
    unions: tuple[tuple[str, float], ...]
    max_intersection: float
    max_union: float
    rounded_intersection: float
    rounded_union: float
    ratio: float
    centroids_a: tuple[tuple[str, tuple[tuple[str, float], ...]], ...]
    centroids_b: tuple[tuple[str, tuple[tuple[str, float], ...]], ...]
    decimals: int | None

    def to_jsonable(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "intersections": dict(self.intersections),
            "unions": dict(self.unions),
            "max_intersection": self.max_intersection,
            "max_union": self.max_union,
            "rounded_intersection": self.rounded_intersection,
            "rounded_union": self.rounded_union,
            "ratio": self.ratio,
            "centroids": {
                self.a: {proc: dict(levels) for proc, levels in self.centroids_a},
                self.b: {proc: dict(levels) for proc, levels in self.centroids_b},
            },
            "decimals": self.decimals,
        }


def _centroid_rows(var: UserVariable, decimals: int | None):
    return {
        proc: {level.key: value for level, value in row.items()}
        for proc, row in var.centroids(decimals).items()
    }


def sim_user_vars(
    g: UserVariable,
    h: UserVariable,
    decimals: int | None = 2,
    labels: tuple[str, str] = ("G", "H"),
) -> SimilarityReport:
    """Similarity between two user variables.

    Pipeline: defuzzify each (procedure, level) function to its centroid
    (truncated to ``decimals`` places; published worked tables use 2); for
    every shared procedure take the mean over shared levels of the pairwise
    min (intersection) and max (union); the result is
    max_p f_min(p) / max_p f_max(p) with both maxima rounded to ``decimals``
    before dividing, which reproduces the published two-decimal arithmetic.
    Levels present on only one side are skipped in both aggregates.
    """
    cent_g = g.centroids(decimals)
    cent_h = h.centroids(decimals)
    shared = sorted(set(cent_g) & set(cent_h))
    if not shared:
        raise PairingError(
            f"variables share no procedures: {sorted(cent_g)} vs {sorted(cent_h)}"
        )
    intersections: list[tuple[str, float]] = []
    unions: list[tuple[str, float]] = []
    for proc in shared:
        row_g = cent_g[proc]
        row_h = cent_h[proc]
        levels = [level for level in row_g if level in row_h]
        if not levels:
            continue
        f_min = 0.0
        f_max = 0.0
        for level in levels:
            f_min += min(row_g[level], row_h[level])
            f_max += max(row_g[level], row_h[level])
        count = len(levels)
        intersections.append((proc, f_min / count))
        unions.append((proc, f_max / count))
    if not intersections:
        raise PairingError("variables share procedures but no interpretation levels")
    max_int = max(value for _, value in intersections)
    max_uni = max(value for _, value in unions)
    if max_uni <= 0.0:
        raise DegenerateInputError("similarity is undefined when the union is all-zero")
    if decimals is not None:
        rounded_int = round_nearest(max_int, decimals)
        rounded_uni = round_nearest(max_uni, decimals)
    else:
        rounded_int, rounded_uni = max_int, max_uni
    if rounded_uni <= 0.0:
        raise DegenerateInputError("similarity is undefined when the union rounds to zero")
    return SimilarityReport(
        a=labels[0],
        b=labels[1],
        intersections=tuple(intersections),
        unions=tuple(unions),
        max_intersection=max_int,
        max_union=max_uni,
        rounded_intersection=rounded_int,
        rounded_union=rounded_uni,
        ratio=rounded_int / rounded_uni,
        centroids_a=tuple(
            (proc, tuple(row.items())) for proc, row in _centroid_rows(g, decimals).items()
        ),
        centroids_b=tuple(
            (proc, tuple(row.items())) for proc, row in _centroid_rows(h, decimals).items()
        ),
        decimals=decimals,
    )


def sim_system_vars(u: SystemVariable, v: SystemVariable) -> float:
    """Similarity between two system variables.

    Max over procedures of min(degree_u, degree_v), divided by the max of
    max(degree_u, degree_v); procedures missing from one side count 0, so
    disjoint supports give 0.
    """
    procs = sorted(set(u.procedures) | set(v.procedures))
    best_min = 0.0
    best_max = 0.0
    for proc in procs:
        du = u.degree(proc)
        dv = v.degree(proc)
        best_min = max(best_min, min(du, dv))
        best_max = max(best_max, max(du, dv))
    if best_max <= 0.0:
        raise DegenerateInputError("similarity is undefined for two all-zero variables")
    return best_min / best_max


def sim_variables(
    a: SystemVariable | UserVariable,
    b: SystemVariable | UserVariable,
    decimals: int | None = 2,
) -> float:
    """Kind-dispatching similarity; both variables must be of the same kind."""
    if isinstance(a, SystemVariable) and isinstance(b, SystemVariable):
        return sim_system_vars(a, b)
    if isinstance(a, UserVariable) and isinstance(b, UserVariable):
        return sim_user_vars(a, b, decimals).ratio
    raise PairingError(
        f"cannot compare a {type(a).__name__} with a {type(b).__name__};"
        " variables must be paired by kind"
    )


def _paired(net: SemanticNet, ref_a: AttributeRef, ref_b: AttributeRef):
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


def sim_attributes(
    net: SemanticNet,
    ref_a: AttributeRef,
    ref_b: AttributeRef,
    decimals: int | None = 2,
) -> float:
    """Mean of pairwise variable similarities; variables pair positionally."""
    pairs = _paired(net, ref_a, ref_b)
    parts = [sim_variables(va, vb, decimals) for va, vb in pairs]
    return sum(parts) / len(parts)


def term_similarity(
    net: SemanticNet, a: str, b: str, decimals: int | None = 2
) -> SimilarityReport:
    """Similarity report between two user terms looked up by id."""
    found_a = net.find_term(a)
    if found_a is None:
        raise UnknownEntityError(f"unknown user term {a!r}", entity=a)
    found_b = net.find_term(b)
    if found_b is None:
        raise UnknownEntityError(f"unknown user term {b!r}", entity=b)
    return sim_user_vars(
        net.user_variable(*found_a),
        net.user_variable(*found_b),
        decimals,
        labels=(found_a[1], found_b[1]),
    )


def sim_objects(
    net: SemanticNet,
    obj_a: str,
    obj_b: str,
    decimals: int | None = 2,
) -> float:
    """Minimum over positionally paired attribute similarities."""
    refs_a = net.object_refs(obj_a)
    refs_b = net.object_refs(obj_b)
    if len(refs_a) != len(refs_b):
        raise PairingError(
            f"objects have different attribute counts: {obj_a!r} has"
            f" {len(refs_a)}, {obj_b!r} has {len(refs_b)}"
        )
    if not refs_a:
        raise DegenerateInputError(f"object {obj_a!r} has no attributes to compare")
    return min(sim_attributes(net, ra, rb, decimals) for ra, rb in zip(refs_a, refs_b))
