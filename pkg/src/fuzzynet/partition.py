"""Partitioning the network's objects into groups of mutually similar ones.

Two objects are comparable when their attribute lists have the same shape
(same kinds and selection counts position by position).  Within a
comparability class the pairwise object similarities form a graph; groups
are the single-link connected components of edges with similarity >= theta.
Objects that cannot be compared never share a group.

The O(N^2) pairwise scoring is the hot path and runs on the packed kernels
in :mod:`fuzzynet._kernels`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateInputError
from .membership import InterpretationLevel, quantize_down
from .network import KIND_USER, SemanticNet

__all__ = ["Partition", "object_signature", "similarity_matrix", "partition"]

SENTINEL = -1.0


@dataclass(frozen=True)
class Partition:
    """Disjoint, exhaustive groups of object names at threshold theta."""

    theta: float
    groups: tuple[tuple[str, ...], ...]

    def to_jsonable(self) -> dict:
        return {"theta": self.theta, "groups": [list(group) for group in self.groups]}


def object_signature(net: SemanticNet, name: str) -> tuple[tuple[str, int], ...]:
    """Structural shape of an object: (kind, selection count) per attribute."""
    return tuple((ref.kind, len(ref.select)) for ref in net.object_refs(name))


def _pack_variables(net: SemanticNet, names: list[str], decimals: int | None):
    """Collect every variable referenced by the given objects into packed grids.

    Returns (user index map, user centroid grid, user mask, system index map,
    system degree grid).  Centroids are quantized here so the kernels consume
    exactly what the scalar similarity path consumes.
    """
    proc_index = {proc: k for k, proc in enumerate(net.procedures)}
    user_keys: list[tuple[str, str]] = []
    system_keys: list[tuple[str, str]] = []
    seen_user = set()
    seen_system = set()
    for name in names:
        for ref in net.object_refs(name):
            for key in ref.select:
                pair = (ref.attribute, key)
                if ref.kind == KIND_USER:
                    if pair not in seen_user:
                        seen_user.add(pair)
                        user_keys.append(pair)
                else:
                    if pair not in seen_system:
                        seen_system.add(pair)
                        system_keys.append(pair)
    user_keys.sort()
    system_keys.sort()

    n_procs = len(net.procedures)
    n_levels = len(InterpretationLevel)
    cent = np.zeros((len(user_keys), n_procs, n_levels))
    mask = np.zeros((len(user_keys), n_procs, n_levels), dtype=np.bool_)
    corner_rows: list[tuple[float, float, float, float]] = []
    slots: list[tuple[int, int, int]] = []
    for v, (attr, term) in enumerate(user_keys):
        var = net.user_variable(attr, term)
        for proc, profile in var:
            p = proc_index[proc]
            for level, mf in profile:
                corner_rows.append(mf.corners)
                slots.append((v, p, level - 1))
    if corner_rows:
        centroids = _kernels.centroid_batch(np.asarray(corner_rows, dtype=np.float64))
        for (v, p, l), value in zip(slots, centroids.tolist()):
            cent[v, p, l] = quantize_down(value, decimals) if decimals is not None else value
            mask[v, p, l] = True

    deg = np.zeros((len(system_keys), n_procs))
    for v, (attr, row) in enumerate(system_keys):
        var = net.system_variable(attr, row)
        for proc, degree in var:
            deg[v, proc_index[proc]] = degree

    user_index = {pair: v for v, pair in enumerate(user_keys)}
    system_index = {pair: v for v, pair in enumerate(system_keys)}
    return user_index, cent, mask, system_index, deg


def similarity_matrix(
    net: SemanticNet, decimals: int | None = 2
) -> tuple[list[str], np.ndarray]:
    """All-pairs object similarity; incomparable or degenerate pairs get -1.

    Matches :func:`fuzzynet.similarity.sim_objects` bit-for-bit on every pair
    where that function is defined.
    """
    names = sorted(net.objects)
    n = len(names)
    matrix = np.full((n, n), SENTINEL)
    if n == 0:
        return names, matrix

    user_index, cent, mask, system_index, deg = _pack_variables(net, names, decimals)
    round_scale = 0.0 if decimals is None else 10.0 ** decimals
    user_matrix = (
        _kernels.pairwise_user_sim(cent, mask, round_scale)
        if user_index
        else np.empty((0, 0))
    )
    system_matrix = (
        _kernels.pairwise_system_sim(deg) if system_index else np.empty((0, 0))
    )

    signatures = [object_signature(net, name) for name in names]
    by_signature: dict[tuple, list[int]] = {}
    for idx, sig in enumerate(signatures):
        by_signature.setdefault(sig, []).append(idx)

    for indices in by_signature.values():
        for pos, i in enumerate(indices):
            matrix[i, i] = 1.0
            for j in indices[pos + 1 :]:
                value = _object_sim(
                    net, names[i], names[j], user_index, user_matrix,
                    system_index, system_matrix,
                )
                matrix[i, j] = value
                matrix[j, i] = value
    return names, matrix


def _object_sim(net, name_a, name_b, user_index, user_matrix, system_index, system_matrix):
    refs_a = net.object_refs(name_a)
    refs_b = net.object_refs(name_b)
    best = np.inf
    for ref_a, ref_b in zip(refs_a, refs_b):
        total = 0.0
        for key_a, key_b in zip(ref_a.select, ref_b.select):
            if ref_a.kind == KIND_USER:
                value = user_matrix[
                    user_index[(ref_a.attribute, key_a)],
                    user_index[(ref_b.attribute, key_b)],
                ]
            else:
                value = system_matrix[
                    system_index[(ref_a.attribute, key_a)],
                    system_index[(ref_b.attribute, key_b)],
                ]
            if value < 0.0:
                return SENTINEL
            total += value
        attr_sim = total / len(ref_a.select)
        if attr_sim < best:
            best = attr_sim
    return best if best != np.inf else SENTINEL


def partition(net: SemanticNet, theta: float, decimals: int | None = 2) -> Partition:
    """Single-link grouping of objects at similarity threshold ``theta``."""
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise DegenerateInputError(f"theta must lie in [0, 1], got {theta}")
    names, matrix = similarity_matrix(net, decimals)
    n = len(names)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i, j] >= theta and find(i) != find(j):
                parent[find(i)] = find(j)

    components: dict[int, list[str]] = {}
    for idx, name in enumerate(names):
        components.setdefault(find(idx), []).append(name)
    groups = sorted(tuple(sorted(group)) for group in components.values())
    return Partition(theta=theta, groups=tuple(groups))
