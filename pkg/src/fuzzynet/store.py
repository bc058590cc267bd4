"""Knowledge-base persistence and the append-only session log.

The document format is UTF-8 JSON, format version 1.  Serialization is
canonical — keys sorted, two-space indent, shortest float repr, trailing
newline — so equal knowledge bases are byte-identical on disk.  Membership
functions are stored as the 4-tuple [a, b, c, d].

The session log is newline-delimited JSON: one record per event with a
gap-free, strictly increasing sequence number, written by a single appender.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .diagnosis import replay, LearningDelta
from .errors import DocumentParseError, DocumentValidationError
from .inclusion import grade_network
from .membership import InterpretationLevel, LevelProfile, TrapezoidMF
from .network import (
    EDGE_IS_A,
    EDGE_KIND_OF,
    KIND_SYSTEM,
    KIND_USER,
    AttributeRef,
    Edge,
    InstanceValue,
    SemanticNet,
)
from .variables import SystemVariable, UserVariable

__all__ = [
    "FORMAT_VERSION",
    "SAMPLE_KB_NAME",
    "canonical_json",
    "kb_to_jsonable",
    "kb_from_jsonable",
    "dumps_kb",
    "loads_kb",
    "save_kb",
    "load_kb",
    "builtin_sample_kb",
    "SessionLogRecord",
    "SessionLog",
    "read_log",
    "replay_log",
]

FORMAT_VERSION = 1
#: Passing this in place of a path loads the built-in sample knowledge base.
SAMPLE_KB_NAME = "sample"


def canonical_json(payload) -> str:
    """Deterministic JSON text: sorted keys, 2-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---- serialization ----------------------------------------------------------


def _ref_to_jsonable(ref: AttributeRef) -> dict:
    return {"kind": ref.kind, "attribute": ref.attribute, "select": list(ref.select)}


def _value_to_jsonable(value: InstanceValue) -> dict:
    if value.kind == KIND_SYSTEM:
        return {"kind": KIND_SYSTEM, "degrees": dict(value.variable.degrees)}
    profiles = {
        proc: {level.key: list(mf.corners) for level, mf in profile}
        for proc, profile in value.variable
    }
    return {"kind": KIND_USER, "profiles": profiles}


def kb_to_jsonable(net: SemanticNet) -> dict:
    """Plain-JSON view of a network, ready for canonical serialization."""
    return {
        "format_version": FORMAT_VERSION,
        "procedures": list(net.procedures),
        "system_attributes": {
            attr: {row: dict(var.degrees) for row, var in table.items()}
            for attr, table in net.system_attributes.items()
        },
        "user_attributes": {
            attr: {
                term: {
                    proc: {level.key: list(mf.corners) for level, mf in profile}
                    for proc, profile in var
                }
                for term, var in table.items()
            }
            for attr, table in net.user_attributes.items()
        },
        "objects": {
            name: [_ref_to_jsonable(ref) for ref in refs]
            for name, refs in net.objects.items()
        },
        "classes": {
            name: [_ref_to_jsonable(ref) for ref in refs]
            for name, refs in net.classes.items()
        },
        "instances": {
            name: [_value_to_jsonable(value) for value in values]
            for name, values in net.instances.items()
        },
        "edges": sorted(
            (
                {"from": e.source, "to": e.target, "kind": e.kind, "degree": e.degree}
                for e in net.edges
            ),
            key=lambda e: (e["from"], e["to"], e["kind"]),
        ),
    }


# ---- validation / deserialization -------------------------------------------


class _Collector:
    """Accumulates validation problems so one load reports them all."""

    def __init__(self):
        self.errors: list[str] = []

    def add(self, where: str, problem: str):
        self.errors.append(f"{where}: {problem}")

    def guard(self, where: str, build, *args):
        """Run a constructor, record its failure, return None on error."""
        try:
            return build(*args)
        except Exception as exc:  # constructors raise engine errors with detail
            self.add(where, str(exc))
            return None


def _parse_profile(collect: _Collector, where: str, raw) -> LevelProfile | None:
    if not isinstance(raw, dict) or not raw:
        collect.add(where, "expected a non-empty map of level -> [a, b, c, d]")
        return None
    entries = []
    for level_key, corners in raw.items():
        level = collect.guard(f"{where}.{level_key}", InterpretationLevel.from_key, level_key)
        if level is None:
            continue
        if not isinstance(corners, (list, tuple)):
            collect.add(f"{where}.{level_key}", f"corners must be a list, got {corners!r}")
            continue
        mf = collect.guard(f"{where}.{level_key}", TrapezoidMF.from_corners, corners)
        if mf is not None:
            entries.append((level, mf))
    if not entries:
        return None
    return collect.guard(where, LevelProfile, tuple(entries))


def _parse_ref(collect: _Collector, where: str, raw, system_attrs, user_attrs):
    if not isinstance(raw, dict):
        collect.add(where, "attribute reference must be an object")
        return None
    kind = raw.get("kind")
    attribute = raw.get("attribute")
    select = raw.get("select")
    if kind not in (KIND_SYSTEM, KIND_USER):
        collect.add(where, f"unknown kind {kind!r}")
        return None
    if not isinstance(select, list) or not select:
        collect.add(where, "select must be a non-empty list")
        return None
    table = system_attrs if kind == KIND_SYSTEM else user_attrs
    if attribute not in table:
        collect.add(where, f"references unknown {kind} attribute {attribute!r}")
        return None
    for key in select:
        if key not in table[attribute]:
            collect.add(where, f"selects unknown entry {key!r} of attribute {attribute!r}")
            return None
    return collect.guard(where, AttributeRef, kind, attribute, tuple(select))


def kb_from_jsonable(doc) -> SemanticNet:
    """Build a network from plain JSON, collecting every validation error."""
    collect = _Collector()
    if not isinstance(doc, dict):
        raise DocumentValidationError(["document: expected a JSON object"])

    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        collect.add("format_version", f"expected {FORMAT_VERSION}, got {version!r}")

    raw_procs = doc.get("procedures", [])
    procedures: list[str] = []
    if not isinstance(raw_procs, list):
        collect.add("procedures", "must be a list of ids")
    else:
        for proc in raw_procs:
            if not isinstance(proc, str) or not proc:
                collect.add("procedures", f"invalid procedure id {proc!r}")
            elif proc in procedures:
                collect.add("procedures", f"duplicate procedure id {proc!r}")
            else:
                procedures.append(proc)
    known_procs = set(procedures)

    system_attributes: dict[str, dict[str, SystemVariable]] = {}
    raw_system = doc.get("system_attributes", {})
    if not isinstance(raw_system, dict):
        collect.add("system_attributes", "must be a map")
        raw_system = {}
    for attr, rows in raw_system.items():
        where = f"system_attributes.{attr}"
        if not isinstance(rows, dict):
            collect.add(where, "must be a map of row -> degrees")
            continue
        table: dict[str, SystemVariable] = {}
        for row, degrees in rows.items():
            row_where = f"{where}.{row}"
            if row not in known_procs:
                collect.add(row_where, f"row {row!r} is not a declared procedure")
            if not isinstance(degrees, dict) or not degrees:
                collect.add(row_where, "expected a non-empty map of procedure -> degree")
                continue
            for proc in degrees:
                if proc not in known_procs:
                    collect.add(row_where, f"references unknown procedure {proc!r}")
            var = collect.guard(row_where, SystemVariable.of, degrees)
            if var is not None:
                table[row] = var
        system_attributes[attr] = table

    user_attributes: dict[str, dict[str, UserVariable]] = {}
    raw_user = doc.get("user_attributes", {})
    if not isinstance(raw_user, dict):
        collect.add("user_attributes", "must be a map")
        raw_user = {}
    for attr, terms in raw_user.items():
        where = f"user_attributes.{attr}"
        if not isinstance(terms, dict):
            collect.add(where, "must be a map of term -> profiles")
            continue
        table: dict[str, UserVariable] = {}
        for term, procs in terms.items():
            term_where = f"{where}.{term}"
            if not isinstance(procs, dict) or not procs:
                collect.add(term_where, "expected a non-empty map of procedure -> levels")
                continue
            profiles = {}
            for proc, levels in procs.items():
                if proc not in known_procs:
                    collect.add(term_where, f"references unknown procedure {proc!r}")
                profile = _parse_profile(collect, f"{term_where}.{proc}", levels)
                if profile is not None:
                    profiles[proc] = profile
            if profiles:
                var = collect.guard(term_where, UserVariable.of, profiles)
                if var is not None:
                    table[term] = var
        user_attributes[attr] = table

    def parse_refs(section: str) -> dict[str, tuple[AttributeRef, ...]]:
        out: dict[str, tuple[AttributeRef, ...]] = {}
        raw = doc.get(section, {})
        if not isinstance(raw, dict):
            collect.add(section, "must be a map of name -> attribute references")
            return out
        for name, refs in raw.items():
            where = f"{section}.{name}"
            if not isinstance(refs, list) or not refs:
                collect.add(where, "expected a non-empty list of attribute references")
                continue
            parsed = [
                _parse_ref(collect, f"{where}[{idx}]", ref, system_attributes, user_attributes)
                for idx, ref in enumerate(refs)
            ]
            if all(ref is not None for ref in parsed):
                out[name] = tuple(parsed)
        return out

    objects = parse_refs("objects")
    classes = parse_refs("classes")

    instances: dict[str, tuple[InstanceValue, ...]] = {}
    raw_instances = doc.get("instances", {})
    if not isinstance(raw_instances, dict):
        collect.add("instances", "must be a map of name -> values")
        raw_instances = {}
    for name, values in raw_instances.items():
        where = f"instances.{name}"
        if not isinstance(values, list) or not values:
            collect.add(where, "expected a non-empty list of values")
            continue
        parsed_values = []
        for idx, raw_value in enumerate(values):
            value_where = f"{where}[{idx}]"
            if not isinstance(raw_value, dict):
                collect.add(value_where, "value must be an object")
                continue
            kind = raw_value.get("kind")
            if kind == KIND_SYSTEM:
                degrees = raw_value.get("degrees")
                if not isinstance(degrees, dict) or not degrees:
                    collect.add(value_where, "system value needs a non-empty degrees map")
                    continue
                for proc in degrees:
                    if proc not in known_procs:
                        collect.add(value_where, f"references unknown procedure {proc!r}")
                var = collect.guard(value_where, SystemVariable.of, degrees)
            elif kind == KIND_USER:
                raw_profiles = raw_value.get("profiles")
                if not isinstance(raw_profiles, dict) or not raw_profiles:
                    collect.add(value_where, "user value needs a non-empty profiles map")
                    continue
                profiles = {}
                for proc, levels in raw_profiles.items():
                    if proc not in known_procs:
                        collect.add(value_where, f"references unknown procedure {proc!r}")
                    profile = _parse_profile(collect, f"{value_where}.{proc}", levels)
                    if profile is not None:
                        profiles[proc] = profile
                var = collect.guard(value_where, UserVariable.of, profiles) if profiles else None
            else:
                collect.add(value_where, f"unknown value kind {kind!r}")
                continue
            if var is not None:
                parsed_values.append(InstanceValue(kind, var))
        if parsed_values and len(parsed_values) == len(values):
            instances[name] = tuple(parsed_values)

    edges: list[Edge] = []
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        collect.add("edges", "must be a list")
        raw_edges = []
    for idx, raw_edge in enumerate(raw_edges):
        where = f"edges[{idx}]"
        if not isinstance(raw_edge, dict):
            collect.add(where, "edge must be an object")
            continue
        source = raw_edge.get("from")
        target = raw_edge.get("to")
        kind = raw_edge.get("kind")
        degree = raw_edge.get("degree", 0.0)
        if kind == EDGE_KIND_OF:
            if source not in classes:
                collect.add(where, f"kind-of source {source!r} is not a class")
            if target not in classes:
                collect.add(where, f"kind-of target {target!r} is not a class")
        elif kind == EDGE_IS_A:
            if source not in instances:
                collect.add(where, f"is-a source {source!r} is not an instance")
            if target not in classes:
                collect.add(where, f"is-a target {target!r} is not a class")
        else:
            collect.add(where, f"unknown edge kind {kind!r}")
            continue
        edge = collect.guard(where, Edge, source, target, kind, degree)
        if edge is not None:
            edges.append(edge)

    if collect.errors:
        raise DocumentValidationError(collect.errors)
    return SemanticNet(
        procedures=tuple(procedures),
        system_attributes=system_attributes,
        user_attributes=user_attributes,
        objects=objects,
        classes=classes,
        instances=instances,
        edges=tuple(edges),
    )


def dumps_kb(net: SemanticNet) -> str:
    return canonical_json(kb_to_jsonable(net))


def loads_kb(text: str) -> SemanticNet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return kb_from_jsonable(doc)


def save_kb(net: SemanticNet, path) -> None:
    Path(path).write_text(dumps_kb(net), encoding="utf-8")


def load_kb(path) -> SemanticNet:
    """Load a knowledge base; the special name "sample" loads the built-in one."""
    if str(path) == SAMPLE_KB_NAME:
        return builtin_sample_kb()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentParseError(f"cannot read knowledge base {path!r}: {exc}") from exc
    return loads_kb(text)


# ---- built-in sample ---------------------------------------------------------


def builtin_sample_kb() -> SemanticNet:
    """A small text-editing assistant domain.

    Four expert procedures; two novice verbs ("to-gum", "to-rub") described
    against them over five truth levels; one system attribute of
    substitutability degrees; plus objects, classes, and instances wired up
    so every engine operation has something to chew on.  Edge degrees are
    computed by grading, not hard-coded.
    """
    level = InterpretationLevel
    mf = TrapezoidMF

    def profile(**levels) -> LevelProfile:
        return LevelProfile.of(
            {level.from_key(name): mf.from_corners(corners) for name, corners in levels.items()}
        )

    gum = UserVariable.of(
        {
            "CutWithMenu": profile(
                not_true=[0, 0, 0.1, 0.4],
                half_true=[0.2, 0.3, 0.4, 0.6],
                quite_true=[0.7, 0.9, 0.9, 1],
            ),
            "CutWithKey": profile(
                not_true=[0, 0, 0.1, 0.4],
                half_true=[0.2, 0.4, 0.4, 0.6],
                quite_true=[0.7, 0.9, 0.9, 1],
            ),
            "EraseWithMenu": profile(
                not_true=[0, 0, 0.1, 0.4],
                half_true=[0.2, 0.4, 0.4, 0.6],
                quite_true=[0.4, 0.9, 0.9, 1],
            ),
        }
    )
    rub = UserVariable.of(
        {
            "CutWithMenu": profile(
                not_true=[0, 0.1, 0.1, 0.4],
                half_true=[0.2, 0.4, 0.4, 0.6],
                quite_true=[0.7, 0.8, 0.9, 1],
            ),
            "CutWithKey": profile(
                not_true=[0, 0.2, 0.3, 0.4],
                half_true=[0.2, 0.3, 0.5, 0.6],
                quite_true=[0.6, 0.7, 0.9, 1],
            ),
            "EraseWithMenu": profile(
                not_true=[0, 0, 0.2, 0.4],
                half_true=[0.2, 0.4, 0.4, 0.6],
                rather_true=[0.7, 0.9, 0.9, 1],
            ),
        }
    )

    net = SemanticNet(
        procedures=("CutWithMenu", "CutWithKey", "EraseWithMenu", "EraseWithKey"),
        system_attributes={
            "goal-equivalents": {
                "CutWithMenu": SystemVariable.of({"CutWithKey": 0.9, "EraseWithMenu": 0.6}),
                "EraseWithKey": SystemVariable.of({"CutWithKey": 0.5, "EraseWithMenu": 0.8}),
            }
        },
        user_attributes={"goal-terms": {"to-gum": gum, "to-rub": rub}},
        objects={
            "gum-action": (AttributeRef(KIND_USER, "goal-terms", ("to-gum",)),),
            "rub-action": (AttributeRef(KIND_USER, "goal-terms", ("to-rub",)),),
            "menu-cut-goal": (AttributeRef(KIND_SYSTEM, "goal-equivalents", ("CutWithMenu",)),),
            "key-erase-goal": (AttributeRef(KIND_SYSTEM, "goal-equivalents", ("EraseWithKey",)),),
        },
        classes={
            "cut-goal": (AttributeRef(KIND_SYSTEM, "goal-equivalents", ("CutWithMenu",)),),
            "erase-goal": (AttributeRef(KIND_SYSTEM, "goal-equivalents", ("EraseWithKey",)),),
        },
        instances={
            "delete-shortcut": (
                InstanceValue(
                    KIND_SYSTEM, SystemVariable.of({"CutWithKey": 0.5, "EraseWithMenu": 0.8})
                ),
            ),
            "menu-erase-combo": (
                InstanceValue(
                    KIND_SYSTEM, SystemVariable.of({"CutWithKey": 0.6, "EraseWithMenu": 0.6})
                ),
            ),
        },
        edges=(
            Edge("cut-goal", "erase-goal", EDGE_KIND_OF, 0.0),
            Edge("delete-shortcut", "erase-goal", EDGE_IS_A, 0.0),
            Edge("menu-erase-combo", "erase-goal", EDGE_IS_A, 0.0),
        ),
    )
    return grade_network(net)


# ---- session log -------------------------------------------------------------


@dataclass(frozen=True)
class SessionLogRecord:
    """One appended event: sequence number, UTC timestamp, kind, payload."""

    seq: int
    ts: str
    event: str
    payload: dict

    def to_jsonable(self) -> dict:
        return {"seq": self.seq, "ts": self.ts, "event": self.event, "payload": self.payload}

    @classmethod
    def from_jsonable(cls, data: dict) -> "SessionLogRecord":
        return cls(
            seq=int(data["seq"]),
            ts=str(data["ts"]),
            event=str(data["event"]),
            payload=data.get("payload", {}),
        )


class SessionLog:
    """Append-only JSONL writer with gap-free sequence numbers.

    A single lock serializes appends; resuming on an existing file continues
    its numbering.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._seq = 0
        if self.path.exists():
            for record in read_log(self.path):
                self._seq = max(self._seq, record.seq)

    def append(self, event: str, payload: dict) -> SessionLogRecord:
        with self._lock:
            self._seq += 1
            record = SessionLogRecord(
                seq=self._seq,
                ts=datetime.now(timezone.utc).isoformat(),
                event=event,
                payload=payload,
            )
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(record.to_jsonable(), sort_keys=True) + "\n")
            return record


def read_log(path) -> list[SessionLogRecord]:
    records = []
    text = Path(path).read_text(encoding="utf-8")
    for number, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            records.append(SessionLogRecord.from_jsonable(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise DocumentParseError(f"bad session log line {number}: {exc}") from exc
    return records


def replay_log(net: SemanticNet, records) -> SemanticNet:
    """Re-apply every learning delta recorded in a session log."""
    deltas = []
    for record in records:
        payload = record.payload
        if "deltas" in payload:
            deltas.extend(LearningDelta.from_jsonable(raw) for raw in payload["deltas"])
        elif "delta" in payload:
            deltas.append(LearningDelta.from_jsonable(payload["delta"]))
    return replay(net, deltas)
