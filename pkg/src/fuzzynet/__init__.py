"""fuzzynet: a fuzzy semantic-network engine with an interactive assistant.

Knowledge lives in a semantic network whose values are fuzzy: linguistic
truth levels with trapezoidal membership functions for user vocabulary,
possibility degrees for expert procedures.  The engine grades inclusion and
similarity between variables, attributes, classes, and objects; partitions
the network into groups of similar objects; and runs a diagnose / confirm /
reject dialogue that adjusts membership functions from feedback.
"""
from .errors import (
    DegenerateInputError,
    DocumentParseError,
    DocumentValidationError,
    DuplicateEntityError,
    EmptyKnowledgeBaseError,
    EngineError,
    GradingError,
    InvalidMembershipError,
    PairingError,
    SessionClosedError,
    UnknownEntityError,
    UnknownLevelError,
    UniverseMismatchError,
)
from .membership import (
    DEFAULT_LEVEL_FUNCTIONS,
    InterpretationLevel,
    LevelProfile,
    TrapezoidMF,
    default_levels,
    defuzzify_profile,
    quantize_down,
    round_nearest,
)
from .sets import DiscreteFuzzySet, inclusion_degree
from .variables import SystemVariable, UserVariable
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
from .inclusion import (
    grade_network,
    include_attributes,
    include_classes,
    include_named,
    include_system,
    include_user,
    include_variables,
    instance_membership,
)
from .similarity import (
    SimilarityReport,
    sim_attributes,
    sim_objects,
    sim_system_vars,
    sim_user_vars,
    sim_variables,
    term_similarity,
)
from .partition import Partition, object_signature, partition, similarity_matrix
from .diagnosis import (
    ETA_DEFAULT,
    SCORE_FLOOR,
    Candidate,
    DialogueSession,
    LearningDelta,
    Query,
    SessionStatus,
    apply_delta,
    confirm,
    diagnose,
    learn_term,
    reject,
    replay,
)
from .store import (
    FORMAT_VERSION,
    SAMPLE_KB_NAME,
    SessionLog,
    SessionLogRecord,
    builtin_sample_kb,
    canonical_json,
    dumps_kb,
    kb_from_jsonable,
    kb_to_jsonable,
    load_kb,
    loads_kb,
    read_log,
    replay_log,
    save_kb,
)
from .service import DEFAULT_PORT, create_app, serve
from .cli import main

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "EngineError",
    "InvalidMembershipError",
    "UnknownLevelError",
    "UniverseMismatchError",
    "DegenerateInputError",
    "PairingError",
    "UnknownEntityError",
    "DuplicateEntityError",
    "SessionClosedError",
    "EmptyKnowledgeBaseError",
    "DocumentParseError",
    "DocumentValidationError",
    "GradingError",
    # membership
    "InterpretationLevel",
    "TrapezoidMF",
    "LevelProfile",
    "DEFAULT_LEVEL_FUNCTIONS",
    "default_levels",
    "defuzzify_profile",
    "quantize_down",
    "round_nearest",
    # sets & variables
    "DiscreteFuzzySet",
    "inclusion_degree",
    "SystemVariable",
    "UserVariable",
    # network
    "SemanticNet",
    "AttributeRef",
    "InstanceValue",
    "Edge",
    "KIND_SYSTEM",
    "KIND_USER",
    "EDGE_KIND_OF",
    "EDGE_IS_A",
    # inclusion
    "include_system",
    "include_user",
    "include_variables",
    "include_named",
    "include_attributes",
    "include_classes",
    "instance_membership",
    "grade_network",
    # similarity
    "SimilarityReport",
    "sim_user_vars",
    "sim_system_vars",
    "sim_variables",
    "sim_attributes",
    "sim_objects",
    "term_similarity",
    # partition
    "Partition",
    "object_signature",
    "similarity_matrix",
    "partition",
    # diagnosis
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
    # store
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
    "SessionLog",
    "SessionLogRecord",
    "read_log",
    "replay_log",
    # service & cli
    "DEFAULT_PORT",
    "create_app",
    "serve",
    "main",
]
