"""Finite-model lab for ideal topological spaces."""

from .errors import (
    CapacityExceeded,
    EmptyCorpus,
    GroundSetMismatch,
    IdealTopError,
    NotATopology,
    OracleMismatch,
    ParseError,
    PointOutOfRange,
    UnknownSlotName,
)
from .ideals import Ideal, all_principal_ideals, downward, principal, semi_ideals
from .kernels import BACKEND
from .laws import LAWS, LawId, Violation, check_all, replay
from .operators import SLOTS, Context, TopologyBundle, derive_all
from .relgraph import RelationReport, Witness, aggregate, emit_dot, find_witness, relation_matrix
from .spaces import SetFamily, Space, build_space, enumerate_spaces, generate_from_subbasis

__all__ = [
    "BACKEND", "CapacityExceeded", "Context", "EmptyCorpus", "GroundSetMismatch", "Ideal",
    "IdealTopError", "LAWS", "LawId", "NotATopology", "OracleMismatch", "ParseError",
    "PointOutOfRange", "RelationReport", "SLOTS", "SetFamily", "Space", "TopologyBundle",
    "UnknownSlotName", "Violation", "Witness", "aggregate", "all_principal_ideals",
    "build_space", "check_all", "derive_all", "downward", "emit_dot", "enumerate_spaces",
    "find_witness", "generate_from_subbasis", "principal", "relation_matrix", "replay",
    "semi_ideals",
]
