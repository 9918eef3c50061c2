"""Parity game boards, their quantum realizations, and pseudo-telepathy.

A board ("arrangement") is a connected hypergraph in which every vertex lies
on exactly two hyperedges.  This package decides whether such a board admits
quantum pseudo-telepathy, constructs a verified Pauli realization when it
does, emits a machine-checkable contraction certificate when it does not,
and simulates the induced two-player parity game exactly.
"""

from pseudotelepathy.arrangement import (
    Arrangement,
    ClassicalRealization,
    Signing,
    classical_realize,
    is_classically_realizable,
    parity,
    validate,
)
from pseudotelepathy.intersection import IntersectionGraph, RotationSystem, build, to_dot
from pseudotelepathy.planarity import (
    KuratowskiWitness,
    PlanarityResult,
    test_planarity,
    verify_embedding,
    verify_witness,
)
from pseudotelepathy.pauli import PauliOperator, commutes, multiply, product_of
from pseudotelepathy.realization import (
    MagicVerdict,
    QuantumRealization,
    builtin_pentagram,
    builtin_square,
    synthesize,
    verify_realization,
)
from pseudotelepathy.certificate import ContractionTrace, check_trace, generate_trace
from pseudotelepathy.game import (
    ClassicalStrategy,
    QuantumStrategy,
    exact_win_probability,
    monte_carlo,
    play_quantum,
)

__all__ = [
    "Arrangement",
    "ClassicalRealization",
    "ClassicalStrategy",
    "ContractionTrace",
    "IntersectionGraph",
    "KuratowskiWitness",
    "MagicVerdict",
    "PauliOperator",
    "PlanarityResult",
    "QuantumRealization",
    "QuantumStrategy",
    "RotationSystem",
    "build",
    "builtin_pentagram",
    "builtin_square",
    "check_trace",
    "classical_realize",
    "commutes",
    "exact_win_probability",
    "generate_trace",
    "is_classically_realizable",
    "monte_carlo",
    "multiply",
    "parity",
    "play_quantum",
    "product_of",
    "synthesize",
    "test_planarity",
    "to_dot",
    "validate",
    "verify_embedding",
    "verify_realization",
    "verify_witness",
]

__version__ = "0.1.0"
