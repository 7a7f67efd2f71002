"""Reversible-logic arithmetic circuits built from the 4x4 TSG gate.

The package models reversible circuits as gate cascades over named lines,
generates the TSG-based arithmetic family (full/half adder, 4:2 compressor,
ripple-carry adder, Wallace tree multiplier), verifies them exhaustively
against integer oracles, and reports the gate/garbage/delay metrics used to
compare reversible designs.
"""

from .analysis import (
    COMPRESSOR_BASELINES,
    FULL_ADDER_BASELINES,
    Counterexample,
    FieldComparison,
    FunctionKind,
    FunctionSpec,
    MetricsReport,
    ReferenceRow,
    Verdict,
    compare_against_reference,
    metrics,
    verify_function,
)
from .circuit import (
    DEFAULT_ENUMERATION_CAP,
    Assignment,
    Circuit,
    CircuitError,
    EnumerationCapError,
    GateApp,
    LineRole,
    OutputLabel,
    TruthRow,
    apply_cascade,
    check_circuit_reversibility,
    iter_truth_rows,
    simulate,
    truth_table,
)
from .engine import available_backends, compile_program, default_backend, simulate_batch
from .gates import (
    STANDARD_GATES,
    Gate,
    GateKind,
    decode_bits,
    encode_bits,
    eval_gate,
    gate_inverse,
    is_bijective_table,
    make_standard_gate,
)
from .generators import (
    FullAdderEmbedding,
    PartialProductGrid,
    StageSnapshot,
    WallaceTreeInfo,
    build_wallace_multiplier,
    embedding_circuit,
    find_fa_embeddings,
    gen_compressor_4_2,
    gen_full_adder,
    gen_half_adder,
    gen_partial_products,
    gen_ripple_adder,
    gen_wallace_multiplier,
    lint_zero_ancillas,
)
from .rnl import NetlistParseError, parse_netlist, write_netlist

__version__ = "0.1.0"
