"""Batch simulation engine.

Exhaustive verification simulates the same netlist for tens of thousands of
input vectors, so the inner loop matters.  Two interchangeable backends sit
behind ``simulate_batch``:

* ``compiled`` -- a Cython extension (``_simcore``) running the per-vector
  table-lookup cascade in C.  Preferred when the extension built.
* ``python``   -- a pure-Python bit-parallel engine: each line becomes one
  big integer whose bit j is that line's value in vector j, and each gate
  output is evaluated as its XOR-of-AND-monomials normal form, derived from
  the gate table.  One gate application costs a handful of bigint ops
  regardless of how many vectors are in flight.

The backend is selected at import time (override with the REVARITH_BACKEND
environment variable or the ``backend=`` argument).  Both must agree with
circuit.apply_cascade bit for bit; the test suite enforces this.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit
from .gates import STANDARD_GATES

try:
    from . import _simcore
except ImportError:  # extension not built; fall back to pure Python
    _simcore = None


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _simcore is not None else ("python",)


def default_backend() -> str:
    env = os.environ.get("REVARITH_BACKEND")
    if env:
        if env not in ("compiled", "python"):
            raise ValueError(f"REVARITH_BACKEND must be 'compiled' or 'python', got {env!r}")
        return env
    return "compiled" if _simcore is not None else "python"


@dataclass(frozen=True)
class SimProgram:
    """A circuit compiled to flat arrays plus per-gate tuples.

    The numpy arrays feed the compiled backend; the per-gate tuples feed the
    bit-parallel backend and its normal-form cache.
    """

    n_lines: int
    arities: np.ndarray
    line_offsets: np.ndarray
    line_indices: np.ndarray
    table_offsets: np.ndarray
    tables: np.ndarray
    gate_lines: tuple[tuple[int, ...], ...]
    gate_tables: tuple[tuple[int, ...], ...]


def compile_program(circuit: Circuit) -> SimProgram:
    arities = []
    line_offsets = []
    line_indices = []
    table_offsets = []
    gate_lines = []
    gate_tables = []
    tables_flat: list[int] = []
    table_offset_by_kind: dict = {}
    for app in circuit.gates:
        gate = STANDARD_GATES[app.kind]
        if app.kind not in table_offset_by_kind:
            table_offset_by_kind[app.kind] = len(tables_flat)
            tables_flat.extend(gate.table)
        arities.append(gate.arity)
        line_offsets.append(len(line_indices))
        line_indices.extend(app.lines)
        table_offsets.append(table_offset_by_kind[app.kind])
        gate_lines.append(app.lines)
        gate_tables.append(gate.table)
    i32 = np.int32
    return SimProgram(
        n_lines=circuit.lines,
        arities=np.asarray(arities, dtype=i32),
        line_offsets=np.asarray(line_offsets, dtype=i32),
        line_indices=np.asarray(line_indices, dtype=i32),
        table_offsets=np.asarray(table_offsets, dtype=i32),
        tables=np.asarray(tables_flat, dtype=i32),
        gate_lines=tuple(gate_lines),
        gate_tables=tuple(gate_tables),
    )


@lru_cache(maxsize=None)
def _anf_monomials(table: tuple[int, ...], arity: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Per output port, the XOR-of-monomials form of the gate table.

    Each monomial is a tuple of input port indices to AND together; the
    empty tuple is the constant 1.  Computed with the standard GF(2) Moebius
    transform over the truth vector of each output bit.
    """
    size = len(table)
    ports = []
    for port in range(arity):
        shift = arity - 1 - port
        coeff = [(table[m] >> shift) & 1 for m in range(size)]
        for i in range(arity):
            bit = 1 << i
            for m in range(size):
                if m & bit:
                    coeff[m] ^= coeff[m ^ bit]
        monomials = []
        for m in range(size):
            if coeff[m]:
                monomials.append(
                    tuple(arity - 1 - i for i in range(arity - 1, -1, -1) if m & (1 << i))
                )
        ports.append(tuple(monomials))
    return tuple(ports)


def _run_python(program: SimProgram, states: np.ndarray) -> np.ndarray:
    n_vec, n_lines = states.shape
    n_bytes = (n_vec + 7) // 8
    mask = (1 << n_vec) - 1
    columns = np.ascontiguousarray(states.T)
    cols = [
        int.from_bytes(np.packbits(columns[l], bitorder="little").tobytes(), "little")
        for l in range(n_lines)
    ]
    for lines, table in zip(program.gate_lines, program.gate_tables):
        ins = [cols[l] for l in lines]
        anf = _anf_monomials(table, len(lines))
        for port, monomials in enumerate(anf):
            acc = 0
            for mono in monomials:
                if not mono:
                    term = mask
                else:
                    term = ins[mono[0]]
                    for p in mono[1:]:
                        term &= ins[p]
                acc ^= term
            cols[lines[port]] = acc
    out = np.empty_like(columns)
    for l in range(n_lines):
        packed = np.frombuffer(cols[l].to_bytes(n_bytes, "little"), dtype=np.uint8)
        out[l] = np.unpackbits(packed, bitorder="little", count=n_vec)
    return np.ascontiguousarray(out.T)


def _run_compiled(program: SimProgram, states: np.ndarray) -> np.ndarray:
    out = np.ascontiguousarray(states, dtype=np.uint8).copy()
    _simcore.run_batch(
        program.arities,
        program.line_offsets,
        program.line_indices,
        program.table_offsets,
        program.tables,
        out,
    )
    return out


def simulate_batch(
    program: SimProgram | Circuit,
    states: np.ndarray,
    backend: str | None = None,
) -> np.ndarray:
    """Run the cascade over many initial states at once.

    ``states`` is a (n_vectors, n_lines) uint8 array of full line values
    (constants already filled in); a new array of final values is returned.
    """
    if isinstance(program, Circuit):
        program = compile_program(program)
    states = np.asarray(states, dtype=np.uint8)
    if states.ndim != 2 or states.shape[1] != program.n_lines:
        raise ValueError(f"states must be (n, {program.n_lines}), got {states.shape}")
    if backend is None:
        backend = default_backend()
    if backend == "compiled":
        if _simcore is None:
            raise RuntimeError("compiled backend requested but the extension is not built")
        return _run_compiled(program, states)
    if backend == "python":
        return _run_python(program, states)
    raise ValueError(f"unknown backend {backend!r}")


def input_state_matrix(circuit: Circuit, codes: np.ndarray) -> np.ndarray:
    """Initial full-line states for a vector of input codes.

    Bit convention matches truth tables: the first primary input (by line
    index) takes the most significant code bit.  Constants come from the
    line roles.
    """
    codes = np.asarray(codes)
    inputs = circuit.primary_inputs
    m = len(inputs)
    states = np.zeros((len(codes), circuit.lines), dtype=np.uint8)
    for line, value in circuit.constant_lines:
        states[:, line] = value
    if m > 62:
        # beyond int64 shifts; drive the columns from Python ints
        for k, (line, _) in enumerate(inputs):
            shift = m - 1 - k
            states[:, line] = [(int(c) >> shift) & 1 for c in codes]
    else:
        for k, (line, _) in enumerate(inputs):
            states[:, line] = (codes >> (m - 1 - k)) & 1
    return states


def named_output_columns(circuit: Circuit, final_states: np.ndarray) -> dict[str, np.ndarray]:
    """Extract each named output's column from batch results."""
    return {l.name: final_states[:, l.line] for l in circuit.named_outputs}
