"""Cascade circuit model.

A circuit is L lines carrying bits through an ordered sequence of gate
applications.  Each gate reads its lines in port order and writes its
outputs back to the same lines, so fan-out is unrepresentable: a value can
only be duplicated explicitly, with a Feynman copy gate onto a fresh
constant line.

Line roles fix the left boundary (named primary inputs or constants); a
separate per-line output label fixes the right boundary (named output with
a power-of-two weight, or garbage).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .gates import STANDARD_GATES, GateKind

#: Exhaustive enumerations refuse above this many free inputs by default.
DEFAULT_ENUMERATION_CAP = 24


class CircuitError(ValueError):
    """Invalid circuit structure or usage."""


class EnumerationCapError(CircuitError):
    """An exhaustive operation was asked to enumerate too many inputs."""


@dataclass(frozen=True)
class LineRole:
    """Input-boundary role of a line: named primary input, or a constant."""

    name: str | None = None
    value: int | None = None

    def __post_init__(self) -> None:
        if (self.name is None) == (self.value is None):
            raise CircuitError("line role must be either a named input or a constant")
        if self.value is not None and self.value not in (0, 1):
            raise CircuitError(f"constant value must be 0 or 1, got {self.value}")

    @classmethod
    def primary(cls, name: str) -> "LineRole":
        return cls(name=name)

    @classmethod
    def constant(cls, value: int) -> "LineRole":
        return cls(value=value)

    @property
    def is_input(self) -> bool:
        return self.name is not None


@dataclass(frozen=True)
class OutputLabel:
    """Output-boundary label of a line: a named output, or garbage (name None)."""

    line: int
    name: str | None = None
    weight: int = 0

    @property
    def is_garbage(self) -> bool:
        return self.name is None


@dataclass(frozen=True)
class GateApp:
    """One gate application in the cascade: a kind and its line tuple (port order)."""

    kind: GateKind
    lines: tuple[int, ...]


@dataclass(frozen=True)
class Assignment:
    """A full length-L bit vector over the circuit's lines."""

    bits: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, line: int) -> int:
        return self.bits[line]


class Circuit:
    """A reversible cascade netlist.

    Not safe for concurrent mutation; treat as immutable once built.
    """

    def __init__(self, input_roles: Sequence[LineRole]):
        roles = tuple(input_roles)
        if not roles:
            raise CircuitError("a circuit needs at least one line")
        names = [r.name for r in roles if r.is_input]
        if len(names) != len(set(names)):
            raise CircuitError("primary input names must be unique")
        self.input_roles: tuple[LineRole, ...] = roles
        self.gates: list[GateApp] = []
        self._labels: list[OutputLabel] = [OutputLabel(line=i) for i in range(len(roles))]

    @property
    def lines(self) -> int:
        return len(self.input_roles)

    @property
    def output_labels(self) -> tuple[OutputLabel, ...]:
        return tuple(self._labels)

    @property
    def primary_inputs(self) -> tuple[tuple[int, str], ...]:
        """(line, name) pairs in ascending line order."""
        return tuple((i, r.name) for i, r in enumerate(self.input_roles) if r.is_input)

    @property
    def constant_lines(self) -> tuple[tuple[int, int], ...]:
        """(line, value) pairs in ascending line order."""
        return tuple((i, r.value) for i, r in enumerate(self.input_roles) if not r.is_input)

    @property
    def named_outputs(self) -> tuple[OutputLabel, ...]:
        return tuple(l for l in self._labels if not l.is_garbage)

    def append_gate(self, kind: GateKind, lines: Sequence[int]) -> "Circuit":
        """Extend the cascade by one gate application; returns self."""
        if isinstance(kind, str):
            kind = GateKind(kind)
        lines = tuple(lines)
        arity = STANDARD_GATES[kind].arity
        if len(lines) != arity:
            raise CircuitError(f"{kind.value} takes {arity} lines, got {len(lines)}")
        if len(set(lines)) != len(lines):
            raise CircuitError(f"duplicate line index in gate application {lines}")
        for l in lines:
            if not 0 <= l < self.lines:
                raise CircuitError(f"line index {l} out of range for {self.lines}-line circuit")
        self.gates.append(GateApp(kind=kind, lines=lines))
        return self

    def set_output(self, line: int, name: str, weight: int = 0) -> "Circuit":
        """Label a line as a named primary output at a power-of-two weight."""
        self._check_line(line)
        for label in self._labels:
            if label.name == name and label.line != line:
                raise CircuitError(f"duplicate output name {name!r}")
        self._labels[line] = OutputLabel(line=line, name=name, weight=weight)
        return self

    def set_garbage(self, line: int) -> "Circuit":
        self._check_line(line)
        self._labels[line] = OutputLabel(line=line)
        return self

    def _check_line(self, line: int) -> None:
        if not 0 <= line < self.lines:
            raise CircuitError(f"line index {line} out of range for {self.lines}-line circuit")

    def outputs_of(self, assignment: Assignment) -> dict[str, int]:
        """Named output values carried by a final assignment."""
        return {l.name: assignment.bits[l.line] for l in self.named_outputs}

    def garbage_of(self, assignment: Assignment) -> dict[int, int]:
        """Garbage line values (by line index) carried by a final assignment."""
        return {l.line: assignment.bits[l.line] for l in self._labels if l.is_garbage}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.input_roles == other.input_roles
            and self.gates == other.gates
            and self._labels == other._labels
        )

    def __repr__(self) -> str:
        return f"Circuit(lines={self.lines}, gates={len(self.gates)})"


def apply_cascade(circuit: Circuit, bits: Sequence[int]) -> list[int]:
    """Run the gate cascade over a full L-bit state (all lines free).

    This is the scalar reference semantics; the batch engine must agree
    with it bit for bit.
    """
    if len(bits) != circuit.lines:
        raise CircuitError(f"state has {len(bits)} bits, circuit has {circuit.lines} lines")
    state = list(bits)
    for app in circuit.gates:
        gate = STANDARD_GATES[app.kind]
        code = 0
        for l in app.lines:
            code = (code << 1) | state[l]
        out = gate.table[code]
        for p in range(gate.arity - 1, -1, -1):
            state[app.lines[p]] = out & 1
            out >>= 1
    return state


def simulate(circuit: Circuit, inputs: Mapping[str, int]) -> Assignment:
    """Simulate the cascade for one set of named primary inputs.

    Constants are injected from the line roles; every primary input must be
    assigned exactly once.
    """
    expected = {name for _, name in circuit.primary_inputs}
    given = set(inputs)
    if given != expected:
        missing = sorted(expected - given)
        unknown = sorted(given - expected)
        parts = []
        if missing:
            parts.append(f"missing inputs: {', '.join(missing)}")
        if unknown:
            parts.append(f"unknown inputs: {', '.join(unknown)}")
        raise CircuitError("; ".join(parts))
    state = []
    for role in circuit.input_roles:
        if role.is_input:
            value = inputs[role.name]
            if value not in (0, 1):
                raise CircuitError(f"input {role.name!r} must be 0 or 1, got {value!r}")
            state.append(value)
        else:
            state.append(role.value)
    return Assignment(bits=tuple(apply_cascade(circuit, state)))


@dataclass(frozen=True)
class TruthRow:
    """One enumerated row: the input code and the values it produces."""

    code: int
    inputs: dict[str, int]
    outputs: dict[str, int]
    garbage: dict[int, int]


def iter_truth_rows(
    circuit: Circuit,
    cap: int = DEFAULT_ENUMERATION_CAP,
    chunk_size: int = 1 << 16,
) -> Iterator[TruthRow]:
    """Enumerate all free-input codes in ascending order, streaming rows.

    The code convention matches gate tables: the first primary input (by
    line index) is the most significant bit of the code.
    """
    from . import engine

    inputs = circuit.primary_inputs
    m = len(inputs)
    if m > cap:
        raise EnumerationCapError(
            f"{m} free inputs exceeds the enumeration cap of {cap}; "
            "raise the cap explicitly or use random sampling"
        )
    import numpy as np

    program = engine.compile_program(circuit)
    names = [name for _, name in inputs]
    garbage_lines = [l.line for l in circuit.output_labels if l.is_garbage]
    out_labels = circuit.named_outputs
    total = 1 << m
    for start in range(0, total, chunk_size):
        codes = np.arange(start, min(start + chunk_size, total), dtype=np.int64)
        states = engine.input_state_matrix(circuit, codes)
        final = engine.simulate_batch(program, states)
        for i, code in enumerate(codes):
            row = final[i]
            yield TruthRow(
                code=int(code),
                inputs={name: int((code >> (m - 1 - k)) & 1) for k, name in enumerate(names)},
                outputs={l.name: int(row[l.line]) for l in out_labels},
                garbage={l: int(row[l]) for l in garbage_lines},
            )


def truth_table(circuit: Circuit, cap: int = DEFAULT_ENUMERATION_CAP) -> list[TruthRow]:
    """Exhaustive truth table over the primary inputs (constants held)."""
    return list(iter_truth_rows(circuit, cap=cap))


def check_circuit_reversibility(
    circuit: Circuit,
    mode: str = "auto",
    cap: int = DEFAULT_ENUMERATION_CAP,
    samples: int = 100_000,
    seed: int = 0,
) -> bool:
    """Check that the full L-bit transfer function is injective.

    Constants are treated as free lines.  Below the cap (``mode="auto"`` or
    ``"exhaustive"``) the permutation property is checked exhaustively;
    above it, auto mode falls back to a sampled probe: ``samples`` distinct
    random states must produce no output collision.

    Always true for a cascade of bijective gates; kept as a structural
    regression test.
    """
    import numpy as np

    from . import engine

    L = circuit.lines
    if mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "exhaustive" and L > cap:
        raise EnumerationCapError(f"{L} lines exceeds the enumeration cap of {cap}")
    exhaustive = mode == "exhaustive" or (mode == "auto" and L <= cap)
    program = engine.compile_program(circuit)

    if exhaustive:
        total = 1 << L
        seen = np.zeros(total, dtype=bool)
        weights = (1 << np.arange(L - 1, -1, -1, dtype=np.int64))
        for start in range(0, total, 1 << 16):
            codes = np.arange(start, min(start + (1 << 16), total), dtype=np.int64)
            states = ((codes[:, None] >> np.arange(L - 1, -1, -1)) & 1).astype(np.uint8)
            final = engine.simulate_batch(program, states)
            images = final.astype(np.int64) @ weights
            if seen[images].any():
                return False
            seen[images] = True
        return bool(seen.all())

    rng = np.random.default_rng(seed)
    states = rng.integers(0, 2, size=(samples, L), dtype=np.uint8)
    states = np.unique(states, axis=0)
    final = engine.simulate_batch(program, states)
    return len(np.unique(final, axis=0)) == len(states)
