"""Generators for TSG-based arithmetic circuits.

All arithmetic cells are built from the same recipe:

* full adder   -- one TSG on (x, y, 0, z): sum lands on the constant line,
                  carry on the z line.
* half adder   -- one TSG on (x, y, 0, 0).
* 4:2 compressor -- two chained TSG full adders: the first folds x1..x3,
                  the second folds the intermediate sum with x4 and cin,
                  satisfying x1+x2+x3+x4+cin = Sum + 2*(Carry + Cout).
* partial products -- Fredkin gates AND multiplier and multiplicand bits
                  onto fresh zero lines; operand fan-out is made explicit
                  with Feynman copy gates.

The Wallace tree reduces the partial-product rows four at a time with 4:2
compressors (chaining each compressor's second carry into its same-weight
neighbour), full adders and half adders, then ripple-adds the two surviving
rows into the product bits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .circuit import Circuit, CircuitError, LineRole
from .gates import STANDARD_GATES, GateKind, eval_gate


class _Builder:
    """Accumulates roles and gates, then materializes a Circuit.

    Fresh-zero discipline is by construction: every zero ancilla is a brand
    new line, so no gate can have touched it before its consumer.
    """

    def __init__(self) -> None:
        self.roles: list[LineRole] = []
        self.gates: list[tuple[GateKind, tuple[int, ...]]] = []

    def add_input(self, name: str) -> int:
        self.roles.append(LineRole.primary(name))
        return len(self.roles) - 1

    def add_zero(self) -> int:
        self.roles.append(LineRole.constant(0))
        return len(self.roles) - 1

    def gate(self, kind: GateKind, lines: tuple[int, ...]) -> None:
        self.gates.append((kind, lines))

    def full_adder(self, x: int, y: int, z: int) -> tuple[int, int]:
        """TSG full adder; returns (sum line, carry line)."""
        zero = self.add_zero()
        self.gate(GateKind.TSG, (x, y, zero, z))
        return zero, z

    def half_adder(self, x: int, y: int) -> tuple[int, int]:
        """TSG half adder; returns (sum line, carry line)."""
        zero = self.add_zero()
        zero2 = self.add_zero()
        self.gate(GateKind.TSG, (x, y, zero, zero2))
        return zero, zero2

    def compressor(self, x1: int, x2: int, x3: int, x4: int, cin: int) -> tuple[int, int, int]:
        """4:2 compressor from two TSG gates; returns (sum, carry, cout) lines."""
        s1, cout = self.full_adder(x1, x2, x3)
        s, carry = self.full_adder(s1, x4, cin)
        return s, carry, cout

    def feynman_copy(self, source: int) -> int:
        """Duplicate a line onto a fresh zero ancilla; the source survives."""
        zero = self.add_zero()
        self.gate(GateKind.FEYNMAN, (source, zero))
        return zero

    def fredkin_and(self, a: int, b: int) -> int:
        """AND two lines onto a fresh zero ancilla; ``a`` survives, ``b`` does not."""
        zero = self.add_zero()
        self.gate(GateKind.FREDKIN, (a, b, zero))
        return zero

    def finish(self, outputs: list[tuple[int, str, int]]) -> Circuit:
        circuit = Circuit(self.roles)
        for kind, lines in self.gates:
            circuit.append_gate(kind, lines)
        for line, name, weight in outputs:
            circuit.set_output(line, name, weight)
        return circuit


def gen_full_adder() -> Circuit:
    """Single-gate full adder: lines [A, B, 0, Cin], one TSG.

    Sum appears on line 2, Cout on line 3; the pass-through copies of A and
    B are the two garbage outputs.
    """
    circuit = Circuit(
        [LineRole.primary("A"), LineRole.primary("B"), LineRole.constant(0), LineRole.primary("Cin")]
    )
    circuit.append_gate(GateKind.TSG, (0, 1, 2, 3))
    circuit.set_output(2, "Sum", 0)
    circuit.set_output(3, "Cout", 1)
    return circuit


def gen_half_adder() -> Circuit:
    """Single-gate half adder: lines [A, B, 0, 0], one TSG."""
    circuit = Circuit(
        [LineRole.primary("A"), LineRole.primary("B"), LineRole.constant(0), LineRole.constant(0)]
    )
    circuit.append_gate(GateKind.TSG, (0, 1, 2, 3))
    circuit.set_output(2, "Sum", 0)
    circuit.set_output(3, "Carry", 1)
    return circuit


def gen_compressor_4_2() -> Circuit:
    """4:2 compressor from two TSG gates.

    Lines [x1, x2, 0, x3, x4, 0, cin].  The first TSG folds x1+x2+x3 into
    an intermediate sum (line 2) and Cout (line 3); the second folds the
    intermediate sum with x4 and cin into Sum (line 5) and Carry (line 6).
    """
    circuit = Circuit(
        [
            LineRole.primary("x1"),
            LineRole.primary("x2"),
            LineRole.constant(0),
            LineRole.primary("x3"),
            LineRole.primary("x4"),
            LineRole.constant(0),
            LineRole.primary("cin"),
        ]
    )
    circuit.append_gate(GateKind.TSG, (0, 1, 2, 3))
    circuit.append_gate(GateKind.TSG, (2, 4, 5, 6))
    circuit.set_output(5, "Sum", 0)
    circuit.set_output(6, "Carry", 1)
    circuit.set_output(3, "Cout", 1)
    return circuit


def gen_ripple_adder(n: int) -> Circuit:
    """n-bit ripple-carry adder: n chained TSG full adders.

    Inputs a0..a(n-1), b0..b(n-1), cin; outputs s0..s(n-1) and cout.  One
    carry line threads through every stage, so the unit delay equals n.
    """
    if n < 1:
        raise CircuitError(f"adder width must be >= 1, got {n}")
    b = _Builder()
    a_lines = [b.add_input(f"a{i}") for i in range(n)]
    b_lines = [b.add_input(f"b{i}") for i in range(n)]
    carry = b.add_input("cin")
    outputs = []
    for i in range(n):
        s, carry = b.full_adder(a_lines[i], b_lines[i], carry)
        outputs.append((s, f"s{i}", i))
    outputs.append((carry, "cout", n))
    return b.finish(outputs)


@dataclass(frozen=True)
class PartialProductGrid:
    """Line indices of the n*n AND terms; entry (i, j) sits at weight i+j."""

    n: int
    lines: dict[tuple[int, int], int]

    def line(self, i: int, j: int) -> int:
        return self.lines[(i, j)]

    @staticmethod
    def weight(i: int, j: int) -> int:
        return i + j


def _emit_partial_products(b: _Builder, n: int) -> PartialProductGrid:
    a_lines = [b.add_input(f"a{i}") for i in range(n)]
    b_lines = [b.add_input(f"b{j}") for j in range(n)]
    # Fredkin consumes its swapped input, so each b_j needs n usable copies:
    # the original plus n-1 Feynman duplicates.  a_i survives every AND
    # (Fredkin passes its control through) and threads along its row.
    copies = {j: [b_lines[j]] + [b.feynman_copy(b_lines[j]) for _ in range(n - 1)] for j in range(n)}
    grid = {}
    for i in range(n):
        for j in range(n):
            grid[(i, j)] = b.fredkin_and(a_lines[i], copies[j][i])
    return PartialProductGrid(n=n, lines=grid)


def gen_partial_products(n: int) -> tuple[Circuit, PartialProductGrid]:
    """Standalone partial-product array with outputs p{i}_{j} at weight i+j."""
    if n < 1:
        raise CircuitError(f"operand width must be >= 1, got {n}")
    b = _Builder()
    grid = _emit_partial_products(b, n)
    outputs = [
        (grid.line(i, j), f"p{i}_{j}", i + j) for i in range(n) for j in range(n)
    ]
    return b.finish(outputs), grid


# A reduction row maps weight -> line; each row holds at most one bit per weight.
_Row = dict[int, int]


def _compress_group(b: _Builder, rows: list[_Row]) -> list[_Row]:
    """Reduce 3 or 4 rows to a sum row and a carry row.

    Columns are processed in ascending weight; within a column, bits are
    consumed in row order, so the netlist is identical across runs.  A
    column of four takes a 4:2 compressor whose second carry chains into
    the next column's compressor as its fifth input; a compressor with no
    chained bit gets a fresh zero.
    """
    columns: dict[int, list[int]] = {}
    for row in rows:
        for w, line in sorted(row.items()):
            columns.setdefault(w, []).append(line)
    sum_row: _Row = {}
    carry_row: _Row = {}
    pending = None  # chained compressor carry, weight = current column
    w = min(columns)
    top = max(columns)
    while w <= top or pending is not None:
        avail = list(columns.get(w, ()))
        if pending is not None:
            avail.append(pending)
            pending = None
        k = len(avail)
        if k == 1:
            sum_row[w] = avail[0]
        elif k == 2:
            s, c = b.half_adder(avail[0], avail[1])
            sum_row[w] = s
            carry_row[w + 1] = c
        elif k == 3:
            s, c = b.full_adder(avail[0], avail[1], avail[2])
            sum_row[w] = s
            carry_row[w + 1] = c
        elif k >= 4:
            cin = avail[4] if k == 5 else b.add_zero()
            s, c, cout = b.compressor(avail[0], avail[1], avail[2], avail[3], cin)
            sum_row[w] = s
            carry_row[w + 1] = c
            pending = cout
        w += 1
    return [sum_row, carry_row]


def _reduce_stage(b: _Builder, rows: list[_Row]) -> list[_Row]:
    """One reduction stage: groups of four rows collapse to two."""
    out: list[_Row] = []
    for start in range(0, len(rows), 4):
        chunk = rows[start : start + 4]
        if len(chunk) <= 2:
            out.extend(chunk)
        else:
            out.extend(_compress_group(b, chunk))
    return [row for row in out if row]


def _final_adder(b: _Builder, rows: list[_Row], n: int) -> dict[int, int]:
    """Ripple-add the last two rows into product bit lines P0..P(2n-1)."""
    assert len(rows) <= 2
    product: dict[int, int] = {}
    carry = None
    for w in range(2 * n):
        avail = [row[w] for row in rows if w in row]
        if carry is not None:
            avail.append(carry)
            carry = None
        if not avail:
            raise CircuitError(f"no bit available for product weight {w}")
        if len(avail) == 1:
            product[w] = avail[0]
        elif len(avail) == 2:
            product[w], carry = b.half_adder(avail[0], avail[1])
        else:
            product[w], carry = b.full_adder(avail[0], avail[1], avail[2])
    # a (2n-1)-weight cell may still emit a carry; the product cannot reach
    # 2^(2n), so that line is always 0 and stays garbage
    return product


@dataclass(frozen=True)
class StageSnapshot:
    """Live bits at a construction boundary: (weight, line) pairs per row,
    valid after the first ``gate_count`` gates of the cascade."""

    label: str
    gate_count: int
    rows: tuple[tuple[tuple[int, int], ...], ...]


@dataclass(frozen=True)
class WallaceTreeInfo:
    """Construction record of a Wallace multiplier build."""

    n: int
    snapshots: tuple[StageSnapshot, ...]

    @property
    def reduction_stages(self) -> int:
        return len(self.snapshots) - 1

    @property
    def row_schedule(self) -> tuple[int, ...]:
        return tuple(len(s.rows) for s in self.snapshots)


def _snapshot(label: str, b: _Builder, rows: list[_Row]) -> StageSnapshot:
    return StageSnapshot(
        label=label,
        gate_count=len(b.gates),
        rows=tuple(tuple(sorted(row.items())) for row in rows),
    )


def build_wallace_multiplier(n: int) -> tuple[Circuit, WallaceTreeInfo]:
    """Build the n x n Wallace tree multiplier and its construction record.

    Phases: Fredkin partial products, carry-save reduction stages (four rows
    at a time) until two rows remain, then a TSG ripple adder producing
    P0..P(2n-1).
    """
    if n < 2:
        raise CircuitError(f"multiplier width must be >= 2, got {n}")
    b = _Builder()
    grid = _emit_partial_products(b, n)
    rows: list[_Row] = [
        {i + j: grid.line(i, j) for j in range(n)} for i in range(n)
    ]
    snapshots = [_snapshot("partial_products", b, rows)]
    stage = 0
    while len(rows) > 2:
        stage += 1
        rows = _reduce_stage(b, rows)
        snapshots.append(_snapshot(f"stage_{stage}", b, rows))
    product = _final_adder(b, rows, n)
    circuit = b.finish([(product[w], f"P{w}", w) for w in range(2 * n)])
    return circuit, WallaceTreeInfo(n=n, snapshots=tuple(snapshots))


def gen_wallace_multiplier(n: int) -> Circuit:
    """The n x n reversible Wallace tree multiplier."""
    circuit, _ = build_wallace_multiplier(n)
    return circuit


@dataclass(frozen=True)
class FullAdderEmbedding:
    """One way of using a single TSG as a full adder.

    ``port_roles`` assigns each input port one of "a", "b", "cin", "const";
    the sum and carry are read from ``sum_port`` and ``carry_port``.
    """

    port_roles: tuple[str, str, str, str]
    const_value: int
    sum_port: int
    carry_port: int


def find_fa_embeddings() -> list[FullAdderEmbedding]:
    """Exhaustively search every full-adder embedding of the TSG gate.

    Tries all assignments of (a, b, cin) plus one constant to the four
    input ports, both constant values, and all ordered (sum, carry) output
    port pairs; keeps the ones that add correctly on all eight inputs.
    """
    tsg = STANDARD_GATES[GateKind.TSG]
    found = []
    ports = range(4)
    for const_port in ports:
        operand_ports = [p for p in ports if p != const_port]
        for perm in itertools.permutations(("a", "b", "cin")):
            roles = ["const"] * 4
            for port, role in zip(operand_ports, perm):
                roles[port] = role
            for const_value in (0, 1):
                for sum_port, carry_port in itertools.permutations(ports, 2):
                    ok = True
                    for code in range(8):
                        values = {
                            "a": (code >> 2) & 1,
                            "b": (code >> 1) & 1,
                            "cin": code & 1,
                            "const": const_value,
                        }
                        out = eval_gate(tsg, tuple(values[r] for r in roles))
                        total = values["a"] + values["b"] + values["cin"]
                        if out[sum_port] != total & 1 or out[carry_port] != total >> 1:
                            ok = False
                            break
                    if ok:
                        found.append(
                            FullAdderEmbedding(
                                port_roles=tuple(roles),
                                const_value=const_value,
                                sum_port=sum_port,
                                carry_port=carry_port,
                            )
                        )
    return found


def embedding_circuit(embedding: FullAdderEmbedding) -> Circuit:
    """Materialize an embedding as a verifiable 4-line circuit."""
    role_to_line = {
        "a": LineRole.primary("A"),
        "b": LineRole.primary("B"),
        "cin": LineRole.primary("Cin"),
        "const": LineRole.constant(embedding.const_value),
    }
    circuit = Circuit([role_to_line[r] for r in embedding.port_roles])
    circuit.append_gate(GateKind.TSG, (0, 1, 2, 3))
    circuit.set_output(embedding.sum_port, "Sum", 0)
    circuit.set_output(embedding.carry_port, "Cout", 1)
    return circuit


#: Ports that must consume a fresh zero in generated circuits: the TSG and
#: Fredkin third port (the adder/AND ancilla) and the Feynman copy target.
_ZERO_PORTS = {
    GateKind.TSG: (2,),
    GateKind.FREDKIN: (2,),
    GateKind.FEYNMAN: (1,),
}


def lint_zero_ancillas(circuit: Circuit) -> list[str]:
    """Check the fresh-ancilla discipline of generated circuits.

    Every zero-expecting port must be wired to a constant-0 line that no
    earlier gate has touched.  Returns a list of violations (empty = clean).
    Hand-written netlists may use these ports differently; this lint is for
    the generators in this module.
    """
    violations = []
    touched: set[int] = set()
    for index, app in enumerate(circuit.gates):
        for port in _ZERO_PORTS.get(app.kind, ()):
            line = app.lines[port]
            role = circuit.input_roles[line]
            if role.is_input:
                violations.append(
                    f"gate {index} ({app.kind.value}) port {port}: line {line} is a primary input"
                )
            elif role.value != 0:
                violations.append(
                    f"gate {index} ({app.kind.value}) port {port}: line {line} is constant 1"
                )
            elif line in touched:
                violations.append(
                    f"gate {index} ({app.kind.value}) port {port}: line {line} already consumed"
                )
        touched.update(app.lines)
    return violations
