"""RNL v1: a line-oriented text format for reversible cascade netlists.

Grammar (one directive per line, ``#`` starts a comment, tokens separated
by whitespace):

    lines L
    input IDX NAME
    const IDX VALUE            # VALUE is 0 or 1
    gate KIND IDX...           # tsg | fredkin | toffoli | feynman | not
    output IDX NAME [WEIGHT]   # WEIGHT defaults to 0
    garbage IDX

Every line index needs exactly one input role and at most one label
directive; unlabeled lines default to garbage.  The writer emits the
canonical form: lines, roles ascending, gates in cascade order, then one
label directive per line ascending (outputs always carry their weight).
"""

from __future__ import annotations

import re

from .circuit import Circuit, CircuitError, LineRole
from .gates import GateKind


class NetlistParseError(ValueError):
    """A netlist rejected with its source location."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class _Token:
    __slots__ = ("text", "line", "column")

    def __init__(self, text: str, line: int, column: int):
        self.text = text
        self.line = line
        self.column = column


def _tokenize(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [
            _Token(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)
        ]
        if tokens:
            yield tokens


def _int_token(tok: _Token, what: str) -> int:
    try:
        return int(tok.text)
    except ValueError:
        raise NetlistParseError(f"{what} must be an integer, got {tok.text!r}", tok.line, tok.column) from None


def parse_netlist(text: str) -> Circuit:
    """Parse an RNL v1 document into a validated circuit."""
    n_lines = None
    lines_tok = None
    roles: dict[int, tuple[LineRole, _Token]] = {}
    gate_directives: list[tuple[GateKind, list[int], _Token]] = []
    labels: dict[int, tuple[str | None, int, _Token]] = {}

    directives = list(_tokenize(text))
    if not directives:
        raise NetlistParseError("empty netlist", 1)

    for tokens in directives:
        head = tokens[0]
        args = tokens[1:]
        kind = head.text

        if kind == "lines":
            if n_lines is not None:
                raise NetlistParseError("duplicate lines directive", head.line, head.column)
            _expect(args, 1, head, "lines L")
            n_lines = _int_token(args[0], "line count")
            lines_tok = head
            if n_lines < 1:
                raise NetlistParseError(
                    f"line count must be >= 1, got {n_lines}", args[0].line, args[0].column
                )
            continue

        if kind == "input":
            _expect(args, 2, head, "input IDX NAME")
            idx = _int_token(args[0], "line index")
            _add_role(roles, idx, LineRole.primary(args[1].text), args[0])
            continue

        if kind == "const":
            _expect(args, 2, head, "const IDX VALUE")
            idx = _int_token(args[0], "line index")
            value = _int_token(args[1], "constant value")
            if value not in (0, 1):
                raise NetlistParseError(
                    f"constant value must be 0 or 1, got {value}", args[1].line, args[1].column
                )
            _add_role(roles, idx, LineRole.constant(value), args[0])
            continue

        if kind == "gate":
            if not args:
                raise NetlistParseError("gate needs a kind and line indices", head.line, head.column)
            try:
                gk = GateKind(args[0].text.lower())
            except ValueError:
                raise NetlistParseError(
                    f"unknown gate kind {args[0].text!r}", args[0].line, args[0].column
                ) from None
            indices = [_int_token(t, "line index") for t in args[1:]]
            gate_directives.append((gk, indices, args[0]))
            continue

        if kind == "output":
            if len(args) not in (2, 3):
                raise NetlistParseError("expected: output IDX NAME [WEIGHT]", head.line, head.column)
            idx = _int_token(args[0], "line index")
            weight = _int_token(args[2], "weight") if len(args) == 3 else 0
            _add_label(labels, idx, args[1].text, weight, args[0])
            continue

        if kind == "garbage":
            _expect(args, 1, head, "garbage IDX")
            idx = _int_token(args[0], "line index")
            _add_label(labels, idx, None, 0, args[0])
            continue

        raise NetlistParseError(f"unknown directive {kind!r}", head.line, head.column)

    if n_lines is None:
        raise NetlistParseError("missing lines directive", 1)

    role_list = []
    for idx in range(n_lines):
        if idx not in roles:
            raise NetlistParseError(
                f"line {idx} has no input role", lines_tok.line, lines_tok.column
            )
        role_list.append(roles[idx][0])
    for idx, (_, tok) in roles.items():
        if not 0 <= idx < n_lines:
            raise NetlistParseError(f"line index {idx} out of range", tok.line, tok.column)

    try:
        circuit = Circuit(role_list)
    except CircuitError as exc:
        raise NetlistParseError(str(exc), lines_tok.line, lines_tok.column) from None

    for gk, indices, tok in gate_directives:
        try:
            circuit.append_gate(gk, indices)
        except CircuitError as exc:
            raise NetlistParseError(str(exc), tok.line, tok.column) from None

    for idx, (name, weight, tok) in labels.items():
        if not 0 <= idx < n_lines:
            raise NetlistParseError(f"line index {idx} out of range", tok.line, tok.column)
        try:
            if name is None:
                circuit.set_garbage(idx)
            else:
                circuit.set_output(idx, name, weight)
        except CircuitError as exc:
            raise NetlistParseError(str(exc), tok.line, tok.column) from None
    return circuit


def _expect(args, count, head, usage):
    if len(args) != count:
        raise NetlistParseError(f"expected: {usage}", head.line, head.column)


def _add_role(roles, idx, role, tok):
    if idx in roles:
        raise NetlistParseError(f"line {idx} already has an input role", tok.line, tok.column)
    roles[idx] = (role, tok)


def _add_label(labels, idx, name, weight, tok):
    if idx in labels:
        raise NetlistParseError(f"line {idx} already has an output label", tok.line, tok.column)
    labels[idx] = (name, weight, tok)


def write_netlist(circuit: Circuit) -> str:
    """Render a circuit in canonical RNL v1 form."""
    out = [f"lines {circuit.lines}"]
    for idx, role in enumerate(circuit.input_roles):
        if role.is_input:
            out.append(f"input {idx} {role.name}")
        else:
            out.append(f"const {idx} {role.value}")
    for app in circuit.gates:
        out.append(f"gate {app.kind.value} {' '.join(str(l) for l in app.lines)}")
    for label in circuit.output_labels:
        if label.is_garbage:
            out.append(f"garbage {label.line}")
        else:
            out.append(f"output {label.line} {label.name} {label.weight}")
    return "\n".join(out) + "\n"
