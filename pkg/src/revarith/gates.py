"""Reversible gate primitives.

Every gate is a small bijection on k-bit vectors, stored as an explicit
permutation table over the codes {0, ..., 2^k - 1}.  Port order is fixed per
gate, and the first port is the most significant bit of a code, the last
port the least significant.

The TSG gate is the 4x4 workhorse of this library: it passes its first
input through unchanged ("one through") and, with its third port held at 0,
computes a full adder in a single gate (sum on the third output, carry on
the fourth).  The defining equations, with inputs (A, B, C, D) and outputs
(P, Q, R, S):

    P = A
    Q = (A'.C') xor B'
    R = Q xor D
    S = (Q.D) xor (A.B xor C)

The remaining gates are the classical reversible library: Fredkin
(controlled swap), Toffoli (controlled-controlled NOT), Feynman (CNOT,
doubling as the fan-out copy gate), and NOT.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence


class GateKind(enum.Enum):
    """The supported reversible gate primitives."""

    TSG = "tsg"
    FREDKIN = "fredkin"
    TOFFOLI = "toffoli"
    FEYNMAN = "feynman"
    NOT = "not"


def encode_bits(bits: Sequence[int]) -> int:
    """Pack a bit vector into a code, first bit most significant."""
    code = 0
    for b in bits:
        code = (code << 1) | (b & 1)
    return code


def decode_bits(code: int, k: int) -> tuple[int, ...]:
    """Unpack a code into a k-bit vector, first bit most significant."""
    return tuple((code >> (k - 1 - p)) & 1 for p in range(k))


def is_bijective_table(table: Sequence[int], k: int) -> bool:
    """True iff ``table`` is a permutation of {0, ..., 2^k - 1}.

    Raises ValueError if the table length does not equal 2^k.
    """
    size = 1 << k
    if len(table) != size:
        raise ValueError(f"table has {len(table)} entries, expected {size} for arity {k}")
    seen = [False] * size
    for value in table:
        if not 0 <= value < size or seen[value]:
            return False
        seen[value] = True
    return True


@dataclass(frozen=True)
class Gate:
    """A named k-line reversible gate: a verified bijection on 2^k codes."""

    name: str
    arity: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_bijective_table(self.table, self.arity):
            raise ValueError(f"gate {self.name!r}: table is not a bijection")


def _tsg(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    q = ((a ^ 1) & (c ^ 1)) ^ (b ^ 1)
    r = q ^ d
    s = (q & d) ^ ((a & b) ^ c)
    return (a, q, r, s)


def _fredkin(a: int, b: int, c: int) -> tuple[int, int, int]:
    # controlled swap: P = A, Q = A'B xor AC, R = A'C xor AB
    na = a ^ 1
    return (a, (na & b) ^ (a & c), (na & c) ^ (a & b))


def _toffoli(a: int, b: int, c: int) -> tuple[int, int, int]:
    return (a, b, (a & b) ^ c)


def _feynman(a: int, b: int) -> tuple[int, int]:
    return (a, a ^ b)


def _not(a: int) -> tuple[int]:
    return (a ^ 1,)


_EQUATIONS = {
    GateKind.TSG: (4, _tsg),
    GateKind.FREDKIN: (3, _fredkin),
    GateKind.TOFFOLI: (3, _toffoli),
    GateKind.FEYNMAN: (2, _feynman),
    GateKind.NOT: (1, _not),
}


def _table_from_equations(arity, fn) -> tuple[int, ...]:
    return tuple(encode_bits(fn(*decode_bits(code, arity))) for code in range(1 << arity))


def make_standard_gate(kind: GateKind | str) -> Gate:
    """Build one of the five library gates from its defining equations.

    ``kind`` may be a GateKind or its lowercase name (as used in netlist
    files).  The returned gate's table is validated as a bijection.
    """
    if isinstance(kind, str):
        try:
            kind = GateKind(kind.lower())
        except ValueError:
            raise ValueError(f"unknown gate kind {kind!r}") from None
    arity, fn = _EQUATIONS[kind]
    return Gate(name=kind.value, arity=arity, table=_table_from_equations(arity, fn))


#: The five library gates, built once and shared; Gate is immutable.
STANDARD_GATES: dict[GateKind, Gate] = {kind: make_standard_gate(kind) for kind in GateKind}


def eval_gate(gate: Gate, bits: Sequence[int]) -> tuple[int, ...]:
    """Evaluate a gate on a bit vector via its permutation table."""
    if len(bits) != gate.arity:
        raise ValueError(f"gate {gate.name!r} takes {gate.arity} bits, got {len(bits)}")
    return decode_bits(gate.table[encode_bits(bits)], gate.arity)


def gate_inverse(gate: Gate) -> Gate:
    """The gate computing the inverse permutation."""
    inverse = [0] * len(gate.table)
    for code, image in enumerate(gate.table):
        inverse[image] = code
    return Gate(name=gate.name + "_inv", arity=gate.arity, table=tuple(inverse))
