"""Command-line interface.

Exit codes: 0 success, 1 verification failure (the first counterexample is
printed), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis, generators, rnl
from .circuit import Circuit, CircuitError, iter_truth_rows, simulate


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revarith",
        description="Generate, simulate, verify and measure reversible arithmetic circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a circuit family as RNL")
    p_gen.add_argument(
        "family",
        choices=["full-adder", "half-adder", "compressor42", "ripple", "wallace"],
    )
    p_gen.add_argument("--bits", type=int, help="width for ripple/wallace")
    p_gen.add_argument("-o", "--output", default="-", help="output file (default stdout)")

    p_sim = sub.add_parser("sim", help="simulate one input vector")
    p_sim.add_argument("file")
    p_sim.add_argument(
        "--set", dest="assignments", action="append", default=[], metavar="NAME=BIT"
    )

    p_verify = sub.add_parser("verify", help="verify against an arithmetic oracle")
    p_verify.add_argument("file")
    p_verify.add_argument("--spec", required=True, help="fa | ha | c42 | add:N | mul:N | aa:N")
    mode = p_verify.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=False)
    mode.add_argument("--random", type=int, metavar="K", help="number of random samples")
    p_verify.add_argument("--seed", type=int, default=0)

    p_metrics = sub.add_parser("metrics", help="report gate/garbage/delay metrics")
    p_metrics.add_argument("file")
    p_metrics.add_argument("--kv", action="store_true", help="machine-readable key=value lines")

    p_truth = sub.add_parser("truth", help="print the exhaustive truth table as CSV")
    p_truth.add_argument("file")
    p_truth.add_argument("--garbage", action="store_true", help="include garbage columns")

    return parser


def _load(path: str) -> Circuit:
    with open(path, "r", encoding="utf-8") as fh:
        return rnl.parse_netlist(fh.read())


def _cmd_gen(args) -> int:
    needs_bits = args.family in ("ripple", "wallace")
    if needs_bits and args.bits is None:
        raise CircuitError(f"gen {args.family} requires --bits")
    if not needs_bits and args.bits is not None:
        raise CircuitError(f"gen {args.family} takes no --bits")
    if args.family == "full-adder":
        circuit = generators.gen_full_adder()
    elif args.family == "half-adder":
        circuit = generators.gen_half_adder()
    elif args.family == "compressor42":
        circuit = generators.gen_compressor_4_2()
    elif args.family == "ripple":
        circuit = generators.gen_ripple_adder(args.bits)
    else:
        circuit = generators.gen_wallace_multiplier(args.bits)
    text = rnl.write_netlist(circuit)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_sim(args) -> int:
    circuit = _load(args.file)
    inputs = {}
    for item in args.assignments:
        name, eq, value = item.partition("=")
        if not eq or value not in ("0", "1"):
            raise CircuitError(f"--set expects NAME=0 or NAME=1, got {item!r}")
        inputs[name] = int(value)
    assignment = simulate(circuit, inputs)
    named = circuit.outputs_of(assignment)
    print(" ".join(f"{l.name}={named[l.name]}" for l in circuit.named_outputs))
    return 0


def _cmd_verify(args) -> int:
    circuit = _load(args.file)
    spec = analysis.FunctionSpec.from_token(args.spec)
    if args.random is not None:
        verdict = analysis.verify_function(
            circuit, spec, mode="random", samples=args.random, seed=args.seed
        )
    else:
        verdict = analysis.verify_function(circuit, spec, mode="exhaustive")
    if verdict.passed:
        print(f"PASS: {verdict.cases} cases")
        return 0
    ce = verdict.counterexample
    print(f"FAIL after {verdict.cases} cases")
    print("first counterexample: " + " ".join(f"{k}={v}" for k, v in ce.inputs.items()))
    print("  got:      " + " ".join(f"{k}={v}" for k, v in ce.outputs.items()))
    print("  " + ce.detail)
    return 1


def _cmd_metrics(args) -> int:
    report = analysis.metrics(_load(args.file))
    if args.kv:
        for key, value in report.as_kv().items():
            print(f"{key}={value}")
    else:
        print(report.as_text())
    return 0


def _cmd_truth(args) -> int:
    circuit = _load(args.file)
    input_names = [name for _, name in circuit.primary_inputs]
    output_names = [l.name for l in circuit.named_outputs]
    garbage_lines = [l.line for l in circuit.output_labels if l.is_garbage]
    header = input_names + output_names
    if args.garbage:
        header += [f"g{l}" for l in garbage_lines]
    print(",".join(header))
    for row in iter_truth_rows(circuit):
        cells = [str(row.inputs[n]) for n in input_names]
        cells += [str(row.outputs[n]) for n in output_names]
        if args.garbage:
            cells += [str(row.garbage[l]) for l in garbage_lines]
        print(",".join(cells))
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "sim": _cmd_sim,
    "verify": _cmd_verify,
    "metrics": _cmd_metrics,
    "truth": _cmd_truth,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (CircuitError, rnl.NetlistParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
