#!/usr/bin/env python3
"""Benchmark the batch-simulation backends on the 8x8 Wallace multiplier.

Runs the full exhaustive verification workload (65,536 input vectors
through the ~180-gate netlist) on every available backend, plus the scalar
reference cascade on a subsample for context.

Usage: python3 benchmarks/bench_kernels.py [--vectors N] [--repeat R]
"""

import argparse
import time

import numpy as np

from revarith import engine
from revarith.circuit import apply_cascade
from revarith.generators import gen_wallace_multiplier


def time_backend(program, states, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        engine.simulate_batch(program, states, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--vectors", type=int, default=65536)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--reference-vectors", type=int, default=256,
                        help="subsample size for the scalar reference row")
    args = parser.parse_args()

    circuit = gen_wallace_multiplier(8)
    program = engine.compile_program(circuit)
    n_gates = len(circuit.gates)
    rng = np.random.default_rng(0)
    states = rng.integers(0, 2, size=(args.vectors, circuit.lines), dtype=np.uint8)

    print(f"workload: {args.vectors} vectors x {n_gates} gates "
          f"({circuit.lines} lines), best of {args.repeat}")
    print(f"{'backend':<12} {'time':>10} {'gate-applications/s':>22}")

    results = {}
    for backend in engine.available_backends():
        elapsed = time_backend(program, states, backend, args.repeat)
        results[backend] = elapsed
        rate = args.vectors * n_gates / elapsed
        print(f"{backend:<12} {elapsed:>9.4f}s {rate:>21.2e}")

    # scalar reference: one vector at a time through the table-lookup walker
    sub = states[: args.reference_vectors]
    start = time.perf_counter()
    for row in sub:
        apply_cascade(circuit, row.tolist())
    elapsed = time.perf_counter() - start
    rate = len(sub) * n_gates / elapsed
    scaled = elapsed * args.vectors / len(sub)
    print(f"{'reference':<12} {scaled:>9.4f}s {rate:>21.2e}"
          f"   (scalar, extrapolated from {len(sub)} vectors)")

    if "compiled" in results:
        print(f"\ncompiled vs python: {results['python'] / results['compiled']:.2f}x")


if __name__ == "__main__":
    main()
