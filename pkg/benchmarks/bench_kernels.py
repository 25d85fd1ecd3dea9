#!/usr/bin/env python3
"""Benchmark the compiled measurement-chain kernel against the numpy lane.

Both lanes consume identical uniform variates, so they do the same
statistical work; this script only compares wall time.

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --trials 200000 --n-list 1,5,20,100
"""

import argparse
import time

import numpy as np

from clockchain import ClockSpec, default_cost, kernels, reference_phase_state


def time_lane(backend, amplitudes, uniforms, f, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        kernels.run_chain_batch(amplitudes, uniforms, f.w0, f.weights, backend=backend)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--observers", type=int, default=4)
    parser.add_argument("--n-list", default="1,5,10,50",
                        help="comma-separated qubit numbers to benchmark")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    n_values = [int(x) for x in args.n_list.split(",") if x.strip()]
    f = default_cost()
    rng = np.random.default_rng(0)
    uniforms = rng.random((args.trials, 1 + 2 * args.observers))

    lanes = kernels.available_backends()
    if "compiled" not in lanes:
        print("note: compiled kernel not built; timing the python lane only")

    header = f"{'N':>4}  {'trials':>8}  {'k':>3}  " + "  ".join(f"{lane:>12}" for lane in lanes)
    if len(lanes) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    for n in n_values:
        amplitudes = reference_phase_state(ClockSpec(n)).amplitudes
        times = {lane: time_lane(lane, amplitudes, uniforms, f, args.repeats)
                 for lane in lanes}
        row = f"{n:>4}  {args.trials:>8}  {args.observers:>3}  " + "  ".join(
            f"{times[lane] * 1e3:>9.1f} ms" for lane in lanes)
        if "compiled" in times and "python" in times:
            row += f"  {times['python'] / times['compiled']:>7.2f}x"
        print(row)


if __name__ == "__main__":
    main()
