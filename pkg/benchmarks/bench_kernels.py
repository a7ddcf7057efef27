"""Compare the numba kernels with the pure-numpy fallback.

    python benchmarks/bench_kernels.py            # kernel timings
    python benchmarks/bench_kernels.py --solve    # also time full multi-start solves per backend

Kernel timings call both implementations in-process. Solve timings run a
fresh interpreter per backend, switching with HYPERLAG_DISABLE_NUMBA.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hyperlag import gen_complete, gen_icosphere, gen_random, sample_uniform
from hyperlag import tensor
from hyperlag._accel import USE_NUMBA

SOLVE_SNIPPET = """
import time
from hyperlag import {gen}, multi_start, SolverConfig
from hyperlag._accel import backend
G = {gen}({arg})
multi_start(G, SolverConfig(n_starts=1))
t0 = time.perf_counter()
best, _ = multi_start(G, SolverConfig())
print(backend(), time.perf_counter() - t0, best.lambda_hat)
"""


def best_of(fn, repeats=5, inner=10):
    fn()
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def kernel_table(cases):
    print(f"{'graph':<28}{'m':>10}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for name, G in cases:
        x = sample_uniform(G.n, np.random.default_rng(0))
        g = np.empty(G.n)
        inner = max(1, 200_000 // max(G.m, 1))
        t_np = best_of(lambda: tensor._value_grad_numpy(G.edges, x, g), inner=inner)
        if USE_NUMBA:
            t_nb = best_of(lambda: tensor._value_grad_kernel(G.edges, x, g), inner=inner)
            print(f"{name:<28}{G.m:>10}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>10.1f}")
        else:
            print(f"{name:<28}{G.m:>10}{t_np * 1e3:>12.3f}{'-':>12}{'-':>10}")


def solve_table(cases):
    print(f"\n{'graph':<28}{'backend':>10}{'10-start solve s':>18}{'lambda':>16}")
    for name, gen, arg in cases:
        for flag in ("1", "0"):
            env = dict(os.environ, HYPERLAG_DISABLE_NUMBA=flag)
            out = subprocess.run(
                [sys.executable, "-c", SOLVE_SNIPPET.format(gen=gen, arg=arg)],
                env=env, capture_output=True, text=True, check=True,
            ).stdout.split()
            print(f"{name:<28}{out[0]:>10}{float(out[1]):>18.3f}{float(out[2]):>16.9f}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--solve", action="store_true", help="also time complete solves in subprocesses")
    args = p.parse_args()
    if not USE_NUMBA:
        print("numba unavailable or disabled: numpy column only")
    kernel_table(
        [
            ("icosphere l=4", gen_icosphere(4)),
            ("icosphere l=6", gen_icosphere(6)),
            ("icosphere l=8", gen_icosphere(8)),
            ("K_100^3", gen_complete(100, 3)),
            ("random r=5 n=2000 m=200k", gen_random(2000, 5, 200_000, 0)),
        ]
    )
    if args.solve:
        solve_table(
            [
                ("K_100^3", "gen_complete", "100, 3"),
                ("icosphere l=5", "gen_icosphere", "5"),
            ]
        )


if __name__ == "__main__":
    main()
