"""Compare the pure and compiled contraction kernels.

Two views:

* micro: the three kernel primitives on random sparse Fraction tensors
  shaped like the ones the weight pipeline produces (in-process, both
  kernels imported side by side);
* macro: full corpus weight computations in child processes, one per
  kernel, selected through JACOBIWEIGHTS_KERNEL so the import-time switch
  is what gets exercised.

Run:  python3 benchmarks/bench_kernels.py [--repeat N] [--skip-macro]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction


def random_tensor(rng, rank, dim, nnz):
    t = {}
    for _ in range(nnz):
        key = tuple(rng.randrange(dim) for _ in range(rank))
        t[key] = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
    return {k: v for k, v in t.items() if v}


MICRO_CASES = [
    # (name, a_rank, b_rank, dim, nnz, contracted_pairs)
    ("edge x vertex, dim 4", 2, 3, 4, 16, 1),
    ("edge x vertex, dim 8", 2, 3, 8, 64, 1),
    ("chain step, dim 8", 3, 3, 8, 256, 2),
    ("wide join, dim 9", 4, 4, 9, 600, 2),
]


def bench_micro(repeat):
    from jacobiweights._core import available_kernels

    kernels = available_kernels()
    print("kernels present: %s" % ", ".join(sorted(kernels)))
    header = "%-22s" % "micro case"
    for name in sorted(kernels):
        header += "%14s" % name
    print(header)
    for case, a_rank, b_rank, dim, nnz, n_pairs in MICRO_CASES:
        rng = random.Random(hash(case) & 0xFFFF)
        a = random_tensor(rng, a_rank, dim, nnz)
        b = random_tensor(rng, b_rank, dim, nnz)
        pairs = list(zip(range(n_pairs), range(n_pairs)))
        row = "%-22s" % case
        baseline = None
        for name in sorted(kernels):
            fn = kernels[name].contract
            t0 = time.perf_counter()
            for _ in range(repeat):
                out = fn(a, a_rank, b, b_rank, pairs)
            dt = (time.perf_counter() - t0) / repeat
            if baseline is None:
                baseline = out
            elif out != baseline:
                raise AssertionError("kernels disagree on %r" % case)
            row += "%12.3fms" % (dt * 1e3)
        print(row)


MACRO_CHILD = r"""
import time
from jacobiweights import (
    build_gl, defining_rep, diagram_from_key, directed_weight_sum, double,
    enumerate_diagrams, kernel_name, rep_R, weight_circle,
)
g3 = build_gl(3)
rho3 = defining_rep(g3)
g2 = build_gl(2)
dbl2 = double(g2)
R2 = rep_R(defining_rep(g2), dbl2)
deg4 = [diagram_from_key(e["key"]) for e in enumerate_diagrams(4).entries]
deg3 = [diagram_from_key(e["key"]) for e in enumerate_diagrams(3).entries]
t0 = time.perf_counter()
acc = 0
for d in deg4:
    acc += weight_circle(d, g3, rho3)
for d in deg3:
    acc += directed_weight_sum(d, dbl2, R2)
print("%s %.3f" % (kernel_name, time.perf_counter() - t0))
"""


def bench_macro():
    print()
    print("macro: gl(3) traces to degree 4 + doubled directed sums to degree 3")
    for kernel in ("pure", "cython"):
        env = dict(os.environ, JACOBIWEIGHTS_KERNEL=kernel)
        proc = subprocess.run(
            [sys.executable, "-c", MACRO_CHILD],
            env=env,
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            print("%-8s failed:\n%s" % (kernel, proc.stderr.strip()))
            continue
        name, seconds = proc.stdout.split()
        assert name == kernel, "child selected %s, wanted %s" % (name, kernel)
        print("%-8s %8.3fs" % (kernel, float(seconds)))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=20, help="micro repetitions")
    parser.add_argument("--skip-macro", action="store_true")
    args = parser.parse_args(argv)
    bench_micro(args.repeat)
    if not args.skip_macro:
        bench_macro()


if __name__ == "__main__":
    main()
