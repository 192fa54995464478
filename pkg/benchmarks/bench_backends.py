#!/usr/bin/env python3
"""Compare the compiled kernels against the pure Python fallback.

Two views:
  * micro: the four kernel functions on fixed random inputs, both
    modules imported side by side in one process;
  * end-to-end: a 30-instance special-value sweep run in a subprocess
    with TWISTZETA_BACKEND forced to each backend in turn.

Usage: python benchmarks/bench_backends.py [--repeat 5] [--seed 7]
"""

import argparse
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from twistzeta import _kernels_py
from twistzeta.cyclotomic import CyclotomicField

try:
    from twistzeta import _kernels
except ImportError:
    _kernels = None


def _random_terms(rng, nvars, nterms, maxexp):
    out = {}
    while len(out) < nterms:
        e = tuple(rng.randrange(maxexp + 1) for _ in range(nvars))
        out[e] = Fraction(rng.randint(-9, 9) or 3, rng.randint(1, 7))
    return out


def _timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return float(np.median(samples)), float(np.std(samples))


def micro_cases(rng):
    A = _random_terms(rng, 3, 60, 5)
    B = _random_terms(rng, 3, 60, 5)
    shift_target = _random_terms(rng, 3, 80, 7)
    field = CyclotomicField.get(12)
    xs = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5))
               for _ in range(field.degree))
    ys = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5))
               for _ in range(field.degree))

    def mul(kernels):
        def run():
            for _ in range(20):
                kernels.mul_terms(A, B)
        return run

    def shift(kernels):
        def run():
            for _ in range(40):
                kernels.shift_terms(shift_target, (2, 1, 3))
        return run

    def cyclo(kernels):
        def run():
            acc = xs
            for _ in range(4000):
                acc = kernels.cyclo_mul(acc, ys, field.reduction_rows)
                if max(abs(c.numerator) for c in acc) > 10 ** 40:
                    acc = xs  # keep operand sizes representative
        return run

    def sums(kernels):
        def run():
            kernels.power_sums_box(0.4, 0.7, 200000, 6)
        return run

    return [
        ("mul_terms 60x60 terms x20", mul),
        ("shift_terms 80 terms x40", shift),
        ("cyclo_mul order 12 x4000", cyclo),
        ("power_sums_box M=2e5", sums),
    ]


_SWEEP = r"""
import random, time
from twistzeta import TwistVector, ValueCache, ZetaInstance, special_value
from twistzeta._backend import BACKEND
from twistzeta._rational import rat
from twistzeta.multipoly import SparsePolynomial
import itertools

rng = random.Random({seed})

def poly(N):
    pool = [e for e in itertools.product(range(3), repeat=N) if sum(e) <= 2]
    chosen = rng.sample(pool, min(rng.randint(1, 4), len(pool)))
    return SparsePolynomial(
        N, {{e: rat(rng.randint(1, 5), rng.randint(1, 3)) for e in chosen}}
    )

insts = []
for _ in range(60):
    N = rng.choice((1, 2, 3))
    T = rng.choice((1, 2))
    r = rng.choice((2, 3, 4, 6))
    mus = TwistVector.exact(r, [rng.randint(1, r - 1) for _ in range(N)])
    insts.append(ZetaInstance(poly(N), tuple(poly(N) for _ in range(T)), mus))

t0 = time.perf_counter()
session = ValueCache()
count = 0
for inst in insts:
    for k in itertools.product(range(6), repeat=inst.nfactors):
        if sum(k) <= 5:
            special_value(inst, k, cache=session)
            count += 1
print(f"{{BACKEND}} {{count}} {{time.perf_counter() - t0:.3f}}")
"""


def end_to_end(backend, rational, seed):
    import os

    env = dict(os.environ, TWISTZETA_BACKEND=backend,
               TWISTZETA_RATIONAL=rational)
    proc = subprocess.run(
        [sys.executable, "-c", _SWEEP.format(seed=seed)],
        env=env, capture_output=True, text=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    tag, count, seconds = proc.stdout.split()
    assert tag == backend
    return int(count), float(seconds)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled extension not available; micro table is py-only")
    backends = [("py", _kernels_py)] + (
        [("c", _kernels)] if _kernels is not None else []
    )

    rng = random.Random(args.seed)
    cases = micro_cases(rng)
    width = max(len(name) for name, _ in cases)
    header = f"{'kernel case'.ljust(width)}  " + "  ".join(
        f"{name + ' (med s)':>14}" for name, _ in backends
    )
    print(header)
    print("-" * len(header))
    speedups = {}
    for name, make in cases:
        medians = []
        for _, mod in backends:
            med, _std = _timed(make(mod), args.repeat)
            medians.append(med)
        row = f"{name.ljust(width)}  " + "  ".join(
            f"{m:>14.4f}" for m in medians
        )
        if len(medians) == 2 and medians[1] > 0:
            speedups[name] = medians[0] / medians[1]
            row += f"  ({speedups[name]:.1f}x)"
        print(row)

    print()
    print("end-to-end sweep (60 instances, |k| <= 5):")
    rationals = ("fraction", "gmpy2")
    for backend, _ in backends:
        for rational in rationals:
            try:
                count, seconds = end_to_end(backend, rational, args.seed)
            except RuntimeError as exc:
                print(f"  {backend:<4} {rational:<9} unavailable "
                      f"({str(exc).strip().splitlines()[-1]})")
                continue
            print(f"  {backend:<4} {rational:<9} {count} values "
                  f"in {seconds:.3f}s")


if __name__ == "__main__":
    main()
