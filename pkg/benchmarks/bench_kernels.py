"""Compiled vs pure-Python convolution kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Times one truncated product in a few universes with each backend, then
(optionally) a representation check end to end in a subprocess per backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from hypseries import _kernels_py
from hypseries.series import universe

try:
    from hypseries import _ckernels
except ImportError:
    _ckernels = None

CASES = [(("x",), 64), (("x",), 400), (("x", "y"), 24), (("t", "x", "y"), 24),
         (("x1", "x2", "x3"), 16), (("t", "x1", "x2", "x3"), 24)]

E2E = """
import time
from hypseries.verify import check_identity
from hypseries import kernels
t = time.perf_counter()
for d in range(3):
    assert check_identity("F1multi[n=3]", seed=0, draw=d).passed
print(kernels.BACKEND, time.perf_counter() - t)
"""


def _operands(u, rng, bits=200):
    return ([rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(u.size)],
            [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(u.size)])


def bench(repeat: int):
    rng = random.Random(0)
    print(f"{'universe':22} {'size':>6} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for vars, order in CASES:
        u = universe(vars, order)
        a, b = _operands(u, rng)
        tp = min(timeit.repeat(lambda: _kernels_py.conv_int(a, b, u), number=1, repeat=repeat))
        if _ckernels is not None:
            assert _ckernels.conv_int(a, b, u) == _kernels_py.conv_int(a, b, u)
            tc = min(timeit.repeat(lambda: _ckernels.conv_int(a, b, u), number=1, repeat=repeat))
            ctext, speed = f"{tc * 1e3:10.2f}", f"{tp / tc:7.1f}x"
        else:
            ctext, speed = f"{'n/a':>10}", f"{'':>8}"
        label = f"{','.join(vars)} N={order}"
        print(f"{label:22} {u.size:6d} {tp * 1e3:10.2f} {ctext} {speed}")


def end_to_end():
    for pure in ("1", "0"):
        env = dict(os.environ, HYPSERIES_PURE=pure)
        out = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"F1multi[n=3] x3 at N=12, {out[0]:7} backend: {float(out[1]):.2f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; timing the pure-Python backend only")
    bench(args.repeat)
    if args.end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
