"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernel.py [--repeat 3]

Times row reduction of a random square-ish system and a full decode at the
N=4, u1=50, v=2, R=1/10 instance under each backend, and checks that both
backends return identical results.
"""

import argparse
import random
import statistics
import time
from unittest import mock

from lvcodes import _kernel
from lvcodes.lvcode import derive_params, lv_decode, lv_encode


def timed(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def bench_rref(backend, n, q, repeat):
    rng = random.Random(0)
    rows = [[rng.randrange(q) for _ in range(n + 3)] for _ in range(n)]
    return timed(lambda: _kernel.rref(rows, q, backend), repeat)


def bench_decode(backend, repeat):
    p = derive_params(4, 50, 2, "1/10")
    rng = random.Random(1)
    msg = [rng.randrange(p.q) for _ in range(p.msg_len)]
    c = lv_encode(p, msg, rng)
    with mock.patch.object(_kernel, "BACKEND", backend):
        return timed(lambda: lv_decode(p, c), repeat)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernel._ckernel is None:
        raise SystemExit("compiled kernel not available; run `pip install -e . --no-build-isolation` first")
    cases = [(f"rref {n}x{n + 3} mod {q}", lambda b, n=n, q=q: bench_rref(b, n, q, args.repeat))
             for n, q in [(50, 401), (150, 401), (300, 4861)]]
    cases.append(("lv_decode N=4 u1=50", lambda b: bench_decode(b, args.repeat)))
    print(f"{'case':<24}{'cython':>12}{'python':>12}{'speedup':>10}  same")
    for name, fn in cases:
        out_c, t_c = fn("cython")
        out_p, t_p = fn("python")
        print(f"{name:<24}{t_c * 1e3:>10.1f}ms{t_p * 1e3:>10.1f}ms{t_p / t_c:>9.1f}x  {out_c == out_p}")


if __name__ == "__main__":
    main()
