"""Compare the compiled and pure-Python canonical-form kernels.

Run: python3 benchmarks/bench_kernels.py [--genus G --cycles N --repeat R]
"""

from __future__ import annotations

import argparse
import time

from ribbon_moduli import _kernels_py
from ribbon_moduli.enumeration import enumerate_graphs

try:
    from ribbon_moduli import _kernels as _compiled
except ImportError:
    _compiled = None


def workload(genus: int, cycles: int):
    cat = enumerate_graphs((genus, cycles))
    return [(list(c.graph.sigma0), list(c.graph.sigma1), list(c.graph.half_edge_label)) for c in cat]


def bench(kernel, graphs, repeat: int) -> tuple[float, list]:
    best = float("inf")
    out = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = [kernel.canonical(s0, s1, lab) for s0, s1, lab in graphs]
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    p = argparse.ArgumentParser()
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--cycles", type=int, default=4)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    graphs = workload(args.genus, args.cycles)
    t_py, r_py = bench(_kernels_py, graphs, args.repeat)
    print(f"graphs: {len(graphs)}")
    print(f"python : {t_py * 1e3:8.2f} ms")
    if _compiled is None:
        print("cython : not built")
        return
    t_cy, r_cy = bench(_compiled, graphs, args.repeat)
    print(f"cython : {t_cy * 1e3:8.2f} ms  (x{t_py / t_cy:.1f})")
    print(f"agree  : {[(tuple(a), list(b)) for a, b in r_py] == [(tuple(a), list(b)) for a, b in r_cy]}")


if __name__ == "__main__":
    main()
