"""Time every kernel under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py --repeat 5
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from sparsekl import kernels
from sparsekl import matroid_oracle as oracle
from sparsekl.bounds import greedy_family
from sparsekl.sparse_paving import SparsePavingMatroid
from sparsekl.tableaux import SkytShape


def cases():
    M = oracle.from_sparse_paving(SparsePavingMatroid(5, 5, greedy_family(5, 5, 20, seed=1)))
    bases = M.basis_array
    rank = kernels.rank_table(bases, M.n)
    L = oracle.flat_lattice(M)
    shape = SkytShape(4, 3, 4)
    pred = np.array(shape.predecessors, dtype=np.int64)
    total = kernels.count_linear_extensions(pred, shape.ncells)
    masks = np.arange(1 << 12, dtype=np.int64)
    return {
        "rank_table": (bases, M.n),
        "closed_sets": (rank, M.n),
        "mobius_matrix": (L.flats,),
        "kl_lattice": (L.flats, L.ranks, L.mobius),
        "count_linear_extensions": (pred, shape.ncells),
        "enumerate_linear_extensions": (pred, shape.ncells, total),
        "compress_bits": (masks, 0b101101101101),
    }


def best_time(f, args, repeat):
    f(*args)  # warm-up, includes jit compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        f(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print machine-readable results")
    args = ap.parse_args()

    rows = []
    for name, inputs in cases().items():
        row = {"kernel": name}
        for backend, f in sorted(kernels.IMPLEMENTATIONS[name].items()):
            row[backend] = best_time(f, inputs, args.repeat)
        if "numba" in row:
            row["speedup"] = row["numpy"] / row["numba"]
        rows.append(row)

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'kernel':30s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for r in rows:
        nb = f"{r['numba'] * 1e3:10.3f}" if "numba" in r else f"{'-':>10s}"
        sp = f"{r['speedup']:8.1f}" if "speedup" in r else f"{'-':>8s}"
        print(f"{r['kernel']:30s} {r['numpy'] * 1e3:10.3f} {nb} {sp}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
