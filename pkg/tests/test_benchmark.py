import json
import subprocess
import sys
from pathlib import Path

from sparsekl import kernels

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_runs_and_covers_every_kernel():
    out = subprocess.run(
        [sys.executable, str(BENCH), "--repeat", "1", "--json"], capture_output=True, text=True, check=True
    )
    rows = json.loads(out.stdout)
    assert {r["kernel"] for r in rows} == set(kernels.IMPLEMENTATIONS)
    assert all(r["numpy"] > 0 for r in rows)
