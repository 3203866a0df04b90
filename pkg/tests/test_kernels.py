"""The numba kernels and their numpy twins must agree exactly."""
import itertools

import numpy as np
import pytest

from sparsekl import kernels, matroid_oracle as oracle
from sparsekl._jit import HAVE_NUMBA
from sparsekl.bounds import greedy_family
from sparsekl.sparse_paving import SparsePavingMatroid
from sparsekl.tableaux import SkytShape

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")


def impls(name):
    return [kernels.IMPLEMENTATIONS[name][k] for k in sorted(kernels.IMPLEMENTATIONS[name])]


def sample_matroids():
    out = [oracle.uniform(1, 2), oracle.uniform(3, 3), oracle.uniform(0, 4), oracle.uniform(2, 0)]
    out.append(oracle.from_bases(4, [[1, 2]]))
    for m, d, c in [(3, 3, 4), (2, 4, 3), (4, 3, 5), (3, 1, 1)]:
        fam = greedy_family(m, d, c, seed=1)
        out.append(oracle.from_sparse_paving(SparsePavingMatroid(m, d, fam)))
    out.append(oracle.direct_sum(oracle.uniform(1, 2), oracle.uniform(1, 1)))
    return out


def brute_rank(bases, n):
    return np.array([max(bin(S & B).count("1") for B in bases) for S in range(1 << n)])


def test_backend_flag_is_consistent():
    assert kernels.BACKEND in ("numba", "numpy")
    if kernels.BACKEND == "numba":
        assert HAVE_NUMBA


@pytest.mark.parametrize("M", sample_matroids(), ids=lambda M: f"n{M.n}r{M.r}b{len(M.bases)}")
def test_rank_table_matches_brute_force(M):
    want = brute_rank(M.bases, M.n)
    for f in impls("rank_table"):
        got = f(M.basis_array, M.n)
        assert np.array_equal(got.astype(np.int64), want)


@pytest.mark.parametrize("M", sample_matroids(), ids=lambda M: f"n{M.n}r{M.r}b{len(M.bases)}")
def test_lattice_kernels_agree(M):
    rank = M.rank_table
    closed = [f(rank, M.n) for f in impls("closed_sets")]
    for c in closed[1:]:
        assert np.array_equal(c, closed[0])
    L = oracle.flat_lattice(M)
    mus = [f(L.flats) for f in impls("mobius_matrix")]
    for mu in mus[1:]:
        assert np.array_equal(mu, mus[0])
    outs = [f(L.flats, L.ranks, L.mobius) for f in impls("kl_lattice")]
    for P, R in outs[1:]:
        assert np.array_equal(P, outs[0][0])
        assert np.array_equal(R, outs[0][1])


def test_mobius_of_boolean_lattice():
    M = oracle.uniform(0, 4)
    L = oracle.flat_lattice(M)
    for F, mu in zip(L.flats.tolist(), L.bottom_mobius.tolist()):
        assert mu == (-1) ** bin(F).count("1")


@pytest.mark.parametrize("a,i,b", [(2, 1, 2), (3, 1, 2), (4, 2, 3), (2, 3, 4), (5, 1, 5)])
def test_linear_extension_kernels(a, i, b):
    shape = SkytShape(a, i, b)
    pred = np.array(shape.predecessors, dtype=np.int64)
    counts = {f(pred, shape.ncells) for f in impls("count_linear_extensions")}
    assert len(counts) == 1
    total = int(counts.pop())
    lists = [f(pred, shape.ncells, total) for f in impls("enumerate_linear_extensions")]
    keys = [sorted(map(tuple, x.tolist())) for x in lists]
    assert all(k == keys[0] for k in keys)
    assert len(set(keys[0])) == total


def test_linear_extensions_of_a_chain_and_antichain():
    chain = np.array([0, 1, 2, 4], dtype=np.int64)
    free = np.zeros(4, dtype=np.int64)
    for f in impls("count_linear_extensions"):
        assert f(chain, 4) == 1
        assert f(free, 4) == 24


def test_compress_bits():
    masks = np.array([0b10110, 0b00001, 0b11111], dtype=np.int64)
    keep = 0b10101
    want = [0b110, 0b001, 0b111]
    for f in impls("compress_bits"):
        assert f(masks, keep).tolist() == want


@needs_numba
def test_both_backends_registered():
    for name, table in kernels.IMPLEMENTATIONS.items():
        assert set(table) == {"numba", "numpy"}, name


def test_compress_bits_exhaustive_small():
    for keep in range(16):
        masks = np.arange(16, dtype=np.int64)
        kept = [e for e in range(4) if keep >> e & 1]
        want = [sum(1 << j for j, e in enumerate(kept) if x >> e & 1) for x in range(16)]
        for f in impls("compress_bits"):
            assert f(masks, keep).tolist() == want


def test_rank_table_loops_and_coloops():
    # element 3 is a loop, element 4 a coloop
    bases = [sum(1 << (e - 1) for e in B) for B in itertools.combinations([1, 2], 1)]
    bases = [B | (1 << 3) for B in bases]
    for f in impls("rank_table"):
        r = f(np.array(bases, dtype=np.int64), 4)
        assert r[0b0100] == 0 and r[0b1000] == 1 and r[0b1111] == 2
