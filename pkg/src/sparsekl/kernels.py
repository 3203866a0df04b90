"""Hot integer kernels, each with a numba and a pure-numpy implementation.

All kernels work on subsets encoded as int64 bitmasks (bit ``e`` set means
element ``e`` is present, 0-based).  The public names at the bottom of this
module dispatch to the backend picked in :mod:`sparsekl._jit`; both variants
are importable through :data:`IMPLEMENTATIONS` so tests and the benchmark can
pit them against each other.

Values stay inside int64.  Counts of linear extensions are capped by the
16-cell limit (16! < 2**63) and lattice data by the 16-element ground set.
"""
import numpy as np

from ._jit import BACKEND, HAVE_NUMBA, njit

__all__ = [
    "BACKEND",
    "IMPLEMENTATIONS",
    "rank_table",
    "closed_sets",
    "mobius_matrix",
    "kl_lattice",
    "count_linear_extensions",
    "enumerate_linear_extensions",
    "compress_bits",
]


def _as_masks(values) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(values, dtype=np.int64))


# ---------------------------------------------------------------------------
# numba loops
# ---------------------------------------------------------------------------


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _rank_table_nb(bases, n):
    size = 1 << n
    indep = np.zeros(size, np.bool_)
    for b in bases:
        indep[b] = True
    for s in range(size - 1, -1, -1):
        if indep[s]:
            continue
        for e in range(n):
            if not (s >> e) & 1 and indep[s | (1 << e)]:
                indep[s] = True
                break
    rank = np.zeros(size, np.int8)
    for s in range(1, size):
        if indep[s]:
            rank[s] = _popcount(s)
            continue
        best = 0
        for e in range(n):
            if (s >> e) & 1:
                r = rank[s ^ (1 << e)]
                if r > best:
                    best = r
        rank[s] = best
    return rank


@njit(cache=True)
def _closed_sets_nb(rank, n):
    size = 1 << n
    closed = np.ones(size, np.bool_)
    for s in range(size):
        rs = rank[s]
        for e in range(n):
            if not (s >> e) & 1 and rank[s | (1 << e)] == rs:
                closed[s] = False
                break
    return closed


@njit(cache=True)
def _mobius_matrix_nb(flats):
    L = flats.shape[0]
    mu = np.zeros((L, L), np.int64)
    for i in range(L):
        fi = flats[i]
        mu[i, i] = 1
        for j in range(i + 1, L):
            fj = flats[j]
            if fi & ~fj:
                continue
            s = 0
            for k in range(i, j):
                fk = flats[k]
                if (fk & fi) == fi and not (fk & ~fj):
                    s += mu[i, k]
            mu[i, j] = -s
    return mu


@njit(cache=True)
def _kl_lattice_nb(flats, franks, mu):
    L = flats.shape[0]
    top = franks[L - 1]
    width = top // 2 + 1
    P = np.zeros((L, width), np.int64)
    R = np.zeros((L, top + 1), np.int64)
    chi = np.zeros(top + 1, np.int64)
    for f in range(L - 1, -1, -1):
        ff = flats[f]
        k = top - franks[f]
        if k == 0:
            P[f, 0] = 1
            continue
        for g in range(f + 1, L):
            fg = flats[g]
            if ff & ~fg:
                continue
            chi[:] = 0
            for h in range(f, g + 1):
                fh = flats[h]
                if (fh & ff) == ff and not (fh & ~fg):
                    chi[franks[g] - franks[h]] += mu[f, h]
            dg = franks[g] - franks[f]
            for a in range(dg + 1):
                if chi[a] == 0:
                    continue
                for b in range(width):
                    if P[g, b] != 0:
                        R[f, a + b] += chi[a] * P[g, b]
        i = 0
        while 2 * i < k:
            P[f, i] = R[f, k - i]
            i += 1
    return P, R


@njit(cache=True)
def _count_linear_extensions_nb(pred, ncells):
    size = 1 << ncells
    ways = np.zeros(size, np.int64)
    ways[0] = 1
    for s in range(size):
        w = ways[s]
        if w == 0:
            continue
        for c in range(ncells):
            if not (s >> c) & 1 and (pred[c] & s) == pred[c]:
                ways[s | (1 << c)] += w
    return ways[size - 1]


@njit(cache=True)
def _enumerate_linear_extensions_nb(pred, ncells, total):
    out = np.zeros((total, ncells), np.int64)
    filling = np.zeros(ncells, np.int64)
    choice = np.full(ncells, -1, np.int64)
    used = 0
    row = 0
    depth = 0
    while depth >= 0:
        prev = choice[depth]
        if prev >= 0:
            used ^= 1 << prev
        c = prev + 1
        while c < ncells and ((used >> c) & 1 or (pred[c] & used) != pred[c]):
            c += 1
        if c == ncells:
            choice[depth] = -1
            depth -= 1
            continue
        choice[depth] = c
        used |= 1 << c
        filling[c] = depth + 1
        if depth == ncells - 1:
            out[row, :] = filling
            row += 1
        else:
            depth += 1
            choice[depth] = -1
    return out[:row]


@njit(cache=True)
def _compress_bits_nb(masks, keep):
    out = np.zeros(masks.shape[0], np.int64)
    for idx in range(masks.shape[0]):
        x = masks[idx]
        y = 0
        j = 0
        rest = keep
        pos = 0
        while rest:
            if rest & 1:
                if (x >> pos) & 1:
                    y |= 1 << j
                j += 1
            rest >>= 1
            pos += 1
        out[idx] = y
    return out


# ---------------------------------------------------------------------------
# numpy twins
# ---------------------------------------------------------------------------


def _rank_table_np(bases, n):
    subsets = np.arange(1 << n, dtype=np.int64)
    rank = np.zeros(1 << n, dtype=np.int8)
    chunk = max(1, (1 << 22) // max(1, len(bases)))
    for lo in range(0, len(subsets), chunk):
        block = subsets[lo : lo + chunk]
        counts = np.bitwise_count(block[:, None] & bases[None, :])
        rank[lo : lo + chunk] = counts.max(axis=1)
    return rank


def _closed_sets_np(rank, n):
    subsets = np.arange(1 << n, dtype=np.int64)
    closed = np.ones(1 << n, dtype=bool)
    for e in range(n):
        bit = np.int64(1) << e
        outside = (subsets & bit) == 0
        grows = rank[subsets | bit] > rank
        closed &= ~outside | grows
    return closed


def _containment(flats):
    return (flats[:, None] & ~flats[None, :]) == 0


def _mobius_matrix_np(flats):
    L = len(flats)
    contain = _containment(flats).astype(np.int64)
    mu = np.zeros((L, L), dtype=np.int64)
    # a proper subflat always sits at a smaller index, so sweep columns in order
    for j in range(L):
        below = contain[:j, j]
        mu[:, j] = -(mu[:, :j] @ below)
        mu[j, j] = 1
    return mu


def _kl_lattice_np(flats, franks, mu):
    L = len(flats)
    top = int(franks[-1])
    width = top // 2 + 1
    contain = _containment(flats)
    P = np.zeros((L, width), dtype=np.int64)
    R = np.zeros((L, top + 1), dtype=np.int64)
    degrees = np.arange(top + 1)
    for f in range(L - 1, -1, -1):
        k = top - int(franks[f])
        if k == 0:
            P[f, 0] = 1
            continue
        up = np.flatnonzero(contain[f])
        # chi_{[f,g]} coefficient of t^e is sum over h in [f,g] with rank(g)-rank(h)=e
        hr = franks[up]
        sub = contain[np.ix_(up, up)].astype(np.int64)
        weights = mu[f, up]
        by_rank = np.zeros((top + 1, len(up)), dtype=np.int64)
        by_rank[hr, np.arange(len(up))] = weights
        X = by_rank @ sub  # X[rho, g] = sum_{h <= g, rank h = rho} mu[f, h]
        gs = up[1:]
        rho = franks[gs][:, None] - degrees[None, :]
        valid = rho >= 0
        chi = np.where(valid, X[np.clip(rho, 0, None), np.arange(1, len(up))[:, None]], 0)
        Pg = P[gs]
        acc = np.zeros(top + width, dtype=np.int64)
        for b in range(width):
            acc[b : b + top + 1] += chi.T @ Pg[:, b]
        R[f] = acc[: top + 1]
        i = np.arange((k + 1) // 2)
        P[f, i] = R[f, k - i]
    return P, R


def _count_linear_extensions_np(pred, ncells):
    size = 1 << ncells
    ways = np.zeros(size, dtype=np.int64)
    ways[0] = 1
    masks = np.arange(size, dtype=np.int64)
    levels = np.bitwise_count(masks)
    for level in range(ncells):
        layer = masks[(levels == level)]
        layer = layer[ways[layer] > 0]
        for c in range(ncells):
            bit = np.int64(1) << c
            ok = ((layer & bit) == 0) & ((layer & pred[c]) == pred[c])
            src = layer[ok]
            ways[src | bit] += ways[src]
    return ways[size - 1]


def _enumerate_linear_extensions_np(pred, ncells, total):
    fill = np.zeros((1, ncells), dtype=np.int64)
    used = np.zeros(1, dtype=np.int64)
    for value in range(1, ncells + 1):
        new_fill, new_used = [], []
        for c in range(ncells):
            bit = np.int64(1) << c
            ok = ((used & bit) == 0) & ((used & pred[c]) == pred[c])
            if not ok.any():
                continue
            f = fill[ok].copy()
            f[:, c] = value
            new_fill.append(f)
            new_used.append(used[ok] | bit)
        fill = np.concatenate(new_fill)
        used = np.concatenate(new_used)
    assert len(fill) == total
    return fill


def _compress_bits_np(masks, keep):
    out = np.zeros(len(masks), dtype=np.int64)
    j = 0
    pos = 0
    while keep >> pos:
        if (keep >> pos) & 1:
            out |= ((masks >> pos) & 1) << j
            j += 1
        pos += 1
    return out


IMPLEMENTATIONS = {
    "rank_table": {"numpy": _rank_table_np},
    "closed_sets": {"numpy": _closed_sets_np},
    "mobius_matrix": {"numpy": _mobius_matrix_np},
    "kl_lattice": {"numpy": _kl_lattice_np},
    "count_linear_extensions": {"numpy": _count_linear_extensions_np},
    "enumerate_linear_extensions": {"numpy": _enumerate_linear_extensions_np},
    "compress_bits": {"numpy": _compress_bits_np},
}
if HAVE_NUMBA:
    IMPLEMENTATIONS["rank_table"]["numba"] = _rank_table_nb
    IMPLEMENTATIONS["closed_sets"]["numba"] = _closed_sets_nb
    IMPLEMENTATIONS["mobius_matrix"]["numba"] = _mobius_matrix_nb
    IMPLEMENTATIONS["kl_lattice"]["numba"] = _kl_lattice_nb
    IMPLEMENTATIONS["count_linear_extensions"]["numba"] = _count_linear_extensions_nb
    IMPLEMENTATIONS["enumerate_linear_extensions"]["numba"] = _enumerate_linear_extensions_nb
    IMPLEMENTATIONS["compress_bits"]["numba"] = _compress_bits_nb


def _pick(name):
    return IMPLEMENTATIONS[name][BACKEND]


def rank_table(bases, n: int) -> np.ndarray:
    """Rank of every subset of ``[n]``, indexed by bitmask (int8 array of length 2**n)."""
    return _pick("rank_table")(_as_masks(bases), int(n))


def closed_sets(rank: np.ndarray, n: int) -> np.ndarray:
    """Boolean mask over all subsets: True where adding any outside element raises the rank."""
    return _pick("closed_sets")(np.ascontiguousarray(rank), int(n))


def mobius_matrix(flats) -> np.ndarray:
    """Pairwise Möbius values ``mu[i, j] = mu(flats[i], flats[j])``.

    ``flats`` must be ordered so that every proper subflat precedes its
    superflats (sorting by rank does this).  Entries for incomparable pairs
    are zero.
    """
    return _pick("mobius_matrix")(_as_masks(flats))


def kl_lattice(flats, franks, mu):
    """KL polynomials of every upper interval of a geometric lattice.

    Returns ``(P, R)``: row ``f`` of ``P`` holds the coefficients (low to high)
    of the KL polynomial of the interval ``[flats[f], top]``; row ``f`` of
    ``R`` holds the right-hand side ``sum_{g > f} chi_{[f,g]} P_g`` so callers
    can substitute back.
    """
    return _pick("kl_lattice")(_as_masks(flats), _as_masks(franks), np.ascontiguousarray(mu))


def count_linear_extensions(pred, ncells: int) -> int:
    """Number of ways to label ``ncells`` cells 1..ncells respecting ``pred`` (predecessor bitmasks)."""
    return int(_pick("count_linear_extensions")(_as_masks(pred), int(ncells)))


def enumerate_linear_extensions(pred, ncells: int, total: int | None = None) -> np.ndarray:
    """All labelings as rows of a ``(total, ncells)`` array; ``total`` is computed when omitted."""
    pred = _as_masks(pred)
    if total is None:
        total = count_linear_extensions(pred, ncells)
    return _pick("enumerate_linear_extensions")(pred, int(ncells), int(total))


def compress_bits(masks, keep: int) -> np.ndarray:
    """Gather the bits of each mask at the positions set in ``keep`` into a dense low-order mask."""
    return _pick("compress_bits")(_as_masks(masks), int(keep))
