"""cd-index of connected split matroids, and the component dispatcher.

The closed formula: start from the hypersimplex of the same rank and
size, add each proper cyclic flat's cuspidal correction, and subtract a
product-of-hypersimplices term for each modular pair of proper cyclic
flats.  Disconnected matroids are handled componentwise, since the base
polytope of a direct sum is the product of the summands' polytopes.
"""

import threading
from math import comb

from .errors import (
    InvalidParams,
    NotConnected,
    NotSparsePaving,
    NotSplit,
    UnsupportedMatroid,
)
from .ncpoly import NcPoly, D as _D
from .hypersimplex import cd_hypersimplex
from .cuspidal import cd_cuspidal
from .product import cd_product, cd_product_all
from .matroid import (
    Matroid,
    is_connected_split,
    is_sparse_paving,
    split_profile,
)

_w_memo = {}
_w_lock = threading.Lock()


def w_key(alpha, beta, a, b, n):
    (alpha, a), (beta, b) = sorted([(alpha, a), (beta, b)])
    return (alpha, beta, a, b, n)


def w_term(alpha, beta, a, b, n):
    """Correction term for a modular pair of proper cyclic flats.

    alpha, beta are the ranks and a, b the sizes of the two flats with
    the common intersection removed; n is the ground size of the whole
    matroid.  Symmetric in the two (rank, size) pairs.
    """
    if min(alpha, beta, a, b) < 1 or n < a + b:
        raise InvalidParams(
            "bad modular pair shape (%d, %d, %d, %d) for n=%d" % (alpha, beta, a, b, n)
        )
    key = w_key(alpha, beta, a, b, n)
    with _w_lock:
        got = _w_memo.get(key)
    if got is not None:
        return got
    out = NcPoly.zero()
    for p in range(1, alpha + 1):
        for q in range(1, beta + 1):
            for i in range(p + 1, a - alpha + p + 1):
                for j in range(q + 1, b - beta + q + 1):
                    if n - i - j == 0:
                        continue  # the paired face is the whole cut plane
                    piece = cd_product(cd_hypersimplex(p, i), cd_hypersimplex(q, j))
                    out = out + (
                        comb(a, i) * comb(b, j)
                        * comb(a - i, alpha - p) * comb(b - j, beta - q)
                    ) * (piece * _D * cd_hypersimplex(1, n - i - j))
    with _w_lock:
        _w_memo.setdefault(key, out)
    return out


def cd_split_matroid(M):
    """Closed-formula cd-index of a connected split matroid."""
    chk = is_connected_split(M)
    if not chk:
        if chk.reason.startswith("not connected"):
            raise NotConnected(chk.reason + "; use cd_index for componentwise dispatch")
        raise NotSplit(chk.reason)
    prof = split_profile(M)
    k, n = M.rank, M.n
    base = cd_hypersimplex(k, n)
    out = base
    for (r, h), cnt in sorted(prof.lam.items()):
        out = out + cnt * (cd_cuspidal(k, n, r, h) - base)
    for (alpha, beta, a, b), cnt in sorted(prof.mu.items()):
        out = out - cnt * w_term(alpha, beta, a, b, n)
    return out


def cd_sparse_paving(M):
    """Fast path: every proper cyclic flat is a circuit hyperplane."""
    if not M.is_connected():
        raise NotConnected("not connected")
    if not is_sparse_paving(M):
        raise NotSparsePaving(
            "a proper cyclic flat is not a circuit hyperplane: %r"
            % (M.proper_cyclic_flats(),)
        )
    k, n = M.rank, M.n
    chs = [f.elements for f in M.proper_cyclic_flats()]
    lam = len(chs)
    mu = sum(
        1
        for idx, f in enumerate(chs)
        for g in chs[idx + 1:]
        if len(f & g) == k - 2
    )
    out = cd_hypersimplex(k, n)
    if lam:
        out = out + lam * (cd_cuspidal(k, n, k - 1, k) - out)
    if mu:
        corr = (NcPoly.word("ccd") + 2 * NcPoly.word("dd")) * cd_hypersimplex(1, n - 4)
        out = out - mu * corr
    return out


def cd_index(M, oracle_fallback=False, oracle_max_n=None):
    """cd-index of any matroid base polytope this package can reach.

    Split components go through the closed formula; other components
    can fall back to the brute-force oracle when allowed."""
    from . import oracle

    parts = []
    for sub in M.connected_components():
        if is_connected_split(sub):
            parts.append(cd_split_matroid(sub))
        elif oracle_fallback:
            cap = oracle.DEFAULT_MAX_N if oracle_max_n is None else oracle_max_n
            parts.append(oracle.oracle_cd_index(sub, max_n=cap))
        else:
            raise UnsupportedMatroid(
                "component on %d elements is not split; "
                "rerun with the oracle fallback enabled" % sub.n
            )
    return cd_product_all(parts)


def w_memo_snapshot():
    with _w_lock:
        return dict(_w_memo)


def w_memo_install(key, poly):
    alpha, beta, a, b, n = key
    if w_key(alpha, beta, a, b, n) != tuple(key):
        raise InvalidParams("w memo key must be canonical, got %r" % (key,))
    with _w_lock:
        _w_memo.setdefault(tuple(key), poly)


def w_memo_clear():
    with _w_lock:
        _w_memo.clear()
