"""cd-index of cuspidal matroids: a hypersimplex cut by one flat constraint.

The (k, n, r, h) cuspidal matroid has the bases of the (k, n) uniform
matroid that meet a fixed h-element set F in at most r elements; its
base polytope is the hypersimplex truncated by x(F) <= r.  Faces come
in three kinds: ambient hypersimplex faces kept whole (max of x(F) on
the face at most r), ambient faces truncated to smaller cuspidal
polytopes (r strictly between the face's min and max), and faces lying
in the cut hyperplane itself, which form a product of two
hypersimplices.  Ambient faces whose minimum already reaches r
contribute nothing new.
"""

import threading
from math import comb
from typing import NamedTuple

from .errors import InvalidParams
from .ncpoly import NcPoly, emve_mixed, g_cd, normalize_mixed
from .hypersimplex import cd_hypersimplex, face_type_counts
from .product import cd_product


class CuspidalKey(NamedTuple):
    k: int
    n: int
    r: int
    h: int


def check_key(k, n, r, h):
    """The key is valid when F (size h, rank r) is a proper cyclic flat
    of a connected rank-k matroid on n elements: 1 <= r < min(k, h),
    h < n, and k - (n - h) < r."""
    if not (1 <= r < k and r < h and h < n and k < n):
        raise InvalidParams("bad cuspidal key (k=%d, n=%d, r=%d, h=%d)" % (k, n, r, h))
    if r <= k - (n - h):
        raise InvalidParams(
            "cuspidal key (k=%d, n=%d, r=%d, h=%d) forces coloops" % (k, n, r, h)
        )


def dual_key(k, n, r, h):
    """Key of the dual matroid (complemented bases)."""
    return CuspidalKey(n - k, n, r + (n - h) - k, n - h)


def vertex_count(k, n, r, h):
    return sum(
        comb(h, t) * comb(n - h, k - t)
        for t in range(max(0, k - (n - h)), r + 1)
    )


_memo = {}
_lock = threading.Lock()


def cd_cuspidal(k, n, r, h):
    """cd-index of the (k, n, r, h) cuspidal matroid's base polytope."""
    check_key(k, n, r, h)
    key = CuspidalKey(k, n, r, h)
    with _lock:
        got = _memo.get(key)
    if got is not None:
        return got
    p = _compute(k, n, r, h)
    with _lock:
        _memo.setdefault(key, p)
        _memo.setdefault(dual_key(k, n, r, h), p)
    return p


def _compute(k, n, r, h):
    acc = emve_mixed(n - 1, vertex_count(k, n, r, h))
    # ambient faces, grouped by how the pinned sets meet F and its complement
    for c1 in range(0, min(k, h + 1)):
        for c2 in range(0, min(k - c1, n - h + 1)):
            for d1 in range(0, min(n - k, h - c1 + 1)):
                for d2 in range(0, min(n - k - d1, n - h - c2 + 1)):
                    if c1 + c2 + d1 + d2 == 0:
                        continue
                    count = (comb(h, c1) * comb(n - h, c2)
                             * comb(h - c1, d1) * comb(n - h - c2, d2))
                    kk = k - c1 - c2
                    nn = n - c1 - c2 - d1 - d2
                    free_f = h - c1 - d1
                    free_out = (n - h) - c2 - d2
                    lo = c1 + max(0, kk - free_out)
                    hi = c1 + min(free_f, kk)
                    if lo >= r:
                        continue  # meets the polytope only inside the cut plane
                    w = g_cd(c1 + c2 + d1 + d2 - 1)
                    if hi <= r:
                        acc = acc + count * (cd_hypersimplex(kk, nn) * w)
                    else:
                        acc = acc + count * (cd_cuspidal(kk, nn, r - c1, free_f) * w)
    # faces inside the cut plane: product of two hypersimplices
    left = _factor_faces(r, h)
    right = _factor_faces(k - r, n - h)
    for p1, dm1, ct1 in left:
        for p2, dm2, ct2 in right:
            dm = dm1 + dm2
            if dm < 1:
                continue
            acc = acc + (ct1 * ct2) * (cd_product(p1, p2) * g_cd((n - 2) - dm))
    return normalize_mixed(acc)


def _factor_faces(k, h):
    """Faces of the (k, h) hypersimplex as (cd, dim, count) triples,
    the polytope itself and its vertices included."""
    out = [(cd_hypersimplex(k, h), h - 1, 1)]
    for (i, j), ct in face_type_counts(k, h).items():
        out.append((cd_hypersimplex(k - i, h - i - j), h - i - j - 1, ct))
    out.append((NcPoly.one(), 0, comb(h, k)))
    return out


def cuspidal_matroid(k, n, r, h):
    """The matroid itself: bases meeting the first h elements at most r times."""
    from .matroid import Matroid

    check_key(k, n, r, h)
    return Matroid.from_cyclic_flats(n, k, [(tuple(range(h)), r)])


def memo_snapshot():
    with _lock:
        return dict(_memo)


def memo_install(key, poly):
    k, n, r, h = key
    check_key(k, n, r, h)
    with _lock:
        _memo.setdefault(CuspidalKey(k, n, r, h), poly)


def memo_clear():
    with _lock:
        _memo.clear()
