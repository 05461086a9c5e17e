"""cd-index of a cartesian product of polytopes.

Faces of V x W are products of nonempty faces, so each flag entry of
the product is a convolution of the factors' flag entries over weakly
nondecreasing dimension splittings; the improper face of each factor is
allowed inside a splitting and contributes its full flag count.
"""

from .errors import InvalidParams
from .ncpoly import NcPoly, cd_to_flag_f, flag_to_cd, FlagFVector


def _extended(fv, dims):
    """Flag entry allowing the improper top dimension in the index set."""
    return fv.f(frozenset(d for d in dims if d != fv.dim))


def cd_product(p, q):
    """cd-index of the product of two polytopes given their cd-indices."""
    for x in (p, q):
        if not x.is_homogeneous():
            raise InvalidParams("cd-index of a polytope must be homogeneous")
        if x.coeff("") < 0 or not x:
            raise InvalidParams("not a polytope cd-index: %s" % x.text())
    dp, dq = p.degree(), q.degree()
    fp = cd_to_flag_f(p, dp)
    fq = cd_to_flag_f(q, dq)
    D = dp + dq
    entries = {}
    for smask in range(1 << D):
        S = [d for d in range(D) if smask >> d & 1]
        total = 0
        # split each chain dimension s into e + g, both weakly nondecreasing
        stack = [(0, 0, 0, ())]  # index into S, min e, min g, e-sequence
        while stack:
            i, emin, gmin, seq = stack.pop()
            if i == len(S):
                e_dims = frozenset(seq)
                g_dims = frozenset(s - e for s, e in zip(S, seq))
                total += _extended(fp, e_dims) * _extended(fq, g_dims)
                continue
            s = S[i]
            lo = max(emin, s - dq)
            hi = min(dp, s - gmin)
            for e in range(lo, hi + 1):
                stack.append((i + 1, e, s - e, seq + (e,)))
        entries[frozenset(S)] = total
    return flag_to_cd(FlagFVector(D, entries))


def cd_product_all(polys):
    """Product over a sequence of cd-indices; empty product is the point."""
    out = NcPoly.one()
    for p in polys:
        out = cd_product(out, p)
    return out
