"""Matroids on small ground sets, stored as explicit basis bitmasks.

Ground set is 0-based internally; the CLI layer does the 1-based file
translation.  Everything here is desk scale: subset enumeration caps at
n = 12 and basis-exchange validation at a few thousand bases.
"""

from itertools import combinations
from math import comb
from typing import NamedTuple

from .errors import (
    EmptyMatroid,
    InvalidParams,
    ModularityAnomaly,
    NotAMatroid,
    PresentationMismatch,
    ScaleExceeded,
)

_ENUM_CAP = 12  # 2^n subset sweeps beyond this are not desk scale
_BASIS_CAP = 2_000_000  # explicit basis enumeration cap


def _mask(elems):
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class CyclicFlat(NamedTuple):
    elements: frozenset
    rank: int


class Matroid:
    """A matroid given by its set of bases."""

    def __init__(self, n, rank, basis_masks):
        self.n = n
        self.rank = rank
        self._bases = frozenset(basis_masks)
        self._rank_memo = {}
        self._cyclic = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_bases(cls, n, rank, bases, validate=True):
        """Build from an iterable of bases (iterables of 0-based elements)."""
        if n < 1 or n > 64 or rank < 0 or rank > n:
            raise InvalidParams("need 1 <= n <= 64 and 0 <= rank <= n, got n=%d rank=%d" % (n, rank))
        masks = set()
        for b in bases:
            m = _mask(b) if not isinstance(b, int) else b
            if m < 0 or m >> n:
                raise InvalidParams("basis %r out of range for n=%d" % (b, n))
            if m.bit_count() != rank:
                raise NotAMatroid("basis %r does not have size %d" % (sorted(_bits(m)), rank))
            masks.add(m)
        if not masks:
            raise EmptyMatroid("no bases given")
        M = cls(n, rank, masks)
        if validate:
            M._validate_exchange()
        return M

    @classmethod
    def uniform(cls, k, n):
        if not 0 <= k <= n or n < 1 or n > 64:
            raise InvalidParams("uniform matroid needs 0 <= k <= n, 1 <= n <= 64")
        if comb(n, k) > _BASIS_CAP:
            raise ScaleExceeded(
                "binom(%d,%d) bases is past desk scale (cap %d)" % (n, k, _BASIS_CAP)
            )
        return cls(n, k, {_mask(c) for c in combinations(range(n), k)})

    @classmethod
    def from_cyclic_flats(cls, n, rank, flats):
        """Build from (elements, rank) pairs by cutting the uniform bases.

        Keeps every k-subset B with |B & F| <= rank(F) for each given
        flat, then re-derives the cyclic flats and checks they match the
        input family.
        """
        if n < 1 or n > 64 or rank < 0 or rank > n:
            raise InvalidParams("need 1 <= n <= 64 and 0 <= rank <= n")
        fam = []
        for elems, r in flats:
            fm = _mask(elems)
            if fm >> n or not 0 <= r <= rank:
                raise InvalidParams("flat (%r, %d) out of range" % (sorted(elems), r))
            if fm == 0 or fm == (1 << n) - 1:
                raise InvalidParams("cyclic flat presentations list proper nonempty flats only")
            fam.append((fm, r))
        if comb(n, rank) > _BASIS_CAP:
            raise ScaleExceeded(
                "binom(%d,%d) candidate bases is past desk scale (cap %d)"
                % (n, rank, _BASIS_CAP)
            )
        masks = set()
        for c in combinations(range(n), rank):
            bm = _mask(c)
            if all((bm & fm).bit_count() <= r for fm, r in fam):
                masks.add(bm)
        if not masks:
            raise EmptyMatroid("the given cyclic flats cut out no bases")
        M = cls(n, rank, masks)
        derived = {(f.elements, f.rank) for f in M.cyclic_flats()}
        given = {(frozenset(_bits(fm)), r) for fm, r in fam}
        # the improper cyclic flats (empty set, full ground set) need not be listed
        derived_proper = {(s, r) for s, r in derived if 0 < len(s) < n}
        missing = given - derived
        extra = derived_proper - given
        if missing or extra:
            raise PresentationMismatch(
                "cyclic flats re-derived from the cut bases differ from the input: "
                "missing=%r extra=%r" % (sorted((sorted(s), r) for s, r in missing),
                                         sorted((sorted(s), r) for s, r in extra))
            )
        return M

    # -- basics -------------------------------------------------------

    def bases(self):
        """Bases as a sorted list of sorted tuples."""
        return sorted(tuple(_bits(m)) for m in self._bases)

    def basis_masks(self):
        return sorted(self._bases)

    def nonbases(self):
        return sorted(
            tuple(c) for c in combinations(range(self.n), self.rank)
            if _mask(c) not in self._bases
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and (self.n, self.rank, self._bases) == (other.n, other.rank, other._bases)
        )

    def __hash__(self):
        return hash((self.n, self.rank, self._bases))

    def __repr__(self):
        return "Matroid(n=%d, rank=%d, %d bases)" % (self.n, self.rank, len(self._bases))

    def _validate_exchange(self):
        bl = sorted(self._bases)
        bs = self._bases
        for i, b1 in enumerate(bl):
            for b2 in bl[i + 1:]:
                for x in _bits(b1 & ~b2):
                    stripped = b1 & ~(1 << x)
                    if not any(stripped | (1 << y) in bs for y in _bits(b2 & ~b1)):
                        raise NotAMatroid(
                            "exchange fails for bases %r, %r at element %d"
                            % (tuple(_bits(b1)), tuple(_bits(b2)), x)
                        )

    # -- rank machinery -----------------------------------------------

    def rank_of(self, subset):
        m = subset if isinstance(subset, int) else _mask(subset)
        got = self._rank_memo.get(m)
        if got is None:
            got = max((b & m).bit_count() for b in self._bases)
            self._rank_memo[m] = got
        return got

    def closure(self, subset):
        m = subset if isinstance(subset, int) else _mask(subset)
        r = self.rank_of(m)
        out = m
        for e in range(self.n):
            bit = 1 << e
            if not m & bit and self.rank_of(m | bit) == r:
                out |= bit
        return frozenset(_bits(out))

    def _closure_mask(self, m):
        r = self.rank_of(m)
        out = m
        for e in range(self.n):
            bit = 1 << e
            if not m & bit and self.rank_of(m | bit) == r:
                out |= bit
        return out

    def cyclic_flats(self):
        """All cyclic flats (flats that are unions of circuits), improper included."""
        if self._cyclic is None:
            if self.n > _ENUM_CAP:
                raise ScaleExceeded("cyclic flat enumeration capped at n=%d" % _ENUM_CAP)
            out = []
            for m in range(1 << self.n):
                r = self.rank_of(m)
                if self._closure_mask(m) != m:
                    continue
                if any(self.rank_of(m & ~(1 << e)) != r for e in _bits(m)):
                    continue
                out.append(CyclicFlat(frozenset(_bits(m)), r))
            out.sort(key=lambda f: (len(f.elements), sorted(f.elements)))
            self._cyclic = out
        return list(self._cyclic)

    def proper_cyclic_flats(self):
        return [f for f in self.cyclic_flats() if 0 < len(f.elements) < self.n]

    # -- structure ----------------------------------------------------

    def dual(self):
        full = (1 << self.n) - 1
        return Matroid(self.n, self.n - self.rank, {full ^ b for b in self._bases})

    def component_sets(self):
        """Ground set partition induced by basis-exchange moves."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        bs = self._bases
        for b in self._bases:
            comp = ((1 << self.n) - 1) ^ b
            for x in _bits(b):
                stripped = b & ~(1 << x)
                for y in _bits(comp):
                    if stripped | (1 << y) in bs:
                        union(x, y)
        groups = {}
        for e in range(self.n):
            groups.setdefault(find(e), []).append(e)
        return sorted((frozenset(g) for g in groups.values()), key=lambda s: min(s))

    def connected_components(self):
        """One standalone matroid per component, elements relabeled."""
        return [self.restriction_to_component(c) for c in self.component_sets()]

    def is_connected(self):
        return len(self.component_sets()) == 1

    def restriction_to_component(self, comp):
        """Standalone matroid on a component, elements relabeled to 0..len-1."""
        elems = sorted(comp)
        pos = {e: i for i, e in enumerate(elems)}
        cm = _mask(elems)
        r = self.rank_of(cm)
        masks = {_mask(pos[e] for e in _bits(b & cm)) for b in self._bases
                 if (b & cm).bit_count() == r}
        return Matroid(len(elems), r, masks)

    def relax(self, elems):
        """Add every rank-size subset meeting elems in more than its rank."""
        fm = _mask(elems)
        r = self.rank_of(fm)
        added = {
            _mask(c) for c in combinations(range(self.n), self.rank)
            if (_mask(c) & fm).bit_count() >= r + 1
        }
        if not added:
            raise InvalidParams("relaxation of %r adds no bases" % (sorted(_bits(fm)),))
        return Matroid(self.n, self.rank, self._bases | added)


# -- split recognition ------------------------------------------------


class SplitCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def is_connected_split(M):
    """Decide by actually relaxing: peel off cyclic flats that are
    incomparable to every other proper cyclic flat until none remain,
    then the result must be uniform."""
    comps = M.component_sets()
    if len(comps) > 1:
        return SplitCheck(False, "not connected: components %s"
                          % [sorted(c) for c in comps])
    cur = M
    while True:
        proper = cur.proper_cyclic_flats()
        if not proper:
            if len(cur._bases) == comb(cur.n, cur.rank):
                return SplitCheck(True, "")
            return SplitCheck(False, "no proper cyclic flats left but not uniform")
        masks = [_mask(f.elements) for f in proper]
        pick = None
        for i, fm in enumerate(masks):
            if all(j == i or not (fm & gm == fm or fm & gm == gm)
                   for j, gm in enumerate(masks)):
                pick = i
                break
        if pick is None:
            # every flat is comparable to some other; exhibit one pair
            for i, fm in enumerate(masks):
                for j, gm in enumerate(masks):
                    if i != j and fm & gm == fm:
                        return SplitCheck(
                            False,
                            "nested proper cyclic flats %s < %s"
                            % (sorted(proper[i].elements), sorted(proper[j].elements)),
                        )
        cur = cur.relax(proper[pick].elements)


class SplitProfile(NamedTuple):
    n: int
    k: int
    lam: dict  # (r, h) -> number of proper cyclic flats of that shape
    mu: dict  # (alpha, beta, a, b) -> number of modular pairs of that shape
    flats: tuple  # the proper cyclic flats themselves


def split_profile(M):
    """Count proper cyclic flats by (rank, size) and modular pairs by shape.

    A pair F, G is modular when rk F + rk G == |F n G| + rank(M); the
    intersection is then asserted independent.
    """
    k = M.rank
    flats = M.proper_cyclic_flats()
    lam = {}
    for f in flats:
        key = (f.rank, len(f.elements))
        lam[key] = lam.get(key, 0) + 1
    mu = {}
    for fa, fb in combinations(flats, 2):
        inter = fa.elements & fb.elements
        if fa.rank + fb.rank != len(inter) + k:
            continue
        if M.rank_of(inter) != len(inter):
            raise ModularityAnomaly(
                "modular pair %s, %s has dependent intersection"
                % (sorted(fa.elements), sorted(fb.elements))
            )
        gamma = len(inter)
        pa = (fa.rank - gamma, len(fa.elements) - gamma)
        pb = (fb.rank - gamma, len(fb.elements) - gamma)
        (alpha, a), (beta, b) = sorted([pa, pb])
        key = (alpha, beta, a, b)
        mu[key] = mu.get(key, 0) + 1
    return SplitProfile(M.n, k, lam, mu, tuple(flats))


def is_sparse_paving(M):
    """Every proper cyclic flat is a circuit hyperplane: rank k-1, size k."""
    k = M.rank
    return all(f.rank == k - 1 and len(f.elements) == k
               for f in M.proper_cyclic_flats())


# -- named small matroids ---------------------------------------------


def fano():
    """Rank 3 on 7 points, seven 3-point lines."""
    lines = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
    return Matroid.from_cyclic_flats(7, 3, [(l, 2) for l in lines])


def vamos():
    """Rank 4 on 8 points, five 4-element circuit hyperplanes."""
    planes = [(0, 1, 2, 3), (0, 1, 4, 5), (2, 3, 4, 5), (0, 1, 6, 7), (2, 3, 6, 7)]
    return Matroid.from_cyclic_flats(8, 4, [(p, 3) for p in planes])


def mk4():
    """Cycle matroid of the complete graph on 4 vertices (rank 3 on 6 edges)."""
    triangles = [(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)]
    return Matroid.from_cyclic_flats(6, 3, [(t, 2) for t in triangles])


def sparse_paving(n, rank, circuit_hyperplanes):
    """Uniform bases minus the listed rank-sized circuit hyperplanes."""
    return Matroid.from_cyclic_flats(
        n, rank, [(ch, rank - 1) for ch in circuit_hyperplanes]
    )


def example_m1():
    return sparse_paving(8, 4, [(0, 1, 2, 3), (0, 1, 4, 5)])


def example_m2():
    return sparse_paving(8, 4, [(0, 1, 2, 3), (0, 4, 5, 6)])


def example_m3():
    return sparse_paving(8, 4, [(0, 1, 2, 3), (4, 5, 6, 7)])


def example_535():
    return sparse_paving(5, 3, [(0, 1, 2), (0, 3, 4)])
