"""Command-line front end: compute cd-indices, verify against the oracle,
and keep a persistent result cache.

Elements in files and printed diagnostics are 1-based; everything
internal is 0-based.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from math import comb

from . import cuspidal, engine, hypersimplex, matroid, oracle
from .errors import CacheVersionMismatch, CdxError, InvalidParams
from .matroid import Matroid
from .ncpoly import NcPoly, cd_to_flag_f

EXIT_CODES = {
    "NOT_A_MATROID": 2,
    "PRESENTATION_MISMATCH": 2,
    "EMPTY_MATROID": 2,
    "INVALID_PARAMS": 2,
    "UNSUPPORTED_MATROID": 3,
    "SCALE_EXCEEDED": 4,
}


# -- matroid sources --------------------------------------------------


def load_matroid_file(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidParams("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise InvalidParams("%s is not valid JSON: %s" % (path, exc))
    if not isinstance(data, dict) or "n" not in data or "rank" not in data:
        raise InvalidParams("%s: expected an object with n, rank" % path)
    n, rank = data["n"], data["rank"]
    if "bases" in data:
        bases = [[e - 1 for e in b] for b in data["bases"]]
        return Matroid.from_bases(n, rank, bases)
    if "cyclic_flats" in data:
        flats = [([e - 1 for e in f["set"]], f["rank"]) for f in data["cyclic_flats"]]
        return Matroid.from_cyclic_flats(n, rank, flats)
    raise InvalidParams("%s: needs either bases or cyclic_flats" % path)


_FIXED_BUILTINS = {
    "fano": matroid.fano,
    "vamos": matroid.vamos,
    "mk4": matroid.mk4,
    "example-m1": matroid.example_m1,
    "example-m2": matroid.example_m2,
    "example-m3": matroid.example_m3,
    "example-535": matroid.example_535,
}


def builtin_matroid(name, args):
    if name in _FIXED_BUILTINS:
        return _FIXED_BUILTINS[name]()
    if name in ("uniform", "hypersimplex"):
        if args.k is None or args.n is None:
            raise InvalidParams("builtin %s needs --k and --n" % name)
        return Matroid.uniform(args.k, args.n)
    if name == "cuspidal":
        if None in (args.k, args.n, args.r, args.h):
            raise InvalidParams("builtin cuspidal needs --k --n --r --h")
        return cuspidal.cuspidal_matroid(args.k, args.n, args.r, args.h)
    raise InvalidParams(
        "unknown builtin %r (have: uniform, hypersimplex, cuspidal, %s)"
        % (name, ", ".join(sorted(_FIXED_BUILTINS)))
    )


# -- persistent cache -------------------------------------------------

CACHE_VERSION = 1
_KINDS = {
    "hypersimplex": (hypersimplex.memo_snapshot, hypersimplex.memo_install,
                     lambda key: hypersimplex.cd_hypersimplex(*key)),
    "cuspidal": (cuspidal.memo_snapshot, cuspidal.memo_install,
                 lambda key: cuspidal.cd_cuspidal(*key)),
    "w": (engine.w_memo_snapshot, engine.w_memo_install,
          lambda key: engine.w_term(*key)),
}


def poly_to_json(p):
    return {w: str(c) for w, c in p.terms().items()}


def poly_from_json(obj):
    out = NcPoly.zero()
    for w, c in obj.items():
        out = out + int(c) * (NcPoly.one() if w == "" else NcPoly.word(w))
    return out


class CacheStore:
    def __init__(self, path):
        self.path = path
        self.known = set()  # (kind, key-tuple) already present in the file

    def load(self, install=True):
        """Read records; returns them as (kind, key, poly) triples."""
        out = []
        if not os.path.exists(self.path):
            return out
        with open(self.path) as fh:
            lines = fh.readlines()
        for idx, line in enumerate(lines):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                kind = rec["kind"]
                key = tuple(int(x) for x in rec["key"])
                poly = poly_from_json(rec["cd"])
                version = rec["v"]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                sys.stderr.write(
                    "warning: %s: record %d is corrupt, ignoring it and the rest\n"
                    % (self.path, idx + 1)
                )
                break
            if version != CACHE_VERSION:
                raise CacheVersionMismatch(
                    "%s: record %d has version %r, this build reads version %d"
                    % (self.path, idx + 1, version, CACHE_VERSION)
                )
            if kind not in _KINDS:
                raise CacheVersionMismatch(
                    "%s: record %d has unknown kind %r" % (self.path, idx + 1, kind)
                )
            self.known.add((kind, key))
            if install:
                _KINDS[kind][1](key, poly)
            out.append((kind, key, poly))
        return out

    def append_new(self):
        """Append records for memo entries not yet in the file."""
        recs = []
        for kind, (snapshot, _install, _compute) in _KINDS.items():
            for key, poly in sorted(snapshot().items()):
                kt = tuple(key)
                if (kind, kt) not in self.known:
                    recs.append(
                        {"v": CACHE_VERSION, "kind": kind, "key": list(kt),
                         "cd": poly_to_json(poly)}
                    )
                    self.known.add((kind, kt))
        if recs:
            with open(self.path, "a") as fh:
                for rec in recs:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
        return len(recs)

    def verify(self):
        """Recompute every record from scratch and compare."""
        records = self.load(install=False)
        bad = []
        for kind, key, poly in records:
            fresh = _KINDS[kind][2](key)
            if fresh != poly:
                bad.append((kind, key, poly, fresh))
        return records, bad


# -- compute ----------------------------------------------------------


def cmd_compute(args):
    if args.builtin:
        M = builtin_matroid(args.builtin, args)
    else:
        M = load_matroid_file(args.file)
    if args.max_n is not None and M.n > args.max_n:
        from .errors import ScaleExceeded

        raise ScaleExceeded("n=%d exceeds --max-n %d" % (M.n, args.max_n))
    cache = None
    if args.cache:
        cache = CacheStore(args.cache)
        cache.load()
    p = engine.cd_index(M, oracle_fallback=args.oracle_fallback,
                        oracle_max_n=args.max_n)
    if cache:
        cache.append_new()
    dim = p.degree()
    flag = cd_to_flag_f(p, dim) if (args.flag_f or args.f_vector) else None
    if args.format == "json":
        obj = {"cd": poly_to_json(p)}
        if args.f_vector:
            obj["f_vector"] = list(flag.f_vector())
        if args.flag_f:
            obj["flag_f"] = {
                ",".join(str(d) for d in sorted(S)): str(v)
                for S, v in sorted(flag.entries().items(),
                                   key=lambda kv: (len(kv[0]), sorted(kv[0])))
            }
        print(json.dumps(obj, sort_keys=True))
    else:
        print(p.text())
        if args.f_vector:
            print("f-vector: %s" % " ".join(str(x) for x in flag.f_vector()))
        if args.flag_f:
            for S, v in sorted(flag.entries().items(),
                               key=lambda kv: (len(kv[0]), sorted(kv[0]))):
                print("flag[%s] = %d" % (",".join(str(d) for d in sorted(S)), v))
    return 0


# -- verification corpus ----------------------------------------------


def _sparse_paving_instances(n, k):
    """One connected sparse paving instance per reachable (lambda, mu)
    with at most three circuit hyperplanes."""
    if k < 2 or n - k < 2:
        return
    ground = range(n)
    subsets = list(combinations(ground, k))
    seen = {}

    def ok_pair(f, g):
        return len(set(f) & set(g)) <= k - 2

    def mu_of(chs):
        return sum(
            1 for i in range(len(chs)) for j in range(i + 1, len(chs))
            if len(set(chs[i]) & set(chs[j])) == k - 2
        )

    def emit(chs):
        sig = (len(chs), mu_of(chs))
        if sig in seen:
            return
        try:
            M = matroid.sparse_paving(n, k, chs)
        except CdxError:
            return
        if not matroid.is_connected_split(M):
            return
        seen[sig] = (chs, M)

    # the ground set is symmetric, so the first hyperplane can be fixed
    first = subsets[0]
    emit([first])
    for g in subsets:
        if g != first and ok_pair(first, g):
            emit([first, g])
    want3 = {(3, m) for m in range(4)}
    for g in subsets:
        if g == first or not ok_pair(first, g):
            continue
        for h in subsets:
            if h > g and h != first and ok_pair(first, h) and ok_pair(g, h):
                emit([first, g, h])
        if want3 <= set(seen):
            break
    for sig in sorted(seen):
        chs, M = seen[sig]
        yield ("sparse-%d-%d-l%d-m%d" % (k, n, sig[0], sig[1]), M)


def _rank2_instances(n):
    """Rank-2 matroids with 3..5 parallel classes, one per size multiset."""
    def parts(total, most, count):
        if count == 1:
            if total <= most:
                yield (total,)
            return
        for first in range(min(total - count + 1, most), 0, -1):
            for rest in parts(total - first, first, count - 1):
                yield (first,) + rest

    for c in range(3, 6):
        if c > n:
            continue
        for sizes in parts(n, n, c):
            if all(s == 1 for s in sizes):
                continue  # that is the uniform matroid again
            classes = []
            at = 0
            for s in sizes:
                classes.append(list(range(at, at + s)))
                at += s
            bases = [
                (x, y)
                for i in range(c) for j in range(i + 1, c)
                for x in classes[i] for y in classes[j]
            ]
            name = "rank2-%s" % "+".join(str(s) for s in sizes)
            yield (name, Matroid.from_bases(n, 2, bases, validate=False))


def corpus(max_n):
    """The named verification corpus of connected split matroids."""
    out = []
    for n in range(2, max_n + 1):
        for k in range(1, n):
            out.append(("hypersimplex-%d-%d" % (k, n), Matroid.uniform(k, n)))
    for n in range(3, max_n + 1):
        for k in range(1, n):
            for h in range(2, n):
                for r in range(1, min(k, h)):
                    try:
                        cuspidal.check_key(k, n, r, h)
                    except InvalidParams:
                        continue
                    out.append(
                        ("cuspidal-%d-%d-%d-%d" % (k, n, r, h),
                         cuspidal.cuspidal_matroid(k, n, r, h))
                    )
    for n in range(4, max_n + 1):
        for k in range(2, n - 1):
            out.extend(_sparse_paving_instances(n, k))
    for n in range(3, max_n + 1):
        out.extend(_rank2_instances(n))
    if max_n >= 5:
        out.append(("example-535", matroid.example_535()))
    return out


PAPER_VALUES = {
    "hypersimplex-2-5":
        "cccc + 8*ccd + 20*cdc + 8*dcc + 14*dd",
    "example-m1":
        "ccccccc + 16*cccccd + 110*ccccdc + 376*cccdcc + 456*cccdd"
        " + 633*ccdccc + 1550*ccdcd + 1834*ccddc + 460*cdcccc + 1768*cdccd"
        " + 3616*cdcdc + 2664*cddcc + 3664*cddd + 66*dccccc + 408*dcccd"
        " + 1300*dccdc + 1816*dcdcc + 2432*dcdd + 1034*ddccc + 2748*ddcd + 3428*dddc",
    "example-m2":
        "ccccccc + 16*cccccd + 110*ccccdc + 376*cccdcc + 456*cccdd"
        " + 634*ccdccc + 1552*ccdcd + 1836*ccddc + 460*cdcccc + 1768*cdccd"
        " + 3616*cdcdc + 2664*cddcc + 3664*cddd + 66*dccccc + 408*dcccd"
        " + 1300*dccdc + 1816*dcdcc + 2432*dcdd + 1036*ddccc + 2752*ddcd + 3432*dddc",
    "example-m3": None,  # filled below: equals example-m2
    "fano":
        "cccccc + 19*ccccd + 91*cccdc + 145*ccdcc + 221*ccdd + 98*cdccc"
        " + 364*cdcd + 490*cddc + 26*dcccc + 186*dccd + 462*dcdc + 298*ddcc + 482*ddd",
    "vamos":
        "ccccccc + 19*cccccd + 131*ccccdc + 415*cccdcc + 510*cccdd"
        " + 635*ccdccc + 1596*ccdcd + 1922*ccddc + 415*cdcccc + 1690*cdccd"
        " + 3580*cdcdc + 2670*cddcc + 3700*cddd + 63*dccccc + 432*dcccd"
        " + 1438*dccdc + 2020*dcdcc + 2720*dcdd + 1098*ddccc + 2984*ddcd + 3772*dddc",
}
PAPER_VALUES["example-m3"] = PAPER_VALUES["example-m2"]


def _verify_paper_values():
    jobs = []
    for name, text in PAPER_VALUES.items():
        want = NcPoly.from_text(text)
        if name == "hypersimplex-2-5":
            got = hypersimplex.cd_hypersimplex(2, 5)
        else:
            got = engine.cd_split_matroid(_FIXED_BUILTINS[name]())
        jobs.append((name, got, want))
    return jobs


def cmd_verify(args):
    if args.max_n > 8:
        raise InvalidParams("verify is oracle-bound; --max-n must be <= 8")
    if args.cache:
        store = CacheStore(args.cache)
        records, bad = store.verify()
        if bad:
            for kind, key, stored, fresh in bad:
                print("FAIL cache %s %r" % (kind, list(key)))
                print("  stored:     %s" % stored.text())
                print("  recomputed: %s" % fresh.text())
            print("cache verify: %d bad of %d records" % (len(bad), len(records)))
            return 1
        print("cache verify: %d records OK" % len(records))
        if args.cache_only:
            return 0

    if args.only == "paper-values":
        failures = 0
        for name, got, want in _verify_paper_values():
            if got == want:
                print("PASS %s" % name)
            else:
                failures += 1
                print("FAIL %s" % name)
                print("  formula:   %s" % got.text())
                print("  reference: %s" % want.text())
        print("paper-values: %d checked, %d failed" % (len(PAPER_VALUES), failures))
        return 1 if failures else 0

    items = corpus(args.max_n)
    if args.only:
        items = [(name, M) for name, M in items if name.startswith(args.only)]

    def one(item):
        name, M = item
        got = engine.cd_index(M)
        want = oracle.oracle_cd_index(M, max_n=args.max_n)
        return name, got, want

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(it) for it in items]
    failures = 0
    for name, got, want in results:
        if got == want:
            print("PASS %s" % name)
        else:
            failures += 1
            print("FAIL %s" % name)
            print("  formula: %s" % got.text())
            print("  oracle:  %s" % want.text())
    print("verify: %d checked, %d failed (max n = %d)"
          % (len(results), failures, args.max_n))
    return 1 if failures else 0


# -- entry point ------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cdx",
        description="Exact cd-index of matroid base polytopes "
                    "(split matroids by closed formula, anything small by oracle).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="compute the cd-index of one matroid")
    src = pc.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", help="uniform | hypersimplex | cuspidal | fano | "
                                       "vamos | mk4 | example-m1 | example-m2 | "
                                       "example-m3 | example-535")
    src.add_argument("--file", help="matroid JSON file (1-based elements)")
    pc.add_argument("--k", type=int, help="rank for parametrized builtins")
    pc.add_argument("--n", type=int, help="ground size for parametrized builtins")
    pc.add_argument("--r", type=int, help="flat rank for the cuspidal builtin")
    pc.add_argument("--h", type=int, help="flat size for the cuspidal builtin")
    pc.add_argument("--format", choices=("text", "json"), default="text")
    pc.add_argument("--flag-f", action="store_true", help="also print the flag f-vector")
    pc.add_argument("--f-vector", action="store_true", help="also print the f-vector")
    pc.add_argument("--cache", default=os.environ.get("CDX_CACHE") or None,
                    help="JSONL result cache (default: $CDX_CACHE)")
    pc.add_argument("--oracle-fallback", action="store_true",
                    help="allow brute force on small non-split components")
    pc.add_argument("--max-n", type=int, default=None,
                    help="refuse matroids with more elements than this")
    pc.set_defaults(func=cmd_compute)

    pv = sub.add_parser("verify", help="check the formulas against the brute-force oracle")
    pv.add_argument("--max-n", type=int, default=6,
                    help="corpus ground-set bound, at most 8 (default 6)")
    pv.add_argument("--only", default=None,
                    help="name prefix filter, or the literal 'paper-values'")
    pv.add_argument("--threads", type=int, default=1)
    pv.add_argument("--cache", default=os.environ.get("CDX_CACHE") or None)
    pv.add_argument("--cache-verify", dest="cache_only", action="store_true",
                    help="only spot-check the cache against recomputation")
    pv.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CdxError as exc:
        sys.stderr.write("error[%s]: %s\n" % (exc.code, exc))
        return EXIT_CODES.get(exc.code, 1)


if __name__ == "__main__":
    sys.exit(main())
