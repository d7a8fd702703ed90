"""Resumable, deterministic searches over Diophantine triples.

Each search is split into outer units (a pair, an index i, an odd k). Units
are processed in order-preserving batches, optionally across a process pool,
and a checkpoint is written atomically after every batch. Hits therefore
come out in the same order whatever the worker count.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache, partial
from math import isqrt
from pathlib import Path
from typing import Callable, Optional, Sequence

from .arith import DomainError, divisors, factorize, is_square, merge_factorizations
from .curve import (
    add, double, induced_curve, inf1_triple, is_integral, named_points, negate,
)
from .dnset import Triple, spectrum, spectrum_from_factorization
from .families import family_k

__all__ = [
    "CHECKPOINT_VERSION",
    "CheckpointMismatch",
    "SearchInterrupted",
    "SearchReport",
    "diophantine_triples",
    "enum_pairs",
    "extend_pair",
    "search_family_k",
    "search_fourth_n",
    "search_s2p",
]

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1


class CheckpointMismatch(RuntimeError):
    """Checkpoint belongs to a different search or parameter set."""


class SearchInterrupted(RuntimeError):
    """Raised after a KeyboardInterrupt once the checkpoint has been flushed."""

    def __init__(self, report: "SearchReport"):
        super().__init__(f"{report.search_id} interrupted at cursor {report.cursor}")
        self.report = report


@dataclass
class SearchReport:
    search_id: str
    params: dict
    hits: list = field(default_factory=list)
    counters: dict = field(default_factory=dict)
    cursor: int = 0
    total_units: int = 0

    @property
    def complete(self) -> bool:
        return self.cursor >= self.total_units

    def params_hash(self) -> str:
        return params_hash(self.search_id, self.params)


def params_hash(search_id: str, params: dict) -> str:
    blob = json.dumps({"search_id": search_id, "params": params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


# -- enumeration ------------------------------------------------------------

def enum_pairs(a_max: int, b_max: int) -> list[tuple[int, int]]:
    """All (a, b) with 1 <= a < b, a <= a_max, b <= b_max and ab + 1 square.

    Walks t with ab = t^2 - 1 = (t-1)(t+1) and splits over divisors.
    """
    if a_max < 1 or b_max < 1:
        raise DomainError("bounds must be >= 1")
    out = []
    for t in range(2, isqrt(a_max * b_max + 1) + 1):
        f = merge_factorizations(factorize(t - 1), factorize(t + 1)) if t > 2 else factorize(3)
        m = t * t - 1
        for a in divisors(f):
            b = m // a
            if a >= b:
                break
            if a <= a_max and b <= b_max:
                out.append((a, b))
    out.sort()
    return out


@lru_cache(maxsize=4096)
def _unit_roots(m: int) -> tuple[int, ...]:
    """Residues s mod m with s^2 = 1 (mod m)."""
    return tuple(s for s in range(m) if (s * s - 1) % m == 0)


def extend_pair(a: int, b: int, c_max: int) -> list[int]:
    """All c with b < c <= c_max and {a, b, c} a Diophantine triple.

    Iterates roots s of bc + 1 = s^2 restricted to s^2 = 1 (mod b), so only
    integral c are visited, then tests ac + 1.
    """
    if is_square(a * b + 1) is None:
        raise DomainError(f"{a}*{b}+1 is not a square")
    if b < a:
        a, b = b, a
    lo_val = b * (b + 1) + 1
    lo = isqrt(lo_val)
    if lo * lo < lo_val:
        lo += 1
    hi = isqrt(b * c_max + 1)
    roots = _unit_roots(b)
    out = []
    for base in range(lo - lo % b, hi + 1, b):
        for r in roots:
            s = base + r
            if lo <= s <= hi:
                c = (s * s - 1) // b
                if is_square(a * c + 1) is not None:
                    out.append(c)
    out.sort()
    return out


def diophantine_triples(c_max: int) -> list[Triple]:
    """Every positive Diophantine triple with largest element <= c_max, sorted."""
    nbrs: dict[int, set[int]] = {}
    for a, b in enum_pairs(c_max, c_max):
        nbrs.setdefault(a, set()).add(b)
    out = []
    for a in sorted(nbrs):
        for b in sorted(nbrs[a]):
            for c in sorted(nbrs[a] & nbrs.get(b, set())):
                out.append(Triple(a, b, c))
    return out


# -- unit workers (top level so they pickle) --------------------------------

_S2P_POINTS = ("S+2P", "S-2P", "4P")


def _s2p_unit(pair, c_max: int, require_2p_integral: bool):
    a, b = pair
    hits = []
    cs = extend_pair(a, b, c_max)
    for c in cs:
        if require_2p_integral and (a + b + c) % 2:
            continue
        t = Triple(a, b, c)
        spec = induced_curve(t)
        pts = named_points(t)
        p2 = double(spec, pts.P)
        cands = (add(spec, pts.S, p2), add(spec, pts.S, negate(p2)), double(spec, p2))
        for name, pt in zip(_S2P_POINTS, cands):
            if is_integral(pt):
                hits.append({"triple": [a, b, c], "point": name,
                             "x": int(pt.x), "y": int(pt.y)})
    return hits, {"pairs": 1, "triples": len(cs)}


def _fourth_n_unit(i: int):
    t = inf1_triple(i)
    # N = b(c - a), pre-split into small polynomial factors
    parts = (4, 4 * i * i + 9 * i + 3, 4 * i * i + 7 * i + 2, i + 2, i + 1)
    nfac = merge_factorizations(*(factorize(p) for p in parts))
    spec_n = spectrum_from_factorization(t, nfac)
    ns = [e.n for e in spec_n]
    hits = []
    if len(ns) > 3:
        base = {1, t.a + t.b + t.c, (t.a + t.b + t.c) ** 2 // 4 - t.a * t.b - t.a * t.c - t.b * t.c}
        hits.append({"i": i, "triple": list(t), "n_values": ns,
                     "extra_n": [n for n in ns if n not in base]})
    return hits, {"triples": 1}


def _family_k_unit(k: int, min_spectrum: int):
    hits = []
    for branch, t in zip((-1, 1), family_k(k)):
        ns = [e.n for e in spectrum(t)]
        if len(ns) >= min_spectrum:
            hits.append({"k": k, "branch": branch, "triple": list(t), "n_values": ns})
    return hits, {"triples": 2}


# -- driver -----------------------------------------------------------------

def _write_checkpoint(path: Path, report: SearchReport) -> None:
    payload = {
        "version": CHECKPOINT_VERSION,
        "search_id": report.search_id,
        "params_hash": report.params_hash(),
        "params": report.params,
        "cursor": report.cursor,
        "counters": report.counters,
        "hits": report.hits,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def load_checkpoint(path: Path, search_id: str, params: dict) -> Optional[SearchReport]:
    path = Path(path)
    if not path.exists():
        return None
    with open(path) as fh:
        data = json.load(fh)
    if data.get("version") != CHECKPOINT_VERSION:
        raise CheckpointMismatch(f"unsupported checkpoint version {data.get('version')}")
    if data.get("search_id") != search_id or data.get("params_hash") != params_hash(search_id, params):
        raise CheckpointMismatch(f"{path} was written for different search parameters")
    return SearchReport(search_id, params, data["hits"], data["counters"], data["cursor"])


def default_workers() -> int:
    return max(1, int(os.environ.get("DIOPHLAB_WORKERS", "1")))


def _run(search_id: str, params: dict, units: Sequence, fn: Callable, *,
         workers: Optional[int] = None, checkpoint=None, stop_after: Optional[int] = None,
         batch: Optional[int] = None) -> SearchReport:
    workers = workers or default_workers()
    report = None
    if checkpoint is not None:
        checkpoint = Path(checkpoint)
        report = load_checkpoint(checkpoint, search_id, params)
    if report is None:
        report = SearchReport(search_id, params)
    report.total_units = len(units)
    batch = batch or max(16, 8 * workers)
    end = len(units) if stop_after is None else min(len(units), report.cursor + stop_after)

    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    mapper = (lambda f, xs: pool.map(f, xs, chunksize=max(1, len(xs) // (4 * workers)))) if pool else map
    try:
        while report.cursor < end:
            chunk = units[report.cursor: min(end, report.cursor + batch)]
            for hits, counts in mapper(fn, chunk):
                report.hits.extend(hits)
                for k, v in counts.items():
                    report.counters[k] = report.counters.get(k, 0) + v
            report.cursor += len(chunk)
            if checkpoint is not None:
                _write_checkpoint(checkpoint, report)
    except KeyboardInterrupt:
        # the partially processed batch is discarded; cursor still marks a clean prefix
        if checkpoint is not None:
            _write_checkpoint(checkpoint, report)
        raise SearchInterrupted(report) from None
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    return report


def search_s2p(a_max: int, b_max: int, c_max: int, *, require_2p_integral: bool = True,
               **run_opts) -> SearchReport:
    """Integral S+2P, S-2P and 4P over Diophantine triples a < b < c in range.

    With ``require_2p_integral`` (the default) only triples with a+b+c even
    are examined, i.e. those where 2P is itself integral so that an integral
    S+2P yields a second n beyond x(2P).
    """
    if min(a_max, b_max, c_max) < 1:
        raise DomainError("bounds must be >= 1")
    params = {"a_max": a_max, "b_max": b_max, "c_max": c_max,
              "require_2p_integral": require_2p_integral}
    units = enum_pairs(a_max, b_max)
    fn = partial(_s2p_unit, c_max=c_max, require_2p_integral=require_2p_integral)
    report = _run("s2p", params, units, fn, **run_opts)
    report.hits.sort(key=lambda h: (h["triple"], _S2P_POINTS.index(h["point"])))
    return report


def search_fourth_n(i_max: int, **run_opts) -> SearchReport:
    """First-family triples whose spectrum has a fourth n."""
    if i_max < 1:
        raise DomainError("i_max must be >= 1")
    return _run("fourth-n", {"i_max": i_max}, list(range(1, i_max + 1)), _fourth_n_unit, **run_opts)


def search_family_k(k_max: int, min_spectrum: int = 4, **run_opts) -> SearchReport:
    """Spectra of {k +/- 1, 4k, 16k^3 - 4k}, odd 3 <= k <= k_max."""
    if k_max < 3:
        raise DomainError("k_max must be >= 3")
    params = {"k_max": k_max, "min_spectrum": min_spectrum}
    fn = partial(_family_k_unit, min_spectrum=min_spectrum)
    return _run("family-k", params, list(range(3, k_max + 1, 2)), fn, **run_opts)
