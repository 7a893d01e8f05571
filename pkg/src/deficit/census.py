"""Exhaustive census of small triangulations of the 3-sphere.

Generation is orderly: the search only extends partial gluing tables that
are already minimal among their relabellings, so every isomorphism class is
produced once.  The top of the search tree can be split across worker
processes; results are merged as a sorted list of signatures, so the output
does not depend on how the work was divided.
"""
import json
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .action import INV_MU_STAR, normalized_action, tet_volume
from .errors import BudgetExceeded, TriangulationError, UndefinedRatio
from .isosig import codes_to_signature, codes_to_triangulation, isomorphism_signature
from .recognition import NO, YES, SphereRecognizer
from .spectrum import WALKUP_BOUND, check_target
from .triangulation import LENIENT, MODES, STRICT, validate

DEFAULT_MAX_K = 6
MANIFOLD = "S3"


@dataclass
class CensusResult:
    K: int
    mode: str
    triangulations: list
    signatures: list
    unknown: list = field(default_factory=list)
    rejected: int = 0
    candidates: int = 0

    def __len__(self):
        return len(self.signatures)


@dataclass(frozen=True)
class DegeneracyHistogram:
    K: int
    mode: str
    counts: dict
    unknown: int = 0

    @property
    def total(self):
        return sum(self.counts.values())

    def count(self, n1):
        return self.counts.get(n1, 0)


@dataclass(frozen=True)
class EntropyPoint:
    K: int
    n1: int
    mu: Fraction
    action_per_volume: float
    count: int
    entropy_per_volume: float


@dataclass(frozen=True)
class CEstimate:
    """Ratio of counts at the two census levels around an action value."""
    ratio: float
    x: float
    K: int
    mode: str
    upper_n1: int
    lower_n1: int
    upper_count: int
    lower_count: int
    status: str = "empirical estimate at finite K; the K -> infinity limit is conjectural"


# ---------------------------------------------------------------------------
# generation


def check_K(K, max_K, allow_large):
    if K < 1:
        raise ValueError("K must be at least 1")
    if K > max_K and not allow_large:
        raise ValueError(f"K={K} exceeds the configured ceiling {max_K}; pass allow_large to go further")


def _root_state(K):
    n = 4 * K
    empty = -np.ones(n, dtype=np.int64)
    orient = np.zeros(K, dtype=np.int64)
    orient[0] = 1
    return empty, empty.copy(), empty.copy(), orient


def _search_rows(K, strict, rows):
    n = 4 * K
    out = []
    for row in rows:
        gt = np.ascontiguousarray(row[:n])
        gf = np.ascontiguousarray(row[n:2 * n])
        gp = np.ascontiguousarray(row[2 * n:3 * n])
        orient = np.ascontiguousarray(row[3 * n:3 * n + K])
        ntets = int(row[3 * n + K])
        leaves = _kernels.census_search(K, strict, True, gt, gf, gp, orient, ntets, 0)[0]
        out.append(leaves)
    if not out:
        return np.empty((0, n), dtype=np.int64)
    return np.concatenate(out)


def generate(K, mode=LENIENT, jobs=1, split_depth=None):
    """Canonical code rows of all closed orientable gluing tables with K
    tetrahedra that pass the local checks of ``mode``.

    Rows are returned in lexicographic order of their signatures.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    strict = mode == STRICT
    gt, gf, gp, orient = _root_state(K)
    jobs = max(1, int(jobs))
    if jobs == 1:
        leaves = _kernels.census_search(K, strict, True, gt, gf, gp, orient, 1, 0)[0]
    else:
        depth = split_depth or min(2 * K, 3)
        shallow, _, frontier, nf, _ = _kernels.census_search(K, strict, True, gt, gf, gp, orient, 1, depth)
        parts = [shallow]
        if nf:
            chunks = [frontier[i::jobs * 4] for i in range(min(nf, jobs * 4))]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts.extend(pool.map(_search_rows, [K] * len(chunks), [strict] * len(chunks), chunks))
        leaves = np.concatenate(parts) if parts else np.empty((0, 4 * K), dtype=np.int64)
    order = sorted(range(len(leaves)), key=lambda i: _row_key(leaves[i], K))
    return leaves[order] if len(order) else leaves


def _row_key(row, K):
    return codes_to_signature(row, K)


def enumerate(K, mode=LENIENT, jobs=1, recognizer=None, on_unknown="report",
              max_K=DEFAULT_MAX_K, allow_large=False):
    """One representative per isomorphism class of triangulated S^3 with K
    tetrahedra, valid in ``mode``.

    Triangulations whose recognition stays inconclusive are listed in
    ``result.unknown`` and excluded from the count; with ``on_unknown="raise"``
    they raise :class:`BudgetExceeded` instead.
    """
    check_K(K, max_K, allow_large)
    rows = generate(K, mode, jobs)
    rec = recognizer or SphereRecognizer()
    tris, sigs, unknown = [], [], []
    rejected = 0
    seen = set()
    for row in rows:
        T = codes_to_triangulation(row, K, mode=LENIENT)
        sig = isomorphism_signature(T)
        if sig in seen:
            raise RuntimeError(f"generator produced {sig} twice")
        seen.add(sig)
        try:
            validate(T, mode)
        except TriangulationError:
            rejected += 1
            continue
        verdict = rec.recognize(T, sig).verdict
        if verdict == YES:
            tris.append(codes_to_triangulation(row, K, mode=mode))
            sigs.append(sig)
        elif verdict == NO:
            rejected += 1
        else:
            unknown.append(sig)
    if unknown and on_unknown == "raise":
        raise BudgetExceeded(f"{len(unknown)} triangulations with K={K} could not be recognised: {unknown[:3]}")
    return CensusResult(K, mode, tris, sigs, unknown, rejected, len(rows))


def enumerate_range(max_K, mode=LENIENT, jobs=1, **kw):
    """Censuses for K = 1..max_K sharing one recognizer (smaller K first)."""
    rec = kw.pop("recognizer", None) or SphereRecognizer()
    return [enumerate(K, mode, jobs, recognizer=rec, **kw) for K in range(1, max_K + 1)]


# ---------------------------------------------------------------------------
# analytics


def histogram(census):
    counts = Counter(T.skeleton.n1 for T in census.triangulations)
    return DegeneracyHistogram(census.K, census.mode, dict(sorted(counts.items())), len(census.unknown))


def walkup_consistent(n0, n1, gamma_star=WALKUP_BOUND):
    return 4 * n0 + gamma_star <= n1 <= n0 * (n0 - 1) // 2


def entropy_curve(histograms, edge_length=1.0):
    vol = tet_volume(edge_length)
    out = []
    for h in histograms:
        for n1, count in sorted(h.counts.items()):
            if count < 1:
                continue
            mu = Fraction(6 * h.K, n1)
            out.append(EntropyPoint(h.K, n1, mu, normalized_action(mu, edge_length), count,
                                    math.log(count) / (vol * h.K)))
    return out


def census_levels(x, K, edge_length=1.0):
    """Adjacent edge counts (lower, upper) whose actions enclose x at K.

    Unlike :func:`deficit.spectrum.bracket` this ignores the guaranteed
    window; whether the levels are populated is up to the census.
    """
    check_target(x, edge_length)
    guess = 6 * K * (x * tet_volume(edge_length) / (0.75 * edge_length) + INV_MU_STAR)
    n = max(1, math.ceil(guess) - 2)
    while normalized_action(Fraction(6 * K, n), edge_length) < x:
        n += 1
    upper = n
    if upper - 1 >= 1 and normalized_action(Fraction(6 * K, upper - 1), edge_length) <= x:
        return upper - 1, upper
    return upper, upper + 1


def estimate_C(hist, x, edge_length=1.0):
    lower, upper = census_levels(x, hist.K, edge_length)
    up, lo = hist.count(upper), hist.count(lower)
    if up == 0 or lo == 0:
        raise UndefinedRatio(
            f"K={hist.K}: counts at n1={upper} and n1={lower} are {up} and {lo}", up, lo)
    return CEstimate(up / lo, x, hist.K, hist.mode, upper, lower, up, lo)


def spearman(xs, ys):
    """Spearman rank correlation with average ranks; nan if either side is constant."""
    from scipy.stats import spearmanr
    if len(xs) < 2 or len(set(xs)) < 2 or len(set(ys)) < 2:
        return float("nan")
    return float(spearmanr(xs, ys).statistic)


# ---------------------------------------------------------------------------
# persistence


def _stem(K, mode):
    return f"K{K}.{mode}"


def _fmt(x):
    return format(x, ".17g")


def sidecar(census):
    h = histogram(census)
    return {
        "K": census.K,
        "mode": census.mode,
        "manifold": MANIFOLD,
        "total": len(census),
        "counts": {str(k): v for k, v in h.counts.items()},
        "unknown": len(census.unknown),
        "unknown_signatures": list(census.unknown),
        "rejected": census.rejected,
        "candidates": census.candidates,
        "tool_version": __version__,
    }


def write_census(census, out_dir):
    """Write ``K<k>.<mode>.sig`` and its JSON sidecar; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    sig_path = out / (_stem(census.K, census.mode) + ".sig")
    json_path = out / (_stem(census.K, census.mode) + ".json")
    with open(sig_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(s + "\n" for s in census.signatures)
    with open(json_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(sidecar(census), fh, indent=2, sort_keys=True)
        fh.write("\n")
    return sig_path, json_path


def read_signatures(path):
    with open(path, encoding="utf-8") as fh:
        return [line.strip() for line in fh if line.strip()]


def read_histograms(census_dir, mode=None):
    """Histograms from every sidecar in a census directory, sorted by (mode, K)."""
    out = []
    for path in sorted(Path(census_dir).glob("K*.json")):
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if "counts" not in data or (mode and data["mode"] != mode):
            continue
        counts = {int(k): int(v) for k, v in data["counts"].items()}
        out.append(DegeneracyHistogram(int(data["K"]), data["mode"], dict(sorted(counts.items())),
                                       int(data.get("unknown", 0))))
    return sorted(out, key=lambda h: (h.mode, h.K))


ENTROPY_COLUMNS = ("K", "n1", "mu", "action_per_volume", "count", "entropy_per_volume")


def entropy_csv(points, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(ENTROPY_COLUMNS))
    for p in points:
        lines.append(",".join([str(p.K), str(p.n1), _fmt(float(p.mu)), _fmt(p.action_per_volume),
                               str(p.count), _fmt(p.entropy_per_volume)]))
    return "\n".join(lines) + "\n"


def default_jobs():
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
