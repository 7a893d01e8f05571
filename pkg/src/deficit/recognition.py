"""Three-sphere recognition for small triangulations.

"no" is only returned when an invariant obstructs S^3 (a vertex link that is
not a sphere, non-orientability, or nontrivial first homology).  "yes" is only
returned when Pachner moves connect the triangulation to the boundary of the
4-simplex, either directly or through triangulations already proven to be
S^3 by the same recognizer.  Everything else is "unknown".
"""
import heapq
import os
from dataclasses import dataclass

from .errors import TriangulationError
from .homology import first_homology, is_orientable
from .isosig import isomorphism_signature
from .moves import neighbours
from .triangulation import LENIENT, boundary_4simplex, validate

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

DEFAULT_BUDGET = 100_000
BUDGET_ENV = "DEFICIT_MAX_RECOGNITION_BUDGET"

_DOWN = ("3-2", "4-1")


def default_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            value = int(float(raw))
        except ValueError:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{BUDGET_ENV} must be positive")
        return value
    return DEFAULT_BUDGET


@dataclass
class Recognition:
    verdict: str
    reason: str
    states: int = 0


class SphereRecognizer:
    """Stateful recognizer that remembers every triangulation it has proven
    to be S^3, so later searches can stop as soon as they meet one.

    Results depend on what was recognised before; callers that need
    reproducible output must feed triangulations in a fixed order.
    """

    def __init__(self, budget=None, slack=3):
        self.budget = default_budget() if budget is None else int(budget)
        self.slack = slack
        self.target = isomorphism_signature(boundary_4simplex())
        self.known = {self.target}

    def obstruction(self, T):
        try:
            validate(T, LENIENT)
        except TriangulationError as exc:
            return f"not a closed 3-manifold: {exc}"
        if not is_orientable(T):
            return "non-orientable"
        betti, torsion = first_homology(T)
        if betti or torsion:
            return f"first homology is nontrivial (rank {betti}, torsion {torsion})"
        return None

    def recognize(self, T, signature=None):
        reason = self.obstruction(T)
        if reason is not None:
            return Recognition(NO, reason)
        sig = signature or isomorphism_signature(T)
        if sig in self.known:
            return Recognition(YES, "known S^3", 1)

        seen = {sig: T}
        # greedy descent through size-reducing moves
        cur = T
        while True:
            step = None
            for _, _, U in neighbours(cur, _DOWN):
                s = isomorphism_signature(U)
                if s in seen:
                    continue
                seen[s] = U
                if s in self.known:
                    return self._success(seen, "greedy simplification")
                step = U
                break
            if step is None or len(seen) >= self.budget:
                break
            cur = step

        # best-first search, smallest triangulations first
        cap = max(T.size, 5) + self.slack
        heap = [(U.size, -U.skeleton.n0, s) for s, U in seen.items()]
        heapq.heapify(heap)
        expanded = set()
        while heap and len(seen) < self.budget:
            _, _, s = heapq.heappop(heap)
            if s in expanded:
                continue
            expanded.add(s)
            for _, _, U in neighbours(seen[s]):
                if U.size > cap:
                    continue
                su = isomorphism_signature(U)
                if su in seen:
                    continue
                seen[su] = U
                if su in self.known:
                    return self._success(seen, "Pachner search")
                heapq.heappush(heap, (U.size, -U.skeleton.n0, su))
                if len(seen) >= self.budget:
                    break
        if not heap:
            return Recognition(UNKNOWN, f"move graph exhausted below {cap} tetrahedra", len(seen))
        return Recognition(UNKNOWN, f"budget of {self.budget} states exhausted", len(seen))

    def _success(self, seen, how):
        self.known.update(seen)
        return Recognition(YES, how, len(seen))


def recognize_s3(T, budget=None):
    """Return "yes", "no" or "unknown" for a single triangulation."""
    return SphereRecognizer(budget=budget).recognize(T).verdict
