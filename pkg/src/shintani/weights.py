"""Splitting a weight vector over a set family.

Given sets ``S_1..S_m`` inside ``[n]`` and ``sigma >= 0``, find
``sigma = sum_j sigma_j`` with ``sigma_j >= 0`` and at least unit mass of
``sigma_j`` on ``S_j``.  This is possible iff every non-empty ``K`` satisfies
``sigma(union_{k in K} S_k) >= |K|`` (a Hall-type condition).  The strict
variant asks for ``> 1`` / ``> |K|`` and positive parts.

Two constructors are provided: :func:`decompose_graph` runs the induction
over ``m`` that redistributes mass along shortest paths of the intersection
graph, and :func:`decompose_flow` reads the parts off a maximum flow.
"""

from __future__ import annotations

import json
import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .errors import GraphProcedureError, InfeasibleInstance, InvalidInstance
from .flow import transport

log = logging.getLogger(__name__)

TOL = 1e-9
CUT_TOL = 1e-12
EXHAUSTIVE_LIMIT = 20


@dataclass(frozen=True)
class WeightInstance:
    """Sets are stored as sorted tuples of 0-based coordinates."""

    n: int
    sets: tuple
    sigma: tuple
    strict: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstance("n must be positive")
        if not self.sets:
            raise InvalidInstance("at least one set is required")
        for j, s in enumerate(self.sets):
            if not s:
                raise InvalidInstance(f"set {j + 1} is empty")
            if min(s) < 0 or max(s) >= self.n:
                raise InvalidInstance(f"set {j + 1} has coordinates outside [1, {self.n}]")
        if len(self.sigma) != self.n:
            raise InvalidInstance(f"sigma has {len(self.sigma)} entries, expected {self.n}")
        for i, x in enumerate(self.sigma):
            if not math.isfinite(x) or x < 0 or (self.strict and x <= 0):
                bound = "> 0" if self.strict else ">= 0"
                raise InvalidInstance(f"sigma_{i + 1} = {x!r} must be {bound}")

    @classmethod
    def create(cls, n: int, sets, sigma, strict: bool = False) -> "WeightInstance":
        return cls(n, tuple(tuple(sorted(set(s))) for s in sets), tuple(float(x) for x in sigma), strict)

    @classmethod
    def from_json(cls, obj: dict) -> "WeightInstance":
        """Instance JSON uses 1-based coordinates."""
        try:
            sets = [[int(i) - 1 for i in s] for s in obj["sets"]]
            return cls.create(int(obj["n"]), sets, obj["sigma"], bool(obj.get("strict", False)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInstance):
                raise
            raise InvalidInstance(f"malformed instance: {exc}") from None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sets": [[i + 1 for i in s] for s in self.sets],
            "sigma": list(self.sigma),
            "strict": self.strict,
        }

    @property
    def m(self) -> int:
        return len(self.sets)

    @cached_property
    def masks(self) -> tuple:
        return tuple(sum(1 << i for i in s) for s in self.sets)

    def union_weight(self, K) -> float:
        cover = set()
        for k in K:
            cover.update(self.sets[k])
        return math.fsum(self.sigma[i] for i in cover)

    def with_sigma(self, sigma, strict: bool | None = None) -> "WeightInstance":
        return WeightInstance(self.n, self.sets, tuple(sigma), self.strict if strict is None else strict)


def load_instance(path) -> WeightInstance:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InvalidInstance("instance must be a JSON object")
    return WeightInstance.from_json(obj)


@dataclass(frozen=True)
class Decomposition:
    parts: tuple

    def violations(self, inst: WeightInstance, tol: float = TOL) -> list:
        """Human-readable list of broken invariants (empty when valid)."""
        out = []
        if len(self.parts) != inst.m:
            return [f"expected {inst.m} parts, got {len(self.parts)}"]
        for i in range(inst.n):
            total = math.fsum(p[i] for p in self.parts)
            if abs(total - inst.sigma[i]) > tol:
                out.append(f"coordinate {i + 1}: parts sum to {total!r}, sigma is {inst.sigma[i]!r}")
        for j, (p, s) in enumerate(zip(self.parts, inst.sets)):
            if inst.strict:
                if any(x <= 0 for x in p):
                    out.append(f"part {j + 1} has a non-positive coordinate")
            elif any(x < 0 for x in p):
                out.append(f"part {j + 1} has a negative coordinate")
            mass = math.fsum(p[i] for i in s)
            if inst.strict and not mass > 1 + tol:
                out.append(f"part {j + 1} carries {mass!r} on its set, needs > 1")
            if not inst.strict and mass < 1 - tol:
                out.append(f"part {j + 1} carries {mass!r} on its set, needs >= 1")
        return out

    def is_valid(self, inst: WeightInstance, tol: float = TOL) -> bool:
        return not self.violations(inst, tol)

    def to_json(self) -> dict:
        return {"parts": [list(p) for p in self.parts]}


@dataclass(frozen=True)
class CharacteristicMatrix:
    """``entries[i][j] = 1`` iff coordinate ``i`` lies in ``S_j``."""

    entries: tuple

    def columns(self) -> list:
        return [tuple(i for i, row in enumerate(self.entries) if row[j]) for j in range(len(self.entries[0]))]


def characteristic_matrix(inst: WeightInstance) -> CharacteristicMatrix:
    return CharacteristicMatrix(
        tuple(tuple(1 if i in s else 0 for s in inst.sets) for i in range(inst.n))
    )


class IntersectionGraph:
    """Vertices ``0..m-1``; an edge joins two sets that share a coordinate.

    Edges can be cut; distances are recomputed on demand.
    """

    def __init__(self, sets: Sequence):
        self.sets = [frozenset(s) for s in sets]
        self.m = len(self.sets)
        self.adj = [set() for _ in range(self.m)]
        for a in range(self.m):
            for b in range(a + 1, self.m):
                if self.sets[a] & self.sets[b]:
                    self.adj[a].add(b)
                    self.adj[b].add(a)

    @property
    def edges(self) -> set:
        return {(a, b) for a in range(self.m) for b in self.adj[a] if a < b}

    def cut(self, a: int, b: int) -> None:
        self.adj[a].discard(b)
        self.adj[b].discard(a)

    def distances(self, target: int) -> list:
        dist = [math.inf] * self.m
        dist[target] = 0
        queue = deque([target])
        while queue:
            u = queue.popleft()
            for v in sorted(self.adj[u]):
                if dist[v] == math.inf:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def shortest_paths(self, start: int, dist: list) -> list:
        """All shortest paths ``start -> target``, in lexicographic order."""
        if dist[start] == math.inf:
            return []
        paths = []

        def walk(path):
            u = path[-1]
            if dist[u] == 0:
                paths.append(tuple(path))
                return
            for v in sorted(self.adj[u]):
                if dist[v] == dist[u] - 1:
                    walk(path + [v])

        walk([start])
        return paths


@dataclass(frozen=True)
class HallResult:
    feasible: bool
    violating: frozenset | None
    slack: float

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "violating_K": None if self.violating is None else sorted(k + 1 for k in self.violating),
            "slack": self.slack,
        }


def _hall_exhaustive(inst: WeightInstance):
    m = inst.m
    masks = inst.masks
    weight_cache: dict = {}
    union = [0] * (1 << m)
    best, best_K = math.inf, 0
    for K in range(1, 1 << m):
        low = K & -K
        u = union[K ^ low] | masks[low.bit_length() - 1]
        union[K] = u
        w = weight_cache.get(u)
        if w is None:
            w = math.fsum(inst.sigma[i] for i in range(inst.n) if u >> i & 1)
            weight_cache[u] = w
        slack = w - bin(K).count("1")
        if slack < best:
            best, best_K = slack, K
    return best, frozenset(k for k in range(m) if best_K >> k & 1)


def _hall_mincut(inst: WeightInstance):
    """Minimum Hall slack over non-empty ``K`` via one min cut per forced set.

    A cut with set side ``K`` costs ``(m - |K|) + sigma(N(K))``; forcing ``k``
    into ``K`` and subtracting ``m`` gives the least slack over ``K`` containing ``k``.
    """
    best, best_K = math.inf, frozenset()
    for k in range(inst.m):
        res = transport(inst.sets, inst.sigma, forced=[k])
        slack = res.value - inst.m
        if slack < best:
            best, best_K = slack, res.cut_sets
    return best, best_K


def check_hall_condition(inst: WeightInstance, mode: str = "auto") -> HallResult:
    """``mode`` is ``"exhaustive"`` (all ``2^m - 1`` subsets), ``"mincut"`` or ``"auto"``."""
    if mode == "auto":
        mode = "exhaustive" if inst.m <= EXHAUSTIVE_LIMIT else "mincut"
    if mode == "exhaustive":
        slack, K = _hall_exhaustive(inst)
    elif mode == "mincut":
        slack, K = _hall_mincut(inst)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    feasible = slack > TOL if inst.strict else slack >= -TOL
    return HallResult(feasible, None if feasible else K, slack)


# -- constructors -------------------------------------------------------------

def _require_feasible(inst: WeightInstance) -> HallResult:
    hall = check_hall_condition(inst)
    if not hall.feasible:
        raise InfeasibleInstance(hall.violating, hall.slack)
    return hall


def _strictly(inst: WeightInstance, hall: HallResult, nonstrict) -> Decomposition:
    """Shrink sigma by a small uniform ``lam``, split it non-strictly, give back ``lam/m`` to every part."""
    delta = hall.slack / 2
    lam = min(delta / (2 * inst.n), min(inst.sigma) / 2)
    shrunk = inst.with_sigma([x - lam for x in inst.sigma], strict=False)
    base = nonstrict(shrunk)
    share = lam / inst.m
    return Decomposition(tuple(tuple(x + share for x in p) for p in base.parts))


def decompose_flow(inst: WeightInstance) -> Decomposition:
    hall = _require_feasible(inst)
    if inst.strict:
        return _strictly(inst, hall, _flow_nonstrict)
    return _flow_nonstrict(inst)


def _flow_nonstrict(inst: WeightInstance) -> Decomposition:
    res = transport(inst.sets, inst.sigma)
    if res.value < inst.m - TOL:
        slack, K = _hall_mincut(inst)
        raise InfeasibleInstance(K, slack)
    parts = [list(row) for row in res.shipment]
    for i in range(inst.n):
        used = math.fsum(p[i] for p in parts)
        parts[-1][i] += max(inst.sigma[i] - used, 0.0)
    return Decomposition(tuple(tuple(p) for p in parts))


def decompose_graph(inst: WeightInstance, debug: bool = False) -> Decomposition:
    """Induction over the sets, redistributing along the intersection graph.

    With ``debug`` every transfer re-checks that the parts still sum to sigma.
    """
    hall = _require_feasible(inst)
    if inst.strict:
        return _strictly(inst, hall, lambda sub: _graph_nonstrict(sub, debug))
    return _graph_nonstrict(inst, debug)


def _graph_nonstrict(inst: WeightInstance, debug: bool = False) -> Decomposition:
    parts = [list(inst.sigma)]
    for last in range(1, inst.m):
        parts.append([0.0] * inst.n)
        _GraphRound(inst.sets[: last + 1], parts, inst.sigma if debug else None).run()
        mass = math.fsum(parts[last][i] for i in inst.sets[last])
        if mass < 1 - TOL:
            raise GraphProcedureError(
                f"set {last + 1} ends with mass {mass!r} although the Hall-type condition holds"
            )
    return Decomposition(tuple(tuple(p) for p in parts))


class _GraphRound:
    """One inductive step: the last set starts empty and is fed along shortest paths."""

    def __init__(self, sets: Sequence, parts: list, check_sigma=None):
        self.sets = [tuple(s) for s in sets]
        self.setlike = [frozenset(s) for s in sets]
        self.parts = parts
        self.target = len(sets) - 1
        self.graph = IntersectionGraph(sets)
        self.check_sigma = check_sigma
        m, n = len(sets), len(parts[0])
        self.budget = m * (len(self.graph.edges) + 1) * n
        self.visits = 0
        self.completed = False

    def excess(self, v: int) -> float:
        return math.fsum(self.parts[v][i] for i in self.sets[v]) - 1.0

    def closer_mass(self, v: int, dist: list) -> float:
        """Mass of ``v`` on coordinates shared with some set one step closer to the target."""
        d = dist[v] - 1
        closer = set()
        for u in range(len(self.sets)):
            if dist[u] == d:
                closer |= self.setlike[u]
        return math.fsum(self.parts[v][i] for i in self.sets[v] if i in closer)

    def transfer(self, src: int, dst: int) -> None:
        shared = sorted(self.setlike[src] & self.setlike[dst])
        avail = math.fsum(self.parts[src][i] for i in shared)
        amount = min(self.excess(src), avail)
        if amount <= 0:
            return
        # smallest coordinates first, each capped at what src holds there
        self._move(src, dst, shared, amount)

    def _check_conservation(self) -> None:
        for i, x in enumerate(self.check_sigma):
            total = math.fsum(p[i] for p in self.parts)
            if abs(total - x) > TOL:
                raise GraphProcedureError(f"coordinate {i + 1} drifted to {total!r} (sigma {x!r})")

    def run(self) -> None:
        self._shortest_path_pass()
        self._sweep()
        if self.target_mass() < 1 - TOL:
            log.debug("shortest-path pass left set %d at %r; completing", self.target + 1, self.target_mass())
            self.completed = True
            self._augment()

    def target_mass(self) -> float:
        t = self.target
        return math.fsum(self.parts[t][i] for i in self.sets[t])

    def _shortest_path_pass(self) -> None:
        target = self.target
        dist = self.graph.distances(target)
        alpha = 1
        done: set = set()
        while True:
            finite = [d for v, d in enumerate(dist) if v != target and d != math.inf]
            if not finite or alpha > max(finite):
                break
            todo = [v for v in range(len(self.sets)) if dist[v] == alpha and v not in done]
            if not todo:
                alpha += 1
                done = set()
                continue
            self.visits += 1
            if self.visits > self.budget:
                raise GraphProcedureError(f"redistribution exceeded {self.budget} vertex visits")
            j = todo[0]
            if self._process_vertex(j, dist):
                dist = self.graph.distances(target)
            else:
                done.add(j)

    def _process_vertex(self, j: int, dist: list) -> bool:
        """Push along every shortest path from ``j``; return True when an edge was cut."""
        for path in self.graph.shortest_paths(j, dist):
            for a, b in zip(path, path[1:]):
                self.transfer(a, b)
            # walk back from the hop next to the target; cut where the sender ran dry
            for beta in range(len(path) - 2, -1, -1):
                v = path[beta]
                if self.closer_mass(v, dist) <= CUT_TOL:
                    self.graph.cut(v, path[beta + 1])
                    return True
        return False

    def _sweep(self) -> None:
        """Hand every part's mass outside its own set to the target."""
        last = self.parts[self.target]
        for v in range(self.target):
            own = self.setlike[v]
            for i in range(len(last)):
                if i not in own and self.parts[v][i] != 0.0:
                    last[i] += self.parts[v][i]
                    self.parts[v][i] = 0.0

    def _holding(self, v: int, coords) -> float:
        return math.fsum(self.parts[v][i] for i in coords)

    def _augment(self) -> None:
        """Augmenting paths on the full intersection graph until the target is served.

        A hop ``u -> v`` moves mass ``u`` holds on ``S_u & S_v``.  Paths start at a
        set with excess, or at the target itself giving away mass it holds
        outside ``S_t`` on coordinates of another set.  Runs after the sweep, so
        every other part lives on its own set.
        """
        t = self.target
        m = len(self.sets)
        full = IntersectionGraph(self.sets)
        own_t = self.setlike[t]
        for _ in range(self.budget * 4 + 16):
            need = 1.0 - self.target_mass()
            if need <= TOL:
                return
            # BFS forward from the sources toward the target
            parent = {}
            queue = deque()
            for v in range(m):
                if v != t and self.excess(v) > CUT_TOL:
                    parent[v] = None
                    queue.append(v)
            for v in sorted(full.adj[t]):
                spare = [i for i in self.sets[v] if i not in own_t]
                if v not in parent and self._holding(t, spare) > CUT_TOL:
                    parent[v] = "t"
                    queue.append(v)
            end = None
            while queue and end is None:
                u = queue.popleft()
                for v in sorted(full.adj[u]):
                    shared = self.setlike[u] & self.setlike[v]
                    if self._holding(u, shared) <= CUT_TOL:
                        continue
                    if v == t:
                        end = u
                        break
                    if v not in parent:
                        parent[v] = u
                        queue.append(v)
            if end is None:
                raise GraphProcedureError(
                    f"no augmenting path while set {t + 1} still needs {need!r}"
                )
            path = [end]
            while parent[path[-1]] not in (None, "t"):
                path.append(parent[path[-1]])
            path.reverse()
            from_target = parent[path[0]] == "t"
            hops = list(zip(path, path[1:])) + [(end, t)]
            push = need
            if from_target:
                spare = [i for i in self.sets[path[0]] if i not in own_t]
                push = min(push, self._holding(t, spare))
            else:
                push = min(push, self.excess(path[0]))
            for u, v in hops:
                push = min(push, self._holding(u, self.setlike[u] & self.setlike[v]))
            if from_target:
                spare = sorted(i for i in self.sets[path[0]] if i not in own_t)
                self._move(t, path[0], spare, push)
            for u, v in hops:
                self._move(u, v, sorted(self.setlike[u] & self.setlike[v]), push)
        raise GraphProcedureError("augmenting stage did not terminate within its budget")

    def _move(self, src: int, dst: int, coords, amount: float) -> None:
        for i in coords:
            if amount <= 0:
                break
            take = min(amount, self.parts[src][i])
            self.parts[src][i] -= take
            self.parts[dst][i] += take
            amount -= take
        if self.check_sigma is not None:
            self._check_conservation()
