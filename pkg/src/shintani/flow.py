"""Max-flow on the transportation network of a set family.

The network has a source feeding every set ``j`` with supply ``supplies[j]``,
an uncapacitated arc ``j -> i`` for each coordinate ``i`` in ``S_j``, and an
arc ``i -> sink`` of capacity ``sigma_i``.  A flow of value ``sum(supplies)``
is exactly a splitting of sigma into per-set pieces of mass ``supplies[j]``
carried on ``S_j``.

Shortest augmenting paths (Edmonds-Karp) specialised to this bipartite shape:
a path alternates set -> coordinate (always residual, the arc is uncapacitated)
and coordinate -> set (residual only where that set already ships flow through
the coordinate), and ends at a coordinate with spare capacity.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

INF = math.inf


@dataclass(frozen=True)
class TransportResult:
    value: float
    # shipment[j][i]: mass that set j takes from coordinate i
    shipment: tuple
    # sets on the source side of a minimum cut
    cut_sets: frozenset


def transport(sets: Sequence, sigma: Sequence[float], supplies: Sequence[float] | None = None,
              forced: Sequence[int] = ()) -> TransportResult:
    """Maximum flow for ``sets`` (iterables of 0-based coordinates) and capacities ``sigma``.

    Sets listed in ``forced`` get infinite supply, which pins them to the
    source side of every finite cut.
    """
    m, n = len(sets), len(sigma)
    members = [sorted(set(s)) for s in sets]
    supply = [float(x) for x in (supplies if supplies is not None else [1.0] * m)]
    for j in forced:
        supply[j] = INF
    room = [max(float(x), 0.0) for x in sigma]
    ship = [[0.0] * n for _ in range(m)]
    # users[i]: sets currently shipping through coordinate i
    users = [set() for _ in range(n)]
    value = 0.0

    while True:
        # BFS over sets; coordinates are visited on the way.
        set_parent = [-2] * m   # -1 = reached straight from the source
        coord_parent = [-1] * n
        queue = deque()
        for j in range(m):
            if supply[j] > 0:
                set_parent[j] = -1
                queue.append(j)
        end = -1
        while queue and end < 0:
            j = queue.popleft()
            for i in members[j]:
                if coord_parent[i] >= 0:
                    continue
                coord_parent[i] = j
                if room[i] > 0:
                    end = i
                    break
                for k in users[i]:
                    if set_parent[k] == -2:
                        set_parent[k] = i
                        queue.append(k)
        if end < 0:
            break

        push = room[end]
        i = end
        while True:
            j = coord_parent[i]
            prev = set_parent[j]
            if prev == -1:
                push = min(push, supply[j])
                break
            push = min(push, ship[j][prev])
            i = prev
        i = end
        room[end] -= push
        while True:
            j = coord_parent[i]
            ship[j][i] += push
            users[i].add(j)
            prev = set_parent[j]
            if prev == -1:
                supply[j] -= push
                break
            ship[j][prev] -= push
            if ship[j][prev] <= 0:
                ship[j][prev] = 0.0
                users[prev].discard(j)
            i = prev
        value += push

    # residual reachability from the source = source side of a minimum cut
    reached = set()
    stack = [j for j in range(m) if supply[j] > 0]
    reached.update(stack)
    seen_coord = set()
    while stack:
        j = stack.pop()
        for i in members[j]:
            if i in seen_coord:
                continue
            seen_coord.add(i)
            for k in users[i]:
                if k not in reached:
                    reached.add(k)
                    stack.append(k)
    return TransportResult(value, tuple(tuple(row) for row in ship), frozenset(reached))
