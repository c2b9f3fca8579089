"""Exact minimum feedback vertex set for small graphs.

Iterative deepening on the size ``k``.  Every feedback set meets every cycle,
so each search node strips vertices of degree at most one, finds a shortest
cycle in what is left and branches on which of its vertices to delete.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..graph import Graph, is_forest
from .budget import EXHAUSTED, BudgetExhausted, Meter, SearchBudget, as_meter


@dataclass(frozen=True)
class FvsResult:
    status: str
    size: int | None
    witness: tuple[int, ...] | None
    lower: int
    nodes: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "answer": self.size if self.status == "ok" else self.status,
            "status": self.status,
            "witness": list(self.witness) if self.witness is not None else None,
            "lower": self.lower,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
        }


def _strip(adj: dict[int, set[int]]) -> None:
    low = deque(v for v, nb in adj.items() if len(nb) <= 1)
    while low:
        v = low.popleft()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1:
                low.append(w)


def _up(par: dict, v: int) -> list[int]:
    out = [v]
    while par[out[-1]] is not None:
        out.append(par[out[-1]])
    return out


def _shortest_cycle(adj: dict[int, set[int]]) -> list[int] | None:
    """A shortest cycle: BFS from every vertex, closing on the first non-tree edge met."""
    best = None
    for s in sorted(adj):
        par = {s: None}
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            if best is not None and 2 * dist[u] + 1 >= len(best):
                break
            for w in sorted(adj[u]):
                if w not in par:
                    par[w], dist[w] = u, dist[u] + 1
                    q.append(w)
                elif par[u] != w:
                    pu, pw = _up(par, u), _up(par, w)
                    on_w = set(pw)
                    i = next(i for i, x in enumerate(pu) if x in on_w)
                    cyc = pu[: i + 1] + list(reversed(pw[: pw.index(pu[i])]))
                    if best is None or len(cyc) < len(best):
                        best = cyc
    return best


def _search(adj: dict[int, set[int]], k: int, meter: Meter) -> list[int] | None:
    meter.tick()
    adj = {v: set(nb) for v, nb in adj.items()}
    _strip(adj)
    if not adj:
        return []
    if k == 0:
        return None
    cyc = _shortest_cycle(adj)
    for v in cyc:
        rest = {u: nb - {v} for u, nb in adj.items() if u != v}
        sub = _search(rest, k - 1, meter)
        if sub is not None:
            return [v] + sub
    return None


def min_fvs(g: Graph, budget: SearchBudget | Meter | None = None) -> FvsResult:
    """Smallest vertex set whose deletion leaves a forest, with the set itself."""
    meter = as_meter(budget)
    adj = {v: set(g.neighbors(v)) for v in range(g.n)}
    k = 0
    try:
        meter.check_host(g.n)
        while True:
            found = _search(adj, k, meter)
            if found is not None:
                witness = tuple(sorted(found))
                keep = [v for v in range(g.n) if v not in found]
                assert is_forest(g.induced_subgraph(keep))
                return FvsResult("ok", k, witness, k, meter.nodes, meter.elapsed)
            k += 1
    except BudgetExhausted:
        return FvsResult(EXHAUSTED, None, None, k, meter.nodes, meter.elapsed)
