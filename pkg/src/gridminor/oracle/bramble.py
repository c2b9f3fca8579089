"""Bramble order: the size of a smallest vertex set meeting every bramble set.

Exact hitting set by iterative deepening: some vertex of the smallest set
not yet hit must be chosen, so the search branches over that set's vertices.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..models import Bramble, validate_bramble
from .budget import EXHAUSTED, BudgetExhausted, Meter, SearchBudget, as_meter


@dataclass(frozen=True)
class BrambleOrderResult:
    status: str
    order: int | None
    hitting_set: tuple[int, ...] | None
    lower: int
    nodes: int
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "answer": self.order if self.status == "ok" else self.status,
            "status": self.status,
            "witness": list(self.hitting_set) if self.hitting_set is not None else None,
            "lower": self.lower,
            "nodes": self.nodes,
            "elapsed": round(self.elapsed, 6),
        }


def _hit(sets: list[frozenset[int]], k: int, chosen: frozenset[int], meter: Meter,
         seen: set[frozenset[int]]) -> frozenset[int] | None:
    meter.tick()
    open_sets = [s for s in sets if not (s & chosen)]
    if not open_sets:
        return chosen
    if k == 0 or chosen in seen:
        return None
    seen.add(chosen)
    smallest = min(open_sets, key=len)
    for v in sorted(smallest):
        found = _hit(open_sets, k - 1, chosen | {v}, meter, seen)
        if found is not None:
            return found
    return None


def min_hitting_set(sets, budget: SearchBudget | Meter | None = None) -> BrambleOrderResult:
    meter = as_meter(budget)
    family = sorted({frozenset(s) for s in sets}, key=lambda s: (len(s), sorted(s)))
    if any(not s for s in family):
        raise ValueError("an empty set cannot be hit")
    k = 0
    try:
        while True:
            found = _hit(family, k, frozenset(), meter, set())
            if found is not None:
                return BrambleOrderResult("ok", k, tuple(sorted(found)), k, meter.nodes, meter.elapsed)
            k += 1
    except BudgetExhausted:
        return BrambleOrderResult(EXHAUSTED, None, None, k, meter.nodes, meter.elapsed)


def bramble_order(b: Bramble, budget: SearchBudget | Meter | None = None) -> BrambleOrderResult:
    report = validate_bramble(b)
    if not report:
        raise ValueError(f"not a bramble: {report.message}")
    return min_hitting_set(b.sets, budget)
