"""Search budgets shared by the exhaustive solvers."""

from __future__ import annotations

import time
from dataclasses import dataclass

YES = "yes"
NO = "no"
EXHAUSTED = "budget-exhausted"


class BudgetExhausted(Exception):
    """Raised inside a search when a cap is hit; turned into an explicit outcome by callers."""


@dataclass(frozen=True)
class SearchBudget:
    max_host_vertices: int | None = 64
    max_nodes: int | None = None
    time_limit: float | None = None

    def meter(self) -> Meter:
        return Meter(self)


UNLIMITED = SearchBudget(max_host_vertices=None)


class Meter:
    """Counts search nodes against a budget.  One meter may be shared by several searches."""

    __slots__ = ("budget", "nodes", "start", "_deadline")

    def __init__(self, budget: SearchBudget | None = None):
        self.budget = budget or SearchBudget()
        self.nodes = 0
        self.start = time.perf_counter()
        tl = self.budget.time_limit
        self._deadline = None if tl is None else self.start + tl

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        cap = self.budget.max_nodes
        if cap is not None and self.nodes > cap:
            raise BudgetExhausted(f"node cap {cap} reached")
        if self._deadline is not None and (self.nodes & 255) == 0:
            if time.perf_counter() > self._deadline:
                raise BudgetExhausted(f"time limit {self.budget.time_limit}s reached")

    def check_host(self, n: int) -> None:
        cap = self.budget.max_host_vertices
        if cap is not None and n > cap:
            raise BudgetExhausted(f"host has {n} vertices, cap is {cap}")

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def as_meter(budget: SearchBudget | Meter | None) -> Meter:
    if isinstance(budget, Meter):
        return budget
    return Meter(budget)
