"""Search budgets and search outcomes."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Any


class BudgetExhausted(Exception):
    """Raised inside engines when a time or node limit is hit."""


class Status(str, enum.Enum):
    EXACT = "exact"
    BOUND = "bound"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SearchBudget:
    time_limit: float = 60.0
    node_limit: int | None = None
    threads: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be positive")
        if self.time_limit <= 0:
            raise ValueError("time_limit must be positive")

    def start(self) -> "BudgetClock":
        return BudgetClock(self)


class BudgetClock:
    """Running counter for one search.  ``tick`` raises once a limit is crossed."""

    # time.monotonic is only consulted every CHECK_EVERY nodes
    CHECK_EVERY = 1024

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()
        self.deadline = self.t0 + budget.time_limit

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        lim = self.budget.node_limit
        if lim is not None and self.nodes > lim:
            raise BudgetExhausted(f"node limit {lim} exceeded")
        if self.nodes % self.CHECK_EVERY < n and time.monotonic() > self.deadline:
            raise BudgetExhausted(f"time limit {self.budget.time_limit}s exceeded")

    @property
    def elapsed_ms(self) -> int:
        return int((time.monotonic() - self.t0) * 1000)


@dataclass
class SearchResult:
    """Outcome of an optimisation search.

    ``status`` is EXACT when ``value`` is proven optimal, BOUND when the
    budget ran out and ``value`` is only the best found (a lower bound for
    maximisation, an upper bound for minimisation), INFEASIBLE when no
    feasible witness exists.
    """

    value: Any
    witness: Any
    status: Status = Status.EXACT
    nodes: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT
