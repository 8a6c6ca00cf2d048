"""Records, bounds and the canonical tuple-space enumeration."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SolutionRecord:
    """One verified assignment (or a prune event) for one equation."""

    equation: str
    assignment: dict
    verified: bool
    certificate: dict          # {"kind": "exact-equality" | "prune" | "construction", ...}

    def to_json_dict(self) -> dict:
        return {
            "schema": "diofact.solution.v1",
            "equation": self.equation,
            "assignment": dict(sorted(self.assignment.items())),
            "verified": self.verified,
            "certificate": self.certificate,
        }


@dataclass
class SearchBounds:
    """Inclusive per-variable ranges plus optional wall-clock/node budgets."""

    ranges: dict                       # var -> (lo, hi) inclusive
    node_budget: int | None = None
    time_budget_s: float | None = None

    def range_of(self, var: str) -> tuple[int, int]:
        try:
            lo, hi = self.ranges[var]
        except KeyError:
            raise ValueError(f"no bound given for variable {var!r}") from None
        if lo > hi:
            raise ValueError(f"empty range for variable {var!r}")
        return lo, hi

    def has(self, var: str) -> bool:
        return var in self.ranges

    def values_of(self, var: str) -> range:
        lo, hi = self.range_of(var)
        return range(lo, hi + 1)


class TupleSpace:
    """Lexicographic enumeration of the LHS variable tuples, flat-indexable.

    The flat index is the mixed-radix rank of the tuple; contiguous index
    ranges make deterministic chunking for workers and checkpoints trivial.
    """

    def __init__(self, variables: list[str], bounds: SearchBounds):
        self.variables = list(variables)
        self.los = []
        self.sizes = []
        for var in self.variables:
            lo, hi = bounds.range_of(var)
            if lo < 0:
                raise ValueError(f"factorial/exponent variable {var!r} must be >= 0")
            self.los.append(lo)
            self.sizes.append(hi - lo + 1)
        self.total = 1
        for s in self.sizes:
            self.total *= s

    def assignment(self, index: int) -> dict:
        out = {}
        for var, lo, size in zip(reversed(self.variables),
                                 reversed(self.los), reversed(self.sizes)):
            index, digit = divmod(index, size)
            out[var] = lo + digit
        return out

    def iterate(self, start: int = 0, stop: int | None = None):
        stop = self.total if stop is None else min(stop, self.total)
        for index in range(start, stop):
            yield index, self.assignment(index)


@dataclass
class SearchResult:
    """Solutions, prune events and bookkeeping from one (partial) search."""

    records: list = field(default_factory=list)
    pruned: list = field(default_factory=list)      # SolutionRecord prune events
    nodes: int = 0
    total: int = 0
    complete: bool = True
    warnings: list = field(default_factory=list)

    @property
    def found(self) -> int:
        return len(self.records)

    @property
    def pruned_count(self) -> int:
        return len(self.pruned)

    def extend(self, other: "SearchResult"):
        self.records.extend(other.records)
        self.pruned.extend(other.pruned)
        self.nodes += other.nodes
        self.complete = self.complete and other.complete
        for w in other.warnings:
            if w not in self.warnings:
                self.warnings.append(w)


class BudgetClock:
    """Tracks node and wall-clock budgets during a search."""

    def __init__(self, bounds: SearchBounds):
        self.node_budget = bounds.node_budget
        self.deadline = None
        if bounds.time_budget_s is not None:
            self.deadline = time.monotonic() + bounds.time_budget_s
        self.nodes = 0

    def tick(self) -> bool:
        """Account one node; False when a budget is exhausted."""
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            self.nodes -= 1
            return False
        if self.deadline is not None and time.monotonic() > self.deadline:
            self.nodes -= 1
            return False
        return True
