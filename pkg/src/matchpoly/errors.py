from __future__ import annotations

import os

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap."""

    def __init__(self, count: int, cap: int, what: str = "labelings"):
        super().__init__(f"{count} {what} exceeds budget {cap}")
        self.count = count
        self.cap = cap


def default_budget() -> int:
    raw = os.environ.get("MATCHPOLY_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MATCHPOLY_BUDGET={raw!r} is not an integer") from None
    if value <= 0:
        raise ValueError("MATCHPOLY_BUDGET must be positive")
    return value


def check_budget(count: int, budget: int | None, what: str = "labelings") -> None:
    cap = default_budget() if budget is None else budget
    if count > cap:
        raise BudgetExceeded(count, cap, what)
