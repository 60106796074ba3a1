"""Work limits shared by the exponential operations."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_MAX_CARD = 24
DEFAULT_MAX_WORK = 10**8


@dataclass(frozen=True)
class Budget:
    max_card: int = DEFAULT_MAX_CARD
    max_work: int = DEFAULT_MAX_WORK

    def __post_init__(self):
        if self.max_card < 1 or self.max_work < 1:
            raise ValueError("budget limits must be positive")

    def charge(self, projected: int, what: str) -> None:
        if projected > self.max_work:
            raise BudgetExceeded(
                f"{what}: projected work {projected} exceeds max_work={self.max_work}"
            )

    def check_card(self, n: int, what: str) -> None:
        if n > self.max_card:
            raise BudgetExceeded(f"{what}: |A|={n} exceeds max_card={self.max_card}")


DEFAULT_BUDGET = Budget()
