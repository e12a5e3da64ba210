"""Typed refusals shared by the solvers and surfaced as CLI exit codes."""

from __future__ import annotations


class HardToManipulateError(ValueError):
    """Budget below the worst score deficit: the approximation regime is gone."""

    def __init__(self, budget, deficit):
        super().__init__(
            f"hard-to-manipulate regime: budget {budget} < deficit {deficit}; "
            "no seeding guarantee applies here")
        self.budget = budget
        self.deficit = deficit


class SearchCapError(ValueError):
    """A brute-force search space exceeds the configured cap."""

    def __init__(self, size, cap):
        super().__init__(f"search space of about {size} plans exceeds cap {cap}")
        self.size = size
        self.cap = cap


class PreconditionError(ValueError):
    """A closed-form solver's precondition does not hold."""
