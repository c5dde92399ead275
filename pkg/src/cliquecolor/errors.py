"""Exception types shared across the package."""


class InputError(ValueError):
    """Caller supplied malformed input (unknown vertex, bad parameters, ...)."""


class BudgetExceeded(RuntimeError):
    """An operation would exceed a configured enumeration or size budget."""


class TowerInfeasible(BudgetExceeded):
    """Tower construction refused; carries the exact size diagnostics."""

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class ColoringConstructionError(RuntimeError):
    """The mechanical tower-coloring recipe could not be executed."""

    def __init__(self, message, petal_id=None):
        super().__init__(message)
        self.petal_id = petal_id
