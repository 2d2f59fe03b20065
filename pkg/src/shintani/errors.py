"""Exception types shared by the library and the CLI.

Indices stored on the exceptions are 0-based, like the rest of the Python
API.  ``to_dict`` renders them 1-based for the JSON error payloads.
"""

from __future__ import annotations


class ShintaniError(ValueError):
    """Base class; every subclass knows how to describe itself as JSON."""

    def payload(self) -> dict:
        return {}

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **self.payload()}


class NegativeEntry(ShintaniError):
    def __init__(self, row: int, col: int, value: float):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entry ({row + 1},{col + 1}) is negative: {value!r}")

    def payload(self):
        return {"row": self.row + 1, "col": self.col + 1}


class ZeroRow(ShintaniError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row + 1} has no positive entry")

    def payload(self):
        return {"row": self.row + 1}


class ZeroColumn(ShintaniError):
    def __init__(self, col: int):
        self.col = col
        super().__init__(f"column {col + 1} has no positive entry")

    def payload(self):
        return {"col": self.col + 1}


class MalformedMatrix(ShintaniError):
    pass


class SupportTooSmall(ShintaniError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"support vector {index + 1} has fewer than two nonzero coordinates")

    def payload(self):
        return {"index": self.index + 1}


class DimensionMismatch(ShintaniError):
    def __init__(self, expected: int, got: int, what: str = "vector"):
        self.expected, self.got = expected, got
        super().__init__(f"{what} has dimension {got}, expected {expected}")

    def payload(self):
        return {"expected": self.expected, "got": self.got}


class EmptySubset(ShintaniError):
    def __init__(self):
        super().__init__("column subset must be non-empty")


class SubsetCapExceeded(ShintaniError):
    def __init__(self, size: int, cap: int):
        self.size, self.cap = size, cap
        super().__init__(f"subset enumeration over {size} indices exceeds the cap of {cap}")

    def payload(self):
        return {"size": self.size, "cap": self.cap}


class InvalidInstance(ShintaniError):
    pass


class InfeasibleInstance(ShintaniError):
    def __init__(self, violating: frozenset, slack: float):
        self.violating = frozenset(violating)
        self.slack = slack
        ks = sorted(k + 1 for k in self.violating)
        super().__init__(f"Hall-type condition fails for K={ks} (slack {slack!r})")

    def payload(self):
        return {"violating_K": sorted(k + 1 for k in self.violating), "slack": self.slack}


class OutsideConvergenceRegion(ShintaniError):
    def __init__(self, constraint: str):
        self.constraint = constraint
        super().__init__(f"Re(s) violates {constraint}")

    def payload(self):
        return {"constraint": self.constraint}


class NonpositiveEpsilon(ShintaniError):
    pass


class InvalidParameter(ShintaniError):
    pass


class GraphProcedureError(RuntimeError):
    """The graph redistribution procedure broke one of its own contracts."""
