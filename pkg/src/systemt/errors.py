"""Exception taxonomy shared by every module.

Each exception carries a ``category`` string; the CLI reports it verbatim.
"""

from __future__ import annotations


class SystemTError(Exception):
    category = "error"


class ParseError(SystemTError):
    category = "syntax"

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        if pos is not None and text is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"{message} at line {line}, column {col}"
        elif pos is not None:
            message = f"{message} at offset {pos}"
        super().__init__(message)


class UnboundIdentifierError(ParseError):
    category = "unbound"


class TypeCheckError(SystemTError):
    category = "type"


class UnboundVariableError(TypeCheckError):
    category = "unbound"


class BudgetExhausted(SystemTError):
    category = "budget"

    def __init__(self, steps: int, nodes: int, reason: str):
        self.steps = steps
        self.nodes = nodes
        super().__init__(f"budget exhausted ({reason}): {steps} steps, {nodes} nodes")


class PreconditionError(SystemTError):
    category = "precondition"


class GuardExceeded(SystemTError):
    category = "guard"
