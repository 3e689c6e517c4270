"""Exception hierarchy.

Three families matter to callers (and map onto CLI exit codes):

* input problems (:class:`InputError` and its subclasses): malformed
  expressions, non-homogeneous maps, mismatched sizes;
* failed hypotheses (:class:`PreconditionFailed`): the supplied maps simply
  do not satisfy the identity an algorithm expects;
* :class:`TheoremViolation`: an internal computation contradicted a proven
  theorem. This is always a bug and is never caught internally.
"""

from __future__ import annotations

import pprint
from typing import Any


class FIError(Exception):
    """Base class for every error raised by this package."""


class InputError(FIError, ValueError):
    pass


class MismatchedAmbient(InputError):
    """Operands live over different matrix sizes n."""


class InvalidSize(InputError):
    pass


class OutOfRange(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class MissingAssignment(InputError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class NotDivisible(FIError, ArithmeticError):
    pass


class DivisionByZero(FIError, ZeroDivisionError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int = 1, column: int = 1,
                 expected: tuple[str, ...] = ()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class ExprTypeError(InputError, TypeError):
    """Scalar/matrix type discipline violated in an expression."""


class PreconditionFailed(FIError):
    pass


class NotCommuting(PreconditionFailed):
    pass


class NotAnIdentity(PreconditionFailed):
    pass


class MismatchedDegrees(PreconditionFailed):
    pass


class TheoremViolation(FIError):
    """A computation produced a counterexample to a theorem.

    ``state`` carries the symbolic values involved so a failing case can be
    reproduced from the message alone.
    """

    def __init__(self, message: str, **state: Any):
        self.message = message
        self.state = state
        text = message
        if state:
            dump = {k: _show(v) for k, v in state.items()}
            text += "\n" + pprint.pformat(dump, width=100)
        super().__init__(text)


class InternalInconsistency(TheoremViolation):
    pass


class DegreeObstruction(TheoremViolation):
    """A nonzero solution of ``x^m q(x) in k`` with ``deg q < m(n-1)``."""


class NoSolution(TheoremViolation):
    pass


def _show(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [_show(v) for v in value]
    return str(value) if not isinstance(value, (int, bool, type(None))) else value
