"""Line-oriented identity files.

::

    # x adj(x) = det(x)
    n = 2
    m = 1
    q0 = adj(x)
    q1 = 0

One binding per line, ``#`` starts a comment.  ``m`` may be omitted (it is
then the largest ``q`` index).  Scalar-valued expressions are read as central
maps, and zero maps take the common degree of the others.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import InputError, MismatchedDegrees, ParseError
from .expr import Expr, elaborate, parse
from .tracemaps import ScalarPoly, TraceMap

_BINDING = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*?)\s*$")


@dataclass(frozen=True)
class IdentitySpec:
    n: int
    m: int
    exprs: tuple[Expr, ...]
    sources: tuple[str, ...] = ()

    def trace_maps(self) -> list[TraceMap]:
        maps = []
        for e in self.exprs:
            value = elaborate(e, self.n)
            maps.append(value.as_map() if isinstance(value, ScalarPoly) else value)
        degrees = {q.d for q in maps if not q.is_zero()}
        if len(degrees) > 1:
            raise MismatchedDegrees(f"q_i have different degrees {[q.d for q in maps]}")
        d = degrees.pop() if degrees else 1
        return [q.with_degree(d) if q.is_zero() else q for q in maps]


def parse_identity(text: str, n: Optional[int] = None) -> IdentitySpec:
    """Parse identity-file text; ``n`` (e.g. from ``--n``) fills in or must agree."""
    values: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        mt = _BINDING.match(line)
        if mt is None:
            raise ParseError("expected 'name = value'", lineno, 1)
        name, rhs = mt.groups()
        if name in values:
            raise ParseError(f"{name} bound twice", lineno, 1)
        values[name] = (rhs, lineno, mt.start(2))

    def integer(name: str) -> Optional[int]:
        if name not in values:
            return None
        rhs, lineno, _ = values.pop(name)
        if not re.fullmatch(r"\d+", rhs):
            raise ParseError(f"{name} must be a non-negative integer", lineno, 1)
        return int(rhs)

    file_n, m = integer("n"), integer("m")
    if n is None:
        n = file_n
    elif file_n is not None and file_n != n:
        raise InputError(f"--n {n} disagrees with n = {file_n} in the file")
    if n is None or n < 1:
        raise InputError("matrix size n missing (give it in the file or with --n)")

    q_names = {}
    for name, (rhs, lineno, offset) in values.items():
        mt = re.fullmatch(r"q(\d+)", name)
        if mt is None:
            raise ParseError(f"unknown binding {name!r}", lineno, 1)
        q_names[int(mt.group(1))] = (rhs, lineno, offset)
    if m is None:
        m = max(q_names, default=0)
    if m < 1:
        raise InputError("need m >= 1")
    missing = [i for i in range(m + 1) if i not in q_names]
    extra = [i for i in q_names if i > m]
    if missing or extra:
        raise InputError(f"expected bindings q0..q{m}; missing {missing}, unexpected {extra}")

    exprs = []
    for i in range(m + 1):
        rhs, lineno, offset = q_names[i]
        try:
            exprs.append(parse(rhs))
        except ParseError as exc:
            # rhs is a single line, so only the column needs shifting
            raise ParseError(f"q{i}: {exc.message}", lineno, offset + exc.column,
                             exc.expected) from None
    return IdentitySpec(n, m, tuple(exprs), tuple(q_names[i][0] for i in range(m + 1)))


def load_identity(path: str | Path, n: Optional[int] = None) -> IdentitySpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_identity(text, n)
