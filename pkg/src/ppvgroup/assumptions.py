"""Collection of genericity assumptions made while computing.

Parameters are indeterminates, so a quantity such as ``t1`` is treated as a
non-integer.  Code that relies on such a choice calls :func:`note`; callers
that want the list wrap the computation in :func:`collecting`.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from typing import Iterator, List, Optional

_current: contextvars.ContextVar[Optional[List[str]]] = contextvars.ContextVar(
    "ppvgroup_assumptions", default=None)


def note(text: str) -> None:
    sink = _current.get()
    if sink is not None and text not in sink:
        sink.append(text)


@contextmanager
def collecting(initial: Optional[List[str]] = None) -> Iterator[List[str]]:
    sink: List[str] = list(initial or [])
    token = _current.set(sink)
    try:
        yield sink
    finally:
        _current.reset(token)
