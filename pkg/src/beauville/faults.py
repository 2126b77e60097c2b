"""Deliberate fault injection for exercising the paper-check harness.

Each fault perturbs exactly one step of the engine.  Faults are scoped with
:func:`inject` and carried in a context variable, so they never leak between
threads or into code outside the ``with`` block.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

FAULTS = {
    "canonical-character": "shift the canonical character of each curve by [1,0]",
    "k-offset": "swap the square-root characters of C and C' in the K-basis offset",
    "restriction": "subtract degree n-6 monomials instead of n-5 when restricting O(n) to the quintic",
}

_active: ContextVar[frozenset[str]] = ContextVar("beauville_faults", default=frozenset())


def active() -> frozenset[str]:
    return _active.get()


def enabled(name: str) -> bool:
    return name in _active.get()


@contextmanager
def inject(*names: str):
    unknown = set(names) - FAULTS.keys()
    if unknown:
        raise ValueError(f"unknown fault(s): {', '.join(sorted(unknown))}")
    token = _active.set(_active.get() | frozenset(names))
    try:
        yield
    finally:
        _active.reset(token)
