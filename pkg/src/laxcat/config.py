"""Size bounds and candidate-order settings.

Bounds default to 64 objects / 512 morphisms per constructed category, a
composite depth of 32 for coequalizer saturation, and a cap on the number of
values any single enumeration may produce.  ``LAXCAT_BOUND`` overrides them:
either a bare integer (the saturation depth) or comma separated
``key=value`` pairs using the field names of :class:`Bounds`.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
import random
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Bounds:
    max_objects: int = 64
    max_morphisms: int = 512
    saturation_depth: int = 32
    max_enumeration: int = 200_000
    max_elements: int = 20_000


def _from_env() -> Bounds:
    raw = os.environ.get("LAXCAT_BOUND", "").strip()
    if not raw:
        return Bounds()
    if raw.isdigit():
        return Bounds(saturation_depth=int(raw))
    names = {f.name for f in fields(Bounds)}
    kw = {}
    for part in raw.split(","):
        key, _, value = part.partition("=")
        key = key.strip()
        if key not in names:
            raise ValueError(f"LAXCAT_BOUND: unknown bound {key!r}")
        kw[key] = int(value)
    return Bounds(**kw)


_bounds: contextvars.ContextVar[Bounds] = contextvars.ContextVar("bounds", default=_from_env())
_shuffle: contextvars.ContextVar[int | None] = contextvars.ContextVar("shuffle", default=None)


def bounds() -> Bounds:
    return _bounds.get()


@contextlib.contextmanager
def using_bounds(**overrides):
    token = _bounds.set(replace(_bounds.get(), **overrides))
    try:
        yield _bounds.get()
    finally:
        _bounds.reset(token)


@contextlib.contextmanager
def shuffled_candidates(seed: int | None):
    """Visit search candidates in a seeded random order.

    Searches that normally stop at the first (canonically least) witness
    instead evaluate every candidate and return the canonical minimum, so
    results must not change.  Used to test determinism.
    """
    token = _shuffle.set(seed)
    try:
        yield
    finally:
        _shuffle.reset(token)


def shuffle_seed() -> int | None:
    return _shuffle.get()


def candidate_order(items, salt: str = ""):
    """Return ``items`` in canonical order, or shuffled when enabled."""
    seed = _shuffle.get()
    items = list(items)
    if seed is None:
        return items
    random.Random(f"{seed}:{salt}:{len(items)}").shuffle(items)
    return items


def check_size(what: str, n_objects: int, n_morphisms: int) -> None:
    from .errors import SizeLimitExceeded

    b = bounds()
    if n_objects > b.max_objects or n_morphisms > b.max_morphisms:
        raise SizeLimitExceeded(
            f"{what}: {n_objects} objects / {n_morphisms} morphisms exceeds "
            f"bounds {b.max_objects}/{b.max_morphisms}"
        )
