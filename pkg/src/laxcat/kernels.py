"""Backend selection for the search kernels.

The compiled extension is used when it imports; otherwise, or when
``LAXCAT_PURE=1`` is set, the pure-Python module is used.  Both expose
``functor_search``, ``nat_trans_search`` and ``associativity_violation``.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("LAXCAT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels_c  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        _impl = _kernels_c
        BACKEND = "cython"


def use_backend(name: str) -> None:
    """Switch backend at runtime (tests and benchmarks only)."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _kernels_py, "python"
    elif name == "cython":
        from . import _kernels_c  # type: ignore[attr-defined]

        _impl, BACKEND = _kernels_c, "cython"
    else:
        raise ValueError(name)


def available_backends() -> list[str]:
    names = ["python"]
    try:
        from . import _kernels_c  # type: ignore[attr-defined]  # noqa: F401
    except ImportError:
        return names
    return names + ["cython"]


def functor_search(*args):
    return _impl.functor_search(*args)


def nat_trans_search(*args):
    return _impl.nat_trans_search(*args)


def associativity_violation(comp, m):
    return _impl.associativity_violation(comp, m)
