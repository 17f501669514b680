"""Finite computations in the lax comma category ``Cat//X``.

The package is layered: :mod:`laxcat.fincat` holds finite categories,
functors and transformations; :mod:`laxcat.univprop` decides universal
properties by brute force; :mod:`laxcat.laxcomma` and
:mod:`laxcat.laxstruct` build the lax comma category and its explicit
(co)limits and exponentials; :mod:`laxcat.descent` and
:mod:`laxcat.toolkit` hold the checks exposed by the ``laxcat`` command.
"""

from .errors import LaxcatError
from .fincat import FinCategory, Functor, NatTrans, build_category
from .kernels import BACKEND
from .laxcomma import LaxMorphism, LaxObject, Workspace
from .presentation import Environment, parse, serialize

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Environment", "FinCategory", "Functor", "LaxMorphism", "LaxObject", "LaxcatError",
    "NatTrans", "Workspace", "build_category", "parse", "serialize", "__version__",
]
