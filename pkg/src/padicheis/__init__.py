"""Exact p-adic arithmetic, Heisenberg-type groups, their ultrametrics, Haar measure and formal calculus."""

from .exact import AbsValue, PadicScalar, padic_from_rational, rational_padic_abs
from .heis import HeisGroup, HeisPoint
from .rings import BilinearForm, Ring, RingElem, RingHom

__version__ = "0.1.0"

__all__ = [
    "AbsValue",
    "BilinearForm",
    "HeisGroup",
    "HeisPoint",
    "PadicScalar",
    "Ring",
    "RingElem",
    "RingHom",
    "padic_from_rational",
    "rational_padic_abs",
]
