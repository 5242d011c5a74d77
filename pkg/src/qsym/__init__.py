"""Quasisymmetric functions in the monomial, fundamental and quasisymmetric
Schur bases, the four Pieri-type orders on compositions, and bounded checks of
rigidity properties of QSym."""

from .algebra import (
    Basis,
    BasisMismatch,
    F,
    M,
    QSymVector,
    S,
    TensorVector,
    convert,
    coproduct,
    counit,
    parse_vector,
    product,
    render,
)
from .compositions import Composition, format_composition, parse_composition
from .posets import Order

__version__ = "0.1.0"

__all__ = [
    "Basis", "BasisMismatch", "Composition", "F", "M", "Order", "QSymVector", "S",
    "TensorVector", "convert", "coproduct", "counit", "format_composition",
    "parse_composition", "parse_vector", "product", "render",
]
