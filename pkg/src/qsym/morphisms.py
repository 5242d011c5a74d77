"""Graded linear maps defined by relabelling the fundamental basis.

rho, psi and omega send F_alpha to F of the reversal, complement and transpose
of alpha.  They act on any basis by converting to F first, so identities such
as rho(M_alpha) = M_{reversed alpha} are things to check, not definitions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from .algebra import (
    Basis,
    QSymVector,
    TensorVector,
    convert,
    coproduct,
    counit,
    f_product,
)
from .compositions import (
    Composition,
    complement,
    compositions_of,
    compositions_up_to,
    format_composition,
    reversal,
    transpose,
)

NOT_A_BASIS_ELEMENT = None


@dataclass(frozen=True)
class NamedMap:
    tag: str
    action: Callable[[Composition], Composition]

    def __call__(self, u: QSymVector) -> QSymVector:
        return apply(self, u)


IDENTITY = NamedMap("identity", lambda a: tuple(a))
RHO = NamedMap("rho", reversal)
PSI = NamedMap("psi", complement)
OMEGA = NamedMap("omega", transpose)

MAPS: Dict[str, NamedMap] = {m.tag: m for m in (IDENTITY, RHO, PSI, OMEGA)}


def get_map(name) -> NamedMap:
    if isinstance(name, NamedMap):
        return name
    try:
        return MAPS[str(name).lower()]
    except KeyError:
        raise ValueError(f"unknown map {name!r}; choose from {', '.join(MAPS)}") from None


def label_map(tag: str, action: Callable[[Composition], Composition]) -> NamedMap:
    """A user-defined map F_alpha -> F_{action(alpha)}."""
    return NamedMap(tag, action)


def _relabel_f(m: NamedMap, u: QSymVector) -> QSymVector:
    out: Dict[Composition, object] = {}
    for alpha, c in u.terms.items():
        beta = tuple(m.action(alpha))
        if sum(beta) != sum(alpha):
            raise ValueError(f"map {m.tag} is not weight preserving at {alpha}")
        out[beta] = out.get(beta, 0) + c
    return QSymVector(Basis.F, out)


def apply(m, u: QSymVector) -> QSymVector:
    m = get_map(m)
    return convert(_relabel_f(m, convert(u, Basis.F)), u.basis)


def _apply_tensor(m: NamedMap, t: TensorVector) -> TensorVector:
    f = lambda v: _relabel_f(m, v)
    return t.map_legs(f, f)


@dataclass
class MorphismCheck:
    map: str
    property: str
    bound: int
    passed: bool
    witness: Optional[Tuple[Composition, ...]] = None

    def __bool__(self):
        return self.passed

    @property
    def witness_text(self) -> Optional[str]:
        if self.witness is None:
            return None
        return "|".join(format_composition(w) for w in self.witness)

    def to_json(self) -> dict:
        return {
            "map": self.map,
            "property": self.property,
            "bound": self.bound,
            "pass": self.passed,
            "witness": self.witness_text,
        }


def check_algebra_morphism(m, max_total_weight: int) -> MorphismCheck:
    """Test m(F_a F_b) = m(F_a) m(F_b) for |a| + |b| <= bound.

    Pairs are scanned by total weight, then lexicographically, so the witness
    returned is the minimal failing pair.
    """
    m = get_map(m)
    if max_total_weight < 2:
        raise ValueError("max_total_weight must be at least 2")
    for total in range(max_total_weight + 1):
        pairs = sorted(
            (a, b)
            for wa in range(total + 1)
            for a in compositions_of(wa)
            for b in compositions_of(total - wa)
        )
        for a, b in pairs:
            fa, fb = QSymVector.element(Basis.F, a), QSymVector.element(Basis.F, b)
            lhs = _relabel_f(m, f_product(fa, fb))
            rhs = f_product(_relabel_f(m, fa), _relabel_f(m, fb))
            if lhs != rhs:
                return MorphismCheck(m.tag, "algebra", max_total_weight, False, (a, b))
    return MorphismCheck(m.tag, "algebra", max_total_weight, True)


def check_coalgebra_morphism(m, max_weight: int) -> MorphismCheck:
    """Test (m x m) Delta = Delta m and counit compatibility on F_a, |a| <= bound."""
    m = get_map(m)
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    for alpha in compositions_up_to(max_weight):
        fa = QSymVector.element(Basis.F, alpha)
        image = _relabel_f(m, fa)
        if _apply_tensor(m, coproduct(fa)) != coproduct(image) or counit(image) != counit(fa):
            return MorphismCheck(m.tag, "coalgebra", max_weight, False, (alpha,))
    return MorphismCheck(m.tag, "coalgebra", max_weight, True)


def basis_preservation_table(m, basis, max_weight: int) -> Dict[Composition, Optional[Composition]]:
    """For each label of weight <= max_weight, the beta with m(K_a) = +-K_beta, if any."""
    m = get_map(m)
    basis = Basis(basis.value if isinstance(basis, Basis) else str(basis).upper())
    table = {}
    for alpha in compositions_up_to(max_weight):
        image = apply(m, QSymVector.element(basis, alpha))
        terms = image.terms
        if len(terms) == 1:
            (beta, c), = terms.items()
            if abs(c) == 1:
                table[alpha] = beta
                continue
        table[alpha] = NOT_A_BASIS_ELEMENT
    return table


def preserves_basis(table: Dict[Composition, Optional[Composition]]) -> bool:
    """Whether a preservation table describes a permutation of basis labels."""
    images = list(table.values())
    return NOT_A_BASIS_ELEMENT not in images and len(set(images)) == len(images)
