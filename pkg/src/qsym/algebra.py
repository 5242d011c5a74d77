"""QSym as a graded bialgebra in the monomial (M) and fundamental (F) bases.

Elements are finite linear combinations of compositions with exact
``Fraction`` coefficients.  The quasisymmetric Schur basis (S) shares the
same vector type; its structure maps live in :mod:`qsym.schur`.
"""
from __future__ import annotations

import enum
import json
import re
import threading
from functools import lru_cache
from itertools import combinations
from collections import defaultdict
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .compositions import (
    EMPTY,
    Composition,
    as_composition,
    format_composition,
    parse_composition,
    refinements,
    set_concat_split,
)


class Basis(str, enum.Enum):
    M = "M"
    F = "F"
    S = "S"


class BasisMismatch(ValueError):
    pass


def _as_basis(b) -> Basis:
    return b if isinstance(b, Basis) else Basis(str(b).upper())


def _scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"coefficients must be exact rationals, got {type(x).__name__}")


def _sort_key(comp: Composition):
    return (sum(comp), comp)


class QSymVector:
    """A basis-tagged finite linear combination of compositions.

    Zero coefficients are never stored, and weights may be mixed.
    """

    __slots__ = ("basis", "_terms")

    def __init__(self, basis, terms: Optional[Mapping] = None):
        self.basis = _as_basis(basis)
        clean: Dict[Composition, Fraction] = {}
        for comp, c in (terms or {}).items():
            c = _scalar(c)
            if c:
                comp = as_composition(comp)
                clean[comp] = clean.get(comp, Fraction(0)) + c
                if not clean[comp]:
                    del clean[comp]
        self._terms = clean

    @classmethod
    def _raw(cls, basis: Basis, terms: Dict[Composition, Fraction]) -> "QSymVector":
        v = cls.__new__(cls)
        v.basis = basis
        v._terms = {k: c for k, c in terms.items() if c}
        return v

    @classmethod
    def element(cls, basis, alpha: Sequence[int] = EMPTY, coeff=1) -> "QSymVector":
        return cls(basis, {tuple(alpha): coeff})

    @classmethod
    def zero(cls, basis) -> "QSymVector":
        return cls(basis)

    @property
    def terms(self) -> Dict[Composition, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def support(self):
        return sorted(self._terms, key=_sort_key)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, alpha) -> Fraction:
        return self._terms.get(tuple(alpha), Fraction(0))

    def _check(self, other: "QSymVector"):
        if not isinstance(other, QSymVector):
            return NotImplemented
        if other.basis is not self.basis:
            raise BasisMismatch(f"cannot combine {self.basis.value} and {other.basis.value} vectors")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return QSymVector._raw(self.basis, out)

    def __neg__(self):
        return QSymVector._raw(self.basis, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "QSymVector":
        c = _scalar(c)
        return QSymVector._raw(self.basis, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, QSymVector):
            return product(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, QSymVector):
            return NotImplemented
        return self.basis is other.basis and self._terms == other._terms

    def __hash__(self):
        return hash((self.basis, frozenset(self._terms.items())))

    def __repr__(self):
        return f"QSymVector({self.basis.value}, {render(self)!r})"

    def __str__(self):
        return render(self)

    def to_json(self) -> dict:
        return {
            "basis": self.basis.value,
            "terms": [
                {"comp": format_composition(k), "num": str(c.numerator), "den": str(c.denominator)}
                for k, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "QSymVector":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            comp = parse_composition(t["comp"])
            c = Fraction(int(t["num"]), int(t.get("den", "1")))
            terms[comp] = terms.get(comp, Fraction(0)) + c
        return cls(data["basis"], terms)


def render(u: QSymVector, order: str = "lex") -> str:
    """Text form like ``2*M[1,3,2,2] + M[1,2,3,2]``.

    ``order="lex"`` lists labels in decreasing lexicographic order;
    ``"graded"`` sorts by weight first.
    """
    if not u:
        return "0"
    if order == "graded":
        items = u.items()
    else:
        items = sorted(u.terms.items(), key=lambda kv: kv[0], reverse=True)
    out = []
    for i, (comp, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        label = f"{u.basis.value}[{format_composition(comp)}]"
        body = label if mag == 1 else f"{mag}*{label}"
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([MFS])\[([0-9,\s]*)\]\s*"
)


def parse_vector(text: str, basis=None) -> QSymVector:
    """Inverse of :func:`render`.

    A bare composition such as ``"1,2"`` is read as the basis element of
    ``basis``; ``"0"`` is the zero vector of ``basis``.
    """
    text = text.strip()
    if "[" not in text:
        if basis is None:
            raise ValueError(f"cannot tell the basis of {text!r}")
        if text == "0":
            return QSymVector.zero(basis)
        return QSymVector.element(basis, parse_composition(text))
    pos, terms, found = 0, {}, None
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse expression at {text[pos:]!r}")
        sign, coeff, b, comp = m.groups()
        if pos and not sign:
            raise ValueError(f"missing + or - before {text[pos:]!r}")
        if found is not None and b != found:
            raise BasisMismatch("an expression must use a single basis")
        found = b
        c = Fraction(coeff) if coeff else Fraction(1)
        key = parse_composition(comp)
        terms[key] = terms.get(key, Fraction(0)) + (-c if sign == "-" else c)
        pos = m.end()
    if basis is not None and _as_basis(basis).value != found:
        raise BasisMismatch(f"expression is in the {found} basis, expected {_as_basis(basis).value}")
    return QSymVector(found, terms)


def M(*alpha) -> QSymVector:
    return QSymVector.element(Basis.M, _flatten(alpha))


def F(*alpha) -> QSymVector:
    return QSymVector.element(Basis.F, _flatten(alpha))


def S(*alpha) -> QSymVector:
    return QSymVector.element(Basis.S, _flatten(alpha))


def _flatten(alpha) -> Composition:
    if len(alpha) == 1 and isinstance(alpha[0], (tuple, list)):
        return tuple(alpha[0])
    return tuple(alpha)


# --- quasi-shuffle -------------------------------------------------------------

_qs_cache: Dict[Tuple[Composition, Composition], Tuple] = {}
_qs_lock = threading.Lock()


def _qs(a: Composition, b: Composition) -> Tuple[Tuple[Composition, int], ...]:
    key = (a, b)
    hit = _qs_cache.get(key)
    if hit is not None:
        return hit
    if not a:
        result = ((b, 1),)
    elif not b:
        result = ((a, 1),)
    else:
        acc: Dict[Composition, int] = defaultdict(int)
        for d, c in _qs(a[1:], b):
            acc[(a[0],) + d] += c
        for d, c in _qs(a, b[1:]):
            acc[(b[0],) + d] += c
        for d, c in _qs(a[1:], b[1:]):
            acc[(a[0] + b[0],) + d] += c
        result = tuple(sorted(acc.items()))
    with _qs_lock:
        _qs_cache.setdefault(key, result)
    return result


def quasi_shuffle(alpha: Sequence[int], beta: Sequence[int]) -> Dict[Composition, int]:
    """Coefficients <delta, alpha * beta> of the recursive quasi-shuffle."""
    return dict(_qs(as_composition(alpha), as_composition(beta)))


def _require(u: QSymVector, basis: Basis, what: str):
    if not isinstance(u, QSymVector):
        raise TypeError(f"{what} expects a QSymVector")
    if u.basis is not basis:
        raise BasisMismatch(f"{what} needs the {basis.value} basis, got {u.basis.value}")


def m_product(u: QSymVector, v: QSymVector) -> QSymVector:
    _require(u, Basis.M, "m_product")
    _require(v, Basis.M, "m_product")
    out: Dict[Composition, Fraction] = defaultdict(Fraction)
    for a, ca in u._terms.items():
        for b, cb in v._terms.items():
            cab = ca * cb
            for d, k in _qs(a, b):
                out[d] += cab * k
    return QSymVector._raw(Basis.M, out)


# --- change of basis between M and F -------------------------------------------


def f_to_m(u: QSymVector) -> QSymVector:
    """F_alpha = sum of M_beta over refinements beta of alpha."""
    _require(u, Basis.F, "f_to_m")
    out: Dict[Composition, Fraction] = defaultdict(Fraction)
    for a, c in u._terms.items():
        for b in refinements(a):
            out[b] += c
    return QSymVector._raw(Basis.M, out)


def m_to_f(u: QSymVector) -> QSymVector:
    """Signed refinement sum, the Moebius inverse of :func:`f_to_m`."""
    _require(u, Basis.M, "m_to_f")
    out: Dict[Composition, Fraction] = defaultdict(Fraction)
    for a, c in u._terms.items():
        la = len(a)
        for b in refinements(a):
            out[b] += c if (len(b) - la) % 2 == 0 else -c
    return QSymVector._raw(Basis.F, out)


def _descent_word(alpha: Composition, offset: int = 0) -> Tuple[int, ...]:
    """A permutation of offset+1..offset+|alpha| whose descent composition is alpha."""
    blocks, top = [], offset + sum(alpha)
    for part in alpha:
        blocks.append(range(top - part + 1, top + 1))
        top -= part
    return tuple(x for block in blocks for x in block)


@lru_cache(maxsize=4096)
def _f_shuffle(a: Composition, b: Composition) -> Tuple[Tuple[Composition, int], ...]:
    # F_a F_b sums F over the descent compositions of all shuffles of two
    # permutations whose descent compositions are a and b
    u = _descent_word(a)
    v = _descent_word(b, offset=sum(a))
    m, n = len(u), len(u) + len(v)
    acc: Dict[Composition, int] = defaultdict(int)
    for pos in combinations(range(n), m):
        w = [0] * n
        chosen = set(pos)
        iu = iter(u)
        iv = iter(v)
        for k in range(n):
            w[k] = next(iu) if k in chosen else next(iv)
        parts, run = [], 1
        for k in range(1, n):
            if w[k - 1] > w[k]:
                parts.append(run)
                run = 1
            else:
                run += 1
        if n:
            parts.append(run)
        acc[tuple(parts)] += 1
    return tuple(sorted(acc.items()))


def f_product(u: QSymVector, v: QSymVector) -> QSymVector:
    """Product in the F basis by shuffling permutations with prescribed descents."""
    _require(u, Basis.F, "f_product")
    _require(v, Basis.F, "f_product")
    out: Dict[Composition, Fraction] = defaultdict(Fraction)
    for a, ca in u._terms.items():
        for b, cb in v._terms.items():
            cab = ca * cb
            for d, k in _f_shuffle(a, b):
                out[d] += cab * k
    return QSymVector._raw(Basis.F, out)


def to_m(u: QSymVector) -> QSymVector:
    if u.basis is Basis.M:
        return u
    if u.basis is Basis.F:
        return f_to_m(u)
    from .schur import s_to_m

    return s_to_m(u)


def convert(u: QSymVector, basis) -> QSymVector:
    """Express ``u`` in another basis."""
    basis = _as_basis(basis)
    if u.basis is basis:
        return u
    if u.basis is Basis.F and basis is Basis.M:
        return f_to_m(u)
    if u.basis is Basis.M and basis is Basis.F:
        return m_to_f(u)
    m = to_m(u)
    if basis is Basis.M:
        return m
    if basis is Basis.F:
        return m_to_f(m)
    from .schur import m_to_s

    return m_to_s(m)


def product(u: QSymVector, v: QSymVector) -> QSymVector:
    if u.basis is not v.basis:
        raise BasisMismatch(f"cannot multiply {u.basis.value} by {v.basis.value}")
    if u.basis is Basis.M:
        return m_product(u, v)
    if u.basis is Basis.F:
        return f_product(u, v)
    from .schur import s_product

    return s_product(u, v)


# --- coalgebra -----------------------------------------------------------------


class TensorVector:
    """Finite combination of pairs of compositions, K_a (x) K_b."""

    __slots__ = ("basis", "_terms")

    def __init__(self, basis, terms: Optional[Mapping] = None):
        left, right = basis
        self.basis = (_as_basis(left), _as_basis(right))
        clean: Dict[Tuple[Composition, Composition], Fraction] = {}
        for (a, b), c in (terms or {}).items():
            c = _scalar(c)
            key = (as_composition(a), as_composition(b))
            clean[key] = clean.get(key, Fraction(0)) + c
        self._terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def _raw(cls, basis, terms) -> "TensorVector":
        t = cls.__new__(cls)
        t.basis = basis
        t._terms = {k: c for k, c in terms.items() if c}
        return t

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (_sort_key(kv[0][0]), _sort_key(kv[0][1])))

    def __getitem__(self, key) -> Fraction:
        a, b = key
        return self._terms.get((tuple(a), tuple(b)), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return self.basis == other.basis and self._terms == other._terms

    def __hash__(self):
        return hash((self.basis, frozenset(self._terms.items())))

    def __add__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        if other.basis != self.basis:
            raise BasisMismatch("tensor legs carry different bases")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return TensorVector._raw(self.basis, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TensorVector":
        c = _scalar(c)
        return TensorVector._raw(self.basis, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        """Componentwise product (a (x) b)(c (x) d) = ac (x) bd."""
        if not isinstance(other, TensorVector):
            return self.scale(other)
        if other.basis != self.basis:
            raise BasisMismatch("tensor legs carry different bases")
        lb, rb = self.basis
        out: Dict = defaultdict(Fraction)
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in other._terms.items():
                left = product(QSymVector._raw(lb, {a: Fraction(1)}), QSymVector._raw(lb, {c: Fraction(1)}))
                right = product(QSymVector._raw(rb, {b: Fraction(1)}), QSymVector._raw(rb, {d: Fraction(1)}))
                for x, cx in left._terms.items():
                    for y, cy in right._terms.items():
                        out[(x, y)] += c1 * c2 * cx * cy
        return TensorVector._raw(self.basis, out)

    def map_legs(self, left_fn, right_fn) -> "TensorVector":
        """Apply linear maps (QSymVector -> QSymVector) to each leg."""
        out: Dict = defaultdict(Fraction)
        new_basis = None
        for (a, b), c in self._terms.items():
            lv = left_fn(QSymVector._raw(self.basis[0], {a: Fraction(1)}))
            rv = right_fn(QSymVector._raw(self.basis[1], {b: Fraction(1)}))
            new_basis = (lv.basis, rv.basis)
            for x, cx in lv._terms.items():
                for y, cy in rv._terms.items():
                    out[(x, y)] += c * cx * cy
        if new_basis is None:
            probe_l = left_fn(QSymVector._raw(self.basis[0], {}))
            probe_r = right_fn(QSymVector._raw(self.basis[1], {}))
            new_basis = (probe_l.basis, probe_r.basis)
        return TensorVector._raw(new_basis, out)

    def graded_component(self, p: int, q: int) -> "TensorVector":
        return TensorVector._raw(
            self.basis, {k: c for k, c in self._terms.items() if sum(k[0]) == p and sum(k[1]) == q}
        )

    def __repr__(self):
        return f"TensorVector({self.basis[0].value}x{self.basis[1].value}, {self!s})"

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, ((a, b), c) in enumerate(self.items()):
            la = "1" if not a else f"{self.basis[0].value}[{format_composition(a)}]"
            rb = "1" if not b else f"{self.basis[1].value}[{format_composition(b)}]"
            mag = abs(c)
            body = f"{la} (x) {rb}" if mag == 1 else f"{mag}*{la} (x) {rb}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def to_json(self) -> dict:
        return {
            "basis": [self.basis[0].value, self.basis[1].value],
            "terms": [
                {
                    "left": format_composition(a),
                    "right": format_composition(b),
                    "num": str(c.numerator),
                    "den": str(c.denominator),
                }
                for (a, b), c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "TensorVector":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            key = (parse_composition(t["left"]), parse_composition(t["right"]))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(int(t["num"]), int(t.get("den", "1")))
        return cls(tuple(data["basis"]), terms)


def coproduct(u: QSymVector) -> TensorVector:
    """Deconcatenation on M; deconcatenation plus near-splitting on F."""
    if u.basis is Basis.S:
        from .schur import s_coproduct

        return s_coproduct(u)
    out: Dict = defaultdict(Fraction)
    for a, c in u._terms.items():
        cat, near = set_concat_split(a)
        for pair in cat:
            out[pair] += c
        if u.basis is Basis.F:
            for pair in near:
                out[pair] += c
    return TensorVector._raw((u.basis, u.basis), out)


def counit(u: QSymVector) -> Fraction:
    return u[EMPTY]


def coefficient(u: QSymVector, alpha: Sequence[int]) -> Fraction:
    """<K_alpha, u>_K in the basis ``u`` is written in."""
    return u[tuple(alpha)]


def graded_component(u: QSymVector, n: int) -> QSymVector:
    return QSymVector._raw(u.basis, {k: c for k, c in u._terms.items() if sum(k) == n})


def max_weight(u: QSymVector) -> int:
    return max((sum(k) for k in u._terms), default=0)


def tensor_counit_left(t: TensorVector) -> QSymVector:
    """(eps (x) id) t."""
    return QSymVector._raw(t.basis[1], {b: c for (a, b), c in t._terms.items() if not a})


def tensor_counit_right(t: TensorVector) -> QSymVector:
    """(id (x) eps) t."""
    return QSymVector._raw(t.basis[0], {a: c for (a, b), c in t._terms.items() if not b})


def coassociativity_sides(u: QSymVector):
    """Both sides of (Delta (x) id) Delta u = (id (x) Delta) Delta u, as triple maps."""
    first = coproduct(u)
    left: Dict = defaultdict(Fraction)
    right: Dict = defaultdict(Fraction)
    basis = u.basis
    for (a, b), c in first._terms.items():
        for (x, y), cx in coproduct(QSymVector._raw(basis, {a: Fraction(1)}))._terms.items():
            left[(x, y, b)] += c * cx
        for (x, y), cy in coproduct(QSymVector._raw(basis, {b: Fraction(1)}))._terms.items():
            right[(a, x, y)] += c * cy
    clean = lambda d: {k: v for k, v in d.items() if v}
    return clean(left), clean(right)


def linear_combination(basis, pairs: Iterable[Tuple[Sequence[int], object]]) -> QSymVector:
    terms: Dict[Composition, Fraction] = defaultdict(Fraction)
    for comp, c in pairs:
        terms[tuple(comp)] += _scalar(c)
    return QSymVector(basis, terms)
