"""Quasisymmetric Schur functions.

S_alpha is the generating function of semistandard reverse composition
tableaux (SSRCT) of shape alpha.  We expand S_alpha in the monomial basis by
counting tableaux with packed content, build the change-of-basis matrix for
each weight, and route the S-basis product and coproduct through M.

Diagram conventions: rows are numbered top to bottom from 1, columns left to
right from 1.  The inner shape of a skew reverse composition shape sits in the
bottom-left corner; the inner shape of a skew partition shape sits top-left.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
import threading
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as cartesian
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import posets
from .algebra import Basis, BasisMismatch, QSymVector, TensorVector, coproduct, m_product
from .compositions import (
    Composition,
    as_composition,
    col_op,
    compositions_of,
    format_composition,
    parse_composition,
    rem,
    row_op,
    underlying_partition,
)
from .linalg import SingularMatrix, determinant, inverse

__all__ = [
    "SkewReverseShape", "SkewPartitionShape", "SSRCT", "BasisMatrix", "BasisTooLarge",
    "is_valid_ssrct", "enumerate_ssrct", "filling_from_rows", "brute_force_ssrct", "content", "schur_to_m", "basis_matrix",
    "m_to_s", "s_to_m", "s_product", "s_coproduct", "lr_coefficient",
    "rem", "row_op", "col_op", "is_horizontal_strip", "is_vertical_strip",
    "strip_columns", "strip_column_multiset", "pieri_row", "pieri_col",
]

log = logging.getLogger(__name__)

Cell = Tuple[int, int]
INF = float("inf")


# --- shapes ----------------------------------------------------------------------


@dataclass(frozen=True)
class SkewReverseShape:
    """outer // inner, with inner drawn in the bottom-left corner of outer."""

    outer: Composition
    inner: Composition = ()
    check_order: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        outer, inner = as_composition(self.outer), as_composition(self.inner)
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)
        shift = len(outer) - len(inner)
        if shift < 0 or any(b > outer[shift + i] for i, b in enumerate(inner)):
            raise ValueError(f"{inner} does not fit in the bottom-left corner of {outer}")
        if self.check_order and inner and not posets.leq(
            posets.Order.C, inner, outer, bound=max(sum(outer) - sum(inner), 0)
        ):
            raise ValueError(f"{inner} is not below {outer} in the reverse composition order")

    @property
    def inner_cells(self) -> FrozenSet[Cell]:
        shift = len(self.outer) - len(self.inner)
        return frozenset((shift + i + 1, c) for i, b in enumerate(self.inner) for c in range(1, b + 1))

    @property
    def outer_cells(self) -> FrozenSet[Cell]:
        return frozenset((r + 1, c) for r, a in enumerate(self.outer) for c in range(1, a + 1))

    @property
    def cells(self) -> FrozenSet[Cell]:
        return self.outer_cells - self.inner_cells

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def inner_length(self, row: int) -> int:
        """Number of inner cells in ``row``."""
        shift = len(self.outer) - len(self.inner)
        i = row - shift - 1
        return self.inner[i] if 0 <= i < len(self.inner) else 0


@dataclass(frozen=True)
class SkewPartitionShape:
    """lambda / mu with mu in the top-left corner."""

    outer: Composition
    inner: Composition = ()

    def __post_init__(self):
        outer, inner = as_composition(self.outer), as_composition(self.inner)
        for p in (outer, inner):
            if any(a < b for a, b in zip(p, p[1:])):
                raise ValueError(f"{p} is not a partition")
        if len(inner) > len(outer) or any(m > l for m, l in zip(inner, outer)):
            raise ValueError(f"{inner} is not contained in {outer}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)

    @property
    def cells(self) -> FrozenSet[Cell]:
        inner = self.inner + (0,) * (len(self.outer) - len(self.inner))
        return frozenset(
            (r + 1, c) for r, (l, m) in enumerate(zip(self.outer, inner)) for c in range(m + 1, l + 1)
        )

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)


def _cells_of(shape) -> FrozenSet[Cell]:
    return frozenset(shape.cells) if hasattr(shape, "cells") else frozenset(shape)


def is_horizontal_strip(shape) -> bool:
    cols = Counter(c for _, c in _cells_of(shape))
    return all(k <= 1 for k in cols.values())


def is_vertical_strip(shape) -> bool:
    rows = Counter(r for r, _ in _cells_of(shape))
    return all(k <= 1 for k in rows.values())


def strip_columns(shape) -> Tuple[int, ...]:
    """Columns occupied by a horizontal strip, increasing."""
    if not is_horizontal_strip(shape):
        raise ValueError("not a horizontal strip")
    return tuple(sorted(c for _, c in _cells_of(shape)))


def strip_column_multiset(shape) -> Tuple[int, ...]:
    """Columns of a vertical strip with multiplicity, weakly increasing."""
    if not is_vertical_strip(shape):
        raise ValueError("not a vertical strip")
    return tuple(sorted(c for _, c in _cells_of(shape)))


# --- tableaux --------------------------------------------------------------------


@dataclass(frozen=True)
class SSRCT:
    shape: SkewReverseShape
    filling: Mapping[Cell, int]

    def rows(self) -> List[List[int]]:
        """Skew entries of each row, top to bottom, left to right."""
        out = []
        for r, a in enumerate(self.shape.outer, start=1):
            out.append([self.filling[(r, c)] for c in range(1, a + 1) if (r, c) in self.filling])
        return out

    def content(self) -> Tuple[int, ...]:
        return content(self)

    def to_json(self) -> dict:
        return {
            "outer": format_composition(self.shape.outer),
            "inner": format_composition(self.shape.inner),
            "rows": self.rows(),
        }

    @classmethod
    def from_json(cls, data) -> "SSRCT":
        if isinstance(data, str):
            data = json.loads(data)
        shape = SkewReverseShape(parse_composition(data["outer"]), parse_composition(data.get("inner", "")))
        return cls(shape, filling_from_rows(shape, data["rows"]))


def filling_from_rows(shape: SkewReverseShape, rows: Sequence[Sequence[int]]) -> Dict[Cell, int]:
    if len(rows) != len(shape.outer):
        raise ValueError("one row of entries is needed per row of the outer shape")
    filling = {}
    for r, (a, entries) in enumerate(zip(shape.outer, rows), start=1):
        start = shape.inner_length(r) + 1
        if len(entries) != a - start + 1:
            raise ValueError(f"row {r} needs {a - start + 1} entries, got {len(entries)}")
        for c, v in zip(range(start, a + 1), entries):
            filling[(r, c)] = v
    return filling


def is_valid_ssrct(shape: SkewReverseShape, filling: Mapping[Cell, int]) -> bool:
    """Check the row, first-column and triple conditions.

    Inner cells read as +infinity.  Cells outside the outer diagram are absent:
    an absent (i, k) never triggers the triple rule, and an absent (i, k+1)
    makes a triggered rule fail.
    """
    cells = shape.cells
    if set(filling) != set(cells):
        raise ValueError("filling must assign exactly the cells of the shape")
    if any(not isinstance(v, int) or v < 1 for v in filling.values()):
        return False
    inner = shape.inner_cells
    outer = shape.outer_cells

    def val(cell):
        if cell in inner:
            return INF
        return filling[cell]

    for r, a in enumerate(shape.outer, start=1):
        row = [filling[(r, c)] for c in range(1, a + 1) if (r, c) in filling]
        if any(x < y for x, y in zip(row, row[1:])):
            return False
    first = [filling[(r, 1)] for r in range(1, len(shape.outer) + 1) if (r, 1) in filling]
    if any(x >= y for x, y in zip(first, first[1:])):
        return False
    for (j, c) in cells:
        if c < 2:
            continue
        k = c - 1
        x = filling[(j, c)]
        for i in range(1, j):
            if (i, k) not in outer or val((i, k)) < x:
                continue
            if (i, c) not in outer or not val((i, c)) > x:
                return False
    return True


def _cell_plan(shape: SkewReverseShape):
    """Fill order (column-major, top to bottom) plus the constraints each cell sees."""
    cells = sorted(shape.cells, key=lambda rc: (rc[1], rc[0]))
    index = {cell: t for t, cell in enumerate(cells)}
    inner, outer = shape.inner_cells, shape.outer_cells

    def ref(cell):
        # an already-filled index, INF for inner cells, None when absent
        if cell in inner:
            return INF
        if cell in outer:
            return index[cell]
        return None

    plan = []
    prev_first = None
    for (j, c) in cells:
        left = index.get((j, c - 1)) if c > 1 else None
        above = None
        if c == 1:
            above = prev_first
            prev_first = index[(j, c)]
        triples = []
        if c > 1:
            for i in range(1, j):
                ik = ref((i, c - 1))
                if ik is None:
                    continue
                triples.append((ik, ref((i, c))))
        plan.append((left, above, tuple(triples)))
    return cells, plan


def _fillings(shape: SkewReverseShape, max_entry: int) -> Iterator[List[int]]:
    cells, plan = _cell_plan(shape)
    n = len(cells)
    vals = [0] * n

    def lookup(ref):
        return INF if ref is INF else vals[ref]

    def rec(t):
        if t == n:
            yield vals
            return
        left, above, triples = plan[t]
        hi = max_entry if left is None else min(max_entry, vals[left])
        lo = 1 if above is None else vals[above] + 1
        for v in range(lo, hi + 1):
            ok = True
            for ik, ik1 in triples:
                if lookup(ik) >= v:
                    if ik1 is None or not lookup(ik1) > v:
                        ok = False
                        break
            if ok:
                vals[t] = v
                yield from rec(t + 1)

    yield from rec(0)


def enumerate_ssrct(shape, max_entry: int) -> List[SSRCT]:
    """All SSRCT of ``shape`` with entries in 1..max_entry.

    Ordered lexicographically by entries read column by column, top to bottom.
    """
    if not isinstance(shape, SkewReverseShape):
        shape = SkewReverseShape(tuple(shape))
    if max_entry < 1:
        raise ValueError("max_entry must be positive")
    cells, _ = _cell_plan(shape)
    return [SSRCT(shape, dict(zip(cells, vals))) for vals in _fillings(shape, max_entry)]


def content(tau: SSRCT) -> Tuple[int, ...]:
    values = list(tau.filling.values())
    if not values:
        return ()
    counts = Counter(values)
    return tuple(counts.get(i, 0) for i in range(1, max(values) + 1))


@lru_cache(maxsize=None)
def _schur_m_terms(alpha: Composition) -> Tuple[Tuple[Composition, int], ...]:
    n = sum(alpha)
    if n == 0:
        return (((), 1),)
    shape = SkewReverseShape(alpha, (), check_order=False)
    counts: Dict[Composition, int] = defaultdict(int)
    for vals in _fillings(shape, n):
        c = Counter(vals)
        top = max(c)
        # only packed contents (no gaps) are M-basis coefficients
        if len(c) == top:
            counts[tuple(c[i] for i in range(1, top + 1))] += 1
    return tuple(sorted(counts.items()))


def schur_to_m(alpha: Sequence[int]) -> QSymVector:
    """S_alpha in the monomial basis."""
    return QSymVector(Basis.M, dict(_schur_m_terms(as_composition(alpha))))


# --- change of basis -------------------------------------------------------------

CACHE_FORMAT_VERSION = 1
_DEFAULT_MAX_WEIGHT = 9


class BasisTooLarge(ValueError):
    pass


def max_s_weight() -> int:
    env = os.environ.get("QSYM_MAX_S_WEIGHT")
    return int(env) if env else _DEFAULT_MAX_WEIGHT


def cache_dir() -> Optional[Path]:
    """Disk cache location: $QSYM_CACHE_DIR (empty disables), else ~/.cache/qsym."""
    env = os.environ.get("QSYM_CACHE_DIR")
    if env is not None:
        return Path(env) if env else None
    return Path.home() / ".cache" / "qsym"


@dataclass
class BasisMatrix:
    """Row alpha holds the M-coordinates of S_alpha; rows and columns follow compositions_of(n)."""

    n: int
    comps: Tuple[Composition, ...]
    rows: List[List[int]]
    _inverse: Optional[List[List[Fraction]]] = field(default=None, repr=False)

    @property
    def index(self) -> Dict[Composition, int]:
        return {c: i for i, c in enumerate(self.comps)}

    @property
    def inverse(self) -> List[List[Fraction]]:
        if self._inverse is None:
            try:
                self._inverse = inverse(self.rows)
            except SingularMatrix as exc:  # pragma: no cover - S is a basis
                raise RuntimeError(f"S-to-M matrix of weight {self.n} is singular") from exc
        return self._inverse

    def determinant(self) -> Fraction:
        return determinant(self.rows)

    def to_json(self) -> dict:
        inv = self.inverse
        return {
            "format": "qsym-basis-matrix",
            "version": CACHE_FORMAT_VERSION,
            "n": self.n,
            "comps": [format_composition(c) for c in self.comps],
            "rows": [[str(x) for x in row] for row in self.rows],
            "inverse": [[str(x) for x in row] for row in inv],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BasisMatrix":
        if data.get("format") != "qsym-basis-matrix" or data.get("version") != CACHE_FORMAT_VERSION:
            raise ValueError("unrecognised basis matrix cache file")
        comps = tuple(parse_composition(c) for c in data["comps"])
        rows = [[int(x) for x in row] for row in data["rows"]]
        inv = [[Fraction(x) for x in row] for row in data["inverse"]]
        return cls(int(data["n"]), comps, rows, inv)


_matrices: Dict[int, BasisMatrix] = {}
_matrix_lock = threading.Lock()


def _cache_file(n: int) -> Optional[Path]:
    d = cache_dir()
    return None if d is None else d / f"s_basis_n{n}_v{CACHE_FORMAT_VERSION}.json"


def _load(n: int) -> Optional[BasisMatrix]:
    path = _cache_file(n)
    if path is None or not path.exists():
        return None
    try:
        bm = BasisMatrix.from_json(json.loads(path.read_text()))
    except (OSError, ValueError, KeyError) as exc:
        log.warning("ignoring unreadable basis cache %s: %s", path, exc)
        return None
    if bm.n != n or bm.comps != compositions_of(n):
        log.warning("ignoring mismatched basis cache %s", path)
        return None
    return bm


def _store(bm: BasisMatrix) -> None:
    path = _cache_file(bm.n)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(bm.to_json(), fh)
        os.replace(tmp, path)
    except OSError as exc:
        log.warning("could not write basis cache %s: %s", path, exc)


def basis_matrix(n: int) -> BasisMatrix:
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if n > max_s_weight():
        raise BasisTooLarge(f"S-basis weight {n} exceeds the configured cap {max_s_weight()}")
    bm = _matrices.get(n)
    if bm is not None:
        return bm
    bm = _load(n)
    if bm is None:
        comps = compositions_of(n)
        idx = {c: i for i, c in enumerate(comps)}
        rows = []
        for alpha in comps:
            row = [0] * len(comps)
            for gamma, c in _schur_m_terms(alpha):
                row[idx[gamma]] = c
            rows.append(row)
        bm = BasisMatrix(n, comps, rows)
        bm.inverse  # noqa: B018 - computed once, persisted with the matrix
        _store(bm)
    with _matrix_lock:
        return _matrices.setdefault(n, bm)


def s_to_m(u: QSymVector) -> QSymVector:
    if u.basis is not Basis.S:
        raise BasisMismatch(f"s_to_m needs the S basis, got {u.basis.value}")
    out: Dict[Composition, Fraction] = defaultdict(Fraction)
    for alpha, c in u.terms.items():
        for gamma, k in _schur_m_terms(alpha):
            out[gamma] += c * k
    return QSymVector(Basis.M, out)


def m_to_s(u: QSymVector) -> QSymVector:
    if u.basis is not Basis.M:
        raise BasisMismatch(f"m_to_s needs the M basis, got {u.basis.value}")
    by_weight: Dict[int, Dict[Composition, Fraction]] = defaultdict(dict)
    for gamma, c in u.terms.items():
        by_weight[sum(gamma)][gamma] = c
    out: Dict[Composition, Fraction] = defaultdict(Fraction)
    for n, part in by_weight.items():
        bm = basis_matrix(n)
        idx = bm.index
        inv = bm.inverse
        for gamma, c in part.items():
            for j, x in enumerate(inv[idx[gamma]]):
                if x:
                    out[bm.comps[j]] += c * x
    return QSymVector(Basis.S, out)


def s_product(u: QSymVector, v: QSymVector) -> QSymVector:
    for w in (u, v):
        if w.basis is not Basis.S:
            raise BasisMismatch(f"s_product needs the S basis, got {w.basis.value}")
    return m_to_s(m_product(s_to_m(u), s_to_m(v)))


@lru_cache(maxsize=None)
def _s_coproduct_basis(gamma: Composition) -> TensorVector:
    delta = coproduct(schur_to_m(gamma))
    return delta.map_legs(m_to_s, m_to_s)


def s_coproduct(u: QSymVector) -> TensorVector:
    """Delta in the S basis: expand to M, deconcatenate, convert both legs back."""
    if u.basis is not Basis.S:
        raise BasisMismatch(f"s_coproduct needs the S basis, got {u.basis.value}")
    total = TensorVector((Basis.S, Basis.S))
    for gamma, c in u.terms.items():
        total = total + _s_coproduct_basis(gamma).scale(c)
    return total


def lr_coefficient(alpha: Sequence[int], beta: Sequence[int], gamma: Sequence[int]) -> Fraction:
    """C^gamma_{alpha, beta}: coefficient of S_alpha (x) S_beta in Delta(S_gamma)."""
    alpha, beta, gamma = (as_composition(x) for x in (alpha, beta, gamma))
    if sum(alpha) + sum(beta) != sum(gamma):
        return Fraction(0)
    return _s_coproduct_basis(gamma)[(alpha, beta)]


# --- Pieri rules -----------------------------------------------------------------


def _multiset_permutations(parts: Sequence[int]) -> Iterator[Composition]:
    counts = Counter(parts)
    keys = sorted(counts)
    n = len(parts)
    buf: List[int] = []

    def rec():
        if len(buf) == n:
            yield tuple(buf)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                buf.append(k)
                yield from rec()
                buf.pop()
                counts[k] += 1

    yield from rec()


def _horizontal_strips(mu: Composition, n: int) -> Iterator[Composition]:
    """Partitions lambda with lambda/mu a horizontal strip of size n."""
    rows = list(mu) + [0]

    def rec(i, left, acc):
        if i == len(rows):
            if left == 0:
                yield tuple(p for p in acc if p)
            return
        cap = left if i == 0 else min(left, rows[i - 1] - rows[i])
        for add in range(cap, -1, -1):
            yield from rec(i + 1, left - add, acc + [rows[i] + add])

    yield from rec(0, n, [])


def _vertical_strips(mu: Composition, n: int) -> Iterator[Composition]:
    """Partitions lambda with lambda/mu a vertical strip of size n."""
    rows = list(mu) + [0] * n

    def rec(i, left, acc):
        if left == 0:
            yield tuple(p for p in acc + rows[i:] if p)
            return
        if i == len(rows):
            return
        for add in (1, 0):
            val = rows[i] + add
            if i and val > acc[i - 1]:
                continue
            if add > left:
                continue
            yield from rec(i + 1, left - add, acc + [val])

    yield from rec(0, n, [])


def pieri_row(n: int, alpha: Sequence[int]) -> QSymVector:
    """S_n S_alpha by the row-operator rule."""
    alpha = as_composition(alpha)
    if n < 1:
        raise ValueError("n must be positive")
    mu = underlying_partition(alpha)
    terms = {}
    for lam in _horizontal_strips(mu, n):
        cols = strip_columns(SkewPartitionShape(lam, mu))
        for beta in _multiset_permutations(lam):
            if row_op(beta, cols) == alpha:
                terms[beta] = 1
    return QSymVector(Basis.S, terms)


def pieri_col(n: int, alpha: Sequence[int]) -> QSymVector:
    """S_{1^n} S_alpha by the column-operator rule."""
    alpha = as_composition(alpha)
    if n < 1:
        raise ValueError("n must be positive")
    mu = underlying_partition(alpha)
    terms = {}
    for lam in _vertical_strips(mu, n):
        cols = strip_column_multiset(SkewPartitionShape(lam, mu))
        for beta in _multiset_permutations(lam):
            if col_op(beta, cols) == alpha:
                terms[beta] = 1
    return QSymVector(Basis.S, terms)


def brute_force_ssrct(shape: SkewReverseShape, max_entry: int) -> List[Dict[Cell, int]]:
    """Every filling that passes :func:`is_valid_ssrct`; a slow reference enumerator."""
    cells = sorted(shape.cells, key=lambda rc: (rc[1], rc[0]))
    out = []
    for vals in cartesian(range(1, max_entry + 1), repeat=len(cells)):
        filling = dict(zip(cells, vals))
        if is_valid_ssrct(shape, filling):
            out.append(filling)
    return out
