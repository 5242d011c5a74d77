"""Integer compositions and the operations QSym indexes its bases with.

A composition is stored as a plain tuple of positive ints; the empty tuple
is the empty composition.  Everything here is a pure function.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

Composition = Tuple[int, ...]
Partition = Tuple[int, ...]

EMPTY: Composition = ()


def as_composition(parts: Iterable[int]) -> Composition:
    """Validate and freeze ``parts`` into a composition tuple."""
    comp = tuple(parts)
    for p in comp:
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise ValueError(f"composition parts must be positive integers, got {comp!r}")
    return comp


def parse_composition(text: str) -> Composition:
    """Parse the comma format, e.g. ``"1,3,2"``; ``""`` is the empty composition."""
    text = text.strip()
    if text in ("", "()", "[]"):
        return EMPTY
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed composition {text!r}; expected e.g. '1,3,2'") from None
    return as_composition(parts)


def format_composition(alpha: Sequence[int]) -> str:
    return ",".join(str(p) for p in alpha)


def weight(alpha: Sequence[int]) -> int:
    return sum(alpha)


def length(alpha: Sequence[int]) -> int:
    return len(alpha)


@dataclass(frozen=True)
class DescentSet:
    """A subset of [n-1], the set-side image of a composition of n."""

    n: int
    elements: Tuple[int, ...]

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if self.n < 0:
            raise ValueError("ambient n must be nonnegative")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError(f"descent set must be strictly increasing: {els}")
        if els and (els[0] < 1 or els[-1] > self.n - 1):
            raise ValueError(f"descent set {els} not inside [1, {self.n - 1}]")

    def to_json(self) -> dict:
        return {"n": self.n, "set": list(self.elements)}

    @classmethod
    def from_json(cls, data: dict) -> "DescentSet":
        return cls(int(data["n"]), tuple(int(x) for x in data["set"]))


def set_of(alpha: Sequence[int]) -> DescentSet:
    """Partial sums of all but the last part.

    >>> set_of((1, 3, 2))
    DescentSet(n=6, elements=(1, 4))
    """
    sums = []
    total = 0
    for p in alpha[:-1]:
        total += p
        sums.append(total)
    return DescentSet(sum(alpha), tuple(sums))


def comp_of(s: DescentSet) -> Composition:
    if s.n == 0:
        return EMPTY
    cuts = (0,) + s.elements + (s.n,)
    return tuple(b - a for a, b in zip(cuts, cuts[1:]))


def reversal(alpha: Sequence[int]) -> Composition:
    return tuple(reversed(alpha))


def complement(alpha: Sequence[int]) -> Composition:
    """The composition whose descent set is the complement inside [|alpha|-1]."""
    s = set_of(alpha)
    if s.n == 0:
        return EMPTY
    present = set(s.elements)
    rest = tuple(i for i in range(1, s.n) if i not in present)
    return comp_of(DescentSet(s.n, rest))


def transpose(alpha: Sequence[int]) -> Composition:
    return complement(reversal(alpha))


def refines(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """True when ``beta`` arises from ``alpha`` by summing consecutive parts."""
    if sum(alpha) != sum(beta):
        return False
    return set(set_of(beta).elements) <= set(set_of(alpha).elements)


def concat(alpha: Sequence[int], beta: Sequence[int]) -> Composition:
    return tuple(alpha) + tuple(beta)


def near_concat(alpha: Sequence[int], beta: Sequence[int]) -> Composition:
    if not alpha or not beta:
        raise ValueError("near concatenation needs two nonempty compositions")
    return tuple(alpha[:-1]) + (alpha[-1] + beta[0],) + tuple(beta[1:])


def underlying_partition(alpha: Sequence[int]) -> Partition:
    return tuple(sorted(alpha, reverse=True))


@lru_cache(maxsize=None)
def compositions_of(n: int) -> Tuple[Composition, ...]:
    """All compositions of ``n`` in lexicographic order of their parts."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(1, n + 1):
        for rest in compositions_of(n - first):
            out.append((first,) + rest)
    return tuple(out)


def compositions_up_to(n: int) -> Tuple[Composition, ...]:
    return tuple(c for k in range(n + 1) for c in compositions_of(k))


def refinements(alpha: Sequence[int]) -> Tuple[Composition, ...]:
    """Every beta with beta refining alpha (alpha included)."""
    out = [EMPTY]
    for p in alpha:
        out = [b + piece for b in out for piece in compositions_of(p)]
    return tuple(out)


def set_concat_split(delta: Sequence[int]):
    """Return ``(concat_splits, near_splits)`` of ``delta``.

    ``concat_splits`` lists every (alpha, beta) with delta = alpha . beta,
    empty factors included; ``near_splits`` every (alpha, beta) with
    delta = alpha (.) beta, both factors nonempty.
    """
    delta = tuple(delta)
    concat_splits = [(delta[:i], delta[i:]) for i in range(len(delta) + 1)]
    near_splits = []
    for i, part in enumerate(delta):
        for a in range(1, part):
            near_splits.append((delta[:i] + (a,), (part - a,) + delta[i + 1:]))
    return concat_splits, near_splits


def rem(alpha: Sequence[int], s: int) -> Optional[Composition]:
    """Subtract 1 from the rightmost part equal to ``s``; None when there is none.

    A part that drops to 0 is removed, so ``rem((1,), 1) == ()`` while
    ``rem((1, 1), 3) is None``.
    """
    if s < 1:
        raise ValueError("rem needs a positive part size")
    alpha = tuple(alpha)
    for i in range(len(alpha) - 1, -1, -1):
        if alpha[i] == s:
            if s == 1:
                return alpha[:i] + alpha[i + 1:]
            return alpha[:i] + (s - 1,) + alpha[i + 1:]
    return None


def row_op(alpha: Sequence[int], sizes: Sequence[int]) -> Optional[Composition]:
    """Apply rem for strictly increasing ``sizes``, largest first."""
    sizes = list(sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"row operator needs strictly increasing sizes, got {sizes}")
    out: Optional[Composition] = tuple(alpha)
    for s in reversed(sizes):
        out = rem(out, s)
        if out is None:
            return None
    return out


def col_op(alpha: Sequence[int], sizes: Sequence[int]) -> Optional[Composition]:
    """Apply rem for weakly increasing ``sizes``, smallest first."""
    sizes = list(sizes)
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"column operator needs weakly increasing sizes, got {sizes}")
    out: Optional[Composition] = tuple(alpha)
    for s in sizes:
        out = rem(out, s)
        if out is None:
            return None
    return out
