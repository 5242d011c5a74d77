"""The four graded orders on compositions: reverse composition (C),
monomial Pieri (M), fundamental Pieri (F) and quasisymmetric Schur Pieri (Q).
"""
from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .compositions import (
    Composition,
    compositions_of,
    format_composition,
    parse_composition,
    rem,
)


class Order(str, enum.Enum):
    C = "C"
    M = "M"
    F = "F"
    Q = "Q"


DEFAULT_LEQ_BOUND = 16


def _as_order(order) -> Order:
    return order if isinstance(order, Order) else Order(str(order).upper())


def _c_up(alpha: Composition) -> set:
    out = {(1,) + alpha}
    seen = set()
    for j, part in enumerate(alpha):
        # only the leftmost part of each size may grow
        if part not in seen:
            out.add(alpha[:j] + (part + 1,) + alpha[j + 1:])
        seen.add(part)
    return out


def _m_up(alpha: Composition) -> set:
    out = {alpha[:r] + (1,) + alpha[r:] for r in range(len(alpha) + 1)}
    out.update(alpha[:j] + (p + 1,) + alpha[j + 1:] for j, p in enumerate(alpha))
    return out


def _f_up(alpha: Composition) -> set:
    if not alpha:
        # F_1 F_() = F_1; the minimum is covered by (1) as in the other orders
        return {(1,)}
    out = set()
    for j, p in enumerate(alpha):
        head, tail = alpha[:j], alpha[j + 1:]
        out.add(head + (p + 1,) + tail)
        for h in range(1, p + 1):
            out.add(head + (h, p + 1 - h) + tail)
    return out


def _q_down(beta: Composition) -> set:
    return {rem(beta, s) for s in set(beta)}


@lru_cache(maxsize=None)
def _cover_table(order: Order, n: int) -> Tuple[Dict, Dict]:
    """Up-covers of weight-``n`` compositions and down-covers of weight ``n+1`` ones."""
    up: Dict[Composition, set] = {a: set() for a in compositions_of(n)}
    down: Dict[Composition, set] = {b: set() for b in compositions_of(n + 1)}
    if order is Order.Q:
        for beta in compositions_of(n + 1):
            for alpha in _q_down(beta):
                down[beta].add(alpha)
                up[alpha].add(beta)
    else:
        step = {Order.C: _c_up, Order.M: _m_up, Order.F: _f_up}[order]
        for alpha in compositions_of(n):
            for beta in step(alpha):
                up[alpha].add(beta)
                down[beta].add(alpha)
    freeze = lambda d: {k: frozenset(v) for k, v in d.items()}
    return freeze(up), freeze(down)


def up_covers(order, alpha: Sequence[int]) -> FrozenSet[Composition]:
    """All beta with alpha covered by beta."""
    alpha = tuple(alpha)
    return _cover_table(_as_order(order), sum(alpha))[0][alpha]


def down_covers(order, beta: Sequence[int]) -> FrozenSet[Composition]:
    """D(beta): the compositions covered by ``beta``."""
    beta = tuple(beta)
    if not beta:
        return frozenset()
    return _cover_table(_as_order(order), sum(beta) - 1)[1][beta]


def leq(order, alpha: Sequence[int], beta: Sequence[int], bound: int = DEFAULT_LEQ_BOUND) -> bool:
    """alpha <= beta, found by walking up one rank at a time."""
    order = _as_order(order)
    alpha, beta = tuple(alpha), tuple(beta)
    gap = sum(beta) - sum(alpha)
    if gap < 0:
        return False
    if gap > bound:
        raise ValueError(f"weight gap {gap} exceeds the comparability bound {bound}")
    frontier = {alpha}
    for _ in range(gap):
        frontier = {b for a in frontier for b in up_covers(order, a)}
    return beta in frontier


@dataclass
class HasseDiagram:
    order: Order
    max_weight: int
    nodes: List[Composition] = field(default_factory=list)
    edges: List[Tuple[Composition, Composition]] = field(default_factory=list)

    def to_dot(self) -> str:
        name = f"{self.order.value}_order"
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        by_rank = defaultdict(list)
        for node in self.nodes:
            by_rank[sum(node)].append(node)
        for rank in sorted(by_rank):
            members = " ".join(f'"{format_composition(c)}"' for c in by_rank[rank])
            lines.append(f"  {{ rank=same; {members} }}")
            for c in by_rank[rank]:
                lines.append(f'  "{format_composition(c)}" [label="{format_composition(c)}", rank={rank}];')
        for a, b in self.edges:
            lines.append(f'  "{format_composition(a)}" -> "{format_composition(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "order": self.order.value,
            "max_weight": self.max_weight,
            "nodes": [format_composition(c) for c in self.nodes],
            "edges": [[format_composition(a), format_composition(b)] for a, b in self.edges],
        }

    @classmethod
    def from_json(cls, data) -> "HasseDiagram":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            Order(data["order"]),
            int(data["max_weight"]),
            [parse_composition(c) for c in data["nodes"]],
            [(parse_composition(a), parse_composition(b)) for a, b in data["edges"]],
        )


def hasse(order, max_weight: int) -> HasseDiagram:
    """Cover edges among the compositions of weight 1..max_weight."""
    order = _as_order(order)
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    nodes = [c for n in range(1, max_weight + 1) for c in compositions_of(n)]
    edges = []
    for n in range(1, max_weight):
        for alpha in compositions_of(n):
            for beta in sorted(up_covers(order, alpha)):
                edges.append((alpha, beta))
    return HasseDiagram(order, max_weight, nodes, edges)


def equal_down_set_pairs(order, n: int) -> List[Tuple[Composition, Composition]]:
    """Unordered pairs of distinct compositions of ``n`` with the same down-cover set."""
    groups = defaultdict(list)
    for beta in compositions_of(n):
        groups[down_covers(order, beta)].append(beta)
    pairs = []
    for members in groups.values():
        members.sort()
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                pairs.append((a, b))
    pairs.sort()
    return pairs


def q_classification_predicate(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """Whether {alpha, beta} = {(P, 1, 2), (P, 2, 1)} with P a word in {1, 2}.

    Any such P is 1^{i1} 2^{j1} ... 1^{ik} 2^{jk}, so this is the
    exponent-family description read directly.
    """
    a, b = sorted((tuple(alpha), tuple(beta)))
    if len(a) < 2 or len(a) != len(b):
        return False
    # lexicographically (P,1,2) < (P,2,1)
    return (
        a[-2:] == (1, 2)
        and b[-2:] == (2, 1)
        and a[:-2] == b[:-2]
        and all(p in (1, 2) for p in a[:-2])
    )


def _c_tail_ok(bs: Sequence[int]) -> bool:
    running = 1  # b_0
    for b in bs:
        if b > running + 1:
            return False
        running = max(running, b)
    return True


def c_classification_predicate(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """The three families of distinct pairs sharing a C-order down-cover set."""
    alpha, beta = tuple(alpha), tuple(beta)
    if alpha == beta:
        return False
    if len(alpha) > len(beta):
        alpha, beta = beta, alpha
    if (alpha, beta) in (((2,), (1, 1)), ((3,), (1, 2))):
        return True
    if len(alpha) < 2 or len(beta) != len(alpha) + 1:
        return False
    a = alpha[0] - 1
    if a not in (1, 2) or alpha[1] != 1:
        return False
    tail = alpha[2:]
    return beta == (1, a, 1) + tail and _c_tail_ok(tail)
