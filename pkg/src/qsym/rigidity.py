"""Bounded, exhaustive checks of the rigidity results and the facts they rest on.

Every check is run at a weight bound and reports "verified up to N"; nothing
here proves a theorem.  ``run_all`` executes the whole manifest and returns a
report whose JSON form is deterministic apart from timings.
"""
from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, product as cartesian
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import morphisms, posets
from .algebra import F, M, S, Basis, QSymVector, f_product, f_to_m, m_product
from .compositions import (
    Composition,
    complement,
    compositions_of,
    compositions_up_to,
    concat,
    format_composition,
    near_concat,
    parse_composition,
    reversal,
)
from .posets import Order
from .schur import (
    SkewReverseShape,
    is_vertical_strip,
    lr_coefficient,
    pieri_col,
    pieri_row,
    s_product,
    schur_to_m,
)

SUITE_VERSION = "1.0"

DEFAULT_CONFIG: Dict[str, object] = {
    "automorphism_suite": 7,
    "c_classification": 10,
    "complement_duality": 10,
    "downset_rigidity_F": 9,
    "downset_rigidity_M": 9,
    "lemma_term_counts": 3,
    "lr_vertical_strip": 6,
    "order_inclusions": 9,
    "pieri_consistency": {"mf": 6, "s": 5},
    "q_classification": 10,
    "s_equals_f": 7,
}

# Cover edges of the four orders on compositions of weight 1..4, as drawn in
# the standard Hasse diagrams.  Kept as literal data so the generated
# diagrams are compared with something that was not computed here.
_Q4 = """1>1,1 1>2 1,1>1,1,1 1,1>1,2 1,1>2,1 2>1,2 2>2,1 2>3 1,1,1>1,1,1,1
1,1,1>1,1,2 1,1,1>1,2,1 1,1,1>2,1,1 1,2>1,1,2 1,2>1,2,1 1,2>1,3 2,1>2,1,1
2,1>2,2 2,1>3,1 3>1,3 3>3,1 3>4"""
REFERENCE_HASSE_4: Dict[str, str] = {
    "C": """1>1,1 1>2 1,1>1,1,1 1,1>2,1 2>1,2 2>3 1,1,1>1,1,1,1 1,1,1>2,1,1
1,2>1,1,2 1,2>1,3 1,2>2,2 2,1>1,2,1 2,1>2,2 2,1>3,1 3>1,3 3>4""",
    "Q": _Q4,
    "M": _Q4 + " 1,2>2,2 2,1>1,2,1",
    "F": _Q4 + " 1,2>2,2 2,1>1,2,1 3>2,2",
}


def reference_edges(order) -> List[Tuple[Composition, Composition]]:
    text = REFERENCE_HASSE_4[Order(order).value if not isinstance(order, Order) else order.value]
    edges = []
    for tok in text.split():
        a, b = tok.split(">")
        edges.append((parse_composition(a), parse_composition(b)))
    return sorted(edges)


@dataclass
class CheckResult:
    check_id: str
    bound: object
    passed: bool
    details: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    def __post_init__(self):
        if not self.passed and not self.details:
            self.details = ["failed without a recorded witness"]

    def __bool__(self):
        return self.passed

    def to_json(self, timing: bool = True) -> dict:
        out = {"check_id": self.check_id, "bound": self.bound, "pass": self.passed, "details": list(self.details)}
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


@dataclass
class VerificationReport:
    version: str
    config: Dict[str, object]
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, check_id: str) -> CheckResult:
        return next(r for r in self.results if r.check_id == check_id)

    def to_json(self, timing: bool = True) -> dict:
        return {
            "suite": "qsym-rigidity",
            "version": self.version,
            "config": self.config,
            "pass": self.passed,
            "results": [r.to_json(timing) for r in self.results],
        }

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True)


def _fmt(*comps) -> str:
    return " ".join("(" + format_composition(c) + ")" for c in comps)


# --- individual checks -------------------------------------------------------------

CoverFn = Callable[[Order, Composition], frozenset]


def check_order_inclusions(n: int, covers: Optional[CoverFn] = None) -> CheckResult:
    """Cover-level inclusions C in M, Q in M, M in F for weights <= n,
    plus the weight-4 Hasse diagrams against the reference edge lists."""
    covers = covers or posets.up_covers
    details = []
    for alpha in compositions_up_to(n - 1):
        up = {o: set(covers(o, alpha)) for o in Order}
        for small, big in ((Order.C, Order.M), (Order.Q, Order.M), (Order.M, Order.F)):
            extra = up[small] - up[big]
            for beta in sorted(extra):
                details.append(f"{small.value}-cover {_fmt(alpha, beta)} is not an {big.value}-cover")
    if n >= 4:
        for o in Order:
            got = sorted((a, b) for a in compositions_up_to(3) if a for b in covers(o, a))
            ref = reference_edges(o)
            for a, b in sorted(set(got) - set(ref)):
                details.append(f"{o.value} diagram has unexpected edge {_fmt(a, b)}")
            for a, b in sorted(set(ref) - set(got)):
                details.append(f"{o.value} diagram lacks edge {_fmt(a, b)}")
    return CheckResult("order_inclusions", n, not details, details)


def check_downset_rigidity(order, n: int) -> CheckResult:
    order = Order(order)
    if order not in (Order.M, Order.F):
        raise ValueError("down-set rigidity is checked for the M and F orders")
    if n < 4:
        raise ValueError("n must be at least 4")
    details = []
    for k in range(4, n + 1):
        for a, b in posets.equal_down_set_pairs(order, k):
            details.append(f"weight {k}: {_fmt(a, b)} share a down-set")
    passed = not details
    # weight 3 is below the rigidity threshold; report what happens there
    for a, b in posets.equal_down_set_pairs(order, 3):
        details.append(f"boundary (weight 3, expected): {_fmt(a, b)} share a down-set")
    return CheckResult(f"downset_rigidity_{order.value}", n, passed, details)


def _classification(order: Order, lo: int, n: int, predicate, check_id: str) -> CheckResult:
    details = []
    total = 0
    for k in range(lo, n + 1):
        found = set(posets.equal_down_set_pairs(order, k))
        total += len(found)
        expected = {(a, b) for a, b in combinations(compositions_of(k), 2) if predicate(a, b)}
        for a, b in sorted(found - expected):
            details.append(f"weight {k}: {_fmt(a, b)} share a down-set but the predicate rejects them")
        for a, b in sorted(expected - found):
            details.append(f"weight {k}: predicate accepts {_fmt(a, b)} but the down-sets differ")
    passed = not details
    if passed:
        details.append(f"{total} equal-down-set pairs over weights {lo}..{n}, all predicted")
    return CheckResult(check_id, n, passed, details)


def check_q_classification(n: int) -> CheckResult:
    return _classification(Order.Q, 3, n, posets.q_classification_predicate, "q_classification")


def check_c_classification(n: int) -> CheckResult:
    return _classification(Order.C, 2, n, posets.c_classification_predicate, "c_classification")


def _m1_formula(alpha: Composition) -> QSymVector:
    terms = Counter(alpha[:r] + (1,) + alpha[r:] for r in range(len(alpha) + 1))
    terms.update(alpha[:r] + (alpha[r] + 1,) + alpha[r + 1:] for r in range(len(alpha)))
    return QSymVector(Basis.M, terms)


def check_pieri_consistency(n: int, s_bound: Optional[int] = None, max_multiplier: int = 3) -> CheckResult:
    s_bound = n if s_bound is None else s_bound
    details = []
    for alpha in compositions_up_to(n):
        if m_product(M(1), M(*alpha)) != _m1_formula(alpha):
            details.append(f"M_1 M_alpha formula fails at {_fmt(alpha)}")
        want = QSymVector(Basis.F, {b: 1 for b in posets.up_covers(Order.F, alpha)})
        if f_product(F(1), F(*alpha)) != want:
            details.append(f"F_1 F_alpha cover sum fails at {_fmt(alpha)}")
    for alpha in compositions_up_to(s_bound):
        sa = S(*alpha)
        want = QSymVector(Basis.S, {b: 1 for b in posets.up_covers(Order.Q, alpha)})
        if s_product(S(1), sa) != want:
            details.append(f"S_1 S_alpha cover sum fails at {_fmt(alpha)}")
        for k in range(1, max_multiplier + 1):
            if pieri_row(k, alpha) != s_product(S(k), sa):
                details.append(f"row rule fails for S_{k} S_alpha at {_fmt(alpha)}")
            if pieri_col(k, alpha) != s_product(S(*([1] * k)), sa):
                details.append(f"column rule fails for S_1^{k} S_alpha at {_fmt(alpha)}")
    return CheckResult("pieri_consistency", {"mf": n, "s": s_bound}, not details, details)


def term_count_families(max_exponent_sum: int, max_k: int = 2):
    """Yield (i's, j's, alpha, sigma) for the two S_2-product families.

    alpha = (1^i1, 2^j1, ..., 1^ik, 2^jk, 1, 2) and
    sigma = (1^i1, 2^j1, ..., 1^ik, 2^(jk+1), 1).
    """
    for k in range(max_k + 1):
        for iv in cartesian(range(max_exponent_sum + 1), repeat=k):
            if sum(iv) > max_exponent_sum:
                continue
            for jv in cartesian(range(max_exponent_sum + 1), repeat=k):
                if sum(jv) > max_exponent_sum:
                    continue
                prefix: Tuple[int, ...] = ()
                for i, j in zip(iv, jv):
                    prefix += (1,) * i + (2,) * j
                yield iv, jv, prefix + (1, 2), prefix + (2, 1)


def check_lemma_term_counts(max_exponent_sum: int, cross_check_weight: int = 7) -> CheckResult:
    """S_2 times either family has 3*sum(j)+4 (resp. +6) terms, each with coefficient 1.

    Products are read off the row Pieri rule; those of weight at most
    ``cross_check_weight`` are recomputed through the monomial basis too.
    """
    details = []
    cases = 0
    for iv, jv, alpha, sigma in term_count_families(max_exponent_sum):
        for comp, extra in ((alpha, 4), (sigma, 6)):
            cases += 1
            prod = pieri_row(2, comp)
            want = 3 * sum(jv) + extra
            if len(prod) != want or any(c != 1 for c in prod.terms.values()):
                details.append(f"S_2 S{_fmt(comp)}: {len(prod)} terms, expected {want}")
            if sum(comp) + 2 <= cross_check_weight and prod != s_product(S(2), S(*comp)):
                details.append(f"S_2 S{_fmt(comp)}: row rule disagrees with the product")
    passed = not details
    if passed:
        details.append(f"{cases} products checked")
    return CheckResult("lemma_term_counts", max_exponent_sum, passed, details)


def s_equals_f_form(alpha: Sequence[int]) -> bool:
    """alpha = (m, 1^e1, 2, 1^e2, ..., 2, 1^f) with m = 0 or m >= 2, every e_i >= 1."""
    rest = tuple(alpha)
    if rest and rest[0] >= 2:
        rest = rest[1:]
    if any(p > 2 for p in rest):
        return False
    # every 2 must follow a 1
    prev = None
    for p in rest:
        if p == 2 and prev != 1:
            return False
        prev = p
    return True


def check_s_equals_f(n: int) -> CheckResult:
    details = []
    equal = 0
    for alpha in compositions_up_to(n):
        same = schur_to_m(alpha) == f_to_m(F(*alpha))
        equal += same
        if same != s_equals_f_form(alpha):
            details.append(f"{_fmt(alpha)}: S == F is {same}, the form predicts {not same}")
    passed = not details
    if passed:
        details.append(f"{equal} of {len(compositions_up_to(n))} compositions have S_alpha = F_alpha")
    return CheckResult("s_equals_f", n, passed, details)


def check_lr_vertical_strip(n: int, max_multiplier: int = 3) -> CheckResult:
    """C^gamma_{1^k, beta} from the coproduct against the vertical-strip rule."""
    details = []
    for g in range(1, n + 1):
        for gamma in compositions_of(g):
            for k in range(1, min(max_multiplier, g) + 1):
                for beta in compositions_of(g - k):
                    expected = 0
                    if posets.leq(Order.C, beta, gamma, bound=k):
                        expected = int(is_vertical_strip(SkewReverseShape(gamma, beta, check_order=False)))
                    got = lr_coefficient((1,) * k, beta, gamma)
                    if got != expected:
                        details.append(f"C^{_fmt(gamma)}_(1^{k}),{_fmt(beta)} = {got}, expected {expected}")
    for beta in ((3,), (1, 2)):
        if lr_coefficient((1,), beta, (1, 3)) != 1:
            details.append(f"C^(1,3)_(1),{_fmt(beta)} should be 1")
    return CheckResult("lr_vertical_strip", n, not details, details)


def check_complement_duality(n: int) -> CheckResult:
    details = []
    for w in range(2, n + 1):
        for wa in range(1, w):
            for a in compositions_of(wa):
                ac = complement(a)
                for b in compositions_of(w - wa):
                    bc = complement(b)
                    if complement(concat(a, b)) != near_concat(ac, bc):
                        details.append(f"complement of {_fmt(a)}.{_fmt(b)} is not the near concatenation")
                    if complement(near_concat(a, b)) != concat(ac, bc):
                        details.append(f"complement of {_fmt(a)} near {_fmt(b)} is not the concatenation")
    return CheckResult("complement_duality", n, not details, details)


def check_automorphism_suite(n: int, s_weight: int = 4) -> CheckResult:
    details: List[str] = []
    info: List[str] = []
    for m in (morphisms.RHO, morphisms.PSI, morphisms.OMEGA):
        r = morphisms.check_algebra_morphism(m, n)
        if not r.passed:
            details.append(f"{m.tag} fails the algebra check at {r.witness_text}")
    r = morphisms.check_coalgebra_morphism(morphisms.PSI, n)
    if not r.passed:
        details.append(f"psi fails the coalgebra check at {r.witness_text}")
    for m in (morphisms.RHO, morphisms.OMEGA):
        r = morphisms.check_coalgebra_morphism(m, 3)
        if r.passed:
            details.append(f"{m.tag} unexpectedly passes the coalgebra check at weight 3")
        else:
            info.append(f"{m.tag} is not a coalgebra map: witness {r.witness_text}")
    for alpha in compositions_up_to(n + 1):
        if morphisms.apply(morphisms.RHO, M(*alpha)) != M(*reversal(alpha)):
            details.append(f"rho(M_alpha) != M of the reversal at {_fmt(alpha)}")
    for m in (morphisms.PSI, morphisms.OMEGA):
        table = morphisms.basis_preservation_table(m, Basis.M, 3)
        if morphisms.preserves_basis(table):
            details.append(f"{m.tag} preserves the M basis up to weight 3")
    # the three maps do preserve S through weight 3, so a lower cap decides nothing
    if s_weight < 4:
        info.append(f"S-basis preservation skipped: needs weight 4, capped at {s_weight}")
    for m in (morphisms.RHO, morphisms.PSI, morphisms.OMEGA) if s_weight >= 4 else ():
        table = morphisms.basis_preservation_table(m, Basis.S, s_weight)
        if morphisms.preserves_basis(table):
            details.append(f"{m.tag} preserves the S basis up to weight {s_weight}")
        else:
            bad = min((a for a, b in table.items() if b is None), key=lambda a: (sum(a), a))
            info.append(f"{m.tag}(S{_fmt(bad)}) is not a single S basis element")
    passed = not details
    return CheckResult("automorphism_suite", n, passed, details + info)


# --- registry ------------------------------------------------------------------------

def _pieri_entry(bound, s_cap):
    if isinstance(bound, dict):
        mf, s = int(bound["mf"]), int(bound["s"])
    else:
        mf = s = int(bound)
    return check_pieri_consistency(mf, min(s, s_cap))


CHECKS: Dict[str, Callable[[object, int], CheckResult]] = {
    "automorphism_suite": lambda b, cap: check_automorphism_suite(int(b), min(4, cap)),
    "c_classification": lambda b, cap: check_c_classification(int(b)),
    "complement_duality": lambda b, cap: check_complement_duality(int(b)),
    "downset_rigidity_F": lambda b, cap: check_downset_rigidity(Order.F, int(b)),
    "downset_rigidity_M": lambda b, cap: check_downset_rigidity(Order.M, int(b)),
    "lemma_term_counts": lambda b, cap: check_lemma_term_counts(int(b), min(7, cap + 2)),
    "lr_vertical_strip": lambda b, cap: check_lr_vertical_strip(min(int(b), cap)),
    "order_inclusions": lambda b, cap: check_order_inclusions(int(b)),
    "pieri_consistency": _pieri_entry,
    "q_classification": lambda b, cap: check_q_classification(int(b)),
    "s_equals_f": lambda b, cap: check_s_equals_f(min(int(b), cap)),
}

MANIFEST: Tuple[str, ...] = tuple(sorted(CHECKS))


def run_all(config: Optional[Dict[str, object]]) -> VerificationReport:
    """Run every registered check.

    ``config`` maps check ids to bounds; missing ids use DEFAULT_CONFIG.  The
    optional key ``s_bound`` caps the weight of every S-basis computation.
    A crashing check is reported as a failure and the rest still run.
    """
    if not config:
        raise ValueError("a configuration with per-check bounds is required")
    unknown = set(config) - set(CHECKS) - {"s_bound"}
    if unknown:
        raise ValueError(f"unknown check ids in config: {', '.join(sorted(unknown))}")
    effective = dict(DEFAULT_CONFIG)
    effective.update(config)
    s_cap = int(effective.get("s_bound", 10 ** 6))
    results = []
    for check_id in MANIFEST:
        bound = effective[check_id]
        t0 = time.perf_counter()
        try:
            res = CHECKS[check_id](bound, s_cap)
        except Exception as exc:  # a broken check must not abort the suite
            res = CheckResult(check_id, bound, False, [f"crashed: {type(exc).__name__}: {exc}"])
        res.check_id = check_id
        res.elapsed = time.perf_counter() - t0
        results.append(res)
    return VerificationReport(SUITE_VERSION, {k: effective[k] for k in sorted(effective)}, results)
