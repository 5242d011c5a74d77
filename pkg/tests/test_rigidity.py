import json

import pytest

from qsym import posets, rigidity
from qsym.posets import Order
from qsym.rigidity import (
    DEFAULT_CONFIG,
    MANIFEST,
    CheckResult,
    check_downset_rigidity,
    check_lemma_term_counts,
    check_order_inclusions,
    run_all,
    s_equals_f_form,
    term_count_families,
)

SMALL = {
    "automorphism_suite": 4,
    "c_classification": 6,
    "complement_duality": 6,
    "downset_rigidity_F": 5,
    "downset_rigidity_M": 5,
    "lemma_term_counts": 1,
    "lr_vertical_strip": 4,
    "order_inclusions": 5,
    "pieri_consistency": {"mf": 4, "s": 3},
    "q_classification": 6,
    "s_equals_f": 5,
}


def test_manifest_matches_default_config():
    assert set(MANIFEST) == set(DEFAULT_CONFIG)
    assert list(MANIFEST) == sorted(MANIFEST)


def test_small_run_passes():
    report = run_all(SMALL)
    assert report.passed
    assert [r.check_id for r in report.results] == list(MANIFEST)
    assert report.result("s_equals_f").details == ["23 of 32 compositions have S_alpha = F_alpha"]


def test_report_is_deterministic_without_timing():
    a = run_all(SMALL).dumps(timing=False)
    b = run_all(SMALL).dumps(timing=False)
    assert a == b
    data = json.loads(a)
    assert data["suite"] == "qsym-rigidity" and data["version"] == rigidity.SUITE_VERSION
    assert all("elapsed" not in r for r in data["results"])
    assert "elapsed" in json.loads(run_all(SMALL).dumps())["results"][0]


def test_config_validation():
    with pytest.raises(ValueError):
        run_all({})
    with pytest.raises(ValueError):
        run_all(None)
    with pytest.raises(ValueError):
        run_all({"no_such_check": 3})


def test_partial_config_uses_defaults():
    report = run_all({"s_equals_f": 4, "s_bound": 4, **{k: v for k, v in SMALL.items() if k != "s_equals_f"}})
    assert report.config["s_bound"] == 4
    assert report.result("s_equals_f").bound == 4


def test_crashing_check_is_reported(monkeypatch):
    def boom(bound, cap):
        raise RuntimeError("deliberate")

    monkeypatch.setitem(rigidity.CHECKS, "complement_duality", boom)
    report = run_all(SMALL)
    r = report.result("complement_duality")
    assert not r.passed and r.details == ["crashed: RuntimeError: deliberate"]
    assert not report.passed
    assert all(x.passed for x in report.results if x.check_id != "complement_duality")


def test_failed_result_gets_a_detail():
    assert CheckResult("x", 1, False).details
    assert CheckResult("x", 1, True).details == []


def test_mutated_c_order_is_caught():
    # drop the leftmost-part restriction: every part of any size may grow
    def loose(order, alpha):
        if Order(order) is not Order.C:
            return posets.up_covers(order, alpha)
        out = {(1,) + alpha}
        out |= {alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:] for i in range(len(alpha))}
        return frozenset(out)

    r = check_order_inclusions(4, covers=loose)
    assert not r.passed
    assert any("C diagram has unexpected edge" in d for d in r.details)
    assert check_order_inclusions(4).passed


def test_downset_rigidity_reports_boundary():
    r = check_downset_rigidity("M", 5)
    assert r.passed
    assert r.details == ["boundary (weight 3, expected): (1,2) (2,1) share a down-set"]
    with pytest.raises(ValueError):
        check_downset_rigidity("Q", 5)
    with pytest.raises(ValueError):
        check_downset_rigidity("F", 3)


def test_term_count_families():
    fams = list(term_count_families(1))
    assert ((), (), (1, 2), (2, 1)) in fams
    assert ((0,), (1,), (2, 1, 2), (2, 2, 1)) in fams
    assert ((1,), (0,), (1, 1, 2), (1, 2, 1)) in fams
    r = check_lemma_term_counts(1)
    assert r.passed


@pytest.mark.parametrize(
    "alpha,expected",
    [
        ((), True), ((1,), True), ((2,), True), ((1, 2), True), ((2, 1), True), ((1, 1, 2), True),
        ((3, 1, 2, 1), True), ((2, 2), False), ((1, 3), False), ((2, 1, 3), False),
        ((1, 2, 2), False), ((4, 1, 2, 1, 1, 2), True),
    ],
)
def test_s_equals_f_form(alpha, expected):
    assert s_equals_f_form(alpha) is expected


def test_low_s_cap_skips_preservation_clause():
    from qsym.rigidity import check_automorphism_suite
    r = check_automorphism_suite(3, s_weight=3)
    assert r.passed
    assert "S-basis preservation skipped: needs weight 4, capped at 3" in r.details
    r = check_automorphism_suite(3, s_weight=4)
    assert r.passed and "rho(S(1,3)) is not a single S basis element" in r.details
