import json

import pytest

from qsym.algebra import M, QSymVector, TensorVector, coproduct, parse_vector
from qsym.cli import main


@pytest.fixture(autouse=True)
def _restore_env(monkeypatch, cache_dir):
    # main() writes these variables; make sure they are undone afterwards
    monkeypatch.setenv("QSYM_CACHE_DIR", cache_dir)
    monkeypatch.setenv("QSYM_MAX_S_WEIGHT", "9")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_product(capsys):
    code, out, _ = run(capsys, "product", "-b", "S", "1,1", "1,1")
    assert code == 0
    assert out.strip() == "S[2,2] + S[2,1,1] + S[1,2,1] + S[1,1,2] + S[1,1,1,1]"
    code, out, _ = run(capsys, "product", "1,3,2", "2")
    assert parse_vector(out.strip()) == 2 * M(1, 3, 2, 2) + M(1, 2, 3, 2) + M(2, 1, 3, 2) + M(1, 3, 4) + M(1, 5, 2) + M(3, 3, 2)
    code, out, _ = run(capsys, "product", "-b", "F", "", "3")
    assert out.strip() == "F[3]"


def test_product_json_round_trip(capsys):
    code, out, _ = run(capsys, "product", "-b", "f", "1", "2", "--format", "json")
    assert code == 0
    assert render_set(QSymVector.from_json(json.loads(out))) == {"F[1,2]", "F[2,1]", "F[3]"}


def render_set(u):
    return {f"{u.basis.value}[{','.join(map(str, a))}]" for a in u.terms}


def test_coproduct(capsys):
    code, out, _ = run(capsys, "coproduct", "1,2")
    assert out.strip() == str(coproduct(M(1, 2)))
    code, out, _ = run(capsys, "coproduct", "-b", "S", "2,1", "--format", "json")
    assert code == 0
    assert TensorVector.from_json(json.loads(out)).basis[0].value == "S"


def test_convert(capsys):
    code, out, _ = run(capsys, "convert", "M", "F", "1,2")
    assert out.strip() == "F[1,2] - F[1,1,1]"
    code, out, _ = run(capsys, "convert", "F", "M", "2*F[2] - F[1,1]")
    assert parse_vector(out.strip()) == 2 * M(2) + M(1, 1)
    code, _, err = run(capsys, "convert", "M", "F", "F[2]")
    assert code == 1 and "error" in err


def test_poset_queries(capsys):
    code, out, _ = run(capsys, "poset", "C", "covers", "1,2")
    assert out.split() == ["1,1,2", "1,3", "2,2"]
    code, out, _ = run(capsys, "poset", "q", "downset", "2,2")
    assert out.split() == ["2,1"]
    code, out, _ = run(capsys, "poset", "Q", "hasse", "3", "--dot")
    assert out.startswith("digraph Q_order {")
    code, out, _ = run(capsys, "poset", "M", "hasse", "2", "--format", "json")
    assert json.loads(out)["order"] == "M"
    code, out, _ = run(capsys, "poset", "F", "hasse", "2")
    assert "1 < 1,1" in out.splitlines()
    code, _, err = run(capsys, "poset", "F", "hasse", "x")
    assert code == 1


def test_ssrct(capsys):
    code, out, _ = run(capsys, "ssrct", "2", "2")
    assert out.splitlines() == ["1 1", "2 1", "2 2", "3 tableaux"]
    code, out, _ = run(capsys, "ssrct", "1,2,4,2//1,3,1", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data and data[0]["inner"] == "1,3,1"
    code, _, _ = run(capsys, "ssrct", "2,2//2,1,1", "3")
    assert code == 1


def test_lr_and_map(capsys):
    assert run(capsys, "lr", "1", "2,1", "1,2,1")[1].strip() == "1"
    assert run(capsys, "map", "rho", "-b", "M", "1,2")[1].strip() == "M[2,1]"
    assert run(capsys, "map", "psi", "-b", "F", "2")[1].strip() == "F[1,1]"


def test_usage_errors(capsys):
    for argv in (["product", "1,0", "2"], ["product", "-b", "X", "1", "1"], ["nosuch"], [],
                 ["map", "sigma", "1"], ["product", "1", "1", "--format", "dot"]):
        code = None
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 1, argv
    capsys.readouterr()


def test_bound_caps_s_weight(capsys):
    code, _, err = run(capsys, "product", "-b", "S", "2", "2", "--bound", "3")
    assert code == 1 and "weight" in err
    code, _, _ = run(capsys, "product", "-b", "S", "2", "2", "--bound", "0")
    assert code == 1


def test_verify(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"s_equals_f": 4, "automorphism_suite": 3, "c_classification": 4,
                               "q_classification": 4, "order_inclusions": 4, "downset_rigidity_M": 4,
                               "downset_rigidity_F": 4, "lemma_term_counts": 1, "lr_vertical_strip": 3,
                               "complement_duality": 4, "pieri_consistency": {"mf": 3, "s": 3}}))
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    assert code == 0 and out.strip().endswith("all checks passed")
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--format", "json", "--bound", "3")
    data = json.loads(out)
    assert data["pass"] and data["config"]["s_bound"] == 3
    cfg.write_text("[not json")
    assert run(capsys, "verify", "--config", str(cfg))[0] == 1
    assert run(capsys, "verify", "--config", str(tmp_path / "missing.json"))[0] == 1


def test_verify_failure_exit_code(capsys, tmp_path, monkeypatch):
    from qsym import rigidity

    monkeypatch.setitem(rigidity.CHECKS, "complement_duality",
                        lambda b, cap: rigidity.CheckResult("complement_duality", b, False, ["forced"]))
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({k: 3 for k in rigidity.MANIFEST if k not in ("pieri_consistency", "downset_rigidity_M",
                                                                               "downset_rigidity_F", "lemma_term_counts")}
                              | {"downset_rigidity_M": 4, "downset_rigidity_F": 4, "lemma_term_counts": 1,
                                 "pieri_consistency": 3}))
    code, out, _ = run(capsys, "verify", "--config", str(cfg))
    assert code == 2
    assert "FAIL  complement_duality" in out
