import json
from fractions import Fraction
from math import factorial

import pytest

prodlab = pytest.importorskip("prodlab")


def test_group_orders_and_classes():
    assert prodlab.group_order("An:5") == 60
    assert prodlab.group_order("PSL:2,7") == 168
    assert sum(prodlab.class_sizes("Sn:4")) == 24


def test_character_degrees():
    assert prodlab.character_degrees("An:5") == [1, 3, 3, 4, 5]
    assert sum(d * d for d in prodlab.character_degrees("Sn:5")) == 120


def test_witten_zeta():
    assert prodlab.witten_zeta("An:5", 2) == pytest.approx(1 + 2 / 9 + 1 / 16 + 1 / 25, abs=1e-9)


def test_partitions():
    assert prodlab.dimension([3, 2, 1]) == 16
    assert prodlab.mn_character([2, 1], [3]) == -1
    assert isinstance(prodlab.virtual_degree([3, 2]), Fraction)
    assert sum(prodlab.dimension(p) ** 2 for p in ([4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1])) == factorial(4)


def test_rank_counts():
    assert [prodlab.count_rank(r, 2, 2) for r in range(3)] == [1, 9, 6]
    assert prodlab.rank_census(2, 3) == [prodlab.count_rank(r, 2, 3) for r in range(3)]


def test_gamma_is_exact():
    g = prodlab.gamma("An:5", "random:10:7", "random:10:8")
    assert isinstance(g, Fraction) and g > 0


def test_cli_report_and_verification(tmp_path):
    code, rep = prodlab.report("chartable", "An:5", "--json")
    assert code == 0
    assert list(rep) == ["command", "config", "results", "witnesses", "versions"]

    path = tmp_path / "cover.json"
    code, out, err = prodlab.run(["--out", str(path), "growth", "cover", "An:5", "--A", "class:3"])
    assert code == 0
    code, rep = prodlab.report("verify-witness", path)
    assert code == 0 and rep["results"]["all_pass"]

    data = json.loads(path.read_text())
    data["witnesses"][0]["sets"][0] = ["()"]
    path.write_text(json.dumps(data))
    code, rep = prodlab.report("verify-witness", path)
    assert code == 1 and not rep["results"]["all_pass"]


def test_errors():
    with pytest.raises(prodlab.Error):
        prodlab.group_order("Sn:99")
    code, _, err = prodlab.run(["nosuch"])
    assert code == 2


def test_criterion_from_python():
    r = prodlab.run_criterion(7, smoke=True, seed=1)
    assert r["passed"] and r["id"] == 7
    assert r["details"]["monotone"]
