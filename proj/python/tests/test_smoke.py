import json
from fractions import Fraction

import pytest

import ptflab


def test_weak_order_is_snake():
    shape = ptflab.GroupShape([2, 3], ptflab.Variant.Weak)
    assert ptflab.enumerate_order(shape) == [[1, 1], [1, 2], [1, 3], [2, 3], [2, 2], [2, 1]]
    assert ptflab.compare(shape, [1, 3], [2, 3]) == -1
    assert ptflab.compare(shape, [2, 1], [2, 2]) == 1


def test_strong_order_starts_at_zero():
    shape = ptflab.GroupShape([3, 3], ptflab.Variant.Strong)
    order = ptflab.enumerate_order(shape)
    assert order[0] == [0, 1]
    assert len(order) == 9


def test_witness_gate_weak_2_3():
    shape = ptflab.GroupShape([2, 3])
    f = ptflab.make_hard(shape)
    gate = ptflab.witness_gate(shape)
    assert gate.weight == 504
    assert ptflab.check_sign_representation(gate, f)
    uv = ptflab.to_uv(gate)
    assert uv.weight <= 4 * gate.weight
    assert ptflab.check_sign_representation(ptflab.symmetrize(uv), f)


def test_bool_fun_json_round_trip():
    f = ptflab.make_gt(3)
    g = ptflab.BoolFun.from_json(f.to_json())
    assert f == g
    assert json.loads(f.to_json())["n"] == 6


def test_gt_lemma_certified():
    items = ptflab.certify_lemma("gt_exp", 4)
    assert items and all(ok for _, ok in items)


def test_sign_degree_of_gt_is_one():
    result = ptflab.sign_degree(ptflab.make_gt(2), 2)
    assert result["degree"] == 1
    assert result["gate_verified"]
    assert result["attempts"][0]["certificate_ok"]


def test_min_weight_gt2_exact():
    result = ptflab.min_weight(ptflab.make_gt(1), 1, exact=True)
    assert result["exact"] == 2
    assert result["gate_verified"]


def test_solve_lp_text():
    text = "var x nonneg\nvar y nonneg\nobjective min 1 x 1 y\nrow 2 x 1 y >= 3\nrow 1 x 2 y >= 3\n"
    out = ptflab.solve_lp(text)
    assert out["status"] == "optimal"
    assert out["value"] == Fraction(2)
    assert out["certificate_ok"]


def test_theorem_bound_weak_2_3():
    b = ptflab.theorem_bound(ptflab.GroupShape([2, 3]))
    assert b["asserted"] and b["exponent"] == 0 and b["value"] == 1


def test_preset_and_replay():
    csv, status, certificates = ptflab.run_preset("k5-optimal")
    assert status == 0
    assert "argmax_k_table,5,PASS" in csv
    for text in certificates.values():
        ok, reason = ptflab.replay_certificate(text)
        assert ok, reason


def test_unknown_preset_raises():
    with pytest.raises(ValueError):
        ptflab.run_preset("no-such-preset")
