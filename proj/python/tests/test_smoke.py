import json

import pytest

import sato

QX = sato.Ring.x_power_series(sato.Ring.rationals(), 12)


def test_inverse_of_d_plus_x():
    L = sato.Operator.parse("D + x", QX, depth=8)
    one = sato.Operator.parse("1", QX, depth=8)
    assert L * L.inverse() == one
    assert L.inverse() * L == one


def test_commutator_of_d_and_x_is_one():
    D = sato.Operator.parse("D", QX, depth=6)
    x = sato.Operator.parse("x", QX, depth=6)
    assert str(sato.commutator(D, x)).startswith("1")


def test_conjugation_residual_vanishes():
    L = sato.Operator.parse("D^2 + x", QX, depth=6)
    X, residual = sato.conjugator_to_power(L, 2)
    assert X.order == 0
    assert residual == sato.Operator.parse("0", QX, depth=residual.depth)


def test_series_root_and_revert():
    Q = sato.Ring.rationals()
    s = sato.Series.parse("y^2 + y^3", Q, window=10)
    r = s.root(2)
    assert r * r == s
    f = sato.Series.parse("y + y^2", Q, window=8)
    assert f.compose(f.revert()) == sato.Series.parse("y", Q, window=8)


def test_genus_of_two_three():
    Q = sato.Ring.rationals()
    gens = [sato.Series.parse(t, Q, window=8) for t in ("y^-2", "y^-3")]
    profile = sato.gap_genus(gens, 20)
    assert profile["genus"] == 1
    assert profile["gaps"] == [1]


def test_json_round_trip():
    L = sato.Operator.parse("D^2 + x*D + 1/3", QX, depth=5)
    again = sato.Operator.from_json(L.to_json(), QX)
    assert again == L
    assert json.loads(L.to_json())["top_order"] == 2
    assert sato.Ring.from_json(QX.to_json()) == QX


def test_errors_carry_category():
    D = sato.Operator.parse("D", QX, depth=4)
    x = sato.Operator.parse("x", QX, depth=4)
    with pytest.raises(sato.SatoError) as info:
        sato.schur_extract([D, x])
    assert info.value.category == "non-commuting"
    with pytest.raises(sato.SatoError) as info:
        sato.Operator.parse("D +", QX)
    assert info.value.category == "syntax-error"


def test_cli_in_process():
    code, out, err = sato.run_cli(["kdv", "residual", "--beta", "0"])
    assert (code, out, err) == (0, "0\n", "")
    code, out, err = sato.run_cli(["genus", "--gens", "D^-2,D^-3"])
    assert code == 0 and err == ""
