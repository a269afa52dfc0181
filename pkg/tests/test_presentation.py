import json
from fractions import Fraction

import pytest

from monsterlie import presentation as P
from monsterlie.indices import SupportConfig
from monsterlie.presentation import (GroupWord, build_instance, c_const, commutator,
                                     eval_word_matrix, expand_weyl, format_word,
                                     free_separation_test, mirror_relation, mirror_word,
                                     realize_word, relations_catalog, sym,
                                     validate_adjoint, validate_catalog, validate_sl2)

CFG = SupportConfig(8, {1: 2, 2: 1})


def test_c_const_values():
    assert c_const(0, 1) == -1
    assert c_const(0, 2) == -2
    assert c_const(1, 2) == 2
    assert c_const(0, 3) == -3
    assert c_const(1, 3) == 8
    assert c_const(2, 3) == -3
    with pytest.raises(ValueError):
        c_const(2, 2)


def test_group_word_free_reduction():
    a = sym("X", -1, 1)
    b = sym("X", (0, 1, 1), 2)
    w = GroupWord([(a, 1), (b, 1), (b, -1), (a, -1)])
    assert len(w) == 0
    w2 = GroupWord([(a, 1), (b, 1), (a, -1)])
    assert len(w2) == 3
    assert (w2 * w2.inverse()).factors == ()


def test_group_word_format():
    w = GroupWord.of(sym("X", -1, Fraction(3, 2)), sym("H1", None, 2))
    assert format_word(w) == "X(-1;3/2)H1(2)"
    assert format_word(GroupWord()) == "1"
    assert format_word(GroupWord([(sym("Y", (1, 2, 1), 1), -1)])) == "Y(1,2,1;1)^-1"


def test_commutator_shape():
    a = GroupWord.of(sym("X", (0, 1, 1), 1))
    b = GroupWord.of(sym("X", (0, 2, 1), 1))
    c = commutator(a, b)
    assert len(c) == 4


def test_expand_weyl():
    w = GroupWord.of(sym("W", -1, 1))
    e = expand_weyl(w)
    assert format_word(e) == "X(-1;1)Y(-1;-1)X(-1;1)"
    # imaginary string: Y parameter is -1/(s*c)
    w2 = GroupWord.of(sym("W", (0, 2, 1), 1))
    e2 = expand_weyl(w2)
    assert format_word(e2) == "X(0,2,1;1)Y(0,2,1;1/2)X(0,2,1;1)"
    # inverse distributes in reverse order
    e3 = expand_weyl(GroupWord([(sym("W", -1, 1), -1)]))
    assert format_word(e3) == "X(-1;1)^-1Y(-1;-1)^-1X(-1;1)^-1"


def test_catalog_structure():
    cat = relations_catalog()
    assert len(cat) == 35
    ids = [t.rid for t in cat]
    assert ids == [f"R{i}" for i in range(1, 36)]
    by_class = {}
    for t in cat:
        by_class.setdefault(t.klass, []).append(t.rid)
    assert len(by_class["ADJOINT"]) == 21
    assert len(by_class["MIRROR"]) == 6
    assert len(by_class["SL2"]) == 7
    assert by_class["UNVALIDATED"] == ["R16"]
    assert set(by_class["MIRROR"]) == {"R18", "R21", "R22", "R24", "R26", "R28"}
    assert set(by_class["SL2"]) == {f"R{i}" for i in range(29, 36)}


def test_catalog_json_roundtrips():
    rows = json.loads(P.catalog_json())
    assert len(rows) == 35
    assert rows[0]["id"] == "R1"
    assert all("template" in r for r in rows)


def test_real_additivity_adjoint():
    inst = build_instance("R1", {"u": 2, "v": Fraction(1, 2)})
    assert validate_adjoint(inst, 8, CFG)["pass"]


def test_real_weyl_matrix_example():
    # the lower-triangular conjugation identity in the 2x2 model at t=s=1
    inst = build_instance("R8", {"s": 1, "t": 1})
    L = eval_word_matrix(inst.lhs, -1)
    R = eval_word_matrix(inst.rhs, -1)
    two = ((Fraction(2), Fraction(1)), (Fraction(-1), Fraction(0)))
    assert L == R == two


def test_weyl_square_is_torus():
    # w(-1;s) w(-1;1) realizes H1(-s)H2(-1/s)
    inst = build_instance("R9", {"s": 3})
    assert validate_adjoint(inst, 8, CFG)["pass"]
    M = eval_word_matrix(inst.lhs, -1)
    assert M == ((Fraction(-3), Fraction(0)), (Fraction(0), Fraction(-1, 3)))


def test_imaginary_weyl_conjugation_corrected_sign():
    # string reversal with scalar (-1)^l
    for (l, j, k) in ((0, 2, 1), (1, 2, 1), (0, 1, 1), (0, 1, 2)):
        inst = build_instance("R23", {"u": 1}, (l, j, k))
        assert validate_adjoint(inst, 8, CFG)["pass"], (l, j, k)


def test_imaginary_weyl_printed_sign_fails_even_levels():
    # negative control: the (-1)^(j-l-1) scalar on the X-line is wrong at even j
    w_1 = sym("W", -1, 1)
    u = Fraction(1)
    l, j, k = 0, 2, 1
    lhs = GroupWord.of(w_1) * GroupWord.of(sym("X", (l, j, k), u)) * GroupWord.of(w_1).inverse()
    rhs = GroupWord.of(sym("X", (j - 1 - l, j, k), Fraction((-1) ** (j - l - 1)) * u))
    bad = P.RelationInstance("R23x", "ADJOINT", "wrong-sign probe", lhs, rhs,
                             (l, j, k), {"u": u}, "")
    assert not validate_adjoint(bad, 8, CFG)["pass"]


def test_mirror_word_involution():
    w = GroupWord.of(sym("X", -1, 2), sym("H1", None, 3), sym("Y", (0, 1, 1), 1))
    assert mirror_word(mirror_word(w)) == w


def test_mirror_relation_validates():
    inst = build_instance("R18", {"u": 1, "v": 2}, (0, 2, 1))
    m = mirror_relation(inst)
    assert m.klass == "ADJOINT"
    assert validate_adjoint(m, 8, CFG)["pass"]
    with pytest.raises(ValueError):
        mirror_relation(m)


def test_mirror_of_imaginary_weyl_keeps_printed_sign():
    # the Y-line scalar (-1)^(j-1-l) is right as printed; its mirror passes
    for idx in ((0, 2, 1), (1, 2, 1), (0, 1, 1)):
        inst = build_instance("R24", {"u": 1}, idx)
        assert validate_adjoint(mirror_relation(inst), 8, CFG)["pass"], idx


def test_torus_conjugation_families():
    for rid, idx in (("R25", (0, 2, 1)), ("R27", (1, 2, 1))):
        inst = build_instance(rid, {"s": 2, "u": Fraction(1, 2)}, idx)
        assert validate_adjoint(inst, 8, CFG)["pass"], rid


def test_single_string_matrix_families():
    for rid in ("R30", "R33", "R34"):
        t = {x.rid: x for x in relations_catalog()}[rid]
        for idx in ((0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1)):
            for params in P._param_choices(t, (1, -1, 2)):
                inst = build_instance(rid, params, idx)
                assert validate_sl2(inst, idx)["pass"], (rid, idx, params)


def test_fractional_power_families_integral_substitution():
    for rid in ("R29", "R31", "R32", "R35"):
        t = {x.rid: x for x in relations_catalog()}[rid]
        for idx in ((0, 2, 1), (1, 3, 1), (2, 3, 1)):
            for params in P._param_choices(t, (1, -1, 2, Fraction(1, 2))):
                inst = build_instance(rid, params, idx)
                assert validate_sl2(inst, idx)["pass"], (rid, idx, params)


def test_sl2_matrix_model_rejects_cross_index():
    inst = build_instance("R30", {"s": 1, "t": 1}, (0, 1, 1))
    with pytest.raises(ValueError):
        validate_sl2(inst, (0, 2, 1))


def test_unrealizable_symbol_raises():
    w = GroupWord.of(sym("Y", (0, 1, 1), 1))
    with pytest.raises(P.UnrealizableError):
        realize_word(w, 8, CFG)


def test_cross_string_shadow_report():
    rep = P._shadow_check_r16(CFG)
    assert rep["pass"]
    assert rep["status"] == "supported, not validated"
    assert rep["instances"] > 0
    assert len(rep["reading_flags"]) > 0           # (1,1) vs (1,2) share j only
    assert len(rep["adjacent_unconstrained"]) > 0  # (0,2,1) vs (1,2,1)


def test_validate_catalog_small_sweep():
    cfg = SupportConfig(7, {1: 1, 2: 1})
    rep = validate_catalog(7, cfg, samples=(1, -1), suites=("adjoint", "sl2"))
    assert rep["all_pass"]
    ids = [r["id"] for r in rep["results"]]
    assert ids == [f"R{i}" for i in range(1, 36)]
    r16 = [r for r in rep["results"] if r["id"] == "R16"][0]
    assert r16["status"] == "supported, not validated"


def test_free_separation_distinguishes():
    a = GroupWord.of(sym("X", (0, 1, 1), 1))
    b = GroupWord.of(sym("X", (0, 2, 1), 1))
    words = [a, b, a * b, b * a, commutator(a, b)]
    rep = free_separation_test(words, 10, SupportConfig(10, {1: 1, 2: 1}))
    assert rep["pass"] and rep["distinct"] == 5


def test_free_separation_detects_collision():
    a = GroupWord.of(sym("X", (0, 1, 1), 1))
    same = GroupWord.of(sym("X", (0, 1, 1), Fraction(2, 2)))
    rep = free_separation_test([a, same], 8, CFG)
    assert not rep["pass"]
    assert rep["distinct"] == 1
