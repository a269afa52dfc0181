import random
from fractions import Fraction

import pytest

from monsterlie import completion, monster
from monsterlie.completion import (Ad, TruncAut, approximate_by_generators, aut_check,
                                   compose, equal_mod_level, exp_ad, filtration_level,
                                   format_tokens, generator_keys, invert, log_unipotent,
                                   realize_tokens, torus)
from monsterlie.indices import SupportConfig
from monsterlie.monster import MonsterElt, bracket

CFG = SupportConfig(9, {1: 2, 2: 1})
N = 9


def test_generator_keys_order():
    keys = generator_keys(CFG)
    assert keys[0] == monster.H1
    assert keys[1] == monster.H2
    assert keys[2] == monster.EMINUS
    assert keys[3] == monster.FMINUS
    assert (monster.WPOS, ((1, 1, 0),)) in keys
    assert (monster.WNEG, ((2, 1, 0),)) in keys


def test_exp_ad_real_on_f():
    # exp(u ad e(-1)) f(-1) = f(-1) + u(h1-h2) - u^2 e(-1)
    g = exp_ad(MonsterElt.e_minus(Fraction(3, 2)), N, CFG)
    img = g.apply(MonsterElt.f_minus())
    want = (MonsterElt.f_minus() + MonsterElt.cartan(Fraction(3, 2), Fraction(-3, 2))
            + MonsterElt.e_minus(Fraction(-9, 4)))
    assert img == want


def test_exp_ad_one_parameter_group():
    a = exp_ad(MonsterElt.e_letter(0, 1, 1, 2), N, CFG)
    b = exp_ad(MonsterElt.e_letter(0, 1, 1, 3), N, CFG)
    c = exp_ad(MonsterElt.e_letter(0, 1, 1, 5), N, CFG)
    assert compose(a, b).equal(c)


def test_exp_ad_rejects_cartan_and_mixed():
    with pytest.raises(ValueError):
        exp_ad(MonsterElt.h1(), N, CFG)
    with pytest.raises(ValueError):
        exp_ad(MonsterElt.f_letter(0, 1, 1), N, CFG)
    with pytest.raises(ValueError):
        exp_ad(MonsterElt.e_minus() + MonsterElt.f_minus(), N, CFG)


def test_exp_ad_accepts_pure_lowering_real():
    g = exp_ad(MonsterElt.f_minus(2), N, CFG)
    img = g.apply(MonsterElt.e_minus())
    want = (MonsterElt.e_minus() + MonsterElt.cartan(-2, 2)
            + MonsterElt.f_minus(-4))
    assert img == want


def test_torus_scales_by_root():
    t = torus(2, 3, N, CFG)
    assert t.apply(MonsterElt.e_letter(0, 2, 1)) == MonsterElt.e_letter(0, 2, 1, c=2 * 9)
    assert t.apply(MonsterElt.e_minus()) == MonsterElt.e_minus(Fraction(2, 3))
    assert t.apply(MonsterElt.h1()) == MonsterElt.h1()
    with pytest.raises(ValueError):
        torus(0, 1, N, CFG)


def test_compose_and_invert_word_backed():
    g = compose(exp_ad(MonsterElt.e_minus(), N, CFG),
                torus(2, 1, N, CFG),
                exp_ad(MonsterElt.e_letter(0, 1, 1), N, CFG))
    gi = invert(g)
    assert compose(g, gi).equal(TruncAut.identity(N, CFG))
    assert compose(gi, g).equal(TruncAut.identity(N, CFG))


def test_compose_order_rightmost_first():
    t = torus(2, 1, N, CFG)           # scales e(-1) by 2
    x = exp_ad(MonsterElt.e_minus(), N, CFG)
    lhs = compose(t, x).apply(MonsterElt.f_minus())
    rhs = t.apply(x.apply(MonsterElt.f_minus()))
    assert lhs == rhs


def test_invert_image_backed():
    g = exp_ad(MonsterElt.e_letter(0, 1, 1) + MonsterElt.e_letter(0, 2, 1), N, CFG)
    h = TruncAut(N, CFG, images={k: g.apply(MonsterElt({k: 1})) for k in generator_keys(CFG)})
    hi = invert(h)
    assert compose(h, hi).equal(TruncAut.identity(N, CFG))


def test_filtration_level_values():
    assert filtration_level(TruncAut.identity(N, CFG)) == (N, True)
    g = exp_ad(MonsterElt.e_letter(0, 1, 1), N, CFG)
    lv = filtration_level(g)
    assert lv.level == 3 and not lv.window_limited
    g2 = exp_ad(MonsterElt.e_minus(), N, CFG)
    assert filtration_level(g2).level == 1
    g3 = exp_ad(MonsterElt.e_letter(0, 2, 1, c=Fraction(1, 7)), N, CFG)
    assert filtration_level(g3).level == 4


def test_filtration_level_of_torus_is_zero():
    # a torus fixes the Cartan but moves generators at their own degree
    t = torus(2, 3, N, CFG)
    lv = filtration_level(t)
    assert lv.level == 0 and not lv.window_limited


def test_log_exp_roundtrip_element_side():
    x = MonsterElt.e_letter(0, 1, 1, 2) + MonsterElt.e_minus(Fraction(1, 2))
    g = exp_ad(x, N, CFG)
    y = log_unipotent(g)
    assert y.window(N) == x.window(N)


def test_exp_log_roundtrip_group_side():
    g = compose(exp_ad(MonsterElt.e_letter(0, 1, 1), N, CFG),
                exp_ad(MonsterElt.e_letter(0, 2, 1, -2), N, CFG),
                exp_ad(MonsterElt.e_minus(Fraction(1, 3)), N, CFG))
    x = log_unipotent(g)
    assert exp_ad(x, N, CFG).equal(g)


def test_log_rejects_nonunipotent():
    with pytest.raises(ValueError):
        log_unipotent(torus(2, 1, N, CFG))


def test_bch_lowest_terms():
    # log(exp(x) exp(y)) = x + y + [x,y]/2 + ... ; check through degree 7
    x = MonsterElt.e_letter(0, 1, 1)
    y = MonsterElt.e_letter(0, 2, 1)
    g = compose(exp_ad(x, N, CFG), exp_ad(y, N, CFG))
    z = log_unipotent(g)
    want = x + y + bracket(x, y).scaled(Fraction(1, 2))
    assert z.window(7) == want.window(7)


def test_ad_diagram():
    g = compose(exp_ad(MonsterElt.e_minus(), N, CFG),
                exp_ad(MonsterElt.e_letter(0, 1, 2), N, CFG))
    x = MonsterElt.e_letter(0, 2, 1, c=Fraction(2, 3))
    lhs = exp_ad(Ad(g, x), N, CFG)
    rhs = compose(g, exp_ad(x, N, CFG), invert(g))
    assert lhs.equal(rhs)


def test_ad_rejects_negative_sector():
    g = exp_ad(MonsterElt.e_minus(), N, CFG)
    with pytest.raises(ValueError):
        Ad(g, MonsterElt.f_letter(0, 1, 1))


def test_aut_check_passes_on_honest_auts():
    auts = [exp_ad(MonsterElt.e_minus(), 8, SupportConfig(8, {1: 2, 2: 1})),
            torus(3, Fraction(1, 2), 8, SupportConfig(8, {1: 2, 2: 1}))]
    cfg8 = SupportConfig(8, {1: 2, 2: 1})
    pool = [MonsterElt.h1(), MonsterElt.e_minus(), MonsterElt.f_minus(),
            MonsterElt.e_letter(0, 1, 1), MonsterElt.f_letter(0, 2, 1)]
    rng = random.Random(2)
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(30)]
    for g in auts:
        rep = aut_check(g, pairs)
        assert rep["pass"] and rep["failures"] == []


def test_aut_check_catches_corruption():
    cfg8 = SupportConfig(8, {1: 2, 2: 1})
    g = exp_ad(MonsterElt.e_minus(), 8, cfg8)
    images = {k: g.apply(MonsterElt({k: 1})) for k in generator_keys(cfg8)}
    images[monster.EMINUS] = images[monster.EMINUS] + MonsterElt.h1()  # sabotage
    bad = TruncAut(8, cfg8, images=images)
    pairs = [(MonsterElt.e_minus(), MonsterElt.f_minus())]
    rep = aut_check(bad, pairs)
    assert not rep["pass"]


def test_perm_atomic_roundtrip():
    swap = (("perm", 1, ((1, 2), (2, 1))),)
    g = TruncAut(N, CFG, word=swap)
    x = MonsterElt.e_letter(0, 1, 1)
    assert g.apply(x) == MonsterElt.e_letter(0, 1, 2)
    assert compose(g, g).equal(TruncAut.identity(N, CFG))


def test_approximate_by_generators_roundtrip():
    cfg = SupportConfig(10, {1: 2, 2: 1})
    g = compose(exp_ad(MonsterElt.e_letter(0, 1, 1), 10, cfg),
                exp_ad(MonsterElt.e_minus(2), 10, cfg),
                exp_ad(MonsterElt.e_letter(0, 2, 1, Fraction(-1, 2)), 10, cfg))
    toks = approximate_by_generators(g, 9)
    h = realize_tokens(toks, 10, cfg)
    assert equal_mod_level(g, h, 9)
    text = format_tokens(toks)
    assert text.startswith("X(")


def test_approximate_identity_is_empty():
    toks = approximate_by_generators(TruncAut.identity(N, CFG), 5)
    assert toks == []
    assert format_tokens(toks) == "1"


def test_equal_mod_level():
    g = exp_ad(MonsterElt.e_letter(0, 2, 1), N, CFG)   # level 4
    assert equal_mod_level(g, TruncAut.identity(N, CFG), 4)
    assert not equal_mod_level(g, TruncAut.identity(N, CFG), 5)


def test_apply_respects_requested_need():
    g = exp_ad(MonsterElt.e_minus(), N, CFG)
    img = g.apply(MonsterElt.f_letter(0, 1, 1), need=4)
    assert img.exact_to is None or img.exact_to >= 4


def test_report_dict_deterministic():
    g = compose(exp_ad(MonsterElt.e_minus(), N, CFG), torus(2, 3, N, CFG))
    assert g.report_dict() == g.report_dict()
    assert g.report_dict()["truncation"] == N


def test_descent_pad_and_floor_values():
    cfg3 = SupportConfig(9, {1: 2, 2: 2, 3: 1})
    # biggest descent budget of a word bottoming inside degree 9 is a
    # level-3 letter (2 steps) next to a level-2 letter (1 step)
    assert completion._descent_pad(9, cfg3) == 3
    # cheapest bottom whose raised top clears 11 is that same pair: 9
    assert completion._descent_floor(11, cfg3) == 9
    assert completion._descent_floor(14, cfg3) == 12
    # level-1 strings have length 1: nothing can descend at all
    cfg1 = SupportConfig(9, {1: 2})
    assert completion._descent_pad(9, cfg1) == 0
    assert completion._descent_floor(11, cfg1) == 12


def test_weyl_conjugation_reverses_long_string():
    # conjugating the top-of-string exponential by the degree -1 Weyl
    # word sends it to the bottom-of-string exponential; the letter sits
    # at degree 7, so intermediates leave the window and the lowering
    # factors must pull the degree-9 cross terms back in
    cfg = SupportConfig(9, {1: 2, 2: 2, 3: 1})
    w = compose(exp_ad(MonsterElt.e_minus(), 9, cfg),
                exp_ad(MonsterElt.f_minus(-1), 9, cfg),
                exp_ad(MonsterElt.e_minus(), 9, cfg))
    g = compose(w, exp_ad(MonsterElt.e_letter(2, 3, 1), 9, cfg), invert(w))
    h = exp_ad(MonsterElt.e_letter(0, 3, 1), 9, cfg)
    assert g.equal(h)
    img = g.apply(MonsterElt.e_letter(0, 2, 1)).truncated_above(9)
    cross = bracket(MonsterElt.e_letter(0, 2, 1), MonsterElt.e_letter(0, 3, 1))
    assert img == MonsterElt.e_letter(0, 2, 1) - cross
    assert img.exact_to == 9
