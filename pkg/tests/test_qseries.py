import time

from monsterlie.qseries import QSeries, delta_product, eisenstein_e4, j_coefficients, sigma3

from oracles import delta_pentagonal


def test_sigma3_small():
    assert sigma3(1) == 1
    assert sigma3(2) == 9
    assert sigma3(3) == 28
    assert sigma3(4) == 73
    assert sigma3(6) == 252


def test_qseries_arithmetic():
    a = QSeries(0, [1, 2, 3], 5)
    b = QSeries(1, [4, 5], 5)
    assert (a + b).coeff(1) == 6
    assert (a * b).coeff(1) == 4
    assert (a * b).coeff(2) == 13
    assert (a - a).is_zero()
    assert a.pow_int(2).coeff(2) == 10   # (1+2q+3q^2)^2 = 1+4q+10q^2+...


def test_qseries_recip():
    a = QSeries(0, [1, -1], 8)          # 1 - q
    r = a.recip()                       # geometric series
    for n in range(8):
        assert r.coeff(n) == 1
    assert (a * r).coeff(0) == 1
    assert all((a * r).coeff(n) == 0 for n in range(1, 8))


def test_recip_with_leading_pole():
    d = delta_product(10)
    inv = d.recip()
    prod = d * inv
    assert prod.coeff(0) == 1
    assert all(prod.coeff(n) == 0 for n in range(1, 9))


def test_eisenstein_e4_coefficients():
    e4 = eisenstein_e4(5)
    assert e4.coeff(0) == 1
    assert e4.coeff(1) == 240
    assert e4.coeff(2) == 2160
    assert e4.coeff(3) == 6720
    assert e4.coeff(4) == 17520


def test_delta_against_pentagonal_oracle():
    # same cusp form by a different route: sparse pentagonal series vs product
    want = delta_pentagonal(12)
    d = delta_product(14)
    for n in range(1, 13):
        assert d.coeff(n) == want[n]


def test_delta_first_coefficients():
    d = delta_product(6)
    assert d.coeff(1) == 1
    assert d.coeff(2) == -24
    assert d.coeff(3) == 252
    assert d.coeff(4) == -1472
    assert d.coeff(5) == 4830


def test_j_coefficients_known_values():
    c = j_coefficients(4)
    assert c[-1] == 1
    assert c[0] == 0
    assert c[1] == 196884
    assert c[2] == 21493760
    assert c[3] == 864299970
    assert c[4] == 20245856256


def test_j_coefficient_15():
    c = j_coefficients(15)
    assert c[15] == 126142916465781843075


def test_j_runtime_modest():
    t0 = time.monotonic()
    j_coefficients(15)
    assert time.monotonic() - t0 < 1.0


def test_j_coefficients_all_nonnegative_after_constant():
    c = j_coefficients(10)
    assert all(c[n] > 0 for n in range(1, 11))
