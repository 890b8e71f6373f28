"""Truncated Laurent arithmetic: exactness, certification, resultants,
Pfaffians."""

from fractions import Fraction

import pytest

from cellmap.errors import InsufficientTruncation
from cellmap.trunclaurent import (TruncLaurent, char_poly_tl, pfaffian_tl,
                                  poly_derivative, resultant_valuation)

T = TruncLaurent


def mono(c, k):
    return T.monomial(c, k)


def test_add_mul_basic():
    a = mono(1, 0) + mono(2, 1)          # 1 + 2t
    b = mono(3, 1)                       # 3t
    assert (a * b).coeff(1) == 3
    assert (a * b).coeff(2) == 6
    assert (a + b).coeff(1) == 5


def test_inverse_geometric_series():
    a = mono(1, 0) - mono(1, 1)          # 1 - t
    inv = a.inverse(out_prec=5)
    for k in range(5):
        assert inv.coeff(k) == 1


def test_inverse_stays_rational():
    # the coefficient arithmetic must never fall back to floats: an int
    # leading coefficient of 2 must invert to the exact Fraction 1/2
    a = mono(2, 0) + mono(1, 1)
    inv = a.inverse(out_prec=4)
    c0 = inv.coeff(0)
    assert c0 == Fraction(1, 2)
    assert isinstance(c0, (int, Fraction))
    prod = a * inv
    assert prod.coeff(0) == 1
    assert prod.coeff(1) == 0


def test_valuation_certification():
    z = T(3, [], 3)                      # zero up to t^3: not certified
    with pytest.raises(InsufficientTruncation):
        z.valuation()
    assert T.ZERO.is_known_zero()
    assert mono(5, 2).valuation() == 2


def test_resultant_valuation_quadratic():
    # p = x^2 - t^(2k): res(p, p') = -4 t^(2k) up to sign, valuation 2k
    for k in (1, 2, 3):
        p = [-mono(1, 2 * k), T.ZERO, T.ONE]
        assert resultant_valuation(p, poly_derivative(p)) == 2 * k


def test_resultant_valuation_mixed():
    # p = (x - t)(x - 2t) = x^2 - 3t x + 2t^2; disc = (t - 2t)^2 = t^2
    p = [mono(2, 2), -mono(3, 1), T.ONE]
    assert resultant_valuation(p, poly_derivative(p)) == 2


def test_char_poly_diagonal():
    m = [[mono(1, 1), T.ZERO], [T.ZERO, mono(1, 2)]]
    p = char_poly_tl(m)
    # (x - t)(x - t^2) = x^2 - (t + t^2) x + t^3
    assert p[2].coeff(0) == 1
    assert p[1].coeff(1) == -1 and p[1].coeff(2) == -1
    assert p[0].coeff(3) == 1


def test_pfaffian_2x2():
    a = mono(3, 1)
    m = [[T.ZERO, a], [-a, T.ZERO]]
    assert pfaffian_tl(m).coeff(1) == 3


def test_pfaffian_4x4():
    # pf [[0,a,b,c],[-a,0,d,e],[-b,-d,0,f],[-c,-e,-f,0]] = af - be + cd
    vals = {"a": 2, "b": 3, "c": 5, "d": 7, "e": 11, "f": 13}
    a, b, c, d, e, f = (mono(vals[k], 0) for k in "abcdef")
    z = T.ZERO
    m = [[z, a, b, c], [-a, z, d, e], [-b, -d, z, f], [-c, -e, -f, z]]
    expect = vals["a"] * vals["f"] - vals["b"] * vals["e"] \
        + vals["c"] * vals["d"]
    assert pfaffian_tl(m).coeff(0) == expect


def test_pfaffian_squares_to_determinant():
    # pf(A)^2 = det(A) = constant coefficient relation via char poly
    a, b, c = mono(1, 1), mono(2, 0), mono(1, 2)
    d, e, f = mono(3, 1), mono(1, 0), mono(2, 1)
    z = T.ZERO
    m = [[z, a, b, c], [-a, z, d, e], [-b, -d, z, f], [-c, -e, -f, z]]
    pf = pfaffian_tl(m)
    det = char_poly_tl(m)[0]             # det(xI - A) at x = 0, size even
    sq = pf * pf
    for k in range(6):
        assert sq.coeff(k) == det.coeff(k)
