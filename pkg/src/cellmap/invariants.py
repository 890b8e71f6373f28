"""Fake degrees, b-invariants and truncated (j-) induction.

The fake degree of an irreducible E is the graded multiplicity of E in
the coinvariant algebra:

    P_E(q) = prod_i (1 - q^{d_i}) * (1/|W|) sum_c |c| chi_E(c) / det(1 - q w_c)

computed exactly as a polynomial with integer coefficients.  The
b-invariant is its lowest nonzero exponent; truncated induction keeps
the minimal-b constituent of ordinary induction and checks that it is
unique with multiplicity one.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import MLSViolation


def _poly_mul_trunc(a, b, top):
    out = [Fraction(0)] * (top + 1)
    for i, x in enumerate(a):
        if x == 0 or i > top:
            continue
        for j, y in enumerate(b):
            if i + j > top:
                break
            out[i + j] += x * y
    return out


def _series_inverse(p, top):
    """Inverse of a polynomial with p[0] != 0, as a series mod q^(top+1)."""
    assert p[0] != 0
    inv0 = Fraction(1) / p[0]
    out = [Fraction(0)] * (top + 1)
    out[0] = inv0
    for k in range(1, top + 1):
        s = Fraction(0)
        for j in range(1, min(k, len(p) - 1) + 1):
            s += p[j] * out[k - j]
        out[k] = -inv0 * s
    return out


def _det_one_minus_qw(refl_charpoly):
    """det(1 - q w) from det(xI - w) = sum c_k x^k: coefficient of q^j
    is c_{n-j}."""
    n = len(refl_charpoly) - 1
    return [refl_charpoly[n - j] for j in range(n + 1)]


def fake_degree(weyl, char):
    """Exact fake degree polynomial of `char`, as a list of ints
    (index = exponent).  `char` may be an IrrChar or any object with
    .values aligned to weyl.classes."""
    d = weyl.datum
    top = d.npos
    acc = [Fraction(0)] * (top + 1)
    for cl, v in zip(weyl.classes, char.values):
        if v == 0:
            continue
        inv = _class_series(weyl, cl, top)
        for k in range(top + 1):
            acc[k] += cl.size * v * inv[k]
    prod = [Fraction(1)]
    for deg in d.degrees:
        fac = [Fraction(0)] * (deg + 1)
        fac[0] = Fraction(1)
        fac[deg] = Fraction(-1)
        prod = _poly_mul_trunc(prod, fac, top)
    out = _poly_mul_trunc(prod, acc, top)
    order = d.weyl_order
    coeffs = []
    for c in out:
        c = c / order
        assert c.denominator == 1, "fake degree not integral"
        coeffs.append(int(c))
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    assert coeffs, "zero fake degree"
    return coeffs


_series_memo = {}


def _class_series(weyl, cl, top):
    key = (id(weyl), cl.name, top)
    if key not in _series_memo:
        _series_memo[key] = _series_inverse(
            list(_det_one_minus_qw(cl.refl_charpoly)), top)
    return _series_memo[key]


@lru_cache(maxsize=None)
def b_invariant(weyl, char):
    fd = fake_degree(weyl, char)
    for k, c in enumerate(fd):
        if c != 0:
            return k
    raise AssertionError("unreachable")


def b_invariant_sub(weyl, char):
    """b-invariant helper used for factors of reflection subgroups."""
    return b_invariant(weyl, char)


@lru_cache(maxsize=None)
def b_leading_coeff(weyl, char):
    """Leading (lowest-degree) coefficient of the fake degree of `char`.

    Truncated induction is well defined exactly when this coefficient
    is 1; that is the hypothesis of the
    Macdonald-Lusztig-Spaltenstein theorem.  For unordered pair
    characters {alpha, beta} of W(D_n) with |alpha| = |beta| and
    alpha != beta the coefficient is 2 and the minimal-b constituents
    of the induced character come in ties.
    """
    fd = fake_degree(weyl, char)
    for c in fd:
        if c != 0:
            return c
    raise AssertionError("unreachable")


def graded_regular_identity(weyl):
    """sum_E dim(E) * P_E(q) == prod_i (1 + q + ... + q^{d_i - 1}).

    Returns (lhs, rhs) coefficient lists for the caller to compare."""
    d = weyl.datum
    top = d.npos
    lhs = [0] * (top + 1)
    for ch in weyl.characters():
        fd = fake_degree(weyl, ch)
        for k, c in enumerate(fd):
            lhs[k] += ch.dim * c
    rhs = [Fraction(1)]
    for deg in d.degrees:
        fac = [Fraction(1)] * deg
        rhs = _poly_mul_trunc(rhs, fac, top)
    rhs = [int(c) for c in rhs]
    return lhs, rhs


def j_induction(subgroup, subchar):
    """Truncated induction j_{W_P}^W.

    Returns the ambient IrrChar that is the unique constituent of
    Ind(subchar) with minimal b-invariant; raises MLSViolation if it is
    not unique or has multiplicity != 1.

    Uniqueness is the Macdonald-Lusztig-Spaltenstein theorem and holds
    whenever the fake degree of `subchar` has leading coefficient 1
    (see b_leading_coeff); every character in the Springer image
    satisfies this, so the orbit pipeline never sees a tie.  The only
    desk-scale characters with leading coefficient 2 are the W(D_n)
    pair characters {alpha, beta}, alpha != beta, |alpha| = |beta|; for
    those j is genuinely undefined and this function raises.
    """
    W = subgroup.weyl
    mults = subgroup.induce_decompose(subchar)
    chars = W.characters()
    bs = [b_invariant(W, ch) for ch in chars]
    present = [(bs[i], i) for i, m in enumerate(mults) if m > 0]
    assert present, "induction of nonzero character is nonzero"
    bmin = min(b for b, _ in present)
    minimal = [i for b, i in present if b == bmin]
    if len(minimal) != 1 or mults[minimal[0]] != 1:
        raise MLSViolation(
            f"minimal-b constituent not unique/multiplicity-one for "
            f"{subchar.name}: {[(chars[i].name, mults[i]) for i in minimal]}")
    if subchar.b is not None and subchar.b != bmin:
        raise MLSViolation(
            f"b-invariant not preserved by truncated induction: "
            f"{subchar.name} has b={subchar.b}, image has b={bmin}")
    return chars[minimal[0]]
