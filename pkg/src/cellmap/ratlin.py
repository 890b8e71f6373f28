"""Small dense exact linear algebra over the rationals.

Vectors are tuples of Fractions (or ints), matrices are tuples of row
tuples.  Everything here is O(n^3) Gaussian elimination with exact
arithmetic; sizes in this package never exceed a few dozen.
"""

from fractions import Fraction


def vec(xs):
    return tuple(Fraction(x) for x in xs)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def identity(n):
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
                 for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def _echelon(rows):
    """Row-reduce a list of row lists in place; return pivot columns."""
    rows = [list(map(Fraction, r)) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m):
    if not m:
        return 0
    _, pivots = _echelon(list(m))
    return len(pivots)


def solve(a, b):
    """Solve a x = b exactly; a square nonsingular. Returns tuple."""
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(bv)] for row, bv in zip(a, b)]
    rows, pivots = _echelon(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise ValueError("singular system")
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return tuple(x)


def inverse(a):
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(1) if i == j else Fraction(0)
                                       for j in range(n)]
           for i, row in enumerate(a)]
    rows, pivots = _echelon(aug)
    if len(pivots) != n:
        raise ValueError("singular matrix")
    return tuple(tuple(rows[i][n:]) for i in range(n))


def kernel_dim(m):
    if not m:
        return 0
    return len(m[0]) - rank(m)


def kernel_basis(m):
    """Basis of the right null space of m (list of tuples)."""
    rows, pivots = _echelon(list(m))
    ncols = len(m[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


def char_poly_q(m):
    """Characteristic polynomial of a rational matrix.

    Returned as a list of Fractions [c_0, ..., c_n] with
    det(xI - m) = sum c_k x^k, c_n = 1.  Faddeev-LeVerrier.
    """
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = identity(n)
    ak = m
    for k in range(1, n + 1):
        ak = mat_mul(m, mk) if k > 1 else m
        tr = sum((ak[i][i] for i in range(n)), Fraction(0))
        c = -tr / k
        coeffs[n - k] = c
        mk = tuple(tuple(ak[i][j] + (c if i == j else 0) for j in range(n))
                   for i in range(n))
    return coeffs


def eigen_multiplicity_one(m):
    """Multiplicity of eigenvalue 1, i.e. dim ker(m - I)."""
    n = len(m)
    shifted = tuple(tuple(m[i][j] - (1 if i == j else 0) for j in range(n))
                    for i in range(n))
    return kernel_dim(shifted)
