"""Matrix models of the classical loop algebras and parahoric lattices.

Defining representations (A: n+1; B: 2n+1 with a symmetric antidiagonal
form; C: 2n alternating; D: 2n symmetric) are built from torus weights:
each root space is solved for inside gl_m as the intersection of the
weight space with the form constraint, so the construction is verified
rather than hand-coded.  On top of this: Moy-Prasad valuation patterns
from a parahoric facet point, nilpotent lifts of levi orbits certified
by a dense-orbit (ad-surjectivity) check, and deterministic generic
sampling in the positive-depth lattice.
"""

import hashlib
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

from . import ratlin
from .errors import DegenerateSample, OrbitLeviMismatch, UnsupportedType
from .orbits import check_orbit_valid, weighted_dynkin
from .rootdata import build as build_datum
from .trunclaurent import TruncLaurent, char_poly_tl

K_GUARD = 4


def k_min(datum):
    """Default truncation order: 2N + r + 4."""
    return 2 * datum.npos + datum.rank + K_GUARD


class DefiningRep:
    """Defining representation of a classical simple Lie algebra, with
    integer root-vector matrices and the preserved bilinear form."""

    def __init__(self, datum):
        fam, n = datum.family, datum.rank
        if fam not in "ABCD":
            raise UnsupportedType(
                f"no defining-representation lattice model for {datum.name}")
        self.datum = datum
        amb = datum.ambient_dim
        if fam == 'A':
            m = n + 1
            weights = [tuple(1 if k == i else 0 for k in range(amb))
                       for i in range(m)]
            form = None
        else:
            pos = [tuple(1 if k == i else 0 for k in range(amb))
                   for i in range(n)]
            neg = [tuple(-w for w in wt) for wt in reversed(pos)]
            if fam == 'B':
                weights = pos + [tuple(0 for _ in range(amb))] + neg
            else:
                weights = pos + neg
            m = len(weights)
            form = [[0] * m for _ in range(m)]
            for i in range(m):
                s = 1
                if fam == 'C' and i >= n:
                    s = -1
                form[i][m - 1 - i] = s
        self.m = m
        self.weights = weights
        self.form = form
        self.root_vectors = {}
        for alpha in datum.roots:
            self.root_vectors[alpha] = self._solve_root_vector(alpha)
        assert len(self.root_vectors) == datum.nroots
        for alpha, mat in self.root_vectors.items():
            self._check_in_algebra(mat)

    def _positions(self, alpha):
        out = []
        for a, wa in enumerate(self.weights):
            for b, wb in enumerate(self.weights):
                if a != b and tuple(x - y for x, y in zip(wa, wb)) == alpha:
                    out.append((a, b))
        return out

    def _solve_root_vector(self, alpha):
        pos = self._positions(alpha)
        assert pos, f"no matrix positions for root {alpha}"
        if self.form is None:
            assert len(pos) == 1
            (a, b), = pos
            mat = [[0] * self.m for _ in range(self.m)]
            mat[a][b] = 1
            return mat
        # solve c_1 E_{p_1} + ... within the form constraint X^T J + J X = 0
        rows = []
        for i in range(self.m):
            for j in range(self.m):
                row = []
                for (a, b) in pos:
                    v = Fraction(0)
                    # (E_ab^T J)_{ij} = delta_{bi} J_{aj};  (J E_ab)_{ij} =
                    # J_{ia} delta_{bj}
                    if i == b:
                        v += self.form[a][j]
                    if j == b:
                        v += self.form[i][a]
                    row.append(v)
                rows.append(row)
        basis = ratlin.kernel_basis(rows)
        assert len(basis) == 1, (alpha, len(basis))
        coeffs = basis[0]
        den = 1
        for c in coeffs:
            den = den * c.denominator // _gcd(den, c.denominator) \
                if c.denominator != 1 else den
        ints = [int(c * den) for c in coeffs]
        g = 0
        for c in ints:
            g = _gcd(g, abs(c))
        ints = [c // g for c in ints]
        lead = next(c for c in ints if c != 0)
        if lead < 0:
            ints = [-c for c in ints]
        mat = [[0] * self.m for _ in range(self.m)]
        for c, (a, b) in zip(ints, pos):
            mat[a][b] = c
        return mat

    def _check_in_algebra(self, mat):
        if self.form is None:
            assert sum(mat[i][i] for i in range(self.m)) == 0
            return
        J = self.form
        m = self.m
        for i in range(m):
            for j in range(m):
                s = sum(mat[k][i] * J[k][j] + J[i][k] * mat[k][j]
                        for k in range(m))
                assert s == 0

    def cartan_element(self, h):
        """Diagonal matrix of the Cartan element with ambient coords h."""
        out = [[0] * self.m for _ in range(self.m)]
        for i in range(self.m):
            v = _dot(self.weights[i], h)
            out[i][i] = int(v) if v.denominator == 1 else v
        return out

    def cartan_directions(self):
        """Integer basis of the Cartan subalgebra, as ambient vectors."""
        fam, n = self.datum.family, self.datum.rank
        amb = self.datum.ambient_dim
        if fam == 'A':
            return [tuple(1 if k == i else (-1 if k == i + 1 else 0)
                          for k in range(amb)) for i in range(n)]
        return [tuple(1 if k == i else 0 for k in range(amb))
                for i in range(n)]


def _dot(u, v):
    return sum(Fraction(a) * b for a, b in zip(u, v))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a if a else 1


@lru_cache(maxsize=None)
def defining_rep(name):
    return DefiningRep(build_datum(name))


# -- valuation patterns --------------------------------------------------------


def valuation_pattern(parahoric):
    """(shifts, plus_shifts): entrywise t-adic valuation lower bounds of
    Lie P and Lie P+ in the defining representation; None marks matrix
    positions not in the Lie algebra."""
    datum = parahoric.datum
    rep = defining_rep(datum.name)
    x = parahoric.x
    m = rep.m
    rootset = set(datum.roots)
    shifts = [[None] * m for _ in range(m)]
    plus = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            if a == b or rep.weights[a] == rep.weights[b]:
                shifts[a][b] = 0
                plus[a][b] = 1
                continue
            alpha = tuple(p - q for p, q in zip(rep.weights[a],
                                                rep.weights[b]))
            if alpha not in rootset:
                continue
            ax = _dot(alpha, x)
            shifts[a][b] = ceil(-ax)
            plus[a][b] = floor(-ax) + 1
    return shifts, plus


def root_shift(parahoric, alpha, strict=False):
    ax = _dot(alpha, parahoric.x)
    if strict:
        return floor(-ax) + 1
    return ceil(-ax)


# -- nilpotent lifts -----------------------------------------------------------


class NilpotentLift:
    """Integer matrix representative e of a levi orbit together with its
    t-twisted lattice version: entries {(i,j): {exponent: int}}."""

    def __init__(self, parahoric, orbit_labels, g2_roots, coeffs):
        self.parahoric = parahoric
        self.orbit_labels = tuple(orbit_labels)
        self.g2_roots = list(g2_roots)
        self.coeffs = list(coeffs)


def _mat_bracket(a, b):
    m = len(a)
    ab = [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(m)]
          for i in range(m)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(m)) for j in range(m)]
          for i in range(m)]
    return [[ab[i][j] - ba[i][j] for j in range(m)] for i in range(m)]


def lift_nilpotent(parahoric, orbit_labels):
    """Lift of the levi orbit given factorwise: the dense-orbit
    representative e = sum c_beta E_beta over the 2-graded levi roots of
    the transported weighted Dynkin cocharacter, certified by
    ad(e): levi(0) -> levi(2) being surjective."""
    datum = parahoric.datum
    rep = defining_rep(datum.name)
    factors = parahoric.factors
    if len(orbit_labels) != len(factors):
        raise OrbitLeviMismatch(
            f"need {len(factors)} factor orbit labels, got "
            f"{len(orbit_labels)}")
    amb = datum.ambient_dim
    h = [Fraction(0)] * amb
    for fac, label in zip(factors, orbit_labels):
        check_orbit_valid(fac.std, label)
        wdd = weighted_dynkin(fac.std, label)
        hf = _cartan_from_weights(fac.simples, wdd)
        h = [a + b for a, b in zip(h, hf)]
    levi = sorted(parahoric.levi_roots)
    grades = {alpha: _dot(alpha, h) for alpha in levi}
    for alpha, g in grades.items():
        assert g.denominator == 1, (alpha, g)
    g2 = [alpha for alpha in levi if grades[alpha] == 2]
    g0 = [alpha for alpha in levi if grades[alpha] == 0]
    coeffs = _dense_orbit_coefficients(rep, g0, g2)
    return NilpotentLift(parahoric, orbit_labels, g2, coeffs)


def _cartan_from_weights(simples, wdd):
    """Solve for h in the span of the factor coroots with
    <beta_i, h> = wdd_i."""
    amb = len(simples[0])
    coroots = []
    for beta in simples:
        norm = sum(Fraction(b) * b for b in beta)
        coroots.append([2 * Fraction(b) / norm for b in beta])
    k = len(simples)
    gram = [[_dot(simples[i], coroots[j]) for j in range(k)]
            for i in range(k)]
    sol = ratlin.solve(gram, [Fraction(w) for w in wdd])
    h = [Fraction(0)] * amb
    for c, cr in zip(sol, coroots):
        h = [a + c * b for a, b in zip(h, cr)]
    return h


def _dense_orbit_coefficients(rep, g0_roots, g2_roots):
    """Small integer coefficients c making e = sum c_i E_{g2_i} a dense
    point of the 2-graded piece (ad-surjectivity from grade 0)."""
    if not g2_roots:
        return []
    candidates = [
        [1] * len(g2_roots),
        list(range(1, len(g2_roots) + 1)),
        [(3 * i * i + i + 1) % 11 + 1 for i in range(len(g2_roots))],
        [(7 * i * i * i + 5 * i + 3) % 23 + 1 for i in range(len(g2_roots))],
    ]
    domain = [rep.cartan_element(d) for d in rep.cartan_directions()]
    domain += [rep.root_vectors[a] for a in g0_roots]
    target_dim = len(g2_roots)
    for cand in candidates:
        e = [[0] * rep.m for _ in range(rep.m)]
        for c, alpha in zip(cand, g2_roots):
            ev = rep.root_vectors[alpha]
            for i in range(rep.m):
                for j in range(rep.m):
                    e[i][j] += c * ev[i][j]
        rows = []
        for b in domain:
            br = _mat_bracket(e, b)
            rows.append([Fraction(br[i][j]) for i in range(rep.m)
                         for j in range(rep.m)])
        if ratlin.rank(rows) == target_dim:
            return cand
    raise DegenerateSample(
        "no small-coefficient dense representative found for the graded "
        "piece; orbit lift failed")


# -- deterministic sampling ----------------------------------------------------


def _draw(seed, tag, bound):
    """Deterministic integer in [-bound, bound] from (seed, tag)."""
    h = hashlib.sha256(f"{seed}|{tag}".encode()).digest()
    v = int.from_bytes(h[:8], "big")
    return v % (2 * bound + 1) - bound


def sample_generic(lift, K, seed, bound=7):
    """lift + deterministic noise over an integer basis of Lie P+,
    truncated at t^K.  Returns the matrix as TruncLaurent entries."""
    parahoric = lift.parahoric
    datum = parahoric.datum
    rep = defining_rep(datum.name)
    x = parahoric.x
    entries = {}

    def add(mat, exponent, scalar):
        if scalar == 0:
            return
        for i in range(rep.m):
            row = mat[i]
            for j in range(rep.m):
                if row[j]:
                    entries.setdefault((i, j), {})
                    entries[(i, j)][exponent] = \
                        entries[(i, j)].get(exponent, 0) + scalar * row[j]

    for c, alpha in zip(lift.coeffs, lift.g2_roots):
        ax = _dot(alpha, x)
        assert ax.denominator == 1
        add(rep.root_vectors[alpha], -int(ax), c)
    if bound > 0:
        for alpha in datum.roots:
            lo = root_shift(parahoric, alpha, strict=True)
            ev = rep.root_vectors[alpha]
            tag = "r:" + ",".join(map(str, alpha))
            for mexp in range(lo, K):
                add(ev, mexp, _draw(seed, f"{tag}:{mexp}", bound))
        for idx, d in enumerate(rep.cartan_directions()):
            hv = rep.cartan_element(d)
            for mexp in range(1, K):
                add(hv, mexp, _draw(seed, f"h:{idx}:{mexp}", bound))
    mat = []
    for i in range(rep.m):
        row = []
        for j in range(rep.m):
            cc = entries.get((i, j), {})
            if cc:
                lo = min(cc)
                coeffs = [cc.get(k, 0) for k in range(lo, K)]
                row.append(TruncLaurent(lo, coeffs, K))
            else:
                row.append(TruncLaurent(K, [], K))
        mat.append(row)
    return mat


def char_poly_t(mat):
    """[c_0 .. c_m] TruncLaurent coefficients of det(xI - gamma)."""
    return char_poly_tl(mat)


def enforce_structure(datum, p):
    """Replace the structurally-zero characteristic-polynomial
    coefficients by exact zeros, asserting the tracked values vanish:
    type A is traceless (c_{m-1} = 0); B/C/D satisfy
    p(-x) = (-1)^m p(x), killing every wrong-parity coefficient."""
    m = len(p) - 1
    out = list(p)
    if datum.family == 'A':
        assert all(c == 0 for c in p[m - 1].coeffs), \
            "trace of an sl element did not vanish"
        out[m - 1] = TruncLaurent.ZERO
        return out
    for k in range(m + 1):
        if (m - k) % 2 == 1:
            assert all(c == 0 for c in p[k].coeffs), \
                "form symmetry violated in characteristic polynomial"
            out[k] = TruncLaurent.ZERO
    return out
