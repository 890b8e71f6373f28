"""Truncated Laurent series over Q with explicit precision tracking.

A TruncLaurent stores coefficients for exponents [lo, prec); terms of
exponent >= prec are unknown.  prec = None means the series is exact (a
Laurent polynomial).  Every operation propagates the correct precision,
and any query that the tracked precision cannot answer raises
InsufficientTruncation, so the valuation results used downstream are
certified rather than heuristic.
"""

from fractions import Fraction

from .errors import InsufficientTruncation


class TruncLaurent:
    __slots__ = ("lo", "coeffs", "prec")

    def __init__(self, lo, coeffs, prec):
        # coefficients stay ints whenever the inputs are ints (hot path);
        # Fractions appear only through inverse()/scale()
        coeffs = list(coeffs)
        if prec is not None:
            assert lo + len(coeffs) == prec, (lo, len(coeffs), prec)
        # trim known-zero leading coefficients
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            lo += 1
        if prec is None:
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
        self.lo = lo
        self.coeffs = coeffs
        self.prec = prec

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c):
        return TruncLaurent(0, [c], None)

    @staticmethod
    def monomial(c, k):
        return TruncLaurent(k, [c], None)

    ZERO = None  # set below
    ONE = None

    # -- queries ---------------------------------------------------------

    def is_known_zero(self):
        """True if the series is exactly zero (only meaningful when
        prec is None or no nonzero coefficient is tracked)."""
        return not self.coeffs

    def coeff(self, k):
        if self.prec is not None and k >= self.prec:
            raise InsufficientTruncation(
                f"coefficient of t^{k} beyond precision {self.prec}")
        if k < self.lo or k >= self.lo + len(self.coeffs):
            return 0
        return self.coeffs[k - self.lo]

    def valuation(self):
        """t-adic valuation; raises if the series is zero to the tracked
        precision (the valuation is then not certified)."""
        if self.coeffs:
            return self.lo
        if self.prec is None:
            raise InsufficientTruncation("valuation of the zero series")
        raise InsufficientTruncation(
            f"series is zero up to precision {self.prec}; "
            "valuation not certified")

    def val_lower_bound(self):
        if self.coeffs:
            return self.lo
        if self.prec is None:
            return None  # exact zero: valuation +infinity
        return self.prec

    def leading(self):
        return self.coeff(self.valuation())

    # -- arithmetic -------------------------------------------------------

    def _aligned(self, other):
        if not isinstance(other, TruncLaurent):
            other = TruncLaurent.const(other)
        return other

    def __add__(self, other):
        other = self._aligned(other)
        precs = [p for p in (self.prec, other.prec) if p is not None]
        prec = min(precs) if precs else None
        los = []
        if self.coeffs:
            los.append(self.lo)
        if other.coeffs:
            los.append(other.lo)
        if not los:
            return TruncLaurent(prec if prec is not None else 0, [], prec)
        lo = min(los)
        hi = prec
        if hi is None:
            hi = max(s.lo + len(s.coeffs) for s in (self, other))
        if hi < lo:
            return TruncLaurent(hi, [], prec)
        out = [0] * (hi - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.lo + i
                if k < hi:
                    out[k - lo] += c
        return TruncLaurent(lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncLaurent(self.lo, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._aligned(other))

    def __rsub__(self, other):
        return self._aligned(other) + (-self)

    def __mul__(self, other):
        other = self._aligned(other)
        # precision of a product: min over (prec of one + val bound of other)
        bounds = []
        for a, b in ((self, other), (other, self)):
            if a.prec is not None:
                vb = b.val_lower_bound()
                if vb is not None:
                    bounds.append(a.prec + vb)
        prec = min(bounds) if bounds else None
        if not self.coeffs or not other.coeffs:
            lo = prec if prec is not None else 0
            return TruncLaurent(lo, [], prec)
        lo = self.lo + other.lo
        hi = self.lo + len(self.coeffs) + other.lo + len(other.coeffs) - 1
        if prec is not None:
            hi = min(hi, prec)
        out = [0] * (hi - lo)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            base = self.lo + i + other.lo - lo
            top = hi - lo - base
            for j, b in enumerate(other.coeffs[:max(top, 0)]):
                out[base + j] += a * b
        return TruncLaurent(lo, out, prec)

    __rmul__ = __mul__

    def scale(self, c):
        return TruncLaurent(self.lo, [c * x for x in self.coeffs], self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        return TruncLaurent(self.lo + k, list(self.coeffs),
                            None if self.prec is None else self.prec + k)

    def inverse(self, out_prec=None):
        """Multiplicative inverse, certified to the derivable precision."""
        v = self.valuation()
        n_known = len(self.coeffs)
        # inverse of (c t^v)(1 + u), u of valuation >= 1 known to n_known terms
        terms = n_known if self.prec is not None else \
            (out_prec + v if out_prec is not None else n_known + 1)
        terms = max(terms, 1)
        lead = self.coeffs[0]
        inv = [Fraction(0)] * terms
        inv[0] = Fraction(1) / lead
        for k in range(1, terms):
            s = Fraction(0)
            for j in range(1, min(k, n_known - 1) + 1):
                s += self.coeffs[j] * inv[k - j]
            inv[k] = -s / lead
        prec = None
        if self.prec is not None:
            prec = -v + (self.prec - v)
        elif out_prec is not None:
            prec = out_prec
        if prec is not None:
            inv = inv[:prec + v]
        return TruncLaurent(-v, inv, prec)

    def truncate(self, prec):
        if self.prec is not None and self.prec < prec:
            raise InsufficientTruncation(
                f"cannot extend precision {self.prec} to {prec}")
        coeffs = [self.coeff(k) for k in range(self.lo, prec)] \
            if prec > self.lo else []
        lo = min(self.lo, prec)
        return TruncLaurent(lo, coeffs, prec)

    def __repr__(self):
        parts = [f"{c}*t^{self.lo + i}"
                 for i, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(parts) if parts else "0"
        tail = f" + O(t^{self.prec})" if self.prec is not None else ""
        return f"<{body}{tail}>"


TruncLaurent.ZERO = TruncLaurent(0, [], None)
TruncLaurent.ONE = TruncLaurent.const(1)


# -- polynomials in x over TruncLaurent ---------------------------------------


def poly_trim(p):
    while p and isinstance(p[-1], TruncLaurent) and p[-1].is_known_zero() \
            and p[-1].prec is None:
        p = p[:-1]
    return p


def poly_derivative(p):
    return [p[i].scale(i) for i in range(1, len(p))]


def _tl_exact_div_int(s, k):
    """Divide a series by the integer k; on integer coefficients the
    division must be exact (Newton-identity invariant)."""
    out = []
    for c in s.coeffs:
        if isinstance(c, int):
            q, rem = divmod(c, k)
            if rem:
                q = Fraction(c, k)
            out.append(q)
        else:
            out.append(c / k)
    return TruncLaurent(s.lo, out, s.prec)


def pfaffian_tl(mat):
    """Pfaffian of an even-dimensional antisymmetric matrix over
    TruncLaurent, by recursive expansion along the first row."""
    m = len(mat)
    assert m % 2 == 0

    def rec(idx):
        if not idx:
            return TruncLaurent.ONE
        i0 = idx[0]
        total = None
        for pos in range(1, len(idx)):
            j = idx[pos]
            a = mat[i0][j]
            if isinstance(a, int):
                if a == 0:
                    continue
                a = TruncLaurent.const(a)
            elif a.is_known_zero() and a.prec is None:
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = a * rec(rest)
            if pos % 2 == 0:
                term = -term
            total = term if total is None else total + term
        return TruncLaurent.ZERO if total is None else total

    return rec(tuple(range(m)))


def char_poly_tl(mat):
    """Characteristic polynomial det(xI - M) of a matrix over TruncLaurent.
    Power traces + Newton's identities: all series arithmetic stays in
    integers (exact division by k at each step).  Returns [c_0, ..., c_n]
    with det(xI - M) = sum c_k x^k, c_n = 1."""
    n = len(mat)
    mat = [[e if isinstance(e, TruncLaurent) else TruncLaurent.const(e)
            for e in row] for row in mat]
    cur = mat
    traces = []  # p_k = tr(M^k), k = 1..n
    for k in range(1, n + 1):
        if k > 1:
            cur = _tl_matmul(mat, cur)
        tr = cur[0][0]
        for i in range(1, n):
            tr = tr + cur[i][i]
        traces.append(tr)
    e = [TruncLaurent.ONE]  # elementary symmetric functions e_0..e_n
    for k in range(1, n + 1):
        acc = TruncLaurent.ZERO
        sign = 1
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc = acc + (term if sign > 0 else -term)
            sign = -sign
        e.append(_tl_exact_div_int(acc, k))
    coeffs = []
    for k in range(n, -1, -1):
        c = e[k]
        coeffs.append(c if (k % 2 == 0) else -c)
    return coeffs


def _tl_matmul(a, b):
    fast = _tl_matmul_packed(a, b)
    if fast is not None:
        return fast
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = TruncLaurent.ZERO
            for k in range(n):
                s = s + a[i][k] * b[k][j]
            row.append(s)
        out.append(row)
    return out


def _tl_matmul_packed(a, b):
    """Integer fast path: series are packed into single big integers
    (balanced Kronecker substitution), so each series product is one
    native big-int multiplication.  Returns None when a coefficient is
    not an int or a precision is unbounded."""
    n = len(a)
    amax = bmax = 1
    maxlen = 1
    for mat in (a, b):
        for row in mat:
            for e in row:
                if e.prec is None and e.coeffs:
                    return None
                for c in e.coeffs:
                    if not isinstance(c, int):
                        return None
    for row in a:
        for e in row:
            for c in e.coeffs:
                if abs(c) > amax:
                    amax = abs(c)
            if len(e.coeffs) > maxlen:
                maxlen = len(e.coeffs)
    for row in b:
        for e in row:
            for c in e.coeffs:
                if abs(c) > bmax:
                    bmax = abs(c)
            if len(e.coeffs) > maxlen:
                maxlen = len(e.coeffs)
    shift = (amax * bmax * maxlen * n).bit_length() + 2
    base_a = min(min((e.lo for row in a for e in row), default=0), 0)
    base_b = min(min((e.lo for row in b for e in row), default=0), 0)
    half = 1 << (shift - 1)
    full = 1 << shift
    mask = full - 1

    def pack(e, base):
        v = 0
        for idx in range(len(e.coeffs) - 1, -1, -1):
            v = (v << shift) + e.coeffs[idx]
        return v << ((e.lo - base) * shift) if e.coeffs else 0

    pa = [[pack(e, base_a) for e in row] for row in a]
    pb = [[pack(e, base_b) for e in row] for row in b]
    base = base_a + base_b
    out = []
    for i in range(n):
        arow = pa[i]
        orow = []
        for j in range(n):
            acc = 0
            for k in range(n):
                acc += arow[k] * pb[k][j]
            # precision metadata from the summands
            prec = None
            lo_bound = None
            for k in range(n):
                ea, eb = a[i][k], b[k][j]
                va = ea.val_lower_bound()
                vb = eb.val_lower_bound()
                if va is None or vb is None:
                    continue  # exact zero factor: no constraint
                pq = min(ea.prec + vb, eb.prec + va)
                prec = pq if prec is None else min(prec, pq)
                lo_bound = va + vb if lo_bound is None \
                    else min(lo_bound, va + vb)
            if prec is None:
                orow.append(TruncLaurent(0, [], None))
                continue
            coeffs = []
            exp = base
            while acc and exp < prec:
                low = acc & mask
                if low >= half:
                    low -= full
                    acc += full
                acc >>= shift
                coeffs.append(low)
                exp += 1
            # pad up to prec
            lo = base
            coeffs = coeffs + [0] * (prec - lo - len(coeffs))
            orow.append(TruncLaurent(lo, coeffs, prec))
        out.append(orow)
    return out


def resultant_valuation(p, q):
    """t-adic valuation of res_x(p, q) for polynomials over TruncLaurent,
    via the Euclidean remainder sequence over the Laurent-series field.
    Raises InsufficientTruncation when a leading coefficient is zero to
    the tracked precision."""
    p = poly_trim(list(p))
    q = poly_trim(list(q))
    val = 0
    while True:
        if len(q) == 0:
            raise InsufficientTruncation("resultant: zero remainder")
        if len(q) == 1:
            val += q[0].valuation() * (len(p) - 1)
            return val
        if len(p) < len(q):
            p, q = q, p
            continue
        lc = q[-1]
        v_lc = lc.valuation()
        # contribution of the leading coefficient: deg drop bookkeeping
        deg_p, deg_q = len(p) - 1, len(q) - 1
        r = _poly_mod(p, q)
        r = poly_trim(r)
        deg_r = len(r) - 1 if r else -1
        val += v_lc * (deg_p - deg_r)
        p, q = q, r


def _poly_mod(p, q):
    """Remainder of p by q over the Laurent-series field."""
    p = list(p)
    dq = len(q) - 1
    lc_inv = q[-1].inverse()
    while len(p) - 1 >= dq:
        if p[-1].is_known_zero():
            if p[-1].prec is not None and not p[-1].coeffs:
                # leading coefficient only known to be small: cannot
                # certify the degree of the remainder
                raise InsufficientTruncation(
                    "polynomial remainder: leading coefficient is zero "
                    "to tracked precision")
            p.pop()
            continue
        factor = p[-1] * lc_inv
        shift = len(p) - 1 - dq
        for i in range(dq + 1):
            p[shift + i] = p[shift + i] - factor * q[i]
        p.pop()
    return p
