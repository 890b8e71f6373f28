"""Combinatorial character tables for classical Weyl groups.

Type A uses Murnaghan-Nakayama on partitions; types B/C use the wreath
product Z2 wr S_n version of the rule on bipartitions; type D is obtained
by restriction from B with the usual split-character correction.

Characters are returned as plain dicts mapping class labels to integer
values; the weyl module aligns them with its enumerated classes.
"""

import math
from fractions import Fraction
from functools import lru_cache

from .partitions import normalize, partitions_of


# -- border strips via beta-numbers -----------------------------------------


def _beta_set(lam, length):
    lam = list(lam) + [0] * (length - len(lam))
    return sorted(lam[i] + (length - 1 - i) for i in range(length))


def _strip_removals(lam, size):
    """All ways to remove a border strip of `size` boxes from lam.

    Yields (new_partition, height).
    """
    lam = normalize(lam)
    length = len(lam) + size  # enough beta numbers
    beta = _beta_set(lam, length)
    bset = set(beta)
    for b in beta:
        nb = b - size
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for c in beta if nb < c < b)
        newbeta = sorted(bset - {b} | {nb})
        parts = [x - i for i, x in enumerate(newbeta)]
        newlam = normalize(parts)
        yield newlam, height


@lru_cache(maxsize=None)
def sym_char(lam, mu):
    """Murnaghan-Nakayama: character chi_lam of S_n at cycle type mu."""
    lam, mu = normalize(lam), normalize(mu)
    assert sum(lam) == sum(mu)
    if not lam:
        return 1
    k = mu[0]
    rest = mu[1:]
    total = 0
    for newlam, height in _strip_removals(lam, k):
        total += (-1) ** height * sym_char(newlam, rest)
    return total


@lru_cache(maxsize=None)
def wreath_char(pair, cycles):
    """Character chi^{(L, M)} of Z2 wr S_n at the class with signed
    cycle list `cycles` (tuple of (length, sign) pairs, sign in {1,-1}).

    L indexes the trivial Z2-character slot, M the sign slot: removing a
    cycle's strip from M multiplies by the cycle's sign.
    """
    L, M = pair
    if not cycles:
        return 1 if (not L and not M) else 0
    k, s = cycles[0]
    rest = cycles[1:]
    total = 0
    for newL, height in _strip_removals(L, k):
        total += (-1) ** height * wreath_char((newL, M), rest)
    for newM, height in _strip_removals(M, k):
        total += s * (-1) ** height * wreath_char((L, newM), rest)
    return total


# -- class data --------------------------------------------------------------


def a_classes(n):
    """Classes of S_n: partitions with sizes."""
    out = []
    for mu in partitions_of(n):
        z = 1
        m = {}
        for p in mu:
            m[p] = m.get(p, 0) + 1
        for p, k in m.items():
            z *= p ** k * math.factorial(k)
        out.append((mu, math.factorial(n) // z))
    return out


def bc_classes(n):
    """Classes of Z2 wr S_n: pairs (alpha, beta); beta = negative cycles."""
    out = []
    order = 2 ** n * math.factorial(n)
    for k in range(n + 1):
        for alpha in partitions_of(k):
            for beta in partitions_of(n - k):
                z = 1
                for part, mult in _mults(alpha).items():
                    z *= (2 * part) ** mult * math.factorial(mult)
                for part, mult in _mults(beta).items():
                    z *= (2 * part) ** mult * math.factorial(mult)
                out.append(((alpha, beta), order // z))
    return out


def _mults(lam):
    m = {}
    for p in lam:
        m[p] = m.get(p, 0) + 1
    return m


def bc_bipartitions(n):
    out = []
    for k in range(n + 1):
        for L in partitions_of(k):
            for M in partitions_of(n - k):
                out.append((L, M))
    return out


def _signed_cycles(alpha, beta):
    return tuple([(p, 1) for p in alpha] + [(p, -1) for p in beta])


def bc_char_value(pair, cls):
    return wreath_char(pair, _signed_cycles(*cls))


def bc_dim(pair):
    from .partitions import hook_dimension
    L, M = pair
    n = sum(L) + sum(M)
    return math.comb(n, sum(L)) * hook_dimension(L) * hook_dimension(M)


# -- type D -------------------------------------------------------------------


def d_is_split_class(alpha, beta):
    return not beta and all(p % 2 == 0 for p in alpha)


def d_classes(n):
    """Classes of W(D_n) as labels.

    Non-split label: (alpha, beta, '') with len(beta) even.
    Split labels:    (alpha, (), '+') and (alpha, (), '-').
    Sizes are relative to |W(D_n)| = 2^(n-1) n!.
    """
    out = []
    for (alpha, beta), size in bc_classes(n):
        if len(beta) % 2 != 0:
            continue
        if d_is_split_class(alpha, beta):
            out.append(((alpha, beta, '+'), size // 2))
            out.append(((alpha, beta, '-'), size // 2))
        else:
            out.append(((alpha, beta, ''), size))
    assert sum(s for _, s in out) == 2 ** (n - 1) * math.factorial(n)
    return out


def d_characters(n):
    """Irreducible characters of W(D_n) as dicts over d_classes labels.

    Labels: (pair, '') for unordered {L, M}, L != M, with pair sorted;
            (pair, '+') / (pair, '-') for the split halves when L == M.
    """
    classes = d_classes(n)
    chars = []
    seen = set()
    for L, M in bc_bipartitions(n):
        if L == M:
            continue
        key = tuple(sorted((L, M)))
        if key in seen:
            continue
        seen.add(key)
        values = {}
        for (alpha, beta, tag), _ in classes:
            values[(alpha, beta, tag)] = bc_char_value((L, M), (alpha, beta))
        chars.append(((key, ''), values))
    if n % 2 == 0:
        m = n // 2
        for lam in partitions_of(m):
            base = {}
            for (alpha, beta, tag), _ in classes:
                base[(alpha, beta, tag)] = bc_char_value(
                    ((lam, lam)), (alpha, beta))
            for eps in (1, -1):
                values = {}
                for (alpha, beta, tag), _ in classes:
                    v = Fraction(base[(alpha, beta, tag)], 2)
                    if tag:
                        gamma = tuple(p // 2 for p in alpha)
                        delta = 1 if tag == '+' else -1
                        v += eps * delta * 2 ** (len(gamma) - 1) \
                            * sym_char(lam, gamma)
                    assert v.denominator == 1, (lam, alpha, v)
                    values[(alpha, beta, tag)] = int(v)
                chars.append((((lam, lam), '+' if eps == 1 else '-'), values))
    return classes, chars
