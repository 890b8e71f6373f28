"""Partition combinatorics used by orbit classification.

Partitions are tuples of positive ints in weakly decreasing order.
"""

from functools import lru_cache

from .errors import OrbitLeviMismatch


def normalize(parts):
    ps = tuple(sorted((int(p) for p in parts if int(p) != 0), reverse=True))
    if any(p < 0 for p in ps):
        raise ValueError("negative part")
    return ps


@lru_cache(maxsize=None)
def partitions_of(n):
    """All partitions of n, each a decreasing tuple."""
    if n < 0:
        return ()
    if n == 0:
        return ((),)
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, maxpart), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def transpose(lam):
    lam = normalize(lam)
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominates(lam, mu):
    """True if lam >= mu in dominance order (same total size required)."""
    if sum(lam) != sum(mu):
        return False
    a = b = 0
    la, mb = list(lam), list(mu)
    n = max(len(la), len(mb))
    la += [0] * (n - len(la))
    mb += [0] * (n - len(mb))
    for i in range(n):
        a += la[i]
        b += mb[i]
        if a < b:
            return False
    return True


def n_invariant(lam):
    """n(lambda) = sum (i-1) * lambda_i, the b-invariant of the
    symmetric-group character labelled lambda."""
    return sum(i * p for i, p in enumerate(normalize(lam)))


def hook_dimension(lam):
    """Number of standard Young tableaux of shape lam (hook lengths)."""
    lam = normalize(lam)
    n = sum(lam)
    if n == 0:
        return 1
    lt = transpose(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= (row - j) + (lt[j] - i) - 1
    import math
    return math.factorial(n) // prod


def is_valid_bc(lam, family):
    """Parity validity: family 'B'/'D' = even parts with even multiplicity
    (orthogonal), family 'C' = odd parts with even multiplicity."""
    lam = normalize(lam)
    from collections import Counter
    cnt = Counter(lam)
    if family in ("B", "D"):
        return all(m % 2 == 0 for p, m in cnt.items() if p % 2 == 0)
    if family == "C":
        return all(m % 2 == 0 for p, m in cnt.items() if p % 2 == 1)
    raise ValueError(family)


@lru_cache(maxsize=None)
def valid_partitions(n, family):
    return tuple(p for p in partitions_of(n) if is_valid_bc(p, family))


@lru_cache(maxsize=None)
def collapse(lam, family):
    """The X-collapse: the unique dominance-largest valid partition <= lam.

    Computed by direct search over all valid partitions of the same size;
    sizes here are tiny, and the brute-force route doubles as an oracle
    for the uniqueness of the maximum.
    """
    lam = normalize(lam)
    n = sum(lam)
    cands = [p for p in valid_partitions(n, family) if dominates(lam, p)]
    if not cands:
        raise OrbitLeviMismatch(f"no valid {family}-partition below {lam}")
    best = [p for p in cands if all(dominates(p, q) for q in cands)]
    if len(best) != 1:
        raise OrbitLeviMismatch(
            f"collapse of {lam} in family {family} is not unique: {best}")
    return best[0]
