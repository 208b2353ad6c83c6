"""Independent reference computations used only by the tests.

None of these share code with the package: they use textbook definitions
(gcd of minors, characteristic polynomials, brute force) that are slow but
easy to trust.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


def det_int(rows):
    """Laplace expansion; fine for the tiny matrices used here."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det_int(minor)
    return total


def determinantal_divisors(rows, ncols):
    """d_k = gcd of all k x k minors, for k = 1..min(m, n); 0 once the minors all vanish."""
    m = len(rows)
    out = []
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(ncols), k):
                g = gcd(g, det_int([[rows[r][c] for c in ci] for r in ri]))
        out.append(g)
    return out


def invariant_factors(rows, ncols):
    """Smith diagonal from determinantal divisors: s_k = d_k / d_{k-1}."""
    ds = determinantal_divisors(rows, ncols)
    out, prev = [], 1
    for d in ds:
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def is_primitive_by_minors(vectors, n):
    """A tuple of k vectors in Z^n extends to a basis iff its k x k minors have gcd 1."""
    k = len(vectors)
    if k == 0:
        return True
    if k > n:
        return False
    rows = [list(r) for r in zip(*vectors)]  # n x k
    return determinantal_divisors(rows, k)[-1] == 1


def rank_q(rows, ncols):
    M = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            f = M[i][c] / M[r][c]
            M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return r


def charpoly(rows):
    """Coefficients of det(xI - A), highest degree first (Faddeev-LeVerrier)."""
    n = len(rows)
    A = [[Fraction(x) for x in r] for r in rows]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        M = [[AM[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = [[sum(A[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(AM[i][i] for i in range(n)) / k)
    return coeffs


def _sign_changes(cs):
    signs = [c > 0 for c in cs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature_by_descartes(rows):
    """For a symmetric matrix all roots are real, so Descartes' rule counts them exactly."""
    n = len(rows)
    if n == 0:
        return 0
    p = charpoly(rows)
    pos = _sign_changes(p)
    neg = _sign_changes([c * (-1) ** (n - i) for i, c in enumerate(p)])
    return pos - neg


def matmul(a, b):
    return [[sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def inv2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    assert det == 1
    return [[d, -b], [-c, a]]


def meyer_brute(C1, C2):
    """Meyer's tau_1 via an explicit integer kernel basis and Descartes' rule.

    The kernel of (C1^-1 - I | C2 - I) is found by Fraction elimination written
    out independently of the package.
    """
    i1 = inv2(C1)
    L = [[i1[r][c] - (r == c) for c in range(2)] + [C2[r][c] - (r == c) for c in range(2)]
         for r in range(2)]
    basis = _nullspace(L, 4)
    K = matmul([[0, 1], [-1, 0]], [[(r == c) - C2[r][c] for c in range(2)] for r in range(2)])

    def form(v, w):
        s = (v[0] + v[2], v[1] + v[3])
        kw = (K[0][0] * w[2] + K[0][1] * w[3], K[1][0] * w[2] + K[1][1] * w[3])
        return s[0] * kw[0] + s[1] * kw[1]

    G = [[form(v, w) for w in basis] for v in basis]
    return signature_by_descartes(G), G


def _nullspace(rows, n):
    M = [[Fraction(x) for x in r] for r in rows]
    piv, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r:
                M[i] = [a - M[i][c] * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    out = []
    for f in [c for c in range(n) if c not in piv]:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -M[i][f]
        out.append(v)
    return out
