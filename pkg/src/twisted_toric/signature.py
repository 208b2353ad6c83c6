"""Signature of X by Novikov additivity.

The base is split into a collar B_2 of the boundary and the rest B_1. Over
B_1 the manifold is a torus bundle whose signature is a sum of Meyer cocycle
values over a pants decomposition. Over B_2 it is a plumbing of the necklace
of spheres sitting over the boundary arcs, whose signature is read off the
intersection matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import UnsupportedError
from .lattice import IntMat, det, det2, unimodular_inverse, vector_gcd
from .model import MonodromyRep, TwistedToricSpec, require_valid
from .surface import OneBoundary

J = IntMat.of([[0, 1], [-1, 0]])


@dataclass(frozen=True)
class RatSymForm:
    entries: tuple  # tuple of tuples of int or Fraction

    def __post_init__(self):
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ValueError("form matrix must be square")
        if any(self.entries[i][j] != self.entries[j][i] for i in range(n) for j in range(i)):
            raise ValueError("form matrix is not symmetric")

    @classmethod
    def of(cls, rows) -> "RatSymForm":
        return cls(tuple(tuple(x if isinstance(x, int) else Fraction(x) for x in r) for r in rows))

    @property
    def dim(self) -> int:
        return len(self.entries)


def signature_of_form(f: RatSymForm) -> int:
    """Sylvester inertia by exact congruence diagonalisation.

    Works over Z: the block still to be diagonalised is kept as a nonzero
    multiple of the true Schur complement, and only the sign of that
    multiple is tracked.
    """
    den = lcm(*(x.denominator for r in f.entries for x in r)) if f.entries else 1
    A = [[int(x * den) for x in r] for r in f.entries]
    sign = 1
    sig = 0
    while A:
        n = len(A)
        i = next((i for i in range(n) if A[i][i] != 0), None)
        if i is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if A[i][j] != 0), None)
            if pair is None:
                break  # what remains is the radical
            i, j = pair
            # e_i -> e_i + e_j gives the new diagonal entry 2 a_ij != 0
            for t in range(n):
                A[i][t] += A[j][t]
            for t in range(n):
                A[t][i] += A[t][j]
        p = A[i][i]
        sig += sign if p > 0 else -sign
        rest = [r for r in range(n) if r != i]
        # p times the Schur complement, then divided by its content
        A = [[p * A[r][t] - A[r][i] * A[i][t] for t in rest] for r in rest]
        if p < 0:
            sign = -sign
        g = vector_gcd(x for r in A for x in r)
        if g > 1:
            A = [[x // g for x in r] for r in A]
    return sig


def _check_sl2(m: IntMat, name: str) -> None:
    if m.shape != (2, 2) or det(m) != 1:
        raise ValueError(f"{name} must lie in SL2(Z)")


def _integer_kernel(rows, n):
    """Kernel basis by fraction-free elimination.

    Each vector is a positive multiple of the usual reduced echelon kernel
    vector, so Gram matrices built on it have the same inertia.
    """
    M = [list(r) for r in rows]
    piv, r = [], 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                a, b = M[r][c], M[i][c]
                M[i] = [a * x - b * y for x, y in zip(M[i], M[r])]
                g = vector_gcd(M[i])
                if g > 1:
                    M[i] = [x // g for x in M[i]]
        piv.append(c)
        r += 1
    scale = 1
    for i, c in enumerate(piv):
        scale *= abs(M[i][c])
    out = []
    for f in (c for c in range(n) if c not in piv):
        v = [0] * n
        v[f] = scale
        for i, c in enumerate(piv):
            v[c] = -M[i][f] * scale // M[i][c]
        g = vector_gcd(v)
        out.append(tuple(x // g for x in v))
    return out


def meyer_form(C1: IntMat, C2: IntMat) -> RatSymForm:
    """The pairing (x+y)^T J (I - C2) y' on the kernel of (C1^-1 - I | C2 - I)."""
    _check_sl2(C1, "C1")
    _check_sl2(C2, "C2")
    ident = IntMat.identity(2)
    left, right = unimodular_inverse(C1) - ident, C2 - ident
    rows = [left.row(i) + right.row(i) for i in range(2)]
    basis = _integer_kernel(rows, 4)
    K = J @ (ident - C2)

    def pair(v, w):
        s = [v[0] + v[2], v[1] + v[3]]
        Kw = K @ (w[2], w[3])
        return s[0] * Kw[0] + s[1] * Kw[1]

    entries = [[pair(v, w) for w in basis] for v in basis]
    return RatSymForm.of(entries)


def meyer_tau(C1: IntMat, C2: IntMat) -> int:
    return signature_of_form(meyer_form(C1, C2))


@dataclass(frozen=True)
class PantsPair:
    C1: IntMat
    C2: IntMat
    label: str = ""


def pants_pairs(monodromy: MonodromyRep) -> list[PantsPair]:
    """Boundary holonomy pairs of a fixed pants decomposition of the interior.

    Each handle contributes the pants obtained by cutting along its alpha
    curve; consecutive handles are glued by pants joining the running
    product of commutators to the next one.
    """
    if monodromy.loop is not None:
        raise UnsupportedError("signature is only defined here for the one-boundary family")
    out = []
    D = []
    for i, (a, b) in enumerate(zip(monodromy.alphas, monodromy.betas)):
        ai, bi = unimodular_inverse(a), unimodular_inverse(b)
        out.append(PantsPair(a, b @ ai @ bi, f"handle {i + 1}"))
        D.append(a @ b @ ai @ bi)
    E = D[0] if D else None
    for i in range(1, len(D)):
        out.append(PantsPair(E, D[i], f"junction {i}|{i + 1}"))
        E = E @ D[i]
    return out


@dataclass(frozen=True)
class NecklaceModel:
    """Generators of the boundary arcs in cyclic order, each in its own frame.

    Crossing the wrap from the last entry to the first applies ``wrap``.
    """

    vectors: tuple
    wrap: IntMat
    exceptional: tuple = field(default=())

    def __post_init__(self):
        if not self.exceptional:
            object.__setattr__(self, "exceptional", (False,) * len(self.vectors))
        if len(self.exceptional) != len(self.vectors):
            raise ValueError("one exceptional flag per entry")

    def __len__(self) -> int:
        return len(self.vectors)

    def neighbours(self, i: int) -> tuple:
        """Previous and next generators written in the frame of entry ``i``."""
        v, k = self.vectors, len(self.vectors)
        prev = self.wrap @ v[-1] if i == 0 else v[i - 1]
        nxt = unimodular_inverse(self.wrap) @ v[0] if i == k - 1 else v[i + 1]
        return tuple(prev), tuple(nxt)

    def corner_determinants(self) -> list[int]:
        """det at each corner; the last one is the wrap corner."""
        v, k = self.vectors, len(self.vectors)
        out = [det2(v[j], v[j + 1]) for j in range(k - 1)]
        out.append(det2(self.wrap @ v[-1], v[0]))
        return out

    def is_valid(self) -> bool:
        return bool(self.vectors) and all(d == 1 for d in self.corner_determinants())

    @classmethod
    def from_spec(cls, spec: TwistedToricSpec) -> "NecklaceModel":
        return cls(tuple(tuple(u) for u in spec.vectors), spec.monodromy.boundary_holonomy())


def blow_up(necklace: NecklaceModel, corner_index: int) -> NecklaceModel:
    """Blow up the point over a corner.

    Corner ``j < k-1`` sits between entries j and j+1; corner ``k-1`` is the
    wrap corner, whose new entry goes first, in the first entry's frame.
    """
    k = len(necklace)
    if not 0 <= corner_index < k:
        raise IndexError(f"corner index {corner_index} out of range 0..{k - 1}")
    v, flags = list(necklace.vectors), list(necklace.exceptional)
    if corner_index < k - 1:
        a, b = v[corner_index], v[corner_index + 1]
        pos = corner_index + 1
    else:
        a, b = necklace.wrap @ v[-1], v[0]
        pos = 0
    v.insert(pos, tuple(x + y for x, y in zip(a, b)))
    flags.insert(pos, True)
    return NecklaceModel(tuple(v), necklace.wrap, tuple(flags))


def self_intersection(necklace: NecklaceModel, i: int) -> int:
    prev, nxt = necklace.neighbours(i)
    return -det2(prev, nxt)


def boundary_intersection_matrix(necklace: NecklaceModel) -> IntMat:
    k = len(necklace)
    if k < 2:
        raise ValueError("the intersection matrix needs at least two spheres; blow up first")
    rows = [[0] * k for _ in range(k)]
    for i in range(k):
        rows[i][i] = self_intersection(necklace, i)
        j = (i + 1) % k
        rows[i][j] = rows[j][i] = 2 if k == 2 else 1
    return IntMat.of(rows)


@dataclass(frozen=True)
class SignatureBreakdown:
    interior_terms: tuple  # (PantsPair, tau) pairs
    necklace: NecklaceModel
    boundary_matrix: IntMat
    blowup_count: int
    sigma_interior: int
    sigma_boundary: int

    @property
    def total(self) -> int:
        return self.sigma_interior + self.sigma_boundary

    @property
    def sigma_blown_up(self) -> int:
        return self.sigma_boundary - self.blowup_count


SIGNATURE_HYPOTHESIS = "signature needs a base with one boundary circle and at least one corner"


def signature_total(spec: TwistedToricSpec) -> SignatureBreakdown:
    report = require_valid(spec)
    base = spec.base
    if not isinstance(base, OneBoundary) or base.corners == 0:
        raise UnsupportedError(f"unsupported: theorem hypothesis fails; {SIGNATURE_HYPOTHESIS}")
    if report.warnings:
        raise UnsupportedError("unsupported: some corner has determinant -1, so the boundary "
                               "necklace is not compatible with the orientation of the base")

    terms = tuple((p, meyer_tau(p.C1, p.C2)) for p in pants_pairs(spec.monodromy))
    necklace = NecklaceModel.from_spec(spec)
    blowups = 0
    if len(necklace) == 1:
        necklace = blow_up(necklace, 0)
        blowups = 1
    matrix = boundary_intersection_matrix(necklace)
    # each blow-up adds a -1 sphere, so undoing it adds one back
    sigma_b = signature_of_form(RatSymForm.of(matrix.tolist())) + blowups
    return SignatureBreakdown(terms, necklace, matrix, blowups,
                              sum(t for _, t in terms), sigma_b)
