"""Leray spectral sequence of the moment-type map X -> B.

Over a cell whose fibre is a collapsed torus T^2/S^1_u, only the classes
pulled back from the quotient survive; they form a direct summand A_q of
H^q(T^2) = Lambda^q (Z^2)*. The cellular cochain complex of B with these
constrained local coefficients is the E_1 page, and its cohomology is E_2.
Because every base here has non-empty boundary the sequence stops at E_2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ClosureError, UnsupportedError
from .lattice import (
    AbelianGroup,
    IntMat,
    det,
    integer_solve,
    smith_normal_form,
    unimodular_inverse,
    vector_gcd,
)
from .model import TwistedToricSpec, require_valid
from .surface import Cylinder, OneBoundary, Stratum, build_cw

DEGREES = (0, 1, 2)


@dataclass(frozen=True)
class FiberType:
    """The fibre over a cell: the whole torus, T^2 modulo the circle of ``u``, or a point."""

    kind: str  # "full" | "circle" | "point"
    u: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("full", "circle", "point"):
            raise ValueError(f"unknown fibre kind {self.kind!r}")
        if self.kind == "circle" and (self.u is None or vector_gcd(self.u) != 1):
            raise ValueError("a collapsed circle needs a primitive generator")

    @classmethod
    def full(cls) -> "FiberType":
        return cls("full")

    @classmethod
    def circle(cls, u) -> "FiberType":
        return cls("circle", tuple(u))

    @classmethod
    def point(cls) -> "FiberType":
        return cls("point")


@dataclass(frozen=True)
class SubgroupBasis:
    ambient_rank: int
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> IntMat:
        return IntMat.from_columns(list(self.basis), rows=self.ambient_rank)


def _annihilator(u) -> tuple:
    a, b = u
    g = vector_gcd((a, b))
    w = (b // g, -a // g)
    return w if (w[0] > 0 or (w[0] == 0 and w[1] > 0)) else (-w[0], -w[1])


def allowed_subgroup(fiber: FiberType, q: int) -> SubgroupBasis:
    if q not in DEGREES:
        raise ValueError(f"fibre degree {q} out of range 0..2")
    if q == 0:
        return SubgroupBasis(1, ((1,),))
    if q == 1:
        if fiber.kind == "full":
            return SubgroupBasis(2, ((1, 0), (0, 1)))
        if fiber.kind == "circle":
            return SubgroupBasis(2, (_annihilator(fiber.u),))
        return SubgroupBasis(2, ())
    return SubgroupBasis(1, ((1,),) if fiber.kind == "full" else ())


def coefficient_action(m: IntMat, q: int) -> IntMat:
    """How a lattice change of frame ``m`` acts on H^q of the torus fibre."""
    d = det(m)
    if abs(d) != 1:
        raise ValueError(f"matrix is not unimodular (det = {d})")
    if q == 0:
        return IntMat.identity(1)
    if q == 1:
        return unimodular_inverse(m).T
    if q == 2:
        return IntMat.of([[d]])
    raise ValueError(f"fibre degree {q} out of range 0..2")


@dataclass(frozen=True)
class LocalComplex:
    """C^0 -> C^1 -> C^2 with coefficients in the allowed subgroups, in their bases."""

    degree: int
    cells: tuple  # per p: tuple of cell names
    subgroups: tuple  # per p: tuple of SubgroupBasis
    d0: IntMat
    d1: IntMat

    def rank(self, p: int) -> int:
        return sum(s.rank for s in self.subgroups[p])


def _fiber_of(stratum: Stratum, vectors) -> FiberType:
    if stratum.kind == "interior":
        return FiberType.full()
    if stratum.kind == "arc":
        return FiberType.circle(vectors[stratum.index])
    return FiberType.point()


def cell_fibers(spec: TwistedToricSpec, cw=None) -> tuple:
    cw = cw or build_cw(spec.base, spec.monodromy)
    v = spec.vectors
    return (
        tuple(_fiber_of(s, v) for s in cw.vertex_strata),
        tuple(_fiber_of(s, v) for s in cw.edge_strata),
        tuple(_fiber_of(s, v) for s in cw.face_strata),
    )


def _coordinates(sub: SubgroupBasis, v) -> tuple | None:
    """Coordinates of ``v`` in the basis of ``sub``, or None if it is not in the subgroup."""
    if sub.rank == 0:
        return None if any(v) else ()
    if sub.rank == sub.ambient_rank and sub.basis == IntMat.identity(sub.ambient_rank).data:
        return tuple(v)
    if sub.rank == 1:
        (w,) = sub.basis
        i = next(i for i, x in enumerate(w) if x)
        c, r = divmod(v[i], w[i])
        return (c,) if r == 0 and tuple(c * x for x in w) == tuple(v) else None
    return integer_solve(sub.matrix(), v)


def _assemble(q, sources, targets, target_names, contributions) -> IntMat:
    """Matrix of a coboundary in subgroup bases.

    ``contributions`` maps (target, source) to the ambient coefficient matrices
    to be summed. Each image is re-expressed in the target's subgroup basis;
    an image that does not lie in that subgroup raises :class:`ClosureError`.
    """
    rows = sum(t.rank for t in targets)
    columns = []
    for s_idx, src in enumerate(sources):
        for b in src.basis:
            col = []
            for t_idx, tgt in enumerate(targets):
                img = (0,) * tgt.ambient_rank
                for coef in contributions.get((t_idx, s_idx), ()):
                    img = tuple(x + y for x, y in zip(img, coef @ b))
                coords = _coordinates(tgt, img)
                if coords is None:
                    raise ClosureError(target_names[t_idx], q)
                col.extend(coords)
            columns.append(tuple(col))
    return IntMat.from_columns(columns, rows=rows) if columns else IntMat.zeros(rows, 0)


def build_complex(spec: TwistedToricSpec, q: int, *, validate: bool = True, cw=None) -> LocalComplex:
    """Cellular cochains of the base with the constrained local coefficients in degree ``q``.

    With ``validate=False`` the validity checks are skipped so that bad
    characteristic data surfaces as a :class:`ClosureError` instead.
    """
    if q not in DEGREES:
        raise ValueError(f"fibre degree {q} out of range 0..2")
    if validate:
        require_valid(spec)
    cw = cw or build_cw(spec.base, spec.monodromy)
    fibers = cell_fibers(spec, cw)
    subs = tuple(tuple(allowed_subgroup(f, q) for f in fs) for fs in fibers)
    names = (cw.vertices, cw.edge_names, tuple(f"face{i + 1}" for i in range(len(cw.faces))))
    ident = coefficient_action(IntMat.identity(2), q)
    inverses = [unimodular_inverse(m) for m in cw.edge_monodromy]
    actions = [coefficient_action(m, q) for m in cw.edge_monodromy]

    c0: dict = {}
    for e, (tail, head) in enumerate(cw.edges):
        c0.setdefault((e, head), []).append(actions[e])
        c0.setdefault((e, tail), []).append(-ident)

    c1: dict = {}
    for f, word in enumerate(cw.faces):
        h = IntMat.identity(2)
        for e, eps in word:
            if eps == 1:
                c1.setdefault((f, e), []).append(coefficient_action(h, q))
                h = h @ cw.edge_monodromy[e]
            else:
                h = h @ inverses[e]
                c1.setdefault((f, e), []).append(-coefficient_action(h, q))

    d0 = _assemble(q, subs[0], subs[1], names[1], c0)
    d1 = _assemble(q, subs[1], subs[2], names[2], c1)
    return LocalComplex(q, names, subs, d0, d1)


def complex_cohomology(cx: LocalComplex) -> tuple[AbelianGroup, AbelianGroup, AbelianGroup]:
    """H^0, H^1, H^2 of a three-term complex of free modules."""
    n0, n1, n2 = (cx.rank(p) for p in DEGREES)
    s0, s1 = smith_normal_form(cx.d0), smith_normal_form(cx.d1)
    r0, r1 = s0.rank, s1.rank
    return (
        AbelianGroup(n0 - r0),
        AbelianGroup(n1 - r1 - r0, tuple(d for d in s0.diag if d > 1)),
        AbelianGroup(n2 - r1, tuple(d for d in s1.diag if d > 1)),
    )


@dataclass(frozen=True)
class E2Table:
    grid: dict  # (p, q) -> AbelianGroup

    def __getitem__(self, pq) -> AbelianGroup:
        return self.grid[pq]

    def rows(self) -> list[list[AbelianGroup]]:
        """Rows indexed by q, columns by p."""
        return [[self.grid[(p, q)] for p in DEGREES] for q in DEGREES]


def _check_supported(spec: TwistedToricSpec) -> None:
    if spec.fiber_rank != 2:
        raise UnsupportedError("cohomology is only implemented for fibre rank 2")
    if not isinstance(spec.base, (OneBoundary, Cylinder)):
        raise UnsupportedError("cohomology needs a base with non-empty boundary")


def e2_table(spec: TwistedToricSpec) -> E2Table:
    _check_supported(spec)
    require_valid(spec)
    cw = build_cw(spec.base, spec.monodromy)
    grid = {}
    for q in DEGREES:
        for p, group in enumerate(complex_cohomology(build_complex(spec, q, validate=False, cw=cw))):
            grid[(p, q)] = group
    return E2Table(grid)


def cohomology_of_X(spec: TwistedToricSpec, table: E2Table | None = None) -> list[AbelianGroup]:
    """H^k(X; Z) for k = 0..4 as the associated graded of the E_2 page.

    Extensions are taken to be split, matching the worked examples; callers
    reporting the result should say so.
    """
    table = table or e2_table(spec)
    out = []
    for k in range(5):
        total = AbelianGroup()
        for p in DEGREES:
            if k - p in DEGREES:
                total = total + table[(p, k - p)]
        out.append(total)
    return out


def betti_numbers(groups) -> list[int]:
    return [g.free_rank for g in groups]
