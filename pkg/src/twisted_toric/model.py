"""The finite data describing a twisted toric 4-manifold, and its validation.

A manifold over a surface with corners is pinned down (up to topological
isomorphism) by a flat SL2(Z) bundle on the base and a primitive rank-one
sub-lattice along every boundary arc. Here the bundle is given by its
monodromy matrices and each sub-lattice by an oriented generator.

Frames: the generator of arc j is written in the frame of the arc's starting
vertex. Crossing the wrap point at the end of the last arc carries the last
generator into the frame of the first by the boundary holonomy, which is
derived from the handle matrices rather than stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidSpecError, NonCommutingError, PolygonError
from .lattice import IntMat, det, det2, unimodular_inverse, vector_gcd
from .surface import BaseSurface, Cylinder, OneBoundary, strata_summary


def _commutator(a: IntMat, b: IntMat) -> IntMat:
    return a @ b @ unimodular_inverse(a) @ unimodular_inverse(b)


@dataclass(frozen=True)
class MonodromyRep:
    """Images of the standard generators of pi_1 of the base in SL2(Z)."""

    alphas: tuple = ()
    betas: tuple = ()
    loop: IntMat | None = None

    def matrices(self) -> list[tuple[str, IntMat]]:
        out = [(f"alpha{i + 1}", m) for i, m in enumerate(self.alphas)]
        out += [(f"beta{i + 1}", m) for i, m in enumerate(self.betas)]
        if self.loop is not None:
            out.append(("loop", self.loop))
        return out

    def commutator_product(self) -> IntMat:
        h = IntMat.identity(2)
        for a, b in zip(self.alphas, self.betas):
            h = h @ _commutator(a, b)
        return h

    def boundary_holonomy(self) -> IntMat:
        """Image of the boundary loop, forced by prod_i [alpha_i, beta_i] * gamma = 1."""
        if self.loop is not None:
            return self.loop
        return unimodular_inverse(self.commutator_product())


@dataclass(frozen=True)
class CharacteristicData:
    vectors: tuple  # one primitive 2-vector per boundary arc


@dataclass(frozen=True)
class TwistedToricSpec:
    fiber_rank: int
    base: BaseSurface
    monodromy: MonodromyRep
    characteristic: CharacteristicData

    @property
    def vectors(self) -> tuple:
        return self.characteristic.vectors


@dataclass(frozen=True)
class Finding:
    check: str
    location: str
    message: str
    severity: str = "error"  # "error" | "warning"

    def to_dict(self) -> dict:
        return {"check": self.check, "location": self.location,
                "message": self.message, "severity": self.severity}


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple = ()

    @property
    def valid(self) -> bool:
        return not any(f.severity == "error" for f in self.findings)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "warning"]

    def failed(self, check: str) -> bool:
        return any(f.check == check and f.severity == "error" for f in self.findings)


def _is_2x2(m) -> bool:
    return isinstance(m, IntMat) and m.shape == (2, 2)


def _corner_finding(d: int, location: str) -> Finding | None:
    if abs(d) != 1:
        return Finding("corner", location, f"adjacent generators have determinant {d}; "
                       "they do not form a primitive pair")
    if d == -1:
        return Finding("corner-orientation", location,
                       "determinant is -1: the corner is orientation-reversed relative to "
                       "the boundary traversal", severity="warning")
    return None


def _lattice_preserved(M: IntMat, u) -> bool:
    Mu = M @ u
    return Mu == tuple(u) or Mu == tuple(-x for x in u)


def validate_spec(spec: TwistedToricSpec) -> ValidationReport:
    """Run every structural and lattice check; problems become findings."""
    out: list[Finding] = []
    if spec.fiber_rank != 2:
        out.append(Finding("fiber-rank", "spec", f"fiber rank {spec.fiber_rank} is not supported; "
                           "only rank 2 is handled"))
    base, rep = spec.base, spec.monodromy
    shape_ok = True
    if isinstance(base, Cylinder):
        if rep.loop is None or rep.alphas or rep.betas:
            out.append(Finding("shape", "monodromy", "a cylinder needs exactly one loop matrix"))
            shape_ok = False
    elif isinstance(base, OneBoundary):
        g = base.genus
        if rep.loop is not None or len(rep.alphas) != g or len(rep.betas) != g:
            out.append(Finding("shape", "monodromy",
                               f"genus {g} needs {g} alpha and {g} beta matrices and no loop"))
            shape_ok = False
    else:
        out.append(Finding("shape", "base", f"unsupported base {base!r}"))
        return ValidationReport(tuple(out))

    for name, m in rep.matrices():
        if not _is_2x2(m):
            out.append(Finding("shape", name, "monodromy matrices must be 2x2"))
            shape_ok = False
        elif det(m) != 1:
            out.append(Finding("sl2", name, f"determinant {det(m)} != 1"))
            shape_ok = False

    vecs = spec.vectors
    arcs = strata_summary(base).arc_count
    if len(vecs) != arcs:
        out.append(Finding("length", "characteristic",
                           f"expected {arcs} characteristic vectors, got {len(vecs)}"))
        return ValidationReport(tuple(out))
    for j, u in enumerate(vecs):
        if len(u) != 2:
            out.append(Finding("shape", f"arc {j + 1}", "characteristic vectors must have length 2"))
            return ValidationReport(tuple(out))
        if vector_gcd(u) != 1:
            out.append(Finding("primitive", f"arc {j + 1}", f"vector {tuple(u)} is not primitive"))
    if not shape_ok:
        return ValidationReport(tuple(out))

    if isinstance(base, Cylinder):
        M = rep.loop
        for j, (u, hol) in enumerate(((vecs[0], M), (vecs[1], unimodular_inverse(M)))):
            if not _lattice_preserved(hol, u):
                out.append(Finding("lattice-invariance", f"circle {j + 1}",
                                   f"loop holonomy does not preserve the lattice spanned by {tuple(u)}"))
        return ValidationReport(tuple(out))

    M = rep.boundary_holonomy()
    k = base.corners
    if k == 0:
        if not _lattice_preserved(M, vecs[0]):
            out.append(Finding("lattice-invariance", "boundary circle",
                               f"boundary holonomy {M} does not preserve the lattice "
                               f"spanned by {tuple(vecs[0])}"))
        return ValidationReport(tuple(out))
    for j in range(k - 1):
        f = _corner_finding(det2(vecs[j], vecs[j + 1]), f"corner {j + 2} (arcs {j + 1}|{j + 2})")
        if f:
            out.append(f)
    f = _corner_finding(det2(M @ vecs[-1], vecs[0]), f"corner 1 (wrap, arcs {k}|1)")
    if f:
        out.append(f)
    return ValidationReport(tuple(out))


def require_valid(spec: TwistedToricSpec) -> ValidationReport:
    report = validate_spec(spec)
    if not report.valid:
        msgs = "; ".join(f"{f.location}: {f.message}" for f in report.errors)
        raise InvalidSpecError(f"invalid twisted toric data: {msgs}", report)
    return report


def equivalent_under(a: TwistedToricSpec, b: TwistedToricSpec, g: IntMat) -> bool:
    """Does the bundle automorphism ``g`` carry the lattices of ``a`` onto those of ``b``?"""
    if not _is_2x2(g) or det(g) != 1:
        raise ValueError("the witness must lie in SL2(Z)")
    if a.base != b.base:
        raise ValueError("specs live over different bases")
    ma, mb = a.monodromy.matrices(), b.monodromy.matrices()
    if [n for n, _ in ma] != [n for n, _ in mb]:
        raise ValueError("specs have different monodromy shapes")
    if len(a.vectors) != len(b.vectors):
        raise ValueError("specs have different numbers of characteristic vectors")
    for name, m in ma:
        if g @ m != m @ g:
            raise NonCommutingError(f"witness does not commute with {name}; "
                                    "it is not an automorphism of the flat bundle")
    return all(_lattice_preserved_to(g, u, v) for u, v in zip(a.vectors, b.vectors))


def _lattice_preserved_to(g: IntMat, u, v) -> bool:
    gu = g @ u
    return gu == tuple(v) or gu == tuple(-x for x in v)


@dataclass(frozen=True)
class DelzantPolygon:
    """Inward facet normals in counterclockwise order and offsets: <u_i, x> >= offset_i."""

    normals: tuple
    offsets: tuple = field(default=())


def _is_integral(x) -> bool:
    return Fraction(x).denominator == 1


def _angle_key(v):
    # 0 for directions with angle in [0, pi), 1 for [pi, 2 pi)
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def delzant_validate(poly: DelzantPolygon) -> ValidationReport:
    """Check that the polygon is rational, simple, and non-singular.

    Raises :class:`PolygonError` if it has fewer than three facets, or if
    consecutive facets do not bound a convex polygon (unbounded or empty).
    """
    normals = [tuple(Fraction(x) for x in u) for u in poly.normals]
    offsets = [Fraction(x) for x in poly.offsets]
    d = len(normals)
    if d < 3:
        raise PolygonError(f"a polygon needs at least 3 facets, got {d}")
    if len(offsets) != d:
        raise PolygonError(f"{d} normals but {len(offsets)} offsets")
    if any(len(u) != 2 for u in normals):
        raise PolygonError("normals must be 2-vectors")

    out: list[Finding] = []
    for i, u in enumerate(normals):
        if not all(_is_integral(x) for x in u):
            out.append(Finding("rational", f"facet {i + 1}", f"normal {u} is not integral"))

    dets = [det2(normals[i], normals[(i + 1) % d]) for i in range(d)]
    if any(x <= 0 for x in dets):
        i = next(i for i, x in enumerate(dets) if x <= 0)
        raise PolygonError(f"facets {i + 1} and {(i + 1) % d + 1} do not turn counterclockwise "
                           "(polygon unbounded, empty, or misordered)")
    # every turn lies in (0, pi); the normals must wind around exactly once
    wraps = sum(1 for i in range(d)
                if _angle_key(normals[i]) == 1 and _angle_key(normals[(i + 1) % d]) == 0)
    if wraps != 1:
        raise PolygonError(f"normals wind {wraps} times around the origin; expected once")

    for i in range(d):
        j = (i + 1) % d
        (a, b), (c, e) = normals[i], normals[j]
        D = dets[i]
        x = (offsets[i] * e - b * offsets[j]) / D
        y = (a * offsets[j] - c * offsets[i]) / D
        where = f"vertex {i + 1} (facets {i + 1},{j + 1})"
        for m in range(d):
            if m in (i, j):
                continue
            val = normals[m][0] * x + normals[m][1] * y
            if val == offsets[m]:
                out.append(Finding("simple", where, f"facet {m + 1} also passes through ({x}, {y})"))
            elif val < offsets[m]:
                raise PolygonError(f"{where} at ({x}, {y}) violates facet {m + 1}; "
                                   "the polygon is empty or a facet is redundant")
        if D != 1:
            out.append(Finding("non-singular", where,
                               f"det of incident normals is {D}, not 1"))
    return ValidationReport(tuple(out))


def delzant_to_spec(poly: DelzantPolygon) -> TwistedToricSpec:
    report = delzant_validate(poly)
    if not report.valid:
        msgs = "; ".join(f"{f.location}: {f.message}" for f in report.errors)
        raise InvalidSpecError(f"not a Delzant polygon: {msgs}", report)
    vecs = tuple(tuple(int(x) for x in u) for u in poly.normals)
    return TwistedToricSpec(
        fiber_rank=2,
        base=OneBoundary(genus=0, corners=len(vecs)),
        monodromy=MonodromyRep(),
        characteristic=CharacteristicData(vecs),
    )


def make_spec(base: BaseSurface, vectors: Sequence, alphas: Sequence = (), betas: Sequence = (),
              loop=None) -> TwistedToricSpec:
    """Convenience constructor accepting nested lists for every matrix."""
    return TwistedToricSpec(
        fiber_rank=2,
        base=base,
        monodromy=MonodromyRep(
            tuple(IntMat.of(a) for a in alphas),
            tuple(IntMat.of(b) for b in betas),
            None if loop is None else IntMat.of(loop),
        ),
        characteristic=CharacteristicData(tuple(tuple(int(x) for x in v) for v in vectors)),
    )
