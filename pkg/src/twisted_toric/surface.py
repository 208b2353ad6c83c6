"""Base surfaces with corners and their canonical cell structures.

Two families are supported: a genus-g surface with one boundary circle cut
into arcs by k corners, and the cylinder with two cornerless circles. Every
cell of the generated CW complex lies inside a single stratum, which is what
the cellular spectral sequence needs.

Edge monodromy convention: for an edge with matrix ``m``, lattice coordinates
in the head frame are carried to the tail frame by ``m``. Walking a face word
from the base vertex accumulates the ordered product of the monodromies, and
that product is the identity once the whole word has been read.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .lattice import IntMat, unimodular_inverse

if TYPE_CHECKING:
    from .model import MonodromyRep


@dataclass(frozen=True)
class OneBoundary:
    genus: int
    corners: int

    def __post_init__(self):
        if self.genus < 0 or self.corners < 0:
            raise ValueError("genus and corner count must be non-negative")


@dataclass(frozen=True)
class Cylinder:
    pass


BaseSurface = Union[OneBoundary, Cylinder]


@dataclass(frozen=True)
class Stratum:
    """Where a cell sits: the interior, a boundary arc, or a corner."""

    kind: str  # "interior" | "arc" | "corner"
    index: int | None = None


INTERIOR = Stratum("interior")


@dataclass(frozen=True)
class StrataSummary:
    corner_count: int
    arc_count: int
    boundary_components: int


@dataclass(frozen=True)
class CWComplex:
    vertices: tuple
    edges: tuple  # (tail, head) vertex indices
    edge_names: tuple
    faces: tuple  # each a tuple of (edge index, +1 | -1)
    edge_monodromy: tuple
    vertex_strata: tuple
    edge_strata: tuple
    face_strata: tuple

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def face_holonomy(self, f: int) -> IntMat:
        """Ordered product of edge monodromies around face ``f``."""
        h = IntMat.identity(2)
        for e, eps in self.faces[f]:
            m = self.edge_monodromy[e]
            h = h @ (m if eps == 1 else unimodular_inverse(m))
        return h

    def face_is_closed(self, f: int) -> bool:
        word = self.faces[f]
        ends = []
        for e, eps in word:
            tail, head = self.edges[e]
            ends.append((tail, head) if eps == 1 else (head, tail))
        return all(a[1] == b[0] for a, b in zip(ends, ends[1:] + ends[:1]))


def strata_summary(base: BaseSurface) -> StrataSummary:
    if isinstance(base, Cylinder):
        return StrataSummary(0, 2, 2)
    return StrataSummary(base.corners, max(base.corners, 1), 1)


def build_cw(base: BaseSurface, monodromy: "MonodromyRep") -> CWComplex:
    """Cell structure of ``base`` with edge monodromies read off ``monodromy``.

    For the one-boundary family the boundary holonomy sits entirely on the
    last boundary edge; all other boundary edges carry the identity.
    """
    ident = IntMat.identity(2)
    if isinstance(base, Cylinder):
        if monodromy.loop is None or monodromy.alphas or monodromy.betas:
            raise ValueError("a cylinder needs exactly one loop matrix")
        M = monodromy.loop
        return CWComplex(
            vertices=("v1", "v2"),
            edges=((0, 0), (0, 1), (1, 1)),
            edge_names=("e1", "e2", "e3"),
            faces=(((0, 1), (1, 1), (2, 1), (1, -1)),),
            edge_monodromy=(M, ident, unimodular_inverse(M)),
            vertex_strata=(Stratum("arc", 0), Stratum("arc", 1)),
            edge_strata=(Stratum("arc", 0), INTERIOR, Stratum("arc", 1)),
            face_strata=(INTERIOR,),
        )

    g, k = base.genus, base.corners
    if monodromy.loop is not None or len(monodromy.alphas) != g or len(monodromy.betas) != g:
        raise ValueError(f"genus {g} needs {g} alpha and {g} beta matrices and no loop")
    nv = max(k, 1)
    vertices = tuple(f"v{j + 1}" for j in range(nv))
    if k == 0:
        vertex_strata = (Stratum("arc", 0),)
    else:
        vertex_strata = tuple(Stratum("corner", j) for j in range(k))

    edges, names, mono, estrata = [], [], [], []
    for i in range(g):
        for label, mat in (("a", monodromy.alphas[i]), ("b", monodromy.betas[i])):
            edges.append((0, 0))
            names.append(f"{label}{i + 1}")
            mono.append(mat)
            estrata.append(INTERIOR)
    first_boundary = len(edges)
    for j in range(nv):
        edges.append((j, (j + 1) % nv))
        names.append(f"gamma{j + 1}")
        mono.append(ident)
        estrata.append(Stratum("arc", j))
    mono[-1] = monodromy.boundary_holonomy()

    word = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    word += [(first_boundary + j, 1) for j in range(nv)]

    return CWComplex(
        vertices=vertices,
        edges=tuple(edges),
        edge_names=tuple(names),
        faces=(tuple(word),),
        edge_monodromy=tuple(mono),
        vertex_strata=vertex_strata,
        edge_strata=tuple(estrata),
        face_strata=(INTERIOR,),
    )
