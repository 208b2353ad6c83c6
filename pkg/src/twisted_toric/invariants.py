"""Euler characteristic and fundamental group."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedError
from .model import TwistedToricSpec, require_valid
from .surface import OneBoundary, strata_summary


def euler_characteristic(spec: TwistedToricSpec) -> int:
    """Only the point fibres over corners contribute, so chi(X) counts corners."""
    require_valid(spec)
    return strata_summary(spec.base).corner_count


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()  # words: tuples of (generator, exponent)
    classification: str = "other"  # "trivial" | "free(n)" | "other"

    def abelianization_rank(self) -> int:
        """Free rank of the abelianization; exact when the relators are empty."""
        if self.relators:
            raise NotImplementedError("abelianization of a presentation with relators")
        return len(self.generators)

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(" ".join(f"{g}^{e}" for g, e in w) for w in self.relators)
        return f"< {gens} | {rels} >" if rels else f"< {gens} >"


CORNER_HYPOTHESIS = (
    "the fundamental group is only identified with that of the base when the base "
    "has at least one corner point"
)


def fundamental_group(spec: TwistedToricSpec) -> GroupPresentation:
    """pi_1(X), which maps isomorphically onto pi_1(B) once the base has a corner.

    The boundary relation lets the boundary loop be eliminated, leaving the
    free group on the handle generators.
    """
    require_valid(spec)
    base = spec.base
    if not isinstance(base, OneBoundary) or base.corners == 0:
        raise UnsupportedError(f"unsupported: theorem hypothesis fails; {CORNER_HYPOTHESIS}")
    gens = []
    for i in range(base.genus):
        gens += [f"a{i + 1}", f"b{i + 1}"]
    tag = f"free({len(gens)})" if gens else "trivial"
    return GroupPresentation(tuple(gens), (), tag)
