"""JSON spec and polygon files.

A spec file looks like::

    {
      "fiber_rank": 2,
      "base": {"family": "one_boundary", "genus": 1, "corners": 1},
      "monodromy": {"alpha": [[[1, 0], [-1, 1]]], "beta": [[[1, -1], [0, 1]]]},
      "characteristic": [[0, 1]]
    }

A cylinder uses ``{"family": "cylinder"}`` and ``{"loop": [[a, b], [c, d]]}``.
Polygon files carry ``normals`` and ``offsets``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidSpecError
from .lattice import IntMat
from .model import CharacteristicData, DelzantPolygon, MonodromyRep, TwistedToricSpec
from .surface import Cylinder, OneBoundary


class ParseError(InvalidSpecError):
    """Malformed file content, tagged with a line number or a field path."""

    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class SpecDocument:
    fiber_rank: int
    base: dict
    monodromy: dict
    characteristic: tuple

    def to_spec(self) -> TwistedToricSpec:
        if self.base["family"] == "cylinder":
            base = Cylinder()
            rep = MonodromyRep(loop=IntMat.of(self.monodromy["loop"]))
        else:
            base = OneBoundary(self.base["genus"], self.base["corners"])
            rep = MonodromyRep(
                tuple(IntMat.of(m) for m in self.monodromy.get("alpha", ())),
                tuple(IntMat.of(m) for m in self.monodromy.get("beta", ())),
            )
        return TwistedToricSpec(self.fiber_rank, base, rep, CharacteristicData(self.characteristic))

    def to_json(self) -> dict:
        mono = {k: [list(map(list, m)) for m in v] if k != "loop" else list(map(list, v))
                for k, v in self.monodromy.items()}
        return {
            "fiber_rank": self.fiber_rank,
            "base": dict(self.base),
            "monodromy": mono,
            "characteristic": [list(u) for u in self.characteristic],
        }

    @classmethod
    def from_spec(cls, spec: TwistedToricSpec) -> "SpecDocument":
        rep = spec.monodromy
        if isinstance(spec.base, Cylinder):
            base = {"family": "cylinder"}
            mono = {"loop": _freeze(rep.loop.tolist())}
        else:
            base = {"family": "one_boundary", "genus": spec.base.genus, "corners": spec.base.corners}
            mono = {"alpha": tuple(_freeze(m.tolist()) for m in rep.alphas),
                    "beta": tuple(_freeze(m.tolist()) for m in rep.betas)}
        return cls(spec.fiber_rank, base, mono, tuple(tuple(u) for u in spec.vectors))


def _freeze(m):
    return tuple(tuple(r) for r in m)


def _line_of(text: str, key: str) -> int | None:
    needle = f'"{key}"'
    for n, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return n
    return None


def _load(data: bytes | str) -> tuple[dict, str]:
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"file is not UTF-8 ({exc.reason})") from None
    else:
        text = data
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", line=1)
    return obj, text


class _Fields:
    """Field access with errors that point at the offending key."""

    def __init__(self, text: str):
        self.text = text

    def fail(self, path: str, message: str):
        key = path.split(".")[-1].split("[")[0]
        raise ParseError(message, line=_line_of(self.text, key), field=path)

    def require(self, obj: dict, key: str, path: str):
        if key not in obj:
            raise ParseError("missing required field", field=path)
        return obj[key]

    def integer(self, x, path: str) -> int:
        if isinstance(x, bool) or not isinstance(x, int):
            self.fail(path, f"expected an integer, got {json.dumps(x)}")
        return x

    def vector(self, x, path: str) -> tuple:
        if not isinstance(x, list) or len(x) != 2:
            self.fail(path, "expected a vector of length 2")
        return tuple(self.integer(v, f"{path}[{i}]") for i, v in enumerate(x))

    def matrix(self, x, path: str) -> tuple:
        if not (isinstance(x, list) and len(x) == 2 and all(isinstance(r, list) and len(r) == 2 for r in x)):
            shape = (f"{len(x)}x{len(x[0]) if x and isinstance(x[0], list) else '?'}"
                     if isinstance(x, list) else "not a matrix")
            self.fail(path, f"expected a 2x2 matrix (row-major), got {shape}")
        return tuple(tuple(self.integer(v, f"{path}[{i}][{j}]") for j, v in enumerate(r))
                     for i, r in enumerate(x))

    def number(self, x, path: str) -> Fraction:
        if isinstance(x, bool) or not isinstance(x, (int, float, str)):
            self.fail(path, f"expected a number, got {json.dumps(x)}")
        try:
            return Fraction(str(x))
        except ValueError:
            self.fail(path, f"expected a number, got {json.dumps(x)}")


def parse_spec_file(data: bytes | str) -> SpecDocument:
    obj, text = _load(data)
    f = _Fields(text)
    fiber_rank = f.integer(f.require(obj, "fiber_rank", "fiber_rank"), "fiber_rank")

    base_raw = f.require(obj, "base", "base")
    if not isinstance(base_raw, dict):
        f.fail("base", "expected an object")
    family = f.require(base_raw, "family", "base.family")
    if family == "cylinder":
        base = {"family": "cylinder"}
    elif family == "one_boundary":
        genus = f.integer(f.require(base_raw, "genus", "base.genus"), "base.genus")
        corners = f.integer(f.require(base_raw, "corners", "base.corners"), "base.corners")
        if genus < 0 or corners < 0:
            f.fail("base", "genus and corners must be non-negative")
        base = {"family": "one_boundary", "genus": genus, "corners": corners}
    else:
        f.fail("base.family", f"unknown family {json.dumps(family)}; "
                              "expected \"one_boundary\" or \"cylinder\"")

    mono_raw = f.require(obj, "monodromy", "monodromy")
    if not isinstance(mono_raw, dict):
        f.fail("monodromy", "expected an object")
    unknown = set(mono_raw) - {"alpha", "beta", "loop"}
    if unknown:
        f.fail(f"monodromy.{sorted(unknown)[0]}", "unknown monodromy key")
    if family == "cylinder":
        if "alpha" in mono_raw or "beta" in mono_raw:
            f.fail("monodromy", "a cylinder takes a single \"loop\" matrix")
        mono = {"loop": f.matrix(f.require(mono_raw, "loop", "monodromy.loop"), "monodromy.loop")}
    else:
        if "loop" in mono_raw:
            f.fail("monodromy.loop", "the boundary loop is determined by alpha and beta")
        mono = {}
        for key in ("alpha", "beta"):
            mats = mono_raw.get(key, [])
            if not isinstance(mats, list):
                f.fail(f"monodromy.{key}", "expected a list of matrices")
            mono[key] = tuple(f.matrix(m, f"monodromy.{key}[{i}]") for i, m in enumerate(mats))
            if len(mono[key]) != base["genus"]:
                f.fail(f"monodromy.{key}",
                       f"genus {base['genus']} needs {base['genus']} matrices, got {len(mono[key])}")

    chars = f.require(obj, "characteristic", "characteristic")
    if not isinstance(chars, list):
        f.fail("characteristic", "expected a list of vectors")
    vectors = tuple(f.vector(u, f"characteristic[{i}]") for i, u in enumerate(chars))
    return SpecDocument(fiber_rank, base, mono, vectors)


_FLAT_LIST = re.compile(r"\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]")


def serialize_spec(doc: SpecDocument) -> str:
    text = json.dumps(doc.to_json(), indent=2)
    # keep vectors and matrix rows on one line
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]",
                          text) + "\n"


def parse_polygon_file(data: bytes | str) -> DelzantPolygon:
    obj, text = _load(data)
    f = _Fields(text)
    normals = f.require(obj, "normals", "normals")
    offsets = f.require(obj, "offsets", "offsets")
    if not isinstance(normals, list):
        f.fail("normals", "expected a list of vectors")
    if not isinstance(offsets, list):
        f.fail("offsets", "expected a list of numbers")
    ns = []
    for i, u in enumerate(normals):
        if not isinstance(u, list) or len(u) != 2:
            f.fail(f"normals[{i}]", "expected a vector of length 2")
        ns.append(tuple(f.number(x, f"normals[{i}][{j}]") for j, x in enumerate(u)))
    offs = tuple(f.number(x, f"offsets[{i}]") for i, x in enumerate(offsets))
    if len(offs) != len(ns):
        f.fail("offsets", f"{len(ns)} normals but {len(offs)} offsets")
    return DelzantPolygon(tuple(ns), offs)
