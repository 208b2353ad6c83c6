"""Acceptance criteria, one test each.

Every test logs a single PASS/FAIL line with its wall time; the lines are
collected and printed at the end of the pytest run. Running this file as a
script prints the same lines without pytest.
"""

from __future__ import annotations

import time
from functools import wraps

from twisted_toric.cli import run_command
from twisted_toric.cohomology import cohomology_of_X, e2_table
from twisted_toric.fileformat import parse_polygon_file
from twisted_toric.invariants import euler_characteristic, fundamental_group
from twisted_toric.lattice import AbelianGroup, IntMat
from twisted_toric.model import delzant_to_spec
from twisted_toric.signature import signature_total

import properties
from conftest import ACCEPTANCE_LINES, FIXTURES, load

TIME_LIMIT = 1.0


def Z(n=1, *torsion):
    return AbelianGroup(n, tuple(torsion))


O = AbelianGroup()


def grid(**cells):
    out = {(p, q): O for p in range(3) for q in range(3)}
    for key, g in cells.items():
        out[(int(key[1]), int(key[2]))] = g
    return out


def criterion(number, title):
    def deco(fn):
        @wraps(fn)
        def run():
            start = time.perf_counter()
            try:
                fn()
                elapsed = time.perf_counter() - start
                assert elapsed < TIME_LIMIT, f"took {elapsed:.2f}s"
            except BaseException as exc:
                ACCEPTANCE_LINES.append(f"criterion {number}: FAIL  {title} ({exc})")
                raise
            ACCEPTANCE_LINES.append(f"criterion {number}: PASS  {title} [{elapsed:.2f}s]")
        run.criterion = number
        return run
    return deco


def table(spec):
    t = e2_table(spec)
    return {pq: t[pq] for pq in t.grid}


@criterion(1, "cylinder cohomology and full E2 grid")
def test_criterion_1():
    spec = load("cylinder_minus_identity.ttm")
    assert cohomology_of_X(spec) == [Z(), Z(), Z(0, 2), Z(1, 2), Z()]
    assert table(spec) == grid(p00=Z(), p10=Z(), p11=Z(0, 2), p21=Z(0, 2), p12=Z(), p22=Z())


@criterion(2, "k=0 cohomology for zero shears (g=1,2) and shears (2,0)")
def test_criterion_2():
    for g in (1, 2):
        H = cohomology_of_X(load(f"k0_g{g}_zero.ttm"))
        assert H == [Z(), Z(2 * g + 1), Z(4 * g), Z(2 * g + 1), Z()]
    H = cohomology_of_X(load("k0_g1_shear20.ttm"))
    assert (H[2].free_rank, H[2].torsion) == (2, (2,))
    assert (H[3].free_rank, H[3].torsion) == (2, (2,))


@criterion(3, "k=2,3,4 with g=1: H^2 ranks 4g, 4g+1, 4g+2 and E2 grids")
def test_criterion_3():
    g = 1
    for k in (2, 3, 4):
        spec = load(f"k{k}_g1.ttm")
        b2 = 4 * g + k - 2
        assert cohomology_of_X(spec) == [Z(), Z(2 * g), Z(b2), Z(2 * g), Z()]
        assert table(spec) == grid(p00=Z(), p10=Z(2 * g), p11=Z(b2), p12=Z(2 * g), p22=Z())


@criterion(4, "one-corner example: H* = [Z, Z^2, Z^3, Z^2, Z] and its E2 grid")
def test_criterion_4():
    spec = load("one_corner_g1.ttm")
    assert cohomology_of_X(spec) == [Z(), Z(2), Z(3), Z(2), Z()]
    assert table(spec) == grid(p00=Z(), p10=Z(2), p11=Z(3), p12=Z(2), p22=Z())


@criterion(5, "Euler characteristic = corner count = alternating Betti sum")
def test_criterion_5():
    seen = set()
    for path in sorted(FIXTURES.glob("*.ttm")):
        if path.name.startswith("bad"):
            continue
        spec = load(path.name)
        corners = getattr(spec.base, "corners", 0)
        H = cohomology_of_X(spec)
        chi = euler_characteristic(spec)
        assert chi == corners
        assert chi == sum((-1) ** k * h.free_rank for k, h in enumerate(H))
        seen.add(corners)
    assert {0, 1, 2, 3, 4} <= seen


@criterion(6, "signature pipeline on the one-corner example")
def test_criterion_6():
    b = signature_total(load("one_corner_g1.ttm"))
    assert [t for _, t in b.interior_terms] == [0]
    assert b.boundary_matrix == IntMat.of([[-1, 2], [2, -5]])
    assert b.sigma_blown_up == -2
    assert b.sigma_boundary == -1
    assert b.total == -1


@criterion(7, "Delzant triangle and square: signatures and Betti numbers")
def test_criterion_7():
    for stem, sigma, ranks in (("triangle", 1, [1, 0, 1, 0, 1]), ("square", 0, [1, 0, 2, 0, 1])):
        from_poly = delzant_to_spec(parse_polygon_file((FIXTURES / f"{stem}.poly").read_bytes()))
        for spec in (load(f"{stem}.ttm"), from_poly):
            assert signature_total(spec).total == sigma
            H = cohomology_of_X(spec)
            assert [h.free_rank for h in H] == ranks
            assert all(not h.torsion for h in H)


@criterion(8, "property suites, each >= 100 seeded cases")
def test_criterion_8():
    suites = (properties.snf_cases, properties.primitivity_cases, properties.meyer_cases,
              properties.complex_cases, properties.blowup_cases, properties.cohomology_cases)
    for suite in suites:
        start = time.perf_counter()
        assert suite() >= 100, suite.__name__
        assert time.perf_counter() - start < TIME_LIMIT, suite.__name__


@criterion(9, "fundamental group and unsupported exit codes")
def test_criterion_9():
    G = fundamental_group(load("one_corner_g1.ttm"))
    assert G.classification == "free(2)" and len(G.generators) == 2
    assert fundamental_group(load("triangle.ttm")).classification == "trivial"
    for cmd, name in (("invariants", "k0_g1_zero.ttm"), ("invariants", "cylinder_minus_identity.ttm"),
                      ("signature", "k0_g1_zero.ttm"), ("signature", "cylinder_minus_identity.ttm")):
        code, rep = run_command([cmd, str(FIXTURES / name)])
        assert code == 2, (cmd, name)
        assert "hypothesis" in rep["error"]


if __name__ == "__main__":
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except BaseException:
            pass
    print("\n".join(ACCEPTANCE_LINES))
