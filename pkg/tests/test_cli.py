import json

import pytest

from twisted_toric.cli import main, render_text, run_command
from twisted_toric.fileformat import parse_spec_file

from conftest import FIXTURES


def f(name):
    return str(FIXTURES / name)


def test_signature_one_corner_g1(capsys):
    assert main(["signature", f("one_corner_g1.ttm")]) == 0
    assert "signature: -1" in capsys.readouterr().out


def test_signature_verbose():
    code, rep = run_command(["signature", f("one_corner_g1.ttm"), "--verbose"])
    assert code == 0
    assert rep["boundary_matrix"] == [[-1, 2], [2, -5]]
    assert [t["tau"] for t in rep["interior_terms"]] == [0]
    assert rep["sigma_blown_up"] == -2 and rep["sigma_boundary"] == -1
    assert rep["necklace"][0] == {"vector": [1, 1], "exceptional": True}


def test_cohomology_json(capsys):
    assert main(["cohomology", f("cylinder_minus_identity.ttm"), "--json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["H"] == [{"rank": 1, "torsion": []}, {"rank": 1, "torsion": []},
                        {"rank": 0, "torsion": [2]}, {"rank": 1, "torsion": [2]},
                        {"rank": 1, "torsion": []}]
    assert rep["associated_graded"] is True
    assert "e2" not in rep


def test_cohomology_e2():
    code, rep = run_command(["cohomology", f("cylinder_minus_identity.ttm"), "--e2"])
    assert code == 0
    assert rep["e2"][1][1] == {"rank": 0, "torsion": [2]}


@pytest.mark.parametrize("argv", [["signature", "k0_g1_zero.ttm"], ["invariants", "k0_g1_zero.ttm"],
                                  ["signature", "cylinder_minus_identity.ttm"],
                                  ["invariants", "cylinder_minus_identity.ttm"]])
def test_unsupported_exit_two(argv, capsys):
    assert main([argv[0], f(argv[1])]) == 2
    out = capsys.readouterr().out
    assert "hypothesis" in out
    assert "Traceback" not in out


def test_invalid_exit_one(capsys):
    assert main(["validate", f("bad_corner.ttm")]) == 1
    assert "corner" in capsys.readouterr().out
    code, rep = run_command(["cohomology", f("bad_corner.ttm")])
    assert code == 1 and rep["findings"][0]["check"] == "corner"


def test_missing_file():
    code, rep = run_command(["validate", f("nope.ttm")])
    assert code == 1
    assert "cannot read" in rep["error"]


def test_parse_error_exit_one(tmp_path):
    p = tmp_path / "broken.ttm"
    p.write_text('{"fiber_rank": 2}')
    code, rep = run_command(["validate", str(p)])
    assert code == 1 and "base" in rep["error"]


def test_invariants():
    code, rep = run_command(["invariants", f("one_corner_g1.ttm")])
    assert code == 0
    assert rep["euler_characteristic"] == 1
    assert rep["fundamental_group"]["classification"] == "free(2)"
    code, rep = run_command(["invariants", f("triangle.ttm")])
    assert rep["fundamental_group"]["classification"] == "trivial"


def test_delzant_check_and_convert(tmp_path):
    assert run_command(["delzant", "check", f("square.poly")])[0] == 0
    code, rep = run_command(["delzant", "check", f("singular.poly")])
    assert code == 1 and {x["check"] for x in rep["findings"]} == {"non-singular"}
    assert run_command(["delzant", "check", f("bad_open.poly")])[0] == 1
    out = tmp_path / "tri.ttm"
    assert run_command(["delzant", "convert", f("triangle.poly"), "-o", str(out)])[0] == 0
    assert parse_spec_file(out.read_bytes()) == parse_spec_file((FIXTURES / "triangle.ttm").read_bytes())
    assert run_command(["signature", str(out)])[1]["signature"] == 1


def _leaves(obj, path=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _leaves(v, f"{path}.{k}")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _leaves(v, f"{path}[{i}]")
    else:
        yield path, obj


COMMANDS = [
    ["validate", "one_corner_g1.ttm"], ["validate", "bad_corner.ttm"], ["validate", "k2_g1.ttm"],
    ["invariants", "one_corner_g1.ttm"], ["invariants", "k0_g1_zero.ttm"],
    ["cohomology", "cylinder_minus_identity.ttm", "--e2"], ["cohomology", "k0_g1_shear20.ttm"],
    ["signature", "one_corner_g1.ttm", "--verbose"], ["signature", "square.ttm"],
    ["delzant", "check", "singular.poly"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: "-".join(a))
def test_text_and_json_agree(argv):
    args = [a if not a.endswith((".ttm", ".poly")) else f(a) for a in argv]
    code, rep = run_command(args)
    text = render_text(rep)
    for path, value in _leaves(rep):
        if path in (".command", ".exit_code", ".associated_graded") or path.endswith(".severity"):
            continue
        if isinstance(value, bool):
            continue
        if isinstance(value, list) and all(isinstance(x, int) for x in value) and path.endswith("torsion"):
            for t in value:
                assert f"Z/{t}" in text, path
            continue
        if path.endswith(".vector"):
            assert str(tuple(value)) in text, path
        elif isinstance(value, list):
            for x in value:
                assert str(x) in text, (path, x)
        else:
            assert str(value) in text, (path, value)
    if "H" in rep:
        for k, d in enumerate(rep["H"]):
            assert f"H^{k} = " in text
