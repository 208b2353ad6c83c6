"""Command line front end: ``ttm <command> FILE``.

Exit codes: 0 success, 1 invalid input, 2 request outside the supported
hypotheses. Every command builds one report dictionary; ``--json`` prints it
as is and the default renders the same dictionary as text.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cohomology import cohomology_of_X, e2_table
from .errors import InvalidSpecError, TTMError, UnsupportedError
from .fileformat import SpecDocument, parse_polygon_file, parse_spec_file, serialize_spec
from .invariants import euler_characteristic, fundamental_group
from .model import delzant_to_spec, delzant_validate, validate_spec
from .signature import signature_total

ASSOCIATED_GRADED_NOTE = "associated graded; extensions assumed split"


def _group(g) -> dict:
    return {"rank": g.free_rank, "torsion": list(g.torsion)}


def _load_spec(path: str):
    doc = parse_spec_file(Path(path).read_bytes())
    return doc.to_spec()


def _cmd_validate(args, report):
    spec = _load_spec(args.file)
    rep = validate_spec(spec)
    report["valid"] = rep.valid
    report["findings"] = [f.to_dict() for f in rep.findings]
    return 0 if rep.valid else 1


def _cmd_invariants(args, report):
    spec = _load_spec(args.file)
    report["euler_characteristic"] = euler_characteristic(spec)
    pi1 = fundamental_group(spec)
    report["fundamental_group"] = {
        "generators": list(pi1.generators),
        "relators": [[list(t) for t in w] for w in pi1.relators],
        "classification": pi1.classification,
    }
    return 0


def _cmd_cohomology(args, report):
    spec = _load_spec(args.file)
    table = e2_table(spec)
    report["H"] = [_group(g) for g in cohomology_of_X(spec, table)]
    report["associated_graded"] = True
    if args.e2:
        report["e2"] = [[_group(table[(p, q)]) for p in range(3)] for q in range(3)]
    return 0


def _cmd_signature(args, report):
    spec = _load_spec(args.file)
    b = signature_total(spec)
    report["signature"] = b.total
    if args.verbose:
        report["interior_terms"] = [
            {"pair": p.label, "C1": p.C1.tolist(), "C2": p.C2.tolist(), "tau": t}
            for p, t in b.interior_terms
        ]
        report["sigma_interior"] = b.sigma_interior
        report["necklace"] = [{"vector": list(v), "exceptional": e}
                              for v, e in zip(b.necklace.vectors, b.necklace.exceptional)]
        report["boundary_matrix"] = b.boundary_matrix.tolist()
        report["blowups"] = b.blowup_count
        report["sigma_blown_up"] = b.sigma_blown_up
        report["sigma_boundary"] = b.sigma_boundary
    return 0


def _cmd_delzant(args, report):
    poly = parse_polygon_file(Path(args.file).read_bytes())
    rep = delzant_validate(poly)
    report["valid"] = rep.valid
    report["findings"] = [f.to_dict() for f in rep.findings]
    if args.action == "check":
        return 0 if rep.valid else 1
    if not rep.valid:
        return 1
    text = serialize_spec(SpecDocument.from_spec(delzant_to_spec(poly)))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        report["written"] = args.output
    else:
        report["spec"] = json.loads(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")

    parser = argparse.ArgumentParser(prog="ttm", description="Invariants of twisted toric 4-manifolds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a spec file")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("invariants", parents=[common], help="Euler characteristic and fundamental group")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("cohomology", parents=[common], help="integral cohomology groups")
    p.add_argument("file")
    p.add_argument("--e2", action="store_true", help="include the E2 page")
    p.set_defaults(handler=_cmd_cohomology)

    p = sub.add_parser("signature", parents=[common], help="signature by Novikov additivity")
    p.add_argument("file")
    p.add_argument("--verbose", "-v", action="store_true", help="show every term")
    p.set_defaults(handler=_cmd_signature)

    p = sub.add_parser("delzant", parents=[common], help="polygon tools")
    p.add_argument("action", choices=["check", "convert"])
    p.add_argument("file")
    p.add_argument("-o", "--output", help="where convert writes the spec")
    p.set_defaults(handler=_cmd_delzant)
    return parser


def run_command(argv) -> tuple[int, dict]:
    code, report, _ = _execute(argv)
    return code, report


def _execute(argv):
    args = build_parser().parse_args(argv)
    report: dict = {"command": args.command, "file": args.file}
    if args.command == "delzant":
        report["action"] = args.action
    try:
        code = args.handler(args, report)
    except UnsupportedError as exc:
        report["error"] = str(exc)
        code = 2
    except (InvalidSpecError, TTMError) as exc:
        report["error"] = str(exc)
        if getattr(exc, "report", None) is not None:
            report["findings"] = [f.to_dict() for f in exc.report.findings]
        code = 1
    except OSError as exc:
        report["error"] = f"cannot read {exc.filename}: {exc.strerror}"
        code = 1
    report["exit_code"] = code
    return code, report, args.json


def _fmt_group(d: dict) -> str:
    parts = []
    if d["rank"] == 1:
        parts.append("Z")
    elif d["rank"] > 1:
        parts.append(f"Z^{d['rank']}")
    parts += [f"Z/{t}" for t in d["torsion"]]
    return " + ".join(parts) or "0"


def render_text(report: dict) -> str:
    head = " ".join(filter(None, (report["command"], report.get("action"))))
    lines = [f"{head}: {report['file']}"]
    if "valid" in report:
        lines.append(f"valid: {'yes' if report['valid'] else 'no'}")
    for f in report.get("findings", []):
        lines.append(f"  [{f['severity']}] {f['check']} at {f['location']}: {f['message']}")
    if "euler_characteristic" in report:
        lines.append(f"euler characteristic: {report['euler_characteristic']}")
    if "fundamental_group" in report:
        g = report["fundamental_group"]
        gens = ", ".join(g["generators"])
        lines.append(f"fundamental group: < {gens} | > ({g['classification']})")
    if "H" in report:
        for k, d in enumerate(report["H"]):
            lines.append(f"H^{k} = {_fmt_group(d)}")
        if report.get("associated_graded"):
            lines.append(f"note: {ASSOCIATED_GRADED_NOTE}")
    if "e2" in report:
        lines.append("E2 page (rows q = 2, 1, 0; columns p = 0, 1, 2):")
        for q in (2, 1, 0):
            cells = "  ".join(f"{_fmt_group(d):>10}" for d in report["e2"][q])
            lines.append(f"  q={q}: {cells}")
    for t in report.get("interior_terms", []):
        lines.append(f"tau({t['pair']}): C1={t['C1']} C2={t['C2']} -> {t['tau']}")
    if "sigma_interior" in report:
        lines.append(f"sigma interior: {report['sigma_interior']}")
    if "necklace" in report:
        vecs = ", ".join(f"{tuple(n['vector'])}{'*' if n['exceptional'] else ''}"
                         for n in report["necklace"])
        lines.append(f"necklace: {vecs}")
    if "boundary_matrix" in report:
        lines.append(f"intersection matrix: {report['boundary_matrix']}")
        lines.append(f"blow-ups: {report['blowups']}, sigma blown up: {report['sigma_blown_up']}, "
                     f"sigma boundary: {report['sigma_boundary']}")
    if "signature" in report:
        lines.append(f"signature: {report['signature']}")
    if "written" in report:
        lines.append(f"wrote {report['written']}")
    if "spec" in report:
        lines.append(json.dumps(report["spec"], indent=2))
    if "error" in report:
        lines.append(f"error: {report['error']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    code, report, as_json = _execute(sys.argv[1:] if argv is None else argv)
    print(json.dumps(report, indent=2) if as_json else render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
