"""Command-line front end.

Subcommands read JSON from file arguments (or '-' for standard input) and
write canonical JSON to standard output.  Exit codes: 0 all checks passed,
1 a check failed, 2 usage error, 3 malformed input.  GFROB_SIZE_LIMIT
overrides the enumeration guard.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass, field
from . import serialize as ser
from .braided import br_basis, braidize
from .errors import GfrobError, NotAGroup
from .frobenius import assemble_z2, check_gfa, check_pre_gfm, wdvv_check
from .groupoid import enumerate_component, guard_size
from .groups import conjugacy_classes
from .singularity import (
    flat_coordinates,
    flat_metric,
    potential_A,
    potential_B,
    potential_D,
    potential_D_metric,
    z2_frobenius_manifold,
)

USAGE_ERROR, CHECK_FAILED, PARSE_ERROR = 2, 1, 3


@dataclass
class RunReport:
    command: str
    checks: list[dict] = field(default_factory=list)
    payload: dict | None = None
    lines: list[str] | None = None  # pre-rendered JSON lines (groupoid)

    def add(self, name: str, ok: bool, witness=None):
        entry = {"name": name, "status": "pass" if ok else "fail"}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    @property
    def exit_code(self) -> int:
        return 0 if all(c["status"] == "pass" for c in self.checks) else CHECK_FAILED

    def render(self, fmt: str) -> str:
        if self.lines is not None:
            return "\n".join(self.lines) + "\n"
        if fmt == "text":
            out = []
            for c in self.checks:
                witness = f"  {c['witness']}" if "witness" in c else ""
                out.append(f"{c['status'].upper():4s}  {c['name']}{witness}")
            if self.payload is not None:
                out.append(ser.dumps(self.payload).rstrip("\n"))
            return "\n".join(out) + "\n"
        doc = {"command": self.command, "checks": self.checks, "exit_code": self.exit_code}
        if self.payload is not None:
            doc["payload"] = self.payload
        return ser.dumps(doc)


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ser.ParseError(f"cannot read {path}: {exc}") from None


def _cmd_group(args) -> RunReport:
    rep = RunReport("group")
    obj = _read_json(args.group)
    try:
        g = ser.group_from_json(obj)
    except NotAGroup as exc:
        rep.add("group-axioms", False, exc.reason)
        return rep
    rep.add("group-axioms", True)
    classes = conjugacy_classes(g)
    rep.payload = {
        "order": g.order,
        "identity": g.identity,
        "inverse": list(g.inverse),
        "abelian": g.is_abelian(),
        "conjugacy_classes": [list(c) for c in classes],
    }
    return rep


def _cmd_groupoid(args) -> RunReport:
    rep = RunReport("groupoid")
    g = ser.group_from_json(_read_json(args.group))
    n = args.n
    guard_size(g, n)
    seen = {}
    for t in itertools.product(range(g.order), repeat=n):
        comp = enumerate_component(g, t)
        key = comp.canonical
        if key not in seen:
            seen[key] = comp
    lines = []
    for key in sorted(seen):
        comp = seen[key]
        lines.append(
            ser.dumps_line(
                {
                    "component": list(key),
                    "size": len(comp.members),
                    "m_C": comp.m_C,
                    "n_C": comp.n_C,
                    "g_degree": comp.g_degree,
                }
            )
        )
    rep.lines = lines
    return rep


def _cmd_braidize(args) -> RunReport:
    rep = RunReport("braidize")
    h = ser.module_from_json(_read_json(args.module))
    v = ser.tensor_from_json(_read_json(args.tensor))
    rep.payload = ser.tensor_to_json(braidize(h, v))
    return rep


def _cmd_br_basis(args) -> RunReport:
    rep = RunReport("br-basis")
    h = ser.module_from_json(_read_json(args.module))
    forms = br_basis(h, args.n)
    rep.payload = {
        "dimension": len(forms),
        "forms": [
            {
                "component": list(f.component),
                "g_degree": f.g_degree,
                "tensor": ser.tensor_to_json(f.tensor),
            }
            for f in forms
        ],
    }
    return rep


def _cmd_check_gfa(args) -> RunReport:
    rep = RunReport("check-gfa")
    alg = ser.gfa_from_json(_read_json(args.algebra))
    report = check_gfa(alg)
    for name in (
        "module_valid", "self_invariant", "equivariance", "graded_mult",
        "braided_commutativity", "metric_invariance", "invariant_unit",
        "associative", "unital",
    ):
        rep.add(name, getattr(report, name))
    rep.add("metric", report.metric.passed)
    return rep


def _cmd_wdvv(args) -> RunReport:
    rep = RunReport("wdvv")
    pot = ser.potential_from_json(_read_json(args.potential))
    metric_obj = _read_json(args.metric)
    eta = ser.matrix_from_json(metric_obj["matrix"] if isinstance(metric_obj, dict) else metric_obj)
    report = wdvv_check(pot, eta)
    rep.add("wdvv", report.passed, [list(w) for w in report.witnesses[:20]] or None)
    return rep


def _cmd_check_pre_gfm(args) -> RunReport:
    rep = RunReport("check-pre-gfm")
    h = ser.module_from_json(_read_json(args.module))
    eta = ser.metric_from_json(_read_json(args.metric), h)
    pot = ser.potential_from_json(_read_json(args.potential))
    report = check_pre_gfm(h, eta.matrix, pot)
    rep.add("module_valid", report.module_valid)
    rep.add("self_invariant", report.self_invariant)
    rep.add("metric", report.metric.passed)
    rep.add("braided", report.braided)
    rep.add("degree_filter", report.degree_filter)
    rep.add("wdvv_untwisted", report.wdvv_untwisted.passed,
            [list(w) for w in report.wdvv_untwisted.witnesses[:10]] or None)
    rep.add("wdvv_invariants", report.wdvv_invariants.passed,
            [list(w) for w in report.wdvv_invariants.witnesses[:10]] or None)
    return rep


def _cmd_assemble_z2(args) -> RunReport:
    rep = RunReport("assemble-z2")
    obj = _read_json(args.input)
    if not isinstance(obj, dict) or not {"fe", "fg", "iota_e", "iota_g"} <= set(obj):
        raise ser.ParseError("input needs fe, fg, iota_e, iota_g")
    fe = ser.fmdata_from_json(obj["fe"])
    fg = ser.fmdata_from_json(obj["fg"])
    asm = assemble_z2(fe, fg, [int(i) for i in obj["iota_e"]], [int(i) for i in obj["iota_g"]])
    rep.add("pre_gfm", asm.pre_gfm.passed)
    rep.payload = {
        "module": ser.module_to_json(asm.module),
        "names": list(asm.names),
        "metric": ser.matrix_to_json(asm.metric),
        "potential": ser.poly_to_json(asm.potential),
        "sectors": {
            "fixed": list(asm.fixed_names),
            "sign": list(asm.sign_names),
            "twisted": list(asm.twisted_names),
        },
    }
    return rep


def _cmd_potential(args) -> RunReport:
    rep = RunReport("potential")
    kind, n = args.kind, args.n
    if kind == "A":
        pot, eta = potential_A(n), flat_metric(n)
    elif kind == "B":
        pot, eta = potential_B(n), None
    else:
        pot, eta = potential_D(n), potential_D_metric(n)
    rep.payload = ser.potential_to_json(pot)
    if eta is not None:
        rep.payload["metric"] = ser.matrix_to_json(eta)
    return rep


def _cmd_flat_coords(args) -> RunReport:
    rep = RunReport("flat-coords")
    ch = flat_coordinates(args.n)
    rep.payload = {
        "n": ch.n,
        "t_names": list(ch.t_names),
        "a_names": list(ch.a_names),
        "a_of_t": [ser.poly_to_json(p) for p in ch.a_of_t],
        "t_of_a": [ser.poly_to_json(p) for p in ch.t_of_a],
    }
    return rep


def _cmd_construct_z2(args) -> RunReport:
    rep = RunReport("construct-z2")
    fm = z2_frobenius_manifold(args.n)
    pre = fm.assembly.pre_gfm
    rep.add("pre_gfm", pre.passed)
    rep.add("cubic_matches_algebra", fm.matches_algebra)
    rep.payload = {
        "n": fm.n,
        "module": ser.module_to_json(fm.assembly.module),
        "names": list(fm.names),
        "metric": ser.matrix_to_json(fm.assembly.metric),
        "potential": ser.poly_to_json(fm.potential),
        "twisted_cubic": ser.poly_to_json(fm.twisted_cubic),
    }
    return rep


def _cmd_verify_paper(args) -> RunReport:
    from .refchecks import run_all

    rep = RunReport("verify-paper")
    for name, ok, witness in run_all():
        rep.add(name, ok, witness or None)
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gfrob",
        description="Exact computer algebra for braided tensors on graded modules "
        "and the Frobenius structures of the A/D singularities.",
    )
    ap.add_argument("--format", choices=("json", "text"), default="json")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="validate a multiplication table and describe the group")
    p.add_argument("--group", required=True)
    p.set_defaults(fn=_cmd_group)

    p = sub.add_parser("groupoid", help="enumerate braid-orbit components of G^n")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_groupoid)

    p = sub.add_parser("braidize", help="project a tensor onto its braid-invariant part")
    p.add_argument("--module", required=True)
    p.add_argument("--tensor", required=True)
    p.set_defaults(fn=_cmd_braidize)

    p = sub.add_parser("br-basis", help="basis of braid-invariant n-tensors")
    p.add_argument("--module", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_br_basis)

    p = sub.add_parser("check-gfa", help="check the graded Frobenius algebra axioms")
    p.add_argument("--algebra", required=True)
    p.set_defaults(fn=_cmd_check_gfa)

    p = sub.add_parser("wdvv", help="check associativity of a potential's product")
    p.add_argument("--potential", required=True)
    p.add_argument("--metric", required=True)
    p.set_defaults(fn=_cmd_wdvv)

    p = sub.add_parser("check-pre-gfm", help="check both sector restrictions of a potential")
    p.add_argument("--module", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--potential", required=True)
    p.set_defaults(fn=_cmd_check_pre_gfm)

    p = sub.add_parser("assemble-z2", help="glue two Frobenius manifolds over a shared block")
    p.add_argument("--input", required=True)
    p.set_defaults(fn=_cmd_assemble_z2)

    p = sub.add_parser("potential", help="potential of an A/B/D family in flat coordinates")
    p.add_argument("kind", choices=("A", "B", "D"))
    p.add_argument("n", type=int)
    p.set_defaults(fn=_cmd_potential)

    p = sub.add_parser("flat-coords", help="flat coordinate change of the one-variable unfolding")
    p.add_argument("n", type=int)
    p.set_defaults(fn=_cmd_flat_coords)

    p = sub.add_parser("construct-z2", help="build and verify the order-two orbifold manifold")
    p.add_argument("n", type=int)
    p.set_defaults(fn=_cmd_construct_z2)

    p = sub.add_parser("verify-paper", help="run the bundled reference-value regression suite")
    p.set_defaults(fn=_cmd_verify_paper)

    for child in sub.choices.values():
        child.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report: RunReport = args.fn(args)
    except ser.ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    except NotAGroup as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    except GfrobError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return CHECK_FAILED
    sys.stdout.write(report.render(args.format))
    return report.exit_code


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
