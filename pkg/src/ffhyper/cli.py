"""Command-line interface: ``ffhyper eval | mccarthy | verify``.

Exit codes: 0 all checks passed, 1 a check failed, 2 malformed input,
3 a zero where a nonzero element is required, 4 field size over bound.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from .character import MultChar, as_twist
from .field import FieldDesc, FieldSizeError, ZeroArgumentError, build_field, field_of_order, qmax
from .hypergeometric import (
    F_A_batch,
    HypergeometricInstance,
    S_A_batch,
    dwork_loeser_instance,
    mccarthy_hypergeometric,
    normalization_C,
    solve_L_beta,
    specialized_lambda,
)
from .value import CycValue
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_MALFORMED = 2
EXIT_ZERO = 3
EXIT_TOO_LARGE = 4


class MalformedInput(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: list = dc_field(default_factory=list)
    checks: list = dc_field(default_factory=list)
    elapsed_ms: int = 0

    def add_output(self, label: str, value: CycValue, **extra) -> None:
        z = value.to_complex()
        self.outputs.append({"label": label, "value": value.to_json(), "complex": [z.real, z.imag], **extra})

    def add_check(self, name: str, passed: bool, detail: str = "") -> None:
        entry = {"name": name, "pass": bool(passed)}
        if detail:
            entry["detail"] = detail
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "elapsed_ms": self.elapsed_ms,
        }


def parse_element(f: FieldDesc, raw) -> int:
    """Element encoding from JSON (int or coefficient list) or CLI text ("3" or "1,2")."""
    if isinstance(raw, str):
        raw = raw.strip()
        try:
            raw = [int(x) for x in raw.split(",")] if "," in raw else int(raw)
        except ValueError as exc:
            raise MalformedInput(f"cannot parse element {raw!r}") from exc
    if isinstance(raw, bool) or not isinstance(raw, (int, list)):
        raise MalformedInput(f"bad element encoding {raw!r}")
    try:
        return f.value_of(raw)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(str(exc)) from exc


def load_instance(data: dict):
    """Parse an instance file; returns (instance, lambda encodings, twist encoding)."""
    try:
        fd = data["field"]
        p, a = int(fd["p"]), int(fd.get("a", 1))
        A = [[int(x) for x in row] for row in data["A"]]
        beta = [int(b) for b in data["beta"]]
        lam_raw = data["lambda"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed instance file: {exc}") from exc
    try:
        f = build_field(p, a)
    except FieldSizeError:
        raise
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    try:
        inst = HypergeometricInstance(f, tuple(map(tuple, A)), tuple(beta))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    if not isinstance(lam_raw, list) or len(lam_raw) != inst.N:
        raise MalformedInput(f"lambda must be a list of N = {inst.N} elements")
    lam = tuple(parse_element(f, x) for x in lam_raw)
    if any(v == 0 for v in lam):
        raise ZeroArgumentError("lambda entries must be nonzero")
    twist = parse_element(f, data.get("twist", 1))
    if twist == 0:
        raise ZeroArgumentError("twist must be nonzero")
    return inst, lam, twist


def cmd_eval(args) -> RunReport:
    try:
        with open(args.instance) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read instance file: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedInput("instance file must hold a JSON object")
    inst, lam, twist = load_instance(data)
    f = inst.field
    if args.twist is not None:
        twist = parse_element(f, args.twist)
        if twist == 0:
            raise ZeroArgumentError("twist must be nonzero")
    inputs = {
        "field": f.to_json(),
        "A": [list(r) for r in inst.A],
        "beta": list(inst.beta_exponents),
        "lambda": [f.coeffs(v) for v in lam],
        "twist": f.coeffs(twist),
        "which": args.which,
    }
    report = RunReport("eval", inputs)
    tw = as_twist(f, twist)
    values = {}
    if args.which in ("FA", "both"):
        values["FA"] = F_A_batch(inst, [lam], tw)[0]
        report.add_output("FA", values["FA"], L_beta_count=solve_L_beta(inst).count)
    if args.which in ("SA", "both"):
        values["SA"] = S_A_batch(inst, [lam], tw)[0]
        report.add_output("SA", values["SA"])
    if args.which == "both":
        report.add_check("S_A = F_A", values["FA"] == values["SA"])
    return report


def _alphas(f: FieldDesc, raw: list[int]) -> list[MultChar]:
    if len(raw) % 2 == 0:
        raise MalformedInput("need an odd number 2k-1 of alpha exponents")
    return [MultChar(f, int(x)) for x in raw]


def cmd_mccarthy(args) -> RunReport:
    try:
        f = field_of_order(args.q)
    except FieldSizeError:
        raise
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc
    alphas = _alphas(f, args.a)
    k = (len(alphas) + 1) // 2
    twist = as_twist(f, parse_element(f, args.twist)) if args.twist is not None else None
    if args.table:
        ts = list(range(1, f.q))
    else:
        if args.t is None:
            raise MalformedInput("give --t or --table")
        tv = parse_element(f, args.t)
        if tv == 0:
            raise ZeroArgumentError("t must be nonzero")
        ts = [tv]
    inputs = {
        "field": f.to_json(),
        "k": k,
        "alphas": [a.k for a in alphas],
        "t": [f.coeffs(t) for t in ts],
        "twist": f.coeffs(twist.c) if twist else f.coeffs(1),
    }
    report = RunReport("mccarthy", inputs)
    inst = dwork_loeser_instance(alphas)
    C = normalization_C(alphas, twist)
    lams = [specialized_lambda(alphas, t) for t in ts]
    fa = F_A_batch(inst, lams, twist)
    sa = S_A_batch(inst, lams, twist)
    for t, x, y in zip(ts, fa, sa):
        kf = mccarthy_hypergeometric(alphas, t, twist)
        report.add_output(f"t={t}", kf, t=f.coeffs(t))
        report.add_check(f"t={t} F_A/C = kFk-1", x / C == kf)
        report.add_check(f"t={t} C*kFk-1 = S_A", C * kf == y)
    return report


def cmd_verify(args) -> RunReport:
    if args.qmax > qmax():
        raise FieldSizeError(f"qmax {args.qmax} exceeds bound {qmax()}")
    report = RunReport("verify", {"suite": args.suite, "qmax": args.qmax, "seed": args.seed})
    for check in run_suite(args.suite, args.qmax, args.seed):
        report.add_check(check.name, check.passed, check.detail)
    return report


def write_csv(report: RunReport, out) -> None:
    """Table of mccarthy outputs; a row passes iff every check with its label passes."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t", "value-re", "value-im", "check"])
    for o in report.outputs:
        label = o["label"]
        passed = all(c["pass"] for c in report.checks if c["name"].split(" ", 1)[0] == label)
        t = o.get("t", label)
        writer.writerow([
            ";".join(map(str, t)) if isinstance(t, list) else t,
            repr(o["complex"][0]),
            repr(o["complex"][1]),
            "pass" if passed else "fail",
        ])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffhyper", description="Finite field A-hypergeometric functions and exponential sums."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate F_A and/or S_A on an instance file")
    ev.add_argument("instance", help="instance JSON file")
    ev.add_argument("--which", choices=["FA", "SA", "both"], default="both")
    ev.add_argument("--twist", help="additive character twist c (encoding or comma-separated coefficients)")

    mc = sub.add_parser("mccarthy", help="evaluate McCarthy's kFk-1 and compare with F_A / S_A")
    mc.add_argument("--q", type=int, required=True, help="field size")
    mc.add_argument("--a", type=int, nargs="+", required=True, metavar="EXP",
                    help="exponents of alpha_1..alpha_{2k-1}")
    mc.add_argument("--t", help="argument t (nonzero element encoding)")
    mc.add_argument("--table", action="store_true", help="iterate over all nonzero t")
    mc.add_argument("--twist", help="additive character twist c")
    mc.add_argument("--csv", action="store_true", help="emit a CSV table instead of JSON")

    ve = sub.add_parser("verify", help="run seeded property suites")
    ve.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    ve.add_argument("--qmax", type=int, default=9)
    ve.add_argument("--seed", type=int, default=0)
    return parser


COMMANDS = {"eval": cmd_eval, "mccarthy": cmd_mccarthy, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = COMMANDS[args.command](args)
    except FieldSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except ZeroArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ZERO
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    if getattr(args, "csv", False):
        write_csv(report, sys.stdout)
    else:
        json.dump(report.to_json(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
