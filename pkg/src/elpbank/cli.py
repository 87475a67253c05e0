"""Command-line front end.

Every command produces a :class:`RunReport`.  Exit status is 0 when every
verdict passes, 1 when a mathematical check fails and 2 on bad input.
Exact verdicts and numeric cross-checks are reported separately; a numeric
pass never stands in for an exact one.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import LaurentPoly
from .corpus import NAMES, UnknownExample, builtin
from .filters import Filter, classify_filter, polyphase_decompose
from .lattice import DilationScheme, NotExpanding, validate_dilation
from .muep import extract_svp, muep_verify_grid, muep_verify_polyphase
from .pyramid import verify_core_identity
from .svp import BankPair, SvpCertificate, sos_synthesize, sub_qmf_check, svp_residual, svp_verify, synthesize_bank
from .transform import Signal, analyze, pr_check
from .verdict import MuepPreconditionFailed, NotLowpass, SchemeMismatch, SosIdentityFailed, VerifyFailed

GRID_TOL = 1e-10
SUBQMF_TOL = 1e-10

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Unreadable or invalid input; maps to exit status 2."""


@dataclass
class RunReport:
    command: str
    inputs_digest: str = ""
    exact: dict = field(default_factory=dict)
    numeric: dict = field(default_factory=dict)
    banks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    factored: list = field(default_factory=list)

    def record(self, name: str, verdict) -> None:
        self.exact[name] = verdict.describe() if hasattr(verdict, "describe") else str(verdict)

    def record_numeric(self, name: str, value: float, passes: bool) -> None:
        self.numeric[name] = {"value": value, "passes": bool(passes)}

    @property
    def ok(self) -> bool:
        return all(v == "holds" for v in self.exact.values()) and all(v["passes"] for v in self.numeric.values())

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.ok else EXIT_FAIL

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "verdicts": {"exact": self.exact, "numeric": self.numeric},
            "banks": self.banks,
            "details": self.details,
            "status": "pass" if self.ok else "fail",
        }
        if with_timings:
            out["timings"] = self.timings
        return out


def render_report(report: RunReport, fmt: str = "table", with_timings: bool = False) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(with_timings), indent=2, sort_keys=True)
    lines = [f"command: {report.command}", f"inputs:  {report.inputs_digest[:16]}"]
    for name, v in sorted(report.exact.items()):
        lines.append(f"  [exact]   {name:<24} {v}")
    for name, v in sorted(report.numeric.items()):
        mark = "ok" if v["passes"] else "FAIL"
        lines.append(f"  [numeric] {name:<24} {v['value']:.2e} ({mark})")
    for name, summary in sorted(report.banks.items()):
        lines.append(f"  bank {name}: " + ", ".join(f"{k}={summary[k]}" for k in sorted(summary)))
    for name, value in sorted(report.details.items()):
        lines.append(f"  {name}: {value}")
    if report.factored:
        lines.append("  1 - H G* = " + "\n           + ".join(report.factored))
    if with_timings:
        for name, t in sorted(report.timings.items()):
            lines.append(f"  time {name}: {t:.3f}s")
    lines.append(f"status: {'pass' if report.ok else 'FAIL'}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# file ingestion
# ---------------------------------------------------------------------------


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text), text.encode()
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _kind(data) -> str:
    if not isinstance(data, dict):
        return "unknown"
    if "primal" in data:
        return "bank"
    if "taps" in data:
        return "filter"
    if "K" in data:
        return "certificate"
    if "samples" in data:
        return "signal"
    if "lambda" in data:
        return "scheme"
    return "unknown"


def parse_inputs(paths: Sequence[str]) -> dict:
    """Read and validate input files, grouped by kind.

    Returns a dict with keys ``schemes, filters, certificates, banks, signals``
    and ``digest`` (sha256 of the raw bytes in order).
    """
    out = {"schemes": [], "filters": [], "certificates": [], "banks": [], "signals": []}
    digest = hashlib.sha256()
    for path in paths:
        data, raw = _load_json(path)
        digest.update(raw)
        kind = _kind(data)
        try:
            if kind == "scheme":
                out["schemes"].append(DilationScheme.from_json(data))
            elif kind == "filter":
                out["filters"].append(Filter.from_json(data))
            elif kind == "certificate":
                out["certificates"].append(SvpCertificate.from_json(data))
            elif kind == "bank":
                out["banks"].append(BankPair.from_json(data))
            elif kind == "signal":
                out["signals"].append(Signal.from_json(data))
            else:
                raise InputError(f"{path}: cannot tell what kind of object this file holds")
        except InputError:
            raise
        except (ValueError, TypeError, KeyError) as exc:
            raise InputError(f"{path}: invalid {kind}: {exc}") from exc
    out["digest"] = digest.hexdigest()
    return out


def _one(path: str, kind: str):
    parsed = parse_inputs([path])
    items = parsed[kind]
    if len(items) != 1:
        raise InputError(f"{path}: expected a {kind[:-1]} file")
    return items[0], parsed["digest"]


def _write_json(path: str, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _default_grid(dim: int) -> int:
    env = os.environ.get("ELPBANK_GRID")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"ELPBANK_GRID must be an integer, got {env!r}") from exc
    if dim <= 2:
        return 64
    if dim == 3:
        return 16
    return 8


def _grid(args, dim: int) -> int:
    return args.grid if args.grid else _default_grid(dim)


def _bank_summary(pair: BankPair) -> dict:
    signs = pair.sign_pattern()
    if pair.is_tight():
        kind = "tight"
    elif signs is not None:
        kind = "quasi-tight"
    else:
        kind = "dual pair"
    return {
        "s": pair.s,
        "kind": kind,
        "primal_taps": pair.primal.tap_counts(),
        "dual_taps": pair.dual.tap_counts(),
    }


def _factored(cert: SvpCertificate) -> list[str]:
    return [f"({k})*conj({l})" for k, l in zip(cert.K, cert.L)]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _timed(report: RunReport, name: str, fn, *a, **kw):
    t = time.perf_counter()
    out = fn(*a, **kw)
    report.timings[name] = time.perf_counter() - t
    return out


def cmd_validate(args) -> RunReport:
    report = RunReport("validate")
    digest = hashlib.sha256()
    if args.lam is not None:
        try:
            lam = json.loads(args.lam)
        except json.JSONDecodeError as exc:
            raise InputError(f"--lambda: {exc.msg}") from exc
        digest.update(args.lam.encode())
        try:
            scheme = validate_dilation(lam)
        except (NotExpanding, ValueError) as exc:
            raise InputError(f"dilation matrix rejected: {exc}") from exc
        report.details["scheme"] = scheme.to_json()
    if args.files:
        parsed = parse_inputs(args.files)
        digest.update(parsed["digest"].encode())
        for key in ("schemes", "filters", "certificates", "banks", "signals"):
            if parsed[key]:
                report.details[key] = len(parsed[key])
        for i, f in enumerate(parsed["filters"]):
            report.details[f"filter[{i}].class"] = classify_filter(f).value
        for i, pair in enumerate(parsed["banks"]):
            problems = pair.primal.problems() + pair.dual.problems()
            report.exact[f"bank[{i}].invariants"] = "holds" if not problems else "fails: " + "; ".join(problems)
    if args.lam is None and not args.files:
        raise InputError("validate needs --lambda or input files")
    report.inputs_digest = digest.hexdigest()
    return report


def cmd_polyphase(args) -> RunReport:
    f, digest = _one(args.filter, "filters")
    report = RunReport("polyphase", digest)
    pv = polyphase_decompose(f)
    report.details["class"] = classify_filter(f).value
    report.details["components"] = {str(list(nu)): str(c) for nu, c in zip(f.scheme.gamma, pv)}
    return report


def _lowpass_pair(args) -> tuple[Filter, Filter, str]:
    h, dh = _one(args.h, "filters")
    if args.g:
        g, dg = _one(args.g, "filters")
    else:
        g, dg = h, ""
    return h, g, hashlib.sha256((dh + dg).encode()).hexdigest()


def cmd_residual(args) -> RunReport:
    h, g, digest = _lowpass_pair(args)
    report = RunReport("residual", digest)
    res = svp_residual(h, g)
    report.details["residual"] = str(res)
    report.details["biorthogonal"] = res.is_zero()
    return report


def _cert(args, digest: str) -> tuple[SvpCertificate, str]:
    cert, dc = _one(args.cert, "certificates")
    return cert, hashlib.sha256((digest + dc).encode()).hexdigest()


def cmd_svp_verify(args) -> RunReport:
    h, g, digest = _lowpass_pair(args)
    cert, digest = _cert(args, digest)
    report = RunReport("svp-verify", digest)
    v = _timed(report, "svp", svp_verify, h, g, cert)
    report.record("svp", v)
    report.details["J"] = cert.J
    if v:
        report.record("core_identity", _timed(report, "core", verify_core_identity, h, g, cert.K, cert.L))
        report.factored = _factored(cert)
    return report


def _muep_checks(report: RunReport, pair: BankPair, args) -> None:
    report.record("muep_exact", _timed(report, "muep_exact", muep_verify_polyphase, pair))
    dev = _timed(report, "muep_grid", muep_verify_grid, pair, _grid(args, pair.scheme.dim))
    report.record_numeric("muep_grid_max_deviation", dev, dev < GRID_TOL)


def cmd_synthesize(args) -> RunReport:
    h, g, digest = _lowpass_pair(args)
    cert, digest = _cert(args, digest)
    report = RunReport("synthesize", digest)
    pair = _timed(report, "synthesize", synthesize_bank, h, g, cert)
    report.record("svp", svp_verify(h, g, cert))
    report.banks["synthesized"] = _bank_summary(pair)
    _muep_checks(report, pair, args)
    if args.output:
        _write_json(args.output, pair.to_json())
        report.details["written"] = args.output
    return report


def cmd_muep_verify(args) -> RunReport:
    pair, digest = _one(args.bank, "banks")
    report = RunReport("muep-verify", digest)
    report.banks["input"] = _bank_summary(pair)
    _muep_checks(report, pair, args)
    return report


def cmd_extract_svp(args) -> RunReport:
    pair, digest = _one(args.bank, "banks")
    report = RunReport("extract-svp", digest)
    cert = _timed(report, "extract", extract_svp, pair, prune=not args.no_prune, parallel=args.parallel)
    report.record("svp", svp_verify(pair.primal.lowpass, pair.dual.lowpass, cert))
    report.details["J"] = cert.J
    report.details["note"] = cert.note
    report.factored = _factored(cert)
    if args.output:
        _write_json(args.output, cert.to_json())
        report.details["written"] = args.output
    return report


def cmd_sub_qmf(args) -> RunReport:
    h, digest = _one(args.h, "filters")
    report = RunReport("sub-qmf", digest)
    res = sub_qmf_check(h, _grid(args, h.dim), tol=SUBQMF_TOL)
    report.record_numeric("sub_qmf_min", res.min_value, res.passes)
    report.details["argmin"] = list(res.argmin)
    return report


def cmd_apply(args) -> RunReport:
    pair, d1 = _one(args.bank, "banks")
    x, d2 = _one(args.signal, "signals")
    report = RunReport("apply", hashlib.sha256((d1 + d2).encode()).hexdigest())
    bank = pair.primal if args.side == "primal" else pair.dual
    coeffs = analyze(bank, x)
    report.details["channels"] = len(coeffs)
    report.details["support_sizes"] = [len(c.samples) for c in coeffs]
    if args.output:
        _write_json(args.output, {"side": args.side, "coefficients": [c.to_json() for c in coeffs]})
        report.details["written"] = args.output
    return report


def cmd_pr_check(args) -> RunReport:
    pair, d1 = _one(args.bank, "banks")
    x, d2 = _one(args.signal, "signals")
    report = RunReport("pr-check", hashlib.sha256((d1 + d2).encode()).hexdigest())
    err = _timed(report, "pr", pr_check, pair, x)
    if x.exact:
        report.exact["perfect_reconstruction"] = "holds" if err == 0 else f"fails: max error {err:.3e}"
    else:
        report.record_numeric("reconstruction_error", err, err < GRID_TOL)
    return report


def cmd_corpus(args) -> RunReport:
    a = None
    if args.a is not None:
        try:
            a = Fraction(args.a)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"--a must be rational, got {args.a!r}") from exc
    try:
        entry = builtin(args.name, a)
    except (UnknownExample, ValueError) as exc:
        raise InputError(str(exc.args[0] if exc.args else exc)) from exc
    report = RunReport(f"corpus {args.name}", hashlib.sha256(f"{args.name}:{a}".encode()).hexdigest())
    h, g, cert = entry.lowpass, entry.dual_lowpass, entry.certificate
    report.details["lowpass_class"] = classify_filter(h).value
    report.details["J"] = cert.J
    report.details["certificate"] = cert.note
    report.record("svp", _timed(report, "svp", svp_verify, h, g, cert))
    report.factored = _factored(cert)
    if "residual" in entry.expected:
        same = svp_residual(h, g) == entry.expected["residual"]
        report.exact["residual_matches_reference"] = "holds" if same else "fails: residual differs"
    pair = None
    if args.synthesize or args.muep_verify or args.extract or args.export:
        if args.tight:
            pair = _timed(report, "synthesize", entry.synthesize_tight)
        else:
            pair = _timed(report, "synthesize", entry.synthesize)
        report.banks["synthesized"] = _bank_summary(pair)
    if args.muep_verify and pair is not None:
        _muep_checks(report, pair, args)
    if args.extract and pair is not None:
        extracted = _timed(report, "extract", extract_svp, pair, parallel=args.parallel)
        report.details["extracted_J"] = extracted.J
        report.record("extracted_svp", svp_verify(pair.primal.lowpass, pair.dual.lowpass, extracted))
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(str(out / "h.json"), h.to_json())
        if g != h:
            _write_json(str(out / "g.json"), g.to_json())
        _write_json(str(out / "cert.json"), cert.to_json())
        if pair is not None:
            _write_json(str(out / "bank.json"), pair.to_json())
        report.details["exported_to"] = str(out)
    return report


COMMANDS = {
    "validate": cmd_validate,
    "polyphase": cmd_polyphase,
    "residual": cmd_residual,
    "svp-verify": cmd_svp_verify,
    "synthesize": cmd_synthesize,
    "muep-verify": cmd_muep_verify,
    "extract-svp": cmd_extract_svp,
    "sub-qmf": cmd_sub_qmf,
    "apply": cmd_apply,
    "pr-check": cmd_pr_check,
    "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON report")
    common.add_argument("--grid", type=int, default=None, help="grid points per dimension for numeric checks")
    common.add_argument("--parallel", action="store_true", help="parallel minor computation")
    common.add_argument("--timings", action="store_true", help="include timings in the report")

    parser = argparse.ArgumentParser(prog="elpbank", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a dilation matrix or input files")
    p.add_argument("--lambda", dest="lam", help="dilation matrix as JSON, e.g. '[[1,1],[1,-1]]'")
    p.add_argument("files", nargs="*")

    p = sub.add_parser("polyphase", parents=[common], help="polyphase components of a filter")
    p.add_argument("filter")

    for name, helptext in (("residual", "print 1 - H G*"),):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("h")
        p.add_argument("--g", help="dual lowpass filter (defaults to h)")

    for name, helptext in (("svp-verify", "verify an SVP certificate"), ("synthesize", "build a primal/dual bank pair")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("h")
        p.add_argument("cert")
        p.add_argument("--g", help="dual lowpass filter (defaults to h)")
        if name == "synthesize":
            p.add_argument("-o", "--output", help="write the bank pair JSON here")

    p = sub.add_parser("muep-verify", parents=[common], help="check a bank pair exactly and on a grid")
    p.add_argument("bank")

    p = sub.add_parser("extract-svp", parents=[common], help="SVP certificate from a bank pair")
    p.add_argument("bank")
    p.add_argument("-o", "--output")
    p.add_argument("--no-prune", action="store_true", help="keep identically zero generator pairs")

    p = sub.add_parser("sub-qmf", parents=[common], help="numeric sub-QMF check")
    p.add_argument("h")

    p = sub.add_parser("apply", parents=[common], help="analyze a signal with one side of a bank pair")
    p.add_argument("bank")
    p.add_argument("signal")
    p.add_argument("--side", choices=("primal", "dual"), default="dual")
    p.add_argument("-o", "--output")

    p = sub.add_parser("pr-check", parents=[common], help="perfect reconstruction in both role orders")
    p.add_argument("bank")
    p.add_argument("signal")

    p = sub.add_parser("corpus", parents=[common], help="run a built-in example")
    p.add_argument("name", choices=NAMES)
    p.add_argument("--a", help="rational parameter for example1, e.g. 1/2")
    p.add_argument("--synthesize", action="store_true")
    p.add_argument("--tight", action="store_true", help="use the sum-of-squares generators")
    p.add_argument("--muep-verify", action="store_true")
    p.add_argument("--extract", action="store_true")
    p.add_argument("--export", help="directory for h.json, cert.json, bank.json")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotLowpass, SchemeMismatch, NotExpanding) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (VerifyFailed, MuepPreconditionFailed, SosIdentityFailed) as exc:
        report = RunReport(args.command)
        report.exact["precondition"] = f"fails: {exc}"
    print(render_report(report, "json" if args.json else "table", args.timings), file=out)
    return report.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
