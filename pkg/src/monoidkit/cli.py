"""Command-line front end.

Subcommands: ``info``, ``apply``, ``check``, ``paths``, ``diagram``.  All
reports are byte-reproducible for fixed inputs and flags: no wall clock, no
unseeded randomness.  Exit codes: 0 all checks pass or commute, 1 a failing
or diverging finding, 2 input error, 3 a bound was exhausted or a verdict
stayed inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__, core, diagram, embeddings
from .core import check_prop_2_1, is_cancellative, is_divisible, is_uniquely_divisible
from .diagram import CategoryId
from .elements import Element
from .errors import BoundExhausted, MonoidKitError, ParseError, PresentationError
from .presentations import load_presentation

#: header notes for diagram reports: the arrow set is rebuilt from the
#: per-construction typing lists, and two target names in those lists are
#: normalized to the categories the constructions actually land in.
TYPING_NOTES = (
    "arrows reconstructed from the construction typing lists; no other arrow source is used",
    "typing normalization: D on cancellative carriers targets DRS, U on divisible cancellative carriers targets URS",
)


def _fmt(value):
    """Render witnesses and payloads deterministically."""
    if isinstance(value, Element):
        return value.serialize()
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    if isinstance(value, CategoryId):
        return value.value
    return str(value)


def _tristate_entry(name, tri):
    entry = {"flag": name, "value": tri.label()}
    if tri.witness is not None:
        entry["witness"] = _fmt(tri.witness)
    return entry


class Report:
    """Ordered, JSON-able report body with deterministic text rendering."""

    def __init__(self, command, args, input_name=None, digest=None):
        self.data = {
            "tool": f"monoidkit {__version__}",
            "command": command,
            "mode": args.mode,
            "bound": args.bound,
            "seed": args.seed,
        }
        if input_name is not None:
            self.data["input"] = {"name": input_name, "digest": digest}
        self.findings = []
        self.notes = []

    def add(self, check, verdict, detail=""):
        f = {"check": check, "verdict": verdict}
        if detail:
            f["detail"] = detail
        self.findings.append(f)

    def to_json(self):
        body = dict(self.data)
        if self.notes:
            body["notes"] = list(self.notes)
        body["findings"] = self.findings
        return json.dumps(body, sort_keys=True, indent=2) + "\n"

    def to_text(self):
        lines = []
        for key in ("tool", "command", "mode", "bound", "seed"):
            lines.append(f"{key}: {self.data[key]}")
        if "input" in self.data:
            inp = self.data["input"]
            lines.append(f"input: {inp['name']} (sha256:{inp['digest']})")
        for note in self.notes:
            lines.append(f"note: {note}")
        for f in self.findings:
            line = f"[{f['verdict']}] {f['check']}"
            if f.get("detail"):
                line += f" -- {f['detail']}"
            lines.append(line)
        return "\n".join(lines) + "\n"

    def exit_code(self):
        verdicts = [f["verdict"] for f in self.findings]
        if any(v in ("fail", "diverge", "counterexample", "error") for v in verdicts):
            return 1
        if any(v in ("inconclusive", "unknown", "inapplicable") for v in verdicts):
            return 3
        return 0


def _mode_of(args):
    return embeddings.LITERAL if args.mode == "literal" else embeddings.SATURATED


def _load(args):
    if not args.input:
        raise ParseError("this command needs --input FILE")
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
    pres = load_presentation(args.input)
    return pres, pres.to_monoid(), digest


def _describe_monoid(report, monoid, sample_budget=8):
    report.add("backend", "info", monoid.backend)
    card = monoid.cardinality()
    report.add("cardinality", "info", "infinite or not enumerated" if card is None else str(card))
    report.add("zero", "info", _fmt(monoid.zero))
    report.add("generators", "info", _fmt(monoid.generators))
    structure = getattr(monoid, "meta", {}).get("group_structure")
    if structure is not None:
        report.add("group structure", "info", str(structure))
    try:
        sample = monoid.sample(sample_budget)
        report.add("sample", "info", _fmt(sample))
    except NotImplementedError:
        pass


def cmd_info(args):
    _, monoid, digest = _load(args)
    report = Report("info", args, monoid.name, digest)
    _describe_monoid(report, monoid)
    for name, result in (
        ("cancellative", is_cancellative(monoid, args.bound)),
        ("divisible", is_divisible(monoid, args.bound)),
        ("uniquely divisible", is_uniquely_divisible(monoid, args.bound)),
    ):
        entry = _tristate_entry(name, result)
        detail = entry["value"]
        if "witness" in entry:
            detail += f" witness {entry['witness']}"
        report.add(f"predicate {name}", "info", detail)
    f = monoid.flags
    report.add("cone", "info", str(f.is_cone).lower())
    report.add("linear", "info", str(f.is_linear).lower())
    return report


def cmd_apply(args):
    _, monoid, digest = _load(args)
    path = [p.strip() for p in args.path.split(",") if p.strip()]
    report = Report("apply", args, monoid.name, digest)
    report.data["path"] = ",".join(path)
    target, cmap = diagram.apply_path(monoid, path, _mode_of(args), args.bound)
    report.add("target", "info", target.name)
    _describe_monoid(report, target)
    images = [cmap(g) for g in monoid.generators]
    report.add("generator images", "info", _fmt(images))
    zero_ok = target.eq(cmap(monoid.zero), target.zero)
    report.add(
        "map preserves zero",
        "pass" if zero_ok.is_equal else ("fail" if zero_ok.is_not_equal else "inconclusive"),
    )
    try:
        src = monoid.sample(12)
    except NotImplementedError:
        src = list(monoid.generators)
    collision = None
    for i, a in enumerate(src):
        for b in src[i + 1 :]:
            if monoid.eq(a, b).is_not_equal and target.eq(cmap(a), cmap(b)).is_equal:
                collision = (a, b)
                break
        if collision:
            break
    report.add(
        "map injective on sample",
        "info",
        "no" if collision else "yes",
    )
    return report


def cmd_check(args):
    _, monoid, digest = _load(args)
    report = Report("check", args, monoid.name, digest)
    report.data["theorem"] = args.theorem
    if args.path:
        path = [p.strip() for p in args.path.split(",") if p.strip()]
        monoid, _ = diagram.apply_path(monoid, path, _mode_of(args), args.bound)
        report.data["path"] = ",".join(path)
    if args.theorem == "p2.1":
        prop = check_prop_2_1(monoid, args.bound)
        detail = ""
        if prop.witness is not None:
            x, n1, n2 = prop.witness
            detail = f"x={_fmt(x)} n1={n1} n2={n2}"
        elif prop.detail:
            detail = prop.detail
        report.add("distinct multipliers differ on nonzero elements", prop.verdict, detail)
        return report
    result = embeddings.check_theorem(
        args.theorem, monoid, sample_budget=100, mode=_mode_of(args), bound=args.bound
    )
    if result.verdict == "inapplicable":
        for f in result.findings:
            report.add(f.check, "inapplicable", f.detail)
        return report
    for f in result.findings:
        report.add(f.check, f.verdict, f.detail)
    return report


def cmd_paths(args):
    report = Report("paths", args)
    try:
        start = CategoryId(args.start)
        end = CategoryId(args.end)
    except ValueError as exc:
        raise ParseError(str(exc))
    found = diagram.enumerate_paths(start, end, args.max_len)
    report.data["from"] = start.value
    report.data["to"] = end.value
    report.data["max_len"] = args.max_len
    report.add("paths found", "info", str(len(found)))
    for p in found:
        report.add("path", "info", ",".join(p))
    return report


def cmd_diagram(args):
    _, monoid, digest = _load(args)
    report = Report("diagram", args, monoid.name, digest)
    report.notes.extend(TYPING_NOTES)
    reports = diagram.full_diagram_check(
        monoid, args.max_len, args.expr_size, _mode_of(args), args.bound
    )
    commute = sum(1 for r in reports if r.verdict == "commute")
    report.add(
        "path pairs compared",
        "info",
        f"{len(reports)} ({commute} commute)",
    )
    for r in reports:
        a = ",".join(r.path_a)
        b = ",".join(r.path_b)
        detail = f"{r.expressions} expressions"
        if r.unknowns:
            detail += f", {r.unknowns} undecided"
        if r.witness:
            detail += f", witness {r.witness[0].serialize()} vs {r.witness[1].serialize()}"
        if r.error:
            detail += f", {r.error}"
        report.add(f"[{a}] vs [{b}] -> {r.end.value}", r.verdict, detail)
    return report


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monoidkit",
        description="exact constructions on commutative monoids and their commutativity checks",
    )
    parser.add_argument("--version", action="version", version=f"monoidkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", help="presentation file")
        p.add_argument(
            "--mode", choices=("literal", "saturated"), default="saturated",
            help="relation mode for pair/fraction constructions",
        )
        p.add_argument("--bound", type=int, default=core.DEFAULT_BOUND,
                       help="budget for existential searches")
        p.add_argument("--seed", type=int, default=0, help="sampling seed (recorded)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("info", help="flags and predicate results for a monoid")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("apply", help="apply a construction path")
    p.add_argument("--path", required=True, help="comma-separated, e.g. R,F,D,U")
    common(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("check", help="run a construction theorem check")
    p.add_argument(
        "--theorem", required=True, choices=("4.1", "4.2", "4.3", "4.4", "4.5", "p2.1")
    )
    p.add_argument("--path", default="", help="apply this path before checking")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("paths", help="enumerate typed construction paths")
    p.add_argument("--from", dest="start", required=True, help="start category, e.g. S")
    p.add_argument("--to", dest="end", required=True, help="end category, e.g. UG")
    p.add_argument("--max-len", type=int, default=4)
    common(p, needs_input=False)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("diagram", help="compare all same-endpoint path pairs")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--expr-size", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_diagram)

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (ParseError, PresentationError, FileNotFoundError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except BoundExhausted as exc:
        print(f"bound exhausted: {exc}", file=sys.stderr)
        return 3
    except MonoidKitError as exc:
        step = getattr(exc, "path_step", None)
        where = f" at step {step}" if step is not None else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return report.exit_code()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
