"""Command line entry point: ``qpnkit run <script.qpk> [--seed N] [--window LO:HI]``.

Exit codes: 0 when every verdict passes, 1 when some verdict fails or a
command errors, 2 for parse or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from ..grmod import DegreeWindow
from .parser import ParseError, ScriptNameError, SessionScript, parse, render
from .runner import Report, run

__all__ = ["ParseError", "Report", "ScriptNameError", "SessionScript", "bundled_script",
           "main", "parse", "render", "run"]


def bundled_script(name: str = "acceptance.qpk") -> str:
    return resources.files("qpnkit.data").joinpath(name).read_text(encoding="utf-8")


def _window(text: str) -> DegreeWindow:
    try:
        lo, hi = (int(x) for x in text.split(":"))
        return DegreeWindow(lo, hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI with LO <= HI, got {text!r}") from None


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def _read(path: str) -> str:
    if path == "@acceptance":
        return bundled_script()
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def main(argv=None) -> int:
    ap = _ArgParser(prog="qpnkit", description="Batch verification scripts for graded modules "
                                                "and tensor functors on projective space.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p_run = sub.add_parser("run", help="run a script and print JSON Lines reports")
    p_run.add_argument("script", help="path to a .qpk script, or @acceptance for the bundled one")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--window", type=_window, default=None, metavar="LO:HI")
    p_fmt = sub.add_parser("render", help="print the canonical form of a script")
    p_fmt.add_argument("script")
    args = ap.parse_args(argv)

    try:
        text = _read(args.script)
    except OSError as exc:
        print(f"qpnkit: cannot read {args.script}: {exc}", file=sys.stderr)
        return 2
    try:
        script = parse(text)
    except (ParseError, ScriptNameError) as exc:
        print(json.dumps({"error": {"kind": exc.kind, "detail": exc.detail()}}))
        return 2
    if args.cmd == "render":
        sys.stdout.write(render(script))
        return 0
    report = run(script, seed=args.seed, window=args.window)
    for line in report.lines():
        print(line)
    if report.aborted:
        return 2
    return 1 if report.failed else 0
