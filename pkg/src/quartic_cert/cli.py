"""Command line entry point.

    quartic-cert verify --t 7/3 [--format text|json]
    quartic-cert verify --sample
    quartic-cert verify --special
    quartic-cert report --format json --t 1

``verify`` prints one line per check; ``report`` prints the full
certificate including witnesses.  Exit status is 0 when every verdict is
the expected one, 1 if any check failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from .certificate import Certificate, expected_verdict, run_certificate
from .exactfield import parse_rat, render_rat

DEFAULT_SAMPLE = "1,3,-1,5,7/3"
SPECIAL = ("2", "6", "10/7")


def _rational(text: str):
    try:
        return parse_rat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} (expected p or p/q)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quartic-cert", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, default_format in (("verify", "text"), ("report", "json")):
        p = sub.add_parser(name)
        p.add_argument("--t", dest="ts", action="append", type=_rational, default=[],
                       metavar="RATIONAL", help="parameter value (repeatable)")
        p.add_argument("--sample", action="store_true",
                       help="default generic sample (override with QC_DEFAULT_SAMPLE)")
        p.add_argument("--special", action="store_true", help="t = 2, 6, 10/7")
        p.add_argument("--format", choices=("text", "json"), default=default_format)
        p.add_argument("--timing", action="store_true", help="timing trailer on stderr")
    return parser


def default_sample() -> list:
    text = os.environ.get("QC_DEFAULT_SAMPLE", DEFAULT_SAMPLE)
    return [parse_rat(part) for part in text.split(",") if part.strip()]


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    ts = list(args.ts)
    if args.sample:
        try:
            ts += default_sample()
        except ValueError as exc:
            parser.error(f"QC_DEFAULT_SAMPLE: {exc}")
    if args.special:
        ts += [parse_rat(s) for s in SPECIAL]
    if not ts:
        parser.error("give --t, --sample or --special")

    certs: list[Certificate] = []
    timings = []
    for t in ts:
        start = time.perf_counter()
        certs.append(run_certificate(t))
        timings.append((t, time.perf_counter() - start))

    if args.format == "json":
        payload = [c.to_dict() for c in certs]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        print("\n\n".join(c.render_text(full=args.command == "report") for c in certs))

    if args.timing:
        for t, secs in timings:
            print(f"# timing t={render_rat(t)} {secs:.2f}s", file=sys.stderr)

    return 0 if all(c.verdict == expected_verdict(c.t) for c in certs) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
