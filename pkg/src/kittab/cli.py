"""Command line entry point: ``kittab run`` and ``kittab selftest``."""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys

from .session import SessionError, parse_session, run

EXIT_OK, EXIT_FAILURE, EXIT_PARSE, EXIT_TIMEOUT = 0, 1, 2, 3


class _Timeout(Exception):
    pass


def _on_alarm(signum, frame):
    raise _Timeout()


def _emit(out, as_json: bool, stream):
    if as_json:
        stream.write(json.dumps(out.to_dict(), sort_keys=False) + "\n")
    else:
        stream.write(out.to_text() + "\n\n")
    stream.flush()


def cmd_run(args, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        with open(args.session, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        stderr.write(f"kittab: cannot read {args.session}: {exc.strerror}\n")
        return EXIT_PARSE
    try:
        sess = parse_session(text)
    except SessionError as exc:
        if args.json:
            stdout.write(json.dumps({"error": exc.to_dict()}) + "\n")
        stderr.write(f"{args.session}:{exc.line}:{exc.col}: {exc.message}\n")
        return EXIT_PARSE

    failed = False

    def emit(out):
        nonlocal failed
        failed = failed or out.failed
        _emit(out, args.json, stdout)

    use_alarm = args.timeout_secs and hasattr(signal, "SIGALRM")
    if use_alarm:
        previous = signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(args.timeout_secs)
    try:
        run(sess, emit)
    except _Timeout:
        msg = f"timed out after {args.timeout_secs} s"
        if args.json:
            stdout.write(json.dumps({"error": {"kind": "timeout", "message": msg}}) + "\n")
        stderr.write(f"kittab: {msg}\n")
        return EXIT_TIMEOUT
    finally:
        if use_alarm:
            signal.alarm(0)
            signal.signal(signal.SIGALRM, previous)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_selftest(args, stdout=None) -> int:
    from .acceptance import run_all

    stdout = stdout or sys.stdout
    results = run_all(slow=args.slow, log=lambda line: (stdout.write(line + "\n"), stdout.flush()))
    return EXIT_OK if all(r.passed for r in results if not r.skipped) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kittab", description="Kitt ideals and residual intersections.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    p_run = sub.add_parser("run", help="execute a session file")
    p_run.add_argument("session")
    p_run.add_argument("--json", action="store_true", help="one JSON object per command")
    p_run.add_argument("--timeout-secs", type=int, default=0, metavar="N")
    p_self = sub.add_parser("selftest", help="run the acceptance criteria")
    p_self.add_argument("--slow", action="store_true", help="include the slow tier")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.cmd == "run":
            return cmd_run(args)
        return cmd_selftest(args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stay quiet
        sys.stderr = open(os.devnull, "w")
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
