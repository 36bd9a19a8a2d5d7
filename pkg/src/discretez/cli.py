"""Command-line front end.

Exit codes: 0 success, 2 validation or precondition failure, 3 a
certificate, ladder or window check failed, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import dsl, encode as enc_mod, extraction, integers, normalize, tupling
from .errors import DiscreteZError, InsufficientDensityError
from .numeric import (
    DiscreteSet,
    dump_function,
    dump_set,
    format_rational,
    load_function,
    load_set,
    parse_rational,
)

EXIT_OK, EXIT_INVALID, EXIT_CHECK, EXIT_USAGE = 0, 2, 3, 64


class CheckFailed(Exception):
    """A mathematical verification came out negative."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rational(text):
    try:
        return parse_rational(text)
    except DiscreteZError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational_list(text):
    return [_rational(t) for t in text.split(",") if t.strip()]


def _read_set(path) -> DiscreteSet:
    return load_set(Path(path).read_text(encoding="utf-8").splitlines())


def _read_fn(path):
    return load_function(Path(path).read_text(encoding="utf-8").splitlines())


def _read_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


class _Out:
    def __init__(self, args):
        self.args = args

    def stamp(self) -> str:
        return datetime.now(timezone.utc).isoformat(timespec="seconds")

    def text(self, content: str, path=None, comment="#"):
        if self.args.timestamp and comment:
            content = f"{comment} generated {self.stamp()}\n" + content
        self._write(content, path if path is not None else self.args.output)

    def json(self, obj: dict, path=None):
        if self.args.timestamp:
            obj = {"timestamp": self.stamp(), **obj}
        self._write(json.dumps(obj, indent=2) + "\n", path if path is not None else self.args.output)

    def report(self, obj: dict, lines: list):
        if self.args.format == "json":
            self.json(obj)
        else:
            self.text("".join(line + "\n" for line in lines), comment=None)

    @staticmethod
    def _write(content: str, path):
        if path is None or str(path) == "-":
            sys.stdout.write(content)
        else:
            Path(path).write_text(content, encoding="utf-8")


def _fmt_all(xs):
    return [format_rational(x) for x in xs]


# -- gen ----------------------------------------------------------------------

def _write_planted(out, depth, scheme, prefix):
    D, f, ladder = integers.plant_ladder(depth, scheme)
    if prefix is None:
        out.json({"set": _fmt_all(D), **ladder.to_json()})
        return
    out.text(dump_set(D), f"{prefix}.set")
    out.text(dump_function(f), f"{prefix}.fn")
    out.json(ladder.to_json(), f"{prefix}.json")


def cmd_gen(args, out):
    if args.kind == "two-subgroups":
        D = integers.two_subgroups(args.alpha, args.beta, args.exp)
        out.text(dump_set(D))
    elif args.kind == "planted-ladder":
        _write_planted(out, args.depth, args.scheme, args.output)
    else:
        rng = random.Random(args.seed)
        perturb = None
        if args.perturb:
            # uniform on a 1/1000 grid inside [-u/(8 i^2), u/(8 i^2)]
            perturb = lambda i: Fraction(rng.randint(-1000, 1000), 1000) * args.unit / (8 * i * i)
        D = extraction.arithmetic_set(args.unit, args.count, perturb)
        out.text(dump_set(D))


# -- normalize ----------------------------------------------------------------

def cmd_normalize(args, out):
    D = _read_set(args.input)
    if args.kind in ("shift", "space"):
        image, record = (normalize.shift_positive(D) if args.kind == "shift"
                         else normalize.space_out(D))
        out.text(dump_set(image))
        if args.map:
            out.json({"source": _fmt_all(record.source), "target": _fmt_all(record.target)}, args.map)
    elif args.kind == "isolate":
        out.text(dump_set(normalize.isolate(D, _need(args.eps, "--eps"))))
    else:
        eps = _need(args.eps, "--eps")
        samples = normalize.closedize(D, eps, args.schedule)
        if args.format == "json":
            out.json({"eps": format_rational(eps),
                      "samples": [{"delta": format_rational(d), "g": format_rational(g)} for d, g in samples]})
        else:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["delta", "g"])
            w.writerows([format_rational(d), format_rational(g)] for d, g in samples)
            out.text(buf.getvalue(), comment=None)


def _need(value, flag):
    if value is None:
        raise argparse.ArgumentTypeError(f"{flag} is required here")
    return value


# -- encode / decode / tuple --------------------------------------------------

def cmd_encode(args, out):
    D = _read_set(args.input)
    out.json(enc_mod.encode(D).to_json())


def cmd_decode(args, out):
    enc = enc_mod.Encoding.from_json(_read_json(args.encoding))
    if args.x is not None:
        out.text(format_rational(enc_mod.decode(enc, args.x)) + "\n", comment=None)
    else:
        image = DiscreteSet.of(set(enc_mod.decode(enc, x) for x in enc.E))
        out.text(dump_set(image))
        if image != DiscreteSet(enc.D.elements, positive_only=image.positive_only):
            raise CheckFailed("decoded image differs from D")


def cmd_tuple(args, out):
    D = _read_set(args.input)
    image, record = tupling.tuple_encode(D, args.n)
    out.text(dump_set(image))
    if args.map:
        out.json({"tuples": [_fmt_all(t) for t in record.source],
                  "points": _fmt_all(record.target)}, args.map)


# -- extraction ---------------------------------------------------------------

def cmd_extract_w(args, out):
    D = _read_set(args.input)
    family = extraction.gap_family(D, extraction.sliding_windows(D, args.span), args.unit,
                                   negate=args.negate)
    schedule = args.schedule or [Fraction(1, 4), Fraction(1, 8), Fraction(1, 16)]
    verdict, witnesses = extraction.w_test(family, args.c, schedule)
    obj = {
        "c": format_rational(args.c),
        "verdict": verdict,
        "witnesses": [{"eps": format_rational(e), "b": None if b is None else _fmt_all(b)}
                      for e, b in witnesses],
    }
    lines = [f"c = {format_rational(args.c)}: {'in' if verdict else 'not in'} W"]
    lines += [f"  eps {format_rational(e)}: " + ("no witness" if b is None else "b = (" + ", ".join(_fmt_all(b)) + ")")
              for e, b in witnesses]
    out.report(obj, lines)
    if args.family:
        out.json(family.to_json(), args.family)


# -- ladders, levels, windows, certificates -------------------------------------

def cmd_ladder(args, out):
    if args.kind == "plant":
        _write_planted(out, args.depth, args.scheme, args.output)
        return
    D, f = _read_set(args.set), _read_fn(args.fn)
    if args.kind == "build":
        ladder = integers.build_ladder(D, f, args.depth)
        out.json(ladder.to_json())
        return
    ladder = integers.Ladder.from_json(_read_json(args.ladder))
    report = integers.verify_ladder(D, f, ladder)
    out.report({"valid": report.valid,
                "violations": [{"condition": v.condition, "detail": v.detail} for v in report.violations]},
               str(report).splitlines())
    if not report.valid:
        raise CheckFailed("ladder verification failed")


def cmd_level(args, out):
    obj = _read_json(args.ladder)
    ladder = integers.Ladder.from_json(obj)
    depth = args.depth or ladder.depth
    c = integers.pick_level(ladder, depth)
    out.report({"depth": depth, "level": format_rational(c)}, [format_rational(c)])


def cmd_windows(args, out):
    D, f = _read_set(args.set), _read_fn(args.fn)
    obj = _read_json(args.ladder)
    ladder = integers.Ladder.from_json(obj)
    is_cert = "fiber" in obj
    depth = args.depth or (int(obj["N"]) + int(obj["n"]) if is_cert else ladder.depth)
    if args.level is not None:
        c = args.level
    elif "level" in obj:
        c = parse_rational(obj["level"])
    else:
        c = integers.pick_level(ladder, depth)
    report = integers.window_check(D, f, c, ladder, depth)
    problems = report.failures()
    if is_cert:
        cert = integers.ExtractionCertificate.from_json(obj)
        problems += integers.verify_certificate(cert)
        fresh = integers.extract_integers(D, f, cert.n, cert.eps, ladder=ladder)
        if fresh.fiber != cert.fiber or fresh.windows != cert.windows:
            problems.append("recomputed fiber or windows differ from the certificate")
    rows = [w.to_json() for w in report.windows]
    if args.csv:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["m", "nu", "lo", "hi"], lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        Path(args.csv).write_text(buf.getvalue(), encoding="utf-8")
    lines = [f"level {format_rational(c)}, depth {depth}"]
    lines += [f"  m={r['m']}: nu in ({r['lo']}, {r['hi']}) " + ("ok" if w.holds() else "FAIL")
              for r, w in zip(rows, report.windows)]
    lines += ["valid" if not problems else "invalid"] + [f"  {p}" for p in problems]
    out.report({"level": format_rational(c), "depth": depth, "windows": rows,
                "valid": not problems, "problems": problems}, lines)
    if problems:
        raise CheckFailed("window check failed")


def cmd_extract_int(args, out):
    D, f = _read_set(args.set), _read_fn(args.fn)
    ladder = integers.Ladder.from_json(_read_json(args.ladder)) if args.ladder else None
    cert = integers.extract_integers(D, f, args.n, _need(args.eps, "--eps"), ladder=ladder)
    out.json(cert.to_json())
    problems = integers.verify_certificate(cert)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        raise CheckFailed("certificate does not verify")


def cmd_eval(args, out):
    phi, structure = dsl.load_formula_file(args.input)
    env = {}
    for binding in args.bind:
        name, _, value = binding.partition("=")
        env[name.strip()] = parse_rational(value)
    verdict = dsl.eval_formula(phi, env, structure)
    out.report({"value": verdict}, ["true" if verdict else "false"])


# -- argument wiring ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input")
    common.add_argument("--output")
    common.add_argument("--eps", type=_rational)
    common.add_argument("--depth", type=int)
    common.add_argument("--schedule", type=_rational_list)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timestamp", action="store_true")

    p = _Parser(prog="discretez", description="Exact constructions for defining the integers from discrete sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common])
    g.add_argument("kind", choices=["two-subgroups", "planted-ladder", "arithmetic"])
    g.add_argument("--alpha", type=_rational)
    g.add_argument("--beta", type=_rational)
    g.add_argument("--exp", type=int, default=8)
    g.add_argument("--scheme", choices=["dyadic", "compact"], default="dyadic")
    g.add_argument("--unit", type=_rational, default=Fraction(1))
    g.add_argument("--count", type=int, default=50)
    g.add_argument("--perturb", action="store_true")
    g.set_defaults(func=cmd_gen)

    n = sub.add_parser("normalize", parents=[common])
    n.add_argument("kind", choices=["shift", "space", "isolate", "closedize"])
    n.add_argument("--map", help="write the element map as JSON here")
    n.set_defaults(func=cmd_normalize)

    e = sub.add_parser("encode", parents=[common])
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", parents=[common])
    d.add_argument("--encoding", required=True)
    d.add_argument("--x", type=_rational)
    d.set_defaults(func=cmd_decode)

    t = sub.add_parser("tuple", parents=[common])
    t.add_argument("--n", type=int, default=2)
    t.add_argument("--map")
    t.set_defaults(func=cmd_tuple)

    w = sub.add_parser("extract-w", parents=[common])
    w.add_argument("--unit", type=_rational, required=True)
    w.add_argument("--c", type=_rational, required=True)
    w.add_argument("--span", type=int, default=2)
    w.add_argument("--negate", action="store_true")
    w.add_argument("--family", help="write the ruler family JSON here")
    w.set_defaults(func=cmd_extract_w)

    lad = sub.add_parser("ladder", parents=[common])
    lad.add_argument("kind", choices=["build", "verify", "plant"])
    lad.add_argument("--set")
    lad.add_argument("--fn")
    lad.add_argument("--ladder")
    lad.add_argument("--scheme", choices=["dyadic", "compact"], default="dyadic")
    lad.set_defaults(func=cmd_ladder)

    lv = sub.add_parser("level", parents=[common])
    lv.add_argument("--ladder", required=True)
    lv.set_defaults(func=cmd_level)

    win = sub.add_parser("windows", parents=[common])
    win.add_argument("--set", required=True)
    win.add_argument("--fn", required=True)
    win.add_argument("--ladder", required=True)
    win.add_argument("--level", type=_rational)
    win.add_argument("--csv")
    win.set_defaults(func=cmd_windows)

    x = sub.add_parser("extract-int", parents=[common])
    x.add_argument("--set", required=True)
    x.add_argument("--fn", required=True)
    x.add_argument("--n", type=int, default=1)
    x.add_argument("--ladder")
    x.set_defaults(func=cmd_extract_int)

    ev = sub.add_parser("eval", parents=[common])
    ev.add_argument("--bind", action="append", default=[], metavar="NAME=RATIONAL")
    ev.set_defaults(func=cmd_eval)
    return p


def _require(args):
    need = {
        ("gen", "two-subgroups"): ["alpha", "beta"],
        ("gen", "planted-ladder"): ["depth"],
        ("ladder", "plant"): ["depth"],
        ("ladder", "build"): ["set", "fn", "depth"],
        ("ladder", "verify"): ["set", "fn", "ladder"],
    }.get((args.command, getattr(args, "kind", None)), [])
    if args.command in ("normalize", "encode", "tuple", "extract-w", "eval"):
        need = need + ["input"]
    return [n for n in need if getattr(args, n, None) is None]


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    missing = _require(args)
    if missing:
        parser.print_usage(sys.stderr)
        print(f"missing required option(s): {', '.join('--' + m for m in missing)}", file=sys.stderr)
        return EXIT_USAGE
    out = _Out(args)
    try:
        args.func(args, out)
    except (CheckFailed, InsufficientDensityError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (DiscreteZError, argparse.ArgumentTypeError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
