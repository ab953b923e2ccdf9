"""Command-line interface.

Exit codes, for every subcommand:

    0  provable / success / true
    1  unprovable / false
    2  malformed input or a violated precondition
    3  unresolved (budget or world bound exhausted)
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from importlib import resources
from typing import Any, Iterator

from .decide import Decider, Logic, Verdict
from .semantics.models import FragmentError
from .syntax import ParseError, parse

EXIT_PROVABLE, EXIT_UNPROVABLE, EXIT_ERROR, EXIT_UNRESOLVED = 0, 1, 2, 3
BUDGET_ENV = "ROSSERLOG_BUDGET"


class UsageError(Exception):
    pass


def _budget(args) -> int | None:
    if getattr(args, "budget", None) is not None:
        return args.budget
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}")


def _formula(text: str):
    try:
        return parse(text)
    except ParseError as e:
        raise UsageError(f"parse error: {e}")


def _emit(args, payload: dict[str, Any], human: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _verdict_code(v: Verdict) -> int:
    return {Verdict.PROVABLE: EXIT_PROVABLE, Verdict.UNPROVABLE: EXIT_UNPROVABLE,
            Verdict.UNRESOLVED: EXIT_UNRESOLVED}[v]


# -- subcommands -------------------------------------------------------------

def cmd_decide(args) -> int:
    logic = Logic.parse(args.logic)
    f = _formula(args.formula)
    out = Decider(budget=_budget(args)).decide(logic, f)
    _emit(args, out.to_json(), out.verdict.value)
    return _verdict_code(out.verdict)


def cmd_countermodel(args) -> int:
    from .countermodel import PreconditionError, Unresolved, gl_countermodel, gr_countermodel, gro_countermodel
    logic = Logic.parse(args.logic)
    f = _formula(args.formula)
    dec = Decider(budget=_budget(args))
    try:
        if logic is Logic.GL:
            cert = gl_countermodel(f, dec)
        elif logic in (Logic.GRCirc, Logic.N):
            cert = gro_countermodel(f, args.max_worlds, dec)
        elif logic in (Logic.GR, Logic.NR):
            cert = gr_countermodel(f, args.max_worlds, dec)
        else:
            raise UsageError(f"countermodels are produced for gl, n, nr, grcirc and gr, not {logic.value}")
    except PreconditionError as e:
        raise UsageError(str(e))
    if cert is None or isinstance(cert, Unresolved):
        payload = cert.to_json() if cert is not None else {"verdict": "unresolved"}
        _emit(args, payload, "unresolved" + (f": {cert.reason}" if cert is not None else ""))
        return EXIT_UNRESOLVED
    # the certificate JSON is the output in both modes
    print(json.dumps(cert.to_json(), sort_keys=True, indent=None if args.json else 2))
    return EXIT_PROVABLE


def cmd_interpolate(args) -> int:
    from .countermodel import Unresolved
    from .interpolate import PreconditionError, lyndon_interpolant
    a, b = _formula(args.left), _formula(args.right)
    budget = args.budget if args.budget is not None else 10_000
    try:
        rep = lyndon_interpolant(args.logic, a, b, budget=budget, mode=args.mode, decider=Decider())
    except PreconditionError as e:
        raise UsageError(str(e))
    if isinstance(rep, Unresolved):
        _emit(args, rep.to_json(), f"unresolved: {rep.reason}")
        return EXIT_UNRESOLVED
    lines = [rep.interpolant.text] + [f"  {o.description}: {o.verdict}" for o in rep.obligations]
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_PROVABLE if rep.ok else EXIT_UNPROVABLE


def cmd_uniform(args) -> int:
    from .interpolate import uniform
    a = _formula(args.formula)
    forget = [x.strip() for x in (args.forget or "").split(",") if x.strip()]
    rep = uniform(args.logic, a, forget, args.depth, args.size_cap, Decider(budget=_budget(args)),
                  verify=not args.no_verify)
    lines = [rep.candidate.text] + [f"  {d}: {'ok' if ok else 'FAILED'}" for d, ok in rep.obligations]
    if rep.evidence is not None:
        ev = rep.evidence
        lines.append(f"  clause 3 (depth <= {ev.depth}, size <= {ev.size_cap}): "
                     f"{ev.tested} tested, {ev.consequences} consequences, {len(ev.failures)} failures")
    _emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_PROVABLE if rep.ok else EXIT_UNPROVABLE


def cmd_translate(args) -> int:
    from .syntax import dagger, psi
    f = _formula(args.formula)
    dec = Decider(budget=_budget(args))
    if args.which == "dagger":
        out = dagger(f)
    elif args.which == "top":
        out = dec.top(f)
    elif args.which == "theta":
        out = dec.theta(f)
    elif args.which == "psi":
        out = psi(f)
    else:  # argparse restricts choices; kept for direct callers
        raise UsageError(f"unknown translation {args.which!r}")
    _emit(args, {"which": args.which, "input": f.text, "output": out.text}, out.text)
    return EXIT_PROVABLE


def cmd_check_model(args) -> int:
    from .semantics import InvalidFrameError, ModelFormatError, evaluate, model_from_json, world_id
    from .semantics.models import UnknownWorldError
    try:
        with open(args.file, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read model: {e}")
    try:
        m = model_from_json(obj)
    except (ModelFormatError, InvalidFrameError) as e:
        raise UsageError(f"invalid model: {e}")
    f = _formula(args.formula)
    try:
        w = world_id(obj, args.world)
        value = evaluate(m, w, f)
    except (UnknownWorldError, KeyError, ValueError) as e:
        raise UsageError(f"unknown world {args.world!r}: {e}")
    _emit(args, {"formula": f.text, "world": args.world, "value": value}, "true" if value else "false")
    return EXIT_PROVABLE if value else EXIT_UNPROVABLE


def cmd_gen(args) -> int:
    import random
    from .semantics import model_to_json, random_formula, random_frame, random_model
    rng = random.Random(args.seed)
    rows = []
    for _ in range(args.count):
        if args.frames:
            m = random_model(rng, args.size, ("p", "q"), serial=args.serial)
            rows.append(model_to_json(m))
        else:
            rows.append(random_formula(rng, args.size).text)
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        for r in rows:
            print(json.dumps(r, sort_keys=True) if args.frames else r)
    return EXIT_PROVABLE


# "#{" opens an indexed atom, any other "#" a comment
_COMMENT = re.compile(r"#(?!\{)")


def read_corpus(text: str, default_logic: str = "gl") -> Iterator[tuple[int, Logic, str]]:
    """Lines of a corpus: ``#`` starts a comment, ``@logic`` prefixes a line."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.split(raw, 1)[0].strip()
        if not line:
            continue
        logic = default_logic
        if line.startswith("@"):
            head, _, rest = line.partition(" ")
            logic, line = head[1:], rest.strip()
        yield lineno, Logic.parse(logic), line


def bundled_corpus() -> str:
    return resources.files("rosserlog").joinpath("data/corpus.txt").read_text(encoding="utf-8")


def cmd_bench(args) -> int:
    if args.corpus in (None, "-bundled"):
        text = bundled_corpus()
    else:
        try:
            with open(args.corpus, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise UsageError(f"cannot read corpus: {e}")
    rows = []
    budget = _budget(args)
    for lineno, logic, src in read_corpus(text, args.logic):
        f = _formula(src)
        dec = Decider(budget=budget)  # fresh cache per line, so timings are comparable
        t0 = time.perf_counter()
        try:
            verdict = dec.decide(logic, f).verdict.value
        except FragmentError as e:
            verdict = f"error: {e}"
        rows.append({"line": lineno, "logic": logic.value, "formula": f.text, "verdict": verdict,
                     "seconds": round(time.perf_counter() - t0, 6)})
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            _write_csv(fh, rows)
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        buf = io.StringIO()
        _write_csv(buf, rows)
        sys.stdout.write(buf.getvalue())
    return EXIT_PROVABLE


def _write_csv(fh, rows):
    w = csv.DictWriter(fh, fieldnames=["line", "logic", "formula", "verdict", "seconds"])
    w.writeheader()
    w.writerows(rows)


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rosserlog", description="Decide, refute and interpolate in GL and the Rosser logics.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    logics = [lg.value for lg in Logic]

    sp = add("decide", cmd_decide, "decide provability")
    sp.add_argument("--logic", default="gl", help=f"one of {logics}")
    sp.add_argument("--budget", type=int, help="GL tableau node budget")
    sp.add_argument("formula")

    sp = add("countermodel", cmd_countermodel, "print a verified countermodel")
    sp.add_argument("--logic", default="gl")
    sp.add_argument("--max-worlds", type=int, default=8)
    sp.add_argument("--budget", type=int)
    sp.add_argument("formula")

    sp = add("interpolate", cmd_interpolate, "Lyndon or Craig interpolant of A -> B")
    sp.add_argument("--logic", default="gl")
    sp.add_argument("--mode", choices=["lyndon", "craig"], default="lyndon")
    sp.add_argument("--budget", type=int, help="candidate budget (default 10000)")
    sp.add_argument("left", metavar="A")
    sp.add_argument("right", metavar="B")

    sp = add("uniform", cmd_uniform, "bounded uniform interpolant")
    sp.add_argument("--logic", default="gl")
    sp.add_argument("--forget", default="", help="comma separated variables")
    sp.add_argument("--depth", type=int, help="modal depth bound (default: depth of A)")
    sp.add_argument("--size-cap", type=int, default=9)
    sp.add_argument("--no-verify", action="store_true", help="skip the clause-3 sweep")
    sp.add_argument("--budget", type=int)
    sp.add_argument("formula")

    sp = add("translate", cmd_translate, "apply a translation")
    sp.add_argument("--which", choices=["dagger", "top", "theta", "psi"], required=True)
    sp.add_argument("--budget", type=int)
    sp.add_argument("formula")

    sp = add("check-model", cmd_check_model, "evaluate a formula in a JSON model")
    sp.add_argument("file")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--world", required=True)

    sp = add("gen", cmd_gen, "generate random frames or formulas")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--frames", action="store_true")
    g.add_argument("--formulas", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=4, help="worlds per frame or nodes per formula")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--serial", action="store_true", help="frames: make every Rosser relation serial")

    sp = add("bench", cmd_bench, "decide every line of a corpus")
    sp.add_argument("corpus", nargs="?", help="corpus file (default: the bundled corpus)")
    sp.add_argument("--logic", default="gl", help="logic for lines without an @logic directive")
    sp.add_argument("--csv", help="also write the table to this CSV file")
    sp.add_argument("--budget", type=int)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on bad usage already; keep --help at 0
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (UsageError, FragmentError, ValueError) as e:
        print(f"rosserlog: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
