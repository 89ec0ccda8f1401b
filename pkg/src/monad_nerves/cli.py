"""Command-line front end: ``monad-nerves <command> ...``.

Exit codes: 0 pass, 1 a required check failed, 2 parse or structural
error, 3 inconclusive (a search ran past its bound).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .fincat import validate_category
from .io import ParseError, file_digest, load, load_file, save
from .monad import (
    kleisli_category,
    validate_distributive_law,
    validate_kl_2cell,
    validate_monad,
    validate_monad_2cell,
    validate_monad_morphism,
)
from .double import transpose, validate_double_category, validate_triple_category
from .report import FAIL, INCONCLUSIVE, PASS, Budget, CheckResult, overall_status, result_from
from .nerve import checks
from .nerve.construct import ClosureViolation, nerve_double_category
from .nerve.theory import BUILTIN, theory_from_tag

SCHEMA = 1
WORKERS_ENV = "MONAD_NERVES_WORKERS"
EXIT = {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}

VALIDATORS = {
    "category": validate_category,
    "monad": validate_monad,
    "monad_morphism": validate_monad_morphism,
    "kl_2cell": validate_kl_2cell,
    "monad_2cell": validate_monad_2cell,
    "distributive_law": validate_distributive_law,
    "double_category": validate_double_category,
    "triple_category": validate_triple_category,
}


class Report:
    def __init__(self, command, inputs, bound=None):
        self.command = command
        self.inputs = inputs
        self.bound = bound
        self.results = []
        self.structural = False
        self.outputs = []

    def add(self, results):
        for r in results if isinstance(results, list) else [results]:
            self.results.append(r)
            if r.required and r.status == FAIL and any(getattr(w, "structural", False) for w in r.witnesses):
                self.structural = True

    @property
    def status(self):
        return overall_status(self.results)

    def exit_code(self):
        if self.structural:
            return 2
        return EXIT[self.status]

    def as_dict(self):
        out = {
            "tool": "monad-nerves",
            "version": __version__,
            "schema": SCHEMA,
            "command": self.command,
            "inputs": [{"path": p, "sha256": file_digest(p)} for p in self.inputs],
        }
        if self.bound is not None:
            out["bound"] = self.bound
        if self.outputs:
            out["outputs"] = self.outputs
        out["results"] = [r.as_dict() for r in sorted(self.results, key=lambda r: r.check)]
        out["status"] = self.status
        out["exit"] = self.exit_code()
        return out

    def render(self, fmt):
        data = self.as_dict()
        if fmt == "machine":
            return json.dumps(data, indent=1, sort_keys=False)
        lines = [f"{data['command']} (monad-nerves {data['version']})"]
        if self.bound is not None:
            lines.append(f"search bound: {self.bound} candidate evaluations")
        for r in data["results"]:
            flag = "" if r["required"] else " (not required)"
            note = f"  [{r['note']}]" if r["note"] else ""
            lines.append(f"{r['status'].upper():13s}{r['check']}{flag}{note}")
            for w in r["witnesses"][:20]:
                lines.append(f"    {w}")
            if len(r["witnesses"]) > 20:
                lines.append(f"    ... {len(r['witnesses']) - 20} more")
        for path in self.outputs:
            lines.append(f"wrote {path}")
        lines.append(f"overall: {data['status']}")
        return "\n".join(lines)


def _workers():
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ParseError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _run_tasks(tasks):
    """Run ``(function, args)`` tasks, in worker processes when asked to."""
    n = _workers()
    if n == 1 or len(tasks) < 2:
        return [f(*a) for f, a in tasks]
    with ProcessPoolExecutor(max_workers=n) as pool:
        futures = [pool.submit(f, *a) for f, a in tasks]
        return [fut.result() for fut in futures]


def _theory(args):
    if getattr(args, "theory_file", None):
        return load(args.theory_file, "theory")
    return theory_from_tag(args.theory)


def _monad_ok(report, label, m):
    r = result_from(f"input/{label}", validate_monad(m))
    report.add(r)
    return r.passed


# -- commands -----------------------------------------------------------------


def cmd_validate(args):
    kind, obj = load_file(args.file)
    report = Report("validate", [args.file])
    report.add(result_from(f"validate/{kind}", VALIDATORS[kind](obj) if kind in VALIDATORS else []))
    return report


def cmd_kleisli(args):
    m = load(args.monad, "monad")
    report = Report("kleisli", [args.monad])
    if _monad_ok(report, "monad", m):
        kl = kleisli_category(m)
        report.add(result_from("kleisli/category", validate_category(kl)))
        if args.out:
            save(kl, args.out)
            report.outputs.append(args.out)
    return report


def cmd_nerve(args):
    theory = theory_from_tag(args.theory)
    m = load(args.monad, "monad")
    report = Report("nerve", [args.monad])
    if not _monad_ok(report, "monad", m):
        return report
    try:
        d = nerve_double_category(theory, m)
    except ClosureViolation as exc:
        report.add(CheckResult(f"{theory.name}/nerve-closure", FAIL, [exc], True, str(exc)))
        return report
    report.add(result_from(f"{theory.name}/double-category", validate_double_category(d)))
    report.add(checks.check_theorem_axioms(theory, m))
    if args.transpose:
        d = transpose(d)
    save(d, args.out)
    report.outputs.append(args.out)
    return report


def cmd_axioms(args):
    m = load(args.monad, "monad")
    inputs = [args.monad] + ([args.theory_file] if args.theory_file else [])
    report = Report("axioms", inputs)
    if not _monad_ok(report, "monad", m):
        return report
    if args.theory == "all" and not args.theory_file:
        tasks = [(checks.check_theorem_axioms, (theory_from_tag(t), m)) for t in BUILTIN]
        for res in _run_tasks(tasks):
            report.add(res)
    else:
        report.add(checks.check_theorem_axioms(_theory(args), m))
    return report


def cmd_closure(args):
    theory = theory_from_tag(args.theory)
    paths = [args.P, args.Q, args.R]
    P, Q, R = (load(p, "monad") for p in paths)
    report = Report("closure", paths, args.bound)
    if not all(_monad_ok(report, name, m) for name, m in zip("PQR", (P, Q, R))):
        return report
    tasks = [(checks.check_vertical_closure, (theory, m)) for m in (P, Q, R)]
    tasks += [
        (checks.check_whisker_closure, (theory, P, Q, Budget(args.bound))),
        (checks.check_whisker_closure, (theory, Q, R, Budget(args.bound))),
        (checks.check_horizontal_closure, (theory, P, Q, R, Budget(args.bound))),
    ]
    labels = ["P", "Q", "R", "P->Q", "Q->R", "P->Q->R"]
    for label, res in zip(labels, _run_tasks(tasks)):
        res.check = f"{res.check}[{label}]"
        report.add(res)
    return report


def cmd_faithful(args):
    theory = theory_from_tag(args.theory)
    P, Q = load(args.P, "monad"), load(args.Q, "monad")
    report = Report("faithful", [args.P, args.Q], args.bound)
    if not (_monad_ok(report, "P", P) and _monad_ok(report, "Q", Q)):
        return report
    tasks = [
        (checks.check_faithfulness, (theory, P, Q, Budget(args.bound))),
        (checks.check_round_trip, (theory, P, Q, Budget(args.bound))),
    ]
    if not args.skip_fullness:
        tasks.append((checks.check_fullness_bounded, (theory, P, Q, Budget(args.bound))))
    for res in _run_tasks(tasks):
        report.add(res)
    return report


def cmd_triple(args):
    from .iterate import LiftError, triple_from_distributive_law

    t1, t2 = theory_from_tag(args.theory1), theory_from_tag(args.theory2)
    law = load(args.law, "distributive_law")
    report = Report("triple", [args.law])
    problems = validate_distributive_law(law)
    report.add(result_from("input/distributive-law", problems))
    if problems:
        return report
    try:
        triple, pre = triple_from_distributive_law(t1, t2, law)
    except LiftError as exc:
        report.add(result_from("triple/lift", exc.violations))
        return report
    report.add(pre)
    report.add(result_from("triple/validate", validate_triple_category(triple)))
    save(triple, args.out)
    report.outputs.append(args.out)
    return report


def build_parser():
    p = argparse.ArgumentParser(prog="monad-nerves", description="Check nerve constructions on finite monads.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def theory_arg(sp, allow_all=False):
        choices = "kleisli | embedding | splitepi | multi:<n>" + (" | all" if allow_all else "")
        sp.add_argument("--theory", default="all" if allow_all else "kleisli", help=choices)

    def bound_arg(sp):
        sp.add_argument("--bound", type=int, default=Budget.DEFAULT, help="candidate evaluations (default 10^6)")

    sp = sub.add_parser("validate", help="validate any supported file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("kleisli", help="build the Kleisli category of a monad")
    sp.add_argument("monad")
    sp.add_argument("out", nargs="?")
    sp.set_defaults(func=cmd_kleisli)

    sp = sub.add_parser("nerve", help="build the nerve double category and check the theorem axioms")
    theory_arg(sp)
    sp.add_argument("--transpose", action="store_true")
    sp.add_argument("monad")
    sp.add_argument("out")
    sp.set_defaults(func=cmd_nerve)

    sp = sub.add_parser("axioms", help="run the theorem axiom suite")
    theory_arg(sp, allow_all=True)
    sp.add_argument("--theory-file", help="custom theory description (JSON)")
    sp.add_argument("monad")
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("closure", help="vertical, whiskering and horizontal closure of cells and 2-cells")
    theory_arg(sp)
    bound_arg(sp)
    sp.add_argument("P")
    sp.add_argument("Q")
    sp.add_argument("R")
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("faithful", help="faithfulness, round trip and bounded fullness")
    theory_arg(sp)
    bound_arg(sp)
    sp.add_argument("--skip-fullness", action="store_true")
    sp.add_argument("P")
    sp.add_argument("Q")
    sp.set_defaults(func=cmd_faithful)

    sp = sub.add_parser("triple", help="triple category from a distributive law")
    sp.add_argument("--theory1", default="kleisli")
    sp.add_argument("--theory2", default="kleisli")
    sp.add_argument("law")
    sp.add_argument("out")
    sp.set_defaults(func=cmd_triple)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render(args.format))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
