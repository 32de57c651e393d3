"""Command line front end.

Exit codes: 0 success (or Iso / Equal), 1 NotIso / NotEqual, 2 Unknown,
3 input outside the class a method handles (for example not a polycephaly
graph), 64 usage error, 65 unreadable or malformed input.
"""

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .colimit import bratteli, colimit_presentation, is_strongly_graded
from .graded import k0_graded_polycephaly
from .graph import GraphError, hereditary_saturated_sets, load_graph
from .iso import (
    ShiftVector,
    Verdict,
    decide_free_module_iso,
    decide_graded_iso,
    decide_matrix_leavitt_iso,
)
from .k0 import k0_nongraded
from .monoid import MonoidElement, MonoidVerdict, default_budget, monoid_equal
from .polycephaly import NotPolycephaly, classify, decomposition_report, format_report

SCHEMA = 1
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOT_APPLICABLE = 3
VERDICT_EXIT = {Verdict.ISO: 0, Verdict.NOT_ISO: 1, Verdict.UNKNOWN: 2}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _digest(path):
    return {"path": str(path), "sha256": hashlib.sha256(Path(path).read_bytes()).hexdigest()}


def _load(path):
    try:
        return load_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _shifts(text):
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("()").split(",") if x != "")
    except ValueError:
        raise InputError(f"cannot read shift list {text!r}") from None


# Each command returns (exit code, JSON payload, text).

def cmd_classify(g, args):
    d = classify(g)
    if isinstance(d, NotPolycephaly):
        return EXIT_NOT_APPLICABLE, {"polycephaly": False, **d.to_json()}, str(d)
    lines = ["polycephaly graph"]
    for h in d.heads:
        extra = (f" cycle {'->'.join(h.cycle)}" if h.cycle else
                 f" petals {h.petals}" if h.petals else "")
        lines.append(f"  {h.kind.value} at {h.vertex}{extra}: lengths {list(h.lengths)}")
    return 0, {"polycephaly": True, "heads": [h.to_json() for h in d.heads]}, "\n".join(lines)


def cmd_decompose(g, args):
    d = classify(g)
    if isinstance(d, NotPolycephaly):
        return EXIT_NOT_APPLICABLE, {"polycephaly": False, **d.to_json()}, str(d)
    blocks = decomposition_report(d)
    text = format_report(blocks)
    return 0, {"polycephaly": True, "blocks": [b.to_json() for b in blocks], "text": text}, text


def cmd_k0(g, args):
    grp = k0_nongraded(g)
    return 0, grp.to_json(), str(grp)


def cmd_k0gr(g, args):
    if args.colimit:
        if not is_strongly_graded(g):
            msg = "graph has sinks; the direct-limit description needs a sink-free graph"
            return EXIT_NOT_APPLICABLE, {"error": msg}, msg
        pres = colimit_presentation(g)
        levels = bratteli(g, args.depth)
        lines = [str(pres), "", "depth  " + "  ".join(g.vertices)]
        lines += [f"{lv.depth:>5}  " + "  ".join(str(lv.sizes[v]) for v in g.vertices)
                  for lv in levels]
        payload = {"presentation": pres.to_json(), "bratteli": [lv.to_json() for lv in levels]}
        return 0, payload, "\n".join(lines)
    d = classify(g)
    if isinstance(d, NotPolycephaly):
        msg = f"{d}; try --colimit"
        return EXIT_NOT_APPLICABLE, {"polycephaly": False, **d.to_json()}, msg
    mod = k0_graded_polycephaly(d)
    return 0, {"components": [c.to_json() for c in mod.components]}, str(mod)


def cmd_bratteli(g, args):
    levels = bratteli(g, args.depth)
    lines = ["depth  " + "  ".join(g.vertices) + "  total"]
    for lv in levels:
        lines.append(f"{lv.depth:>5}  " + "  ".join(str(lv.sizes[v]) for v in g.vertices)
                     + f"  {lv.total_dimension}")
    return 0, {"levels": [lv.to_json() for lv in levels]}, "\n".join(lines)


def cmd_hsets(g, args):
    try:
        sets = hereditary_saturated_sets(g, cap=args.cap)
    except GraphError as exc:
        return EXIT_NOT_APPLICABLE, {"error": str(exc)}, str(exc)
    ordered = [sorted(H, key=g.index.get) for H in sets]
    text = "\n".join("{" + ", ".join(H) + "}" for H in ordered)
    return 0, {"sets": ordered}, text


def cmd_monoid_eq(g, args):
    try:
        a = MonoidElement.parse(g, args.a)
        b = MonoidElement.parse(g, args.b)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    budget = args.budget if args.budget is not None else default_budget()
    res = monoid_equal(g, a, b, budget)
    code = {MonoidVerdict.EQUAL: 0, MonoidVerdict.NOT_EQUAL: 1, MonoidVerdict.UNKNOWN: 2}
    payload = {"verdict": res.verdict.value, "explored": res.explored, "budget": budget}
    text = f"{res.verdict.value} (explored {res.explored} states)"
    if res.meeting is not None:
        payload["meeting"] = res.meeting.format(g)
        text += f"; common element {res.meeting.format(g)}"
    return code[res.verdict], payload, text


def _single(handler):
    def run(args):
        if args.batch:
            return _batch(handler, args)
        if not args.file:
            raise UsageError("a graph file or --batch DIR is required")
        g = _load(args.file)
        code, payload, text = handler(g, args)
        return code, [_digest(args.file)], payload, text
    return run


def _batch(handler, args):
    root = Path(args.batch)
    if not root.is_dir():
        raise UsageError(f"{root} is not a directory")
    files = sorted(p for p in root.iterdir() if p.suffix in (".graph", ".json"))

    def one(path):
        try:
            code, payload, text = handler(_load(path), args)
        except InputError as exc:
            code, payload, text = EXIT_DATA, {"error": str(exc)}, str(exc)
        return path, code, payload, text

    with ThreadPoolExecutor() as pool:
        results = list(pool.map(one, files))
    payload = [{"input": _digest(p), "exit": c, "result": r} for p, c, r, _ in results]
    text = "\n".join(f"== {p.name}\n{t}" for p, _, _, t in results)
    code = max((c for _, c, _, _ in results), default=0)
    return code, [_digest(p) for p in files], payload, text


def run_iso(args):
    ga, gb = _load(args.a), _load(args.b)
    da, db = classify(ga), classify(gb)
    digests = [_digest(args.a), _digest(args.b)]
    for path, d in ((args.a, da), (args.b, db)):
        if isinstance(d, NotPolycephaly):
            msg = f"{path}: {d}"
            return EXIT_NOT_APPLICABLE, digests, {"verdict": None, "error": msg}, msg
    ma, mb = k0_graded_polycephaly(da), k0_graded_polycephaly(db)
    v = decide_graded_iso(ma, mb)
    text = f"{v.verdict.value}: {v.reason}"
    if args.certificate and v.matches:
        lines = [text]
        for m in v.matches:
            lines.append(f"  {m.kind.value} head {m.left} ({ma.components[m.left].vertex}) -> "
                         f"{m.right} ({mb.components[m.right].vertex}), witness j={m.shift}")
        text = "\n".join(lines)
    return VERDICT_EXIT[v.verdict], digests, v.to_json(), text


def _shift_pair(args):
    try:
        return ShiftVector(args.n, _shifts(args.a)), ShiftVector(args.n, _shifts(args.b))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def run_matrix_iso(args):
    a, b = _shift_pair(args)
    v = decide_matrix_leavitt_iso(a, b)
    text = f"{v.verdict.value}: {v.reason}"
    if v.witness is not None:
        text += f" (j={v.witness})"
    return VERDICT_EXIT[v.verdict], [], v.to_json(), text


def run_free_iso(args):
    a, b = _shift_pair(args)
    v = decide_free_module_iso(a, b)
    return VERDICT_EXIT[v.verdict], [], v.to_json(), f"{v.verdict.value}: {v.reason}"


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON report")
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                        help="include wall-clock timing in JSON reports")

    parser = _Parser(prog="lpa-grkit",
                     description="Graded invariants of Leavitt path algebras of finite graphs.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def file_command(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", nargs="?", help="graph file (.graph text or .json)")
        p.add_argument("--batch", metavar="DIR", help="process every graph file in DIR")
        p.set_defaults(run=_single(handler))
        return p

    file_command("classify", cmd_classify, "test whether a graph is polycephaly")
    file_command("decompose", cmd_decompose, "graded matrix decomposition")
    file_command("k0", cmd_k0, "Grothendieck group")
    p = file_command("k0gr", cmd_k0gr, "graded Grothendieck group with order unit")
    p.add_argument("--colimit", action="store_true", help="use the direct-limit description")
    p.add_argument("--depth", type=int, default=6, help="Bratteli depth (default 6)")
    p = file_command("bratteli", cmd_bratteli, "Bratteli diagram block sizes")
    p.add_argument("--depth", type=int, default=6)
    p = file_command("hsets", cmd_hsets, "hereditary saturated vertex sets")
    p.add_argument("--cap", type=int, default=20, help="largest vertex count to enumerate")

    p = sub.add_parser("iso", parents=[common], help="graded isomorphism of two polycephaly graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--certificate", action="store_true", help="print the head matching")
    p.set_defaults(run=run_iso)

    for name, runner, help_text in (
        ("matrix-iso", run_matrix_iso, "is M_k(L_n)(shifts) graded isomorphic to M_k'(L_n)(shifts')"),
        ("free-iso", run_free_iso, "are two graded free L_n-modules isomorphic"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text,
                           epilog="shift lists are comma separated, e.g. 0,1,1; "
                                  "put -- before lists that start with a minus sign")
        p.add_argument("n", type=int, help="number of petals")
        p.add_argument("a", help="shifts, e.g. 0,1,1")
        p.add_argument("b", help="shifts, e.g. 0,1,2,2")
        p.set_defaults(run=runner)

    p = sub.add_parser("monoid-eq", parents=[common], help="equality in the graph monoid")
    p.add_argument("file")
    p.add_argument("a", help="multiset such as u+v+v")
    p.add_argument("b")
    p.add_argument("--budget", type=int, help="explored-state budget")
    p.set_defaults(run=_monoid_runner)
    return parser


def _monoid_runner(args):
    g = _load(args.file)
    code, payload, text = cmd_monoid_eq(g, args)
    return code, [_digest(args.file)], payload, text


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a command is required; see --help")
        start = time.perf_counter()
        code, inputs, payload, text = args.run(args)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_DATA
    if getattr(args, "json", False):
        report = {"schema": SCHEMA, "command": args.command, "inputs": inputs,
                  "exit": code, "result": payload}
        if getattr(args, "timing", False):
            report["timing"] = {"seconds": round(elapsed, 6)}
        print(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False), file=out)
    else:
        print(text, file=out)
    return code


def main():
    try:
        code = run()
    except SystemExit as exc:
        # --help exits through argparse
        code = exc.code if isinstance(exc.code, int) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
