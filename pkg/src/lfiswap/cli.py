"""Command-line front end.

Exit status: 0 when the consequence holds / the proof is accepted, 1 when a
countermodel is found / the proof is rejected, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import fosem, hilbert, propsem
from .boolalg import powerset_algebra
from .golden import lfi1_mismatches, m5_mismatches
from .parser import ParseError, parse_formula
from .sampling import random_instance
from .swap import SwapNmatrix, format_tables as swap_tables, full_swap, m5
from .syntax import Atom, Eq, children, format_formula
from .twist import TwistMatrix, format_tables as twist_tables, lfi1_matrix, twist_matrix


class UsageError(Exception):
    pass


def select_matrix(sel: str):
    """``m5``, ``lfi1``, ``swap:n`` or ``twist:n``."""
    sel = sel.strip().lower()
    if sel == "m5":
        return m5()
    if sel == "lfi1":
        return lfi1_matrix()
    kind, _, n = sel.partition(":")
    if kind in ("swap", "twist") and n.isdigit():
        A = powerset_algebra(int(n))
        return full_swap(A) if kind == "swap" else twist_matrix(A)
    raise UsageError(f"unknown matrix {sel!r}; use m5, lfi1, swap:N or twist:N")


def _value_json(M, v):
    return M.names.get(v) or v.to_json()


def _emit(args, text: str, data):
    if args.format == "json":
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        print(text)


def _parse_all(texts, **kw):
    return [parse_formula(t, **kw) for t in texts]


# -- subcommands ---------------------------------------------------------------

def cmd_parse(args):
    phi = parse_formula(args.formula, constants=args.const)
    _emit(args, f"{format_formula(phi)}\n{phi!r}", {"formula": format_formula(phi), "ast": repr(phi)})
    return 0


def cmd_tables(args):
    M = select_matrix(args.matrix)
    if isinstance(M, TwistMatrix):
        text = twist_tables(M)
        data = {"values": [M.name(x) for x in M.domain],
                "designated": [M.name(x) for x in M.designated]}
    else:
        text = "condensed (D = designated, ND = non-designated)\n\n" + swap_tables(M, True)
        text += "\nfull output sets\n\n" + swap_tables(M, False)
        data = {"values": [M.name(x) for x in M.domain],
                "designated": [M.name(x) for x in M.designated]}
    data["tables"] = {}
    for op in ("and", "or", "imp"):
        data["tables"][op] = {M.name(x): {M.name(y): _cell(M, M.apply(op, x, y)) for y in M.domain}
                              for x in M.domain}
    for op in ("neg", "cons"):
        data["tables"][op] = {M.name(x): _cell(M, M.apply(op, x)) for x in M.domain}
    _emit(args, text.rstrip(), data)
    return 0


def _cell(M, out):
    if isinstance(M, TwistMatrix):
        return M.name(out)
    return [M.name(z) for z in out]


def _report_prop(args, verdict, M):
    if verdict.holds:
        _emit(args, "holds", {"holds": True})
        return 0
    cm = verdict.countermodel
    if isinstance(M, SwapNmatrix):
        text = "countermodel (" + verdict.note + "):\n" + cm.format()
        data = {"holds": False, "countermodel": cm.to_json()}
    else:
        text = "countermodel (atom map):\n" + "\n".join(f"{k}  ->  {M.name(v)}" for k, v in cm.items())
        data = {"holds": False, "countermodel": {k: _value_json(M, v) for k, v in cm.items()}}
    _emit(args, text, data)
    return 1


def cmd_check_valid(args):
    M = select_matrix(args.matrix)
    phi = parse_formula(args.formula)
    return _report_prop(args, propsem.prop_consequence([], phi, M), M)


def cmd_check_conseq(args):
    M = select_matrix(args.matrix)
    prem = _parse_all(args.premise)
    goal = parse_formula(args.goal)
    return _report_prop(args, propsem.prop_consequence(prem, goal, M), M)


def cmd_fo_eval(args):
    S = fosem.load_model(args.model)
    phi = parse_formula(args.sentence, S.signature)
    M = S.matrix
    if S.kind == "twist":
        rows = []
        xs = fosem._free_list([phi])
        for mu in fosem.assignments(S, xs):
            rows.append((mu, fosem.qlfi1_interpret(S, phi, mu)))
        text = "\n".join(
            (f"{fosem._show_mu(S, mu)}  " if xs else "") + f"{M.name(v)}"
            + ("  (designated)" if M.is_designated(v) else "") for mu, v in rows)
        data = {"values": [{"assignment": {x: S.domain[i] for x, i in mu.items()},
                            "value": _value_json(M, v), "designated": M.is_designated(v)}
                           for mu, v in rows]}
    else:
        vals = fosem.possible_values(S, phi, args.cap)
        text = "possible values: " + ", ".join(M.name(v) for v in vals)
        data = {"possible_values": [_value_json(M, v) for v in vals]}
    _emit(args, text, data)
    return 0


def _fo_report(args, S, verdict):
    if verdict.holds:
        _emit(args, "holds" + (f" ({verdict.note})" if verdict.note else ""), {"holds": True})
        return 0
    cm = verdict.countermodel
    M = S.matrix
    if S.kind == "twist":
        text = (f"countermodel: assignment {cm['assignment']} gives "
                f"{M.name(cm['value'])}")
        data = {"holds": False, "assignment": cm["assignment"], "value": _value_json(M, cm["value"])}
    else:
        text = f"{verdict.note}:\n" + cm.format()
        data = {"holds": False, "closure_countermodel": cm.to_json()}
    _emit(args, text, data)
    return 1


def cmd_fo_conseq(args):
    S = fosem.load_model(args.model)
    prem = _parse_all(args.premise, sig=S.signature)
    goal = parse_formula(args.goal, S.signature)
    if S.kind == "twist":
        verdict = fosem.qlfi1_consequence(prem, goal, S)
    else:
        verdict = fosem.qmbc_consequence(prem, goal, S, cap=args.cap)
    return _fo_report(args, S, verdict)


def _predicates(formulas):
    out: dict = {}
    eq = False

    def walk(f):
        nonlocal eq
        if isinstance(f, Atom):
            if out.setdefault(f.pred, len(f.args)) != len(f.args):
                raise UsageError(f"predicate {f.pred} used with two arities")
        elif isinstance(f, Eq):
            eq = True
        for c in children(f):
            walk(c)

    for f in formulas:
        walk(f)
    return out, eq


def cmd_search_models(args):
    prem = _parse_all(args.premise, constants=args.const)
    goal = parse_formula(args.goal, constants=args.const)
    preds, uses_eq = _predicates(prem + [goal])
    eq = args.equality or ("classical" if uses_eq else None)
    tried = 0
    for S in fosem.enumerate_structures(args.semantics, args.size, preds, args.const, eq):
        tried += 1
        v = fosem.fo_consequence(prem, goal, S)
        if not v.holds:
            model = fosem.model_to_json(S)
            if args.format == "json":
                print(json.dumps({"holds": False, "model": model, "tried": tried}, ensure_ascii=False,
                                 indent=2))
            else:
                print(f"counter-structure found after {tried} structure(s):")
                print(json.dumps(model, ensure_ascii=False, indent=2))
                _fo_report(args, S, v)
            return 1
    _emit(args, f"holds in all {tried} structure(s) of size {args.size}", {"holds": True, "tried": tried})
    return 0


def cmd_prove_check(args):
    premises = []
    if args.premises:
        with open(args.premises, encoding="utf-8") as fh:
            premises = hilbert.read_premises(fh.read(), constants=args.const)
    d = hilbert.load_derivation(args.proof, args.logic, premises, args.const)
    verdict = hilbert.check_derivation(d)
    if verdict.holds:
        _emit(args, f"accepted: {len(d.steps)} step(s) in {d.logic_id}, concluding "
                    f"{format_formula(d.conclusion)}",
              {"accepted": True, "logic": d.logic_id, "conclusion": format_formula(d.conclusion)})
        return 0
    sv = verdict.countermodel
    _emit(args, f"rejected: {sv}", {"accepted": False, "step": sv.step,
                                    "error": type(sv.error).__name__, "detail": str(sv.error)})
    return 1


def cmd_axioms(args):
    lid = hilbert.logic_id(args.logic)
    ids = hilbert.CATALOG[lid]
    rows = [(sid, hilbert.SCHEMAS[sid].text) for sid in ids]
    text = f"{lid}: {len(ids)} axiom schemas\n" + "\n".join(f"  {sid:<14} {t}" for sid, t in rows)
    rules = ["mp"] + (["exists-in", "forall-in"] if lid in hilbert.FIRST_ORDER else [])
    text += "\nrules: " + ", ".join(rules)
    _emit(args, text, {"logic": lid, "axioms": dict(rows), "rules": rules})
    return 0


def cmd_selftest(args):
    start = time.perf_counter()
    results = []
    bad = m5_mismatches()
    results.append(("five-valued tables", not bad, "; ".join(bad[:3])))
    bad = lfi1_mismatches()
    results.append(("three-valued tables", not bad, "; ".join(bad[:3])))
    rng = random.Random(args.seed)
    disagree = []
    for _ in range(args.instances):
        prem, goal = random_instance(rng)
        a = propsem.prop_consequence(prem, goal).holds
        b = propsem.bival_consequence(prem, goal).holds
        if a != b:
            disagree.append(", ".join(map(format_formula, prem)) + " / " + format_formula(goal))
    results.append((f"matrix vs bivaluation consequence on {args.instances} instances",
                    not disagree, "; ".join(disagree[:3])))
    ok = all(r[1] for r in results)
    text = "\n".join(f"{'PASS' if p else 'FAIL'}  {name}" + (f"  [{d}]" if d else "")
                     for name, p, d in results)
    text += f"\n{time.perf_counter() - start:.2f}s"
    _emit(args, text, {"passed": ok, "checks": [{"name": n, "passed": p} for n, p, _ in results]})
    return 0 if ok else 1


# -- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lfiswap", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        return p

    p = add("parse", cmd_parse, "parse a formula and print it back")
    p.add_argument("formula")
    p.add_argument("--const", action="append", default=[])

    p = add("tables", cmd_tables, "print connective tables of a matrix")
    p.add_argument("matrix", help="m5, lfi1, swap:N or twist:N")

    p = add("check-valid", cmd_check_valid, "validity of a propositional formula")
    p.add_argument("formula")
    p.add_argument("--matrix", default="m5")

    p = add("check-conseq", cmd_check_conseq, "propositional consequence")
    p.add_argument("--matrix", default="m5")
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--goal", required=True)

    p = add("fo-eval", cmd_fo_eval, "value of a sentence in a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--sentence", required=True)
    p.add_argument("--cap", type=int, default=fosem.CLOSURE_CAP)

    p = add("fo-conseq", cmd_fo_conseq, "first-order consequence in a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--goal", required=True)
    p.add_argument("--cap", type=int, default=fosem.CLOSURE_CAP)

    p = add("search-models", cmd_search_models, "look for a counter-structure among tiny structures")
    p.add_argument("--semantics", choices=("swap", "twist"), default="swap")
    p.add_argument("--size", type=int, choices=(1, 2), default=2)
    p.add_argument("--premise", action="append", default=[])
    p.add_argument("--goal", required=True)
    p.add_argument("--const", action="append", default=[])
    p.add_argument("--equality", choices=("classical", "mid"))

    p = add("prove-check", cmd_prove_check, "check a proof script")
    p.add_argument("--logic", required=True)
    p.add_argument("--premises", help="file with one premise per line")
    p.add_argument("--proof", required=True, help="JSON proof script")
    p.add_argument("--const", action="append", default=[])

    p = add("axioms", cmd_axioms, "list the axiom schemas of a logic")
    p.add_argument("logic")

    p = add("selftest", cmd_selftest, "reference tables and semantic cross-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=200)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (UsageError, ParseError, ValueError, KeyError, OSError, RuntimeError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
