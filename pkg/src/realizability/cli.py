"""Command-line entry point.

Exit codes: 0 success/true/valid, 1 false/refuted, 2 unknown or
inconclusive, 64 usage error, 65 parse error.  With --json, every result
is one JSON object per line; flags can also come from a `key = value`
config file via --config, and REALIZ_RANK_CAP caps the model rank.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bamodels import (
    Atomless, BASpec, DEFAULT_FAMILY, PowerFinite, TheoryOracle, Verdict,
    theory_contains, valid_all_bas,
)
from .corpus import formula_corpus, lcterm_corpus
from .dinfty import (
    denote, elem, level_size, seq_check, theta, val,
)
from .formulas import UsageError
from .machine import evaluate
from .pole import PoleConfig, in_pole_limit, realizes_bounded
from .suite import run_all
from .syntax import (
    ParseError, parse_bterm, parse_formula, parse_lcterm, parse_process,
    parse_stack, print_bterm, print_formula, print_lcterm, print_process,
    print_stack,
)
from .typecheck import TypingError, check_derivation, parse_derivation

EX_OK, EX_FALSE, EX_UNKNOWN, EX_USAGE, EX_PARSE = 0, 1, 2, 64, 65


def parse_family(text: str) -> tuple[BASpec, ...]:
    out: list[BASpec] = []
    for item in text.split(","):
        item = item.strip().lower()
        if item == "atomless":
            out.append(Atomless())
        elif item.startswith("pf"):
            out.append(PowerFinite(int(item[2:])))
        else:
            raise UsageError(f"unknown algebra spec {item!r} (use pfN or atomless)")
    return tuple(out)


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _verdict_exit(v: Verdict) -> int:
    return {"valid": EX_OK, "refuted": EX_FALSE, "unknown": EX_UNKNOWN}[v.status]


def _verdict_payload(v: Verdict) -> dict:
    return {
        "status": v.status,
        "justification": v.justification.value if v.justification else None,
        "witness": str(v.witness) if v.witness else None,
        "trace": list(v.trace),
        "detail": v.detail,
    }


def cmd_parse(args) -> int:
    printers = {
        "term": (parse_bterm, print_bterm),
        "formula": (parse_formula, print_formula),
        "lcterm": (parse_lcterm, print_lcterm),
        "stack": (parse_stack, print_stack),
        "process": (parse_process, print_process),
    }
    p, pr = printers[args.kind]
    text = pr(p(args.source))
    _emit(args, {"kind": args.kind, "printed": text}, text)
    return EX_OK


def cmd_eval(args) -> int:
    trace = evaluate(parse_process(args.process), fuel=args.fuel)
    for proc, rule in trace.steps:
        _emit(args, {"rule": rule, "process": print_process(proc)},
              f"{rule}: {print_process(proc)}")
    status = "stuck" if trace.stuck else "fuel exhausted"
    _emit(args, {"final": print_process(trace.final), "status": status},
          f"final ({status}): {print_process(trace.final)}")
    return EX_OK


def cmd_typecheck(args) -> int:
    src = sys.stdin.read() if args.file == "-" else open(args.file).read()
    try:
        j = check_derivation(parse_derivation(src))
    except TypingError as e:
        _emit(args, {"accepted": False, "path": e.path, "error": e.msg}, str(e))
        return EX_FALSE
    ctx = ", ".join(f"{x} : {print_formula(A)}" for x, A in j.context)
    human = (f"accepted: {ctx}{' ' if ctx else ''}|- "
             f"{print_lcterm(j.subject)} : {print_formula(j.type)}")
    _emit(args, {"accepted": True, "subject": print_lcterm(j.subject),
                 "type": print_formula(j.type)}, human)
    return EX_OK


def cmd_validity(args) -> int:
    v = valid_all_bas(parse_formula(args.formula), args.family,
                      family_complete=args.family_complete)
    just = f" ({v.justification.value})" if v.justification else ""
    wit = f" witness {v.witness}" if v.witness else ""
    tr = "".join(f"\n  {line}" for line in v.trace)
    _emit(args, _verdict_payload(v), f"{v.status}{just}{wit}{tr}")
    return _verdict_exit(v)


def cmd_theory(args) -> int:
    oracle = TheoryOracle(args.family)
    member = theory_contains(oracle, parse_formula(args.contains))
    _emit(args, {"member": member}, str(member).lower())
    return EX_OK if member else EX_FALSE


def cmd_pole_member(args) -> int:
    cfg = PoleConfig(oracle=TheoryOracle(args.family), k_max=args.k)
    least = in_pole_limit(parse_process(args.process), cfg)
    _emit(args, {"member": least is not None, "k": least},
          f"k={least}" if least is not None else f"not a member up to k={args.k}")
    return EX_OK if least is not None else EX_FALSE


def cmd_realizes(args) -> int:
    cfg = PoleConfig(oracle=TheoryOracle(args.family), k_max=args.k_max)
    rep = realizes_bounded(parse_lcterm(args.term), parse_formula(args.formula),
                           cfg, depth=args.depth)
    for pi, k in rep.results:
        _emit(args, {"stack": print_stack(pi), "k": k},
              f"{'ok' if k is not None else 'FAIL'} k={k}: {print_stack(pi)}")
    _emit(args, {"clean": rep.clean, "stacks": len(rep.results)},
          f"{'clean' if rep.clean else 'failures'} over {len(rep.results)} stacks")
    return EX_OK if rep.clean else EX_FALSE


def cmd_denote(args) -> int:
    d = denote(parse_lcterm(args.term), cc_trunc=args.cc_trunc)
    comp = d.component(args.rank)
    _emit(args, {"rank": args.rank, "component": comp},
          f"component({args.rank}) = {comp}")
    return EX_OK


def cmd_lattice(args) -> int:
    n = args.rank
    size = level_size(n)
    _emit(args, {"rank": n, "size": size}, f"|rank {n}| = {size}")
    if args.list:
        for i in range(size):
            _emit(args, {"index": i, "value": val(n, i)}, f"{i}: {val(n, i)}")
    return EX_OK


def cmd_theta(args) -> int:
    alpha = elem(args.rank, val(args.rank, args.element))
    text = print_formula(theta(alpha))
    _emit(args, {"rank": args.rank, "element": args.element, "formula": text},
          text)
    return EX_OK


def cmd_seq_check(args) -> int:
    alpha = elem(args.rank, val(args.rank, args.element))
    sv = seq_check(alpha, family=args.family,
                   search_budget=args.search_budget)
    wit = print_lcterm(sv.witness) if sv.witness is not None else None
    _emit(args, {"status": sv.status, "witness": wit, "detail": sv.detail},
          f"{sv.status}" + (f" witness {wit}" if wit else "")
          + (f" ({sv.detail})" if sv.detail else ""))
    return {"sequentialisable": EX_OK, "not-sequentialisable": EX_FALSE,
            "unknown": EX_UNKNOWN}[sv.status]


def cmd_corpus(args) -> int:
    if args.kind == "formulas":
        for a in formula_corpus(args.size, args.seed):
            _emit(args, {"formula": print_formula(a)}, print_formula(a))
    else:
        for t in lcterm_corpus(args.size, args.seed):
            _emit(args, {"term": print_lcterm(t)}, print_lcterm(t))
    return EX_OK


def cmd_suite(args) -> int:
    results = run_all()
    if args.only:
        results = [r for r in results if str(r.index) == args.only
                   or args.only in r.name]
    ok = all(r.ok for r in results)
    for r in results:
        _emit(args, {"index": r.index, "name": r.name, "ok": r.ok,
                     "detail": r.detail, "elapsed": round(r.elapsed, 2)},
              r.line)
    return EX_OK if ok else EX_FALSE


def _load_config(path: str) -> dict[str, str]:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="realiz",
        description="Machine, models and checks for tagged lambda calculus "
                    "over Boolean-algebra theories.")
    ap.add_argument("--json", action="store_true",
                    help="one JSON object per result line")
    ap.add_argument("--config", help="key = value defaults file")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def fam(p):
        p.add_argument("--family", type=parse_family, default=DEFAULT_FAMILY,
                       help="comma list of pfN and atomless")

    p = sub.add_parser("parse", help="parse and reprint")
    p.add_argument("kind", choices=("term", "formula", "lcterm", "stack",
                                    "process"))
    p.add_argument("source")
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("eval", help="run the machine")
    p.add_argument("process")
    p.add_argument("--fuel", type=int, default=1000)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("typecheck", help="check a derivation file ('-' = stdin)")
    p.add_argument("file")
    p.set_defaults(fn=cmd_typecheck)

    p = sub.add_parser("validity", help="truth in all Boolean algebras >= 2")
    p.add_argument("formula")
    p.add_argument("--family-complete", action="store_true")
    fam(p)
    p.set_defaults(fn=cmd_validity)

    p = sub.add_parser("theory", help="membership in a family theory")
    p.add_argument("--contains", required=True)
    fam(p)
    p.set_defaults(fn=cmd_theory)

    p = sub.add_parser("pole-member", help="bounded pole membership")
    p.add_argument("process")
    p.add_argument("--k", type=int, default=32)
    fam(p)
    p.set_defaults(fn=cmd_pole_member)

    p = sub.add_parser("realizes", help="bounded realizability report")
    p.add_argument("term")
    p.add_argument("formula")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--k-max", type=int, default=32)
    fam(p)
    p.set_defaults(fn=cmd_realizes)

    p = sub.add_parser("denote", help="model component of a machine term")
    p.add_argument("term")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--cc-trunc", type=int, default=0)
    p.set_defaults(fn=cmd_denote)

    p = sub.add_parser("lattice", help="finite lattice sizes and elements")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("theta", help="synthesize a formula for an element")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--element", type=int, required=True)
    p.set_defaults(fn=cmd_theta)

    p = sub.add_parser("seq-check", help="sequentialisability of an element")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--element", type=int, required=True)
    p.add_argument("--search-budget", type=int, default=5)
    fam(p)
    p.set_defaults(fn=cmd_seq_check)

    p = sub.add_parser("corpus", help="reproducible random corpora")
    p.add_argument("kind", choices=("formulas", "terms"))
    p.add_argument("--size", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("suite", help="run the acceptance checks")
    p.add_argument("only", nargs="?", help="criterion index or name fragment")
    p.set_defaults(fn=cmd_suite)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EX_USAGE if e.code not in (0, None) else 0
    if args.config:
        defaults = _load_config(args.config)
        for key, value in defaults.items():
            key = key.replace("-", "_")
            if not hasattr(args, key):
                continue
            cur = getattr(args, key)
            if key == "family":
                if cur is DEFAULT_FAMILY:
                    setattr(args, key, parse_family(value))
            elif isinstance(cur, bool):
                if not cur:
                    setattr(args, key, value.lower() in ("1", "true", "yes"))
            elif isinstance(cur, int):
                setattr(args, key, int(value))
            elif cur is None:
                setattr(args, key, value)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EX_PARSE
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
