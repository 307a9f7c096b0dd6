"""Lambda calculus with call/cc, stack constants and tagged instructions.

Terms, stacks and processes; capture-avoiding substitution of lambda
variables; substitution of first-order variables inside instruction tags;
proof-likeness; and the conjunction of all instruction tags occurring in a
term, stack or process.

First-order variables (inside tags) and lambda variables are disjoint
sorts: `subst_lc` never descends into tags, `fo_subst` touches nothing but
tags.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .formulas import (
    BTerm, Formula, canon as canon_formula, conj_many,
    subst_formula, UsageError,
)


@dataclass(frozen=True)
class LcTerm:
    pass


@dataclass(frozen=True)
class LVar(LcTerm):
    name: str


@dataclass(frozen=True)
class App(LcTerm):
    fn: LcTerm
    arg: LcTerm


@dataclass(frozen=True)
class Lam(LcTerm):
    var: str
    body: LcTerm


@dataclass(frozen=True)
class Cc(LcTerm):
    pass


@dataclass(frozen=True)
class Kont(LcTerm):
    stack: "StackT"


@dataclass(frozen=True)
class Gamma(LcTerm):
    tag: Formula


@dataclass(frozen=True)
class Zeta(LcTerm):
    n: int


@dataclass(frozen=True)
class Eta(LcTerm):
    n: int


@dataclass(frozen=True)
class StackT:
    pass


@dataclass(frozen=True)
class SEmpty(StackT):
    pass


@dataclass(frozen=True)
class SPush(StackT):
    head: LcTerm
    tail: StackT

    def __post_init__(self):
        if free_lvars(self.head):
            raise UsageError(f"stack entries must be closed: {self.head!r}")


@dataclass(frozen=True)
class Process:
    term: LcTerm
    stack: StackT

    def __post_init__(self):
        if free_lvars(self.term):
            raise UsageError(f"process terms must be closed: {self.term!r}")


CC = Cc()
EMPTY = SEmpty()


def stack_of(*terms: LcTerm, tail: StackT = EMPTY) -> StackT:
    for t in reversed(terms):
        tail = SPush(t, tail)
    return tail


def stack_to_list(pi: StackT) -> list[LcTerm]:
    out = []
    while isinstance(pi, SPush):
        out.append(pi.head)
        pi = pi.tail
    return out


def free_lvars(t: LcTerm) -> frozenset[str]:
    if isinstance(t, LVar):
        return frozenset((t.name,
))
    if isinstance(t, App):
        return free_lvars(t.fn) | free_lvars(t.arg)
    if isinstance(t, Lam):
        return free_lvars(t.body) - {t.var}
    # Stack constants only contain closed terms, so nothing escapes.
    if isinstance(t, (Cc, Kont, Gamma, Zeta, Eta)):
        return frozenset()
    raise TypeError(f"not a term: {t!r}")


def _fresh_lvar(avoid: set[str], base: str) -> str:
    i = 0
    while True:
        name = f"{base}_{i}"
        if name not in avoid:
            return name
        i += 1


def subst_lc(t: LcTerm, xs: Sequence[str], us: Sequence[LcTerm]) -> LcTerm:
    """Simultaneous capture-avoiding substitution of lambda variables."""
    if len(xs) != len(us):
        raise UsageError(f"substitution length mismatch: {len(xs)} vs {len(us)}")

    def go(t: LcTerm, mapping: dict[str, LcTerm]) -> LcTerm:
        if not mapping:
            return t
        if isinstance(t, LVar):
            return mapping.get(t.name, t)
        if isinstance(t, App):
            return App(go(t.fn, mapping), go(t.arg, mapping))
        if isinstance(t, Lam):
            inner = {k: v for k, v in mapping.items() if k != t.var}
            if not inner:
                return t
            clash = set().union(*(free_lvars(v) for v in inner.values()))
            if t.var in clash:
                avoid = clash | free_lvars(t.body) | set(inner)
                new = _fresh_lvar(set(avoid), t.var)
                body = go(t.body, {t.var: LVar(new)})
                return Lam(new, go(body, inner))
            return Lam(t.var, go(t.body, inner))
        if isinstance(t, (Cc, Kont, Gamma, Zeta, Eta)):
            return t
        raise TypeError(f"not a term: {t!r}")

    return go(t, dict(zip(xs, us)))


def fo_subst(x, zs: Sequence[str], bs: Sequence[BTerm]):
    """Replace every instruction tag A by A[zs := bs], including inside
    stack constants; everything else is untouched."""
    if len(zs) != len(bs):
        raise UsageError(f"substitution length mismatch: {len(zs)} vs {len(bs)}")

    def go_term(t: LcTerm) -> LcTerm:
        if isinstance(t, Gamma):
            return Gamma(subst_formula(t.tag, zs, bs))
        if isinstance(t, App):
            return App(go_term(t.fn), go_term(t.arg))
        if isinstance(t, Lam):
            return Lam(t.var, go_term(t.body))
        if isinstance(t, Kont):
            return Kont(go_stack(t.stack))
        return t

    def go_stack(pi: StackT) -> StackT:
        if isinstance(pi, SPush):
            return SPush(go_term(pi.head), go_stack(pi.tail))
        return pi

    if isinstance(x, Process):
        return Process(go_term(x.term), go_stack(x.stack))
    if isinstance(x, StackT):
        return go_stack(x)
    return go_term(x)


def iter_tags(x) -> Iterable[Formula]:
    """All instruction tags in deterministic pre-order (term before stack,
    function before argument, head before tail)."""
    if isinstance(x, Process):
        yield from iter_tags(x.term)
        yield from iter_tags(x.stack)
    elif isinstance(x, SPush):
        yield from iter_tags(x.head)
        yield from iter_tags(x.tail)
    elif isinstance(x, Gamma):
        yield x.tag
    elif isinstance(x, App):
        yield from iter_tags(x.fn)
        yield from iter_tags(x.arg)
    elif isinstance(x, Lam):
        yield from iter_tags(x.body)
    elif isinstance(x, Kont):
        yield from iter_tags(x.stack)


def constraint_of(x) -> Formula:
    """Right-nested conjunction of all instruction tags in x; the empty
    conjunction is 0 != 1."""
    return conj_many(list(iter_tags(x)))


def is_proof_like(t: LcTerm,
                  gamma_restricted: Callable[[Formula], bool] | None = None
                  ) -> bool:
    """Closed, no stack constants, no restricted instructions.  Whether a
    tagged instruction counts as restricted is decided by the callback;
    with no callback every tagged instruction counts as unrestricted."""
    if free_lvars(t):
        return False

    def ok(t: LcTerm) -> bool:
        if isinstance(t, (Kont, Eta)):
            return False
        if isinstance(t, Gamma):
            return gamma_restricted is None or not gamma_restricted(t.tag)
        if isinstance(t, App):
            return ok(t.fn) and ok(t.arg)
        if isinstance(t, Lam):
            return ok(t.body)
        return True

    return ok(t)


# --------------------------------------------------------------------------
# Alpha-equivalence and canonical keys
# --------------------------------------------------------------------------

def canon_term(t: LcTerm, env: dict[str, int] | None = None,
               counter=None) -> tuple:
    """Hashable canonical form (de Bruijn-style binder naming, canonical
    formula tags); equal keys iff alpha-equivalent."""
    env = env or {}
    counter = counter if counter is not None else itertools.count()
    if isinstance(t, LVar):
        return ("var", env.get(t.name, t.name))
    if isinstance(t, App):
        return ("app", canon_term(t.fn, env, counter),
                canon_term(t.arg, env, counter))
    if isinstance(t, Lam):
        lvl = next(counter)
        env2 = dict(env)
        env2[t.var] = lvl
        return ("lam", canon_term(t.body, env2, counter))
    if isinstance(t, Cc):
        return ("cc",
)
    if isinstance(t, Kont):
        return ("kont", canon_stack(t.stack, counter))
    if isinstance(t, Gamma):
        return ("gamma", canon_formula(t.tag))
    if isinstance(t, Zeta):
        return ("zeta", t.n)
    if isinstance(t, Eta):
        return ("eta", t.n)
    raise TypeError(f"not a term: {t!r}")


def canon_stack(pi: StackT, counter=None) -> tuple:
    counter = counter if counter is not None else itertools.count()
    if isinstance(pi, SEmpty):
        return ("omega",
)
    assert isinstance(pi, SPush)
    return ("push", canon_term(pi.head, None, counter),
            canon_stack(pi.tail, counter))


def canon_process(p: Process) -> tuple:
    counter = itertools.count()
    return ("proc", canon_term(p.term, None, counter),
            canon_stack(p.stack, counter))


def lc_alpha_eq(t: LcTerm, u: LcTerm) -> bool:
    return canon_term(t) == canon_term(u)


def proc_alpha_eq(p: Process, q: Process) -> bool:
    return canon_process(p) == canon_process(q)
