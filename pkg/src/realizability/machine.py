"""Deterministic stack machine for the lambda calculus with call/cc.

A process is a closed term facing a stack.  At most one of four rules can
fire at any time:

    Push     (t u) * pi        ->  t * u . pi
    Grab     (\\x. v) * t . pi  ->  v[x := t] * pi
    Save     cc * t . pi       ->  t * k[pi] . pi
    Restore  k[pi2] * t . pi1  ->  t * pi2

Processes where no rule applies are stuck and reported as such; tagged
instructions never reduce here.  Substitution-based, no closures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lcterms import App, Cc, Kont, Lam, Process, SPush, subst_lc


def step(p: Process) -> tuple[Process, str] | None:
    """The unique successor and the rule that produced it, if any."""
    t, pi = p.term, p.stack
    if isinstance(t, App):
        return Process(t.fn, SPush(t.arg, pi)), "Push"
    if isinstance(pi, SPush):
        if isinstance(t, Lam):
            return Process(subst_lc(t.body, [t.var], [pi.head]), pi.tail), "Grab"
        if isinstance(t, Cc):
            return Process(pi.head, SPush(Kont(pi.tail), pi.tail)), "Save"
        if isinstance(t, Kont):
            return Process(pi.head, t.stack), "Restore"
    return None


def step1(p: Process) -> Process | None:
    """Just the successor process."""
    s = step(p)
    return None if s is None else s[0]


@dataclass
class Trace:
    steps: list[tuple[Process, str]]   # (state, rule applied to it)
    final: Process
    stuck: bool                        # no rule applies to final

    @property
    def states(self) -> list[Process]:
        return [p for p, _ in self.steps] + [self.final]

    @property
    def exhausted(self) -> bool:
        return not self.stuck


def evaluate(p: Process, fuel: int = 1000) -> Trace:
    """Run the machine for at most `fuel` steps."""
    steps: list[tuple[Process, str]] = []
    cur = p
    for _ in range(fuel):
        s = step(cur)
        if s is None:
            return Trace(steps, cur, stuck=True)
        nxt, rule = s
        steps.append((cur, rule))
        cur = nxt
    return Trace(steps, cur, stuck=step(cur) is None)


def reduces_to(p: Process, q: Process, fuel: int = 1000) -> bool:
    """Does p reach q (syntactic equality) within `fuel` steps?"""
    cur = p
    for _ in range(fuel + 1):
        if cur == q:
            return True
        cur = step1(cur)
        if cur is None:
            return False
    return False
