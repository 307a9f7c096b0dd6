"""First-order formulas over the Boolean-algebra signature (0, 1, \\/, /\\, ~).

Primitives are inequation, implication and universal quantification; the
other connectives (falsum, equality, conjunction, disjunction, existential)
are provided as encodings.  Also contains: simultaneous capture-avoiding
substitution, evaluation in the two-element algebra, Horn-clause
classification, truth-table terms, and the two-level decomposition of a
formula into quantifier blocks, premises and an inequation head.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence


class UsageError(ValueError):
    """Raised on malformed arguments (e.g. substitution length mismatch)."""


# --------------------------------------------------------------------------
# Terms
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BTerm:
    pass


@dataclass(frozen=True)
class Var(BTerm):
    name: str


@dataclass(frozen=True)
class Zero(BTerm):
    pass


@dataclass(frozen=True)
class One(BTerm):
    pass


@dataclass(frozen=True)
class Or(BTerm):
    lhs: BTerm
    rhs: BTerm


@dataclass(frozen=True)
class And(BTerm):
    lhs: BTerm
    rhs: BTerm


@dataclass(frozen=True)
class Not(BTerm):
    arg: BTerm


ZERO = Zero()
ONE = One()


def term_vars(a: BTerm) -> frozenset[str]:
    if isinstance(a, Var):
        return frozenset((a.name,))
    if isinstance(a, (Zero, One)):
        return frozenset()
    if isinstance(a, Not):
        return term_vars(a.arg)
    if isinstance(a, (Or, And)):
        return term_vars(a.lhs) | term_vars(a.rhs)
    raise TypeError(f"not a term: {a!r}")


def subst_term(a: BTerm, zs: Sequence[str], bs: Sequence[BTerm]) -> BTerm:
    """Simultaneous substitution of the variables zs by the terms bs."""
    if len(zs) != len(bs):
        raise UsageError(f"substitution length mismatch: {len(zs)} vs {len(bs)}")
    if len(set(zs)) != len(zs):
        raise UsageError("substituted variables must be pairwise distinct")
    mapping = dict(zip(zs, bs))

    def go(t: BTerm) -> BTerm:
        if isinstance(t, Var):
            return mapping.get(t.name, t)
        if isinstance(t, (Zero, One)):
            return t
        if isinstance(t, Not):
            return Not(go(t.arg))
        if isinstance(t, Or):
            return Or(go(t.lhs), go(t.rhs))
        if isinstance(t, And):
            return And(go(t.lhs), go(t.rhs))
        raise TypeError(f"not a term: {t!r}")

    return go(a)


def eval_term_01(a: BTerm, env: Mapping[str, int]) -> int:
    """Value of a term in the two-element Boolean algebra {0, 1}."""
    if isinstance(a, Var):
        try:
            return env[a.name]
        except KeyError:
            raise UsageError(f"unbound variable {a.name!r}") from None
    if isinstance(a, Zero):
        return 0
    if isinstance(a, One):
        return 1
    if isinstance(a, Not):
        return 1 - eval_term_01(a.arg, env)
    if isinstance(a, Or):
        return eval_term_01(a.lhs, env) | eval_term_01(a.rhs, env)
    if isinstance(a, And):
        return eval_term_01(a.lhs, env) & eval_term_01(a.rhs, env)
    raise TypeError(f"not a term: {a!r}")


def table_term(f, us: Sequence[str]) -> BTerm:
    """A term realizing an arbitrary truth table over the variables us.

    ``f`` maps bit tuples of length len(us) to 0/1 (a callable or a mapping).
    The result is a disjunction of minterms, so its size is bounded by 2^r.
    """
    fn: Callable[[tuple[int, ...]], int]
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    minterms = []
    for bits in itertools.product((0, 1), repeat=len(us)):
        if fn(tuple(bits)):
            lits: list[BTerm] = [
                Var(u) if b else Not(Var(u)) for u, b in zip(us, bits)
            ]
            if not lits:
                return ONE  # r = 0 and f() = 1
            acc = lits[0]
            for lit in lits[1:]:
                acc = And(acc, lit)
            minterms.append(acc)
    if not minterms:
        return ZERO
    acc = minterms[0]
    for m in minterms[1:]:
        acc = Or(acc, m)
    return acc


# --------------------------------------------------------------------------
# Formulas
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Neq(Formula):
    lhs: BTerm
    rhs: BTerm


@dataclass(frozen=True)
class Impl(Formula):
    ante: Formula
    cons: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


def free_vars(A: Formula) -> frozenset[str]:
    if isinstance(A, Neq):
        return term_vars(A.lhs) | term_vars(A.rhs)
    if isinstance(A, Impl):
        return free_vars(A.ante) | free_vars(A.cons)
    if isinstance(A, Forall):
        return free_vars(A.body) - {A.var}
    raise TypeError(f"not a formula: {A!r}")


def height(A: Formula) -> int:
    """Tree height with inequation leaves at 0."""
    if isinstance(A, Neq):
        return 0
    if isinstance(A, Impl):
        return 1 + max(height(A.ante), height(A.cons))
    if isinstance(A, Forall):
        return 1 + height(A.body)
    raise TypeError(f"not a formula: {A!r}")


def _fresh_stream(avoid: Iterable[str], prefix: str = "_v"):
    avoid = set(avoid)
    i = 0
    while True:
        name = f"{prefix}{i}"
        i += 1
        if name not in avoid:
            avoid.add(name)
            yield name


def subst_formula(A: Formula, zs: Sequence[str], bs: Sequence[BTerm]) -> Formula:
    """Simultaneous capture-avoiding substitution in a formula."""
    if len(zs) != len(bs):
        raise UsageError(f"substitution length mismatch: {len(zs)} vs {len(bs)}")
    if len(set(zs)) != len(zs):
        raise UsageError("substituted variables must be pairwise distinct")

    def go(f: Formula, mapping: dict[str, BTerm]) -> Formula:
        if not mapping:
            return f
        if isinstance(f, Neq):
            keys = list(mapping)
            vals = [mapping[k] for k in keys]
            return Neq(subst_term(f.lhs, keys, vals), subst_term(f.rhs, keys, vals))
        if isinstance(f, Impl):
            return Impl(go(f.ante, mapping), go(f.cons, mapping))
        if isinstance(f, Forall):
            inner = {k: v for k, v in mapping.items() if k != f.var}
            if not inner:
                return f
            clash = set().union(*(term_vars(v) for v in inner.values()))
            if f.var in clash:
                avoid = clash | free_vars(f.body) | set(inner)
                new = next(_fresh_stream(avoid, prefix=f.var + "_"))
                body = go(f.body, {f.var: Var(new)})
                return Forall(new, go(body, inner))
            return Forall(f.var, go(f.body, inner))
        raise TypeError(f"not a formula: {f!r}")

    return go(A, dict(zip(zs, bs)))


def canon(A: Formula) -> Formula:
    """Canonical bound-variable naming; two formulas are alpha-equivalent
    iff their canonical forms are structurally equal."""
    counter = itertools.count()

    def go(f: Formula, env: dict[str, str]) -> Formula:
        if isinstance(f, Neq):
            if env:
                keys = list(env)
                vals = [Var(env[k]) for k in keys]
                return Neq(subst_term(f.lhs, keys, vals),
                           subst_term(f.rhs, keys, vals))
            return f
        if isinstance(f, Impl):
            return Impl(go(f.ante, env), go(f.cons, env))
        if isinstance(f, Forall):
            new = f"!b{next(counter)}"  # '!' cannot appear in source identifiers
            env2 = dict(env)
            env2[f.var] = new
            return Forall(new, go(f.body, env2))
        raise TypeError(f"not a formula: {f!r}")

    return go(A, {})


def alpha_eq(A: Formula, B: Formula) -> bool:
    return canon(A) == canon(B)


def eval_formula_01(A: Formula, env: Mapping[str, int] | None = None) -> bool:
    """Classical truth in {0, 1}; quantifiers range over {0, 1}."""
    env = dict(env or {})

    def go(f: Formula, env: dict[str, int]) -> bool:
        if isinstance(f, Neq):
            return eval_term_01(f.lhs, env) != eval_term_01(f.rhs, env)
        if isinstance(f, Impl):
            return (not go(f.ante, env)) or go(f.cons, env)
        if isinstance(f, Forall):
            saved = env.get(f.var)
            try:
                for b in (0, 1):
                    env[f.var] = b
                    if not go(f.body, env):
                        return False
                return True
            finally:
                if saved is None:
                    env.pop(f.var, None)
                else:
                    env[f.var] = saved
        raise TypeError(f"not a formula: {f!r}")

    return go(A, env)


# --------------------------------------------------------------------------
# Encodings
# --------------------------------------------------------------------------

def bot() -> Formula:
    return Neq(ZERO, ZERO)


def eq(a: BTerm, b: BTerm) -> Formula:
    return Impl(Neq(a, b), bot())


def conj(A: Formula, B: Formula) -> Formula:
    return Impl(Impl(A, Impl(B, bot())), bot())


def disj(A: Formula, B: Formula) -> Formula:
    return Impl(Impl(A, bot()), Impl(Impl(B, bot()), bot()))


def exists(z: str, A: Formula) -> Formula:
    return Impl(Forall(z, Impl(A, bot())), bot())


def forall_many(zs: Sequence[str], A: Formula) -> Formula:
    for z in reversed(zs):
        A = Forall(z, A)
    return A


def conj_many(fs: Sequence[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is the always-true
    goal clause 0 != 1."""
    if not fs:
        return Neq(ZERO, ONE)
    acc = fs[-1]
    for f in reversed(fs[:-1]):
        acc = conj(f, acc)
    return acc


# --------------------------------------------------------------------------
# The background theory of Boolean algebras with at least two elements
# --------------------------------------------------------------------------

def tbool_axioms() -> tuple[Formula, ...]:
    """0 != 1 plus an equational basis whose models are exactly the Boolean
    algebras; together: Boolean algebras with at least two elements."""
    z, w, v = Var("z"), Var("w"), Var("v")
    eqs: list[tuple[list[str], BTerm, BTerm]] = [
        (["z", "w"], Or(z, w), Or(w, z)),
        (["z", "w"], And(z, w), And(w, z)),
        (["z", "w", "v"], Or(z, Or(w, v)), Or(Or(z, w), v)),
        (["z", "w", "v"], And(z, And(w, v)), And(And(z, w), v)),
        (["z", "w"], Or(z, And(z, w)), z),
        (["z", "w"], And(z, Or(z, w)), z),
        (["z", "w", "v"], And(z, Or(w, v)), Or(And(z, w), And(z, v))),
        (["z", "w", "v"], Or(z, And(w, v)), And(Or(z, w), Or(z, v))),
        (["z"], Or(z, ZERO), z),
        (["z"], And(z, ONE), z),
        (["z"], Or(z, Not(z)), ONE),
        (["z"], And(z, Not(z)), ZERO),
    ]
    axioms = [Neq(ZERO, ONE)]
    axioms.extend(forall_many(vs, eq(a, b)) for vs, a, b in eqs)
    return tuple(axioms)


def tbool_equations() -> tuple[Formula, ...]:
    """The universally quantified equations of the axiom set (0 != 1 dropped)."""
    return tbool_axioms()[1:]


# --------------------------------------------------------------------------
# Horn classification
# --------------------------------------------------------------------------

class HornKind(Enum):
    DEFINITE = "definite"
    GOAL = "goal"
    NOT_HORN = "not-horn"


def _as_equality(A: Formula) -> tuple[BTerm, BTerm] | None:
    """Match the encoding (a != b) -> 0 != 0."""
    if (isinstance(A, Impl) and isinstance(A.ante, Neq)
            and A.cons == Neq(ZERO, ZERO)):
        return A.ante.lhs, A.ante.rhs
    return None


def classify_horn(A: Formula) -> HornKind:
    """A closed formula is a Horn clause if it is a chain of equality
    premises under a universal prefix, ending in an equality (definite
    clause) or an inequation (goal clause)."""
    if free_vars(A):
        return HornKind.NOT_HORN
    cur = A
    while isinstance(cur, Forall):
        cur = cur.body
    while True:
        if isinstance(cur, Neq):
            return HornKind.GOAL
        pair = _as_equality(cur)
        if pair is not None:
            return HornKind.DEFINITE
        if isinstance(cur, Impl) and _as_equality(cur.ante) is not None:
            cur = cur.cons
            continue
        return HornKind.NOT_HORN


# --------------------------------------------------------------------------
# Two-level decomposition
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class InnerDecomposition:
    """Single-level decomposition of a premise: quantifier blocks with the
    undecomposed subformulas, trailing quantifiers and an inequation head."""
    blocks: tuple[tuple[tuple[str, ...], Formula], ...]
    tail_vars: tuple[str, ...]
    head_lhs: BTerm
    head_rhs: BTerm

    @property
    def all_vars(self) -> tuple[str, ...]:
        out: list[str] = []
        for vs, _ in self.blocks:
            out.extend(vs)
        out.extend(self.tail_vars)
        return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    """Two-level normal form: outer blocks pair quantifier lists with the
    inner decomposition of each premise."""
    blocks: tuple[tuple[tuple[str, ...], InnerDecomposition], ...]
    tail_vars: tuple[str, ...]
    head_lhs: BTerm
    head_rhs: BTerm

    @property
    def all_vars(self) -> tuple[str, ...]:
        out: list[str] = []
        for vs, _ in self.blocks:
            out.extend(vs)
        out.extend(self.tail_vars)
        return tuple(out)


def _split_one_level(A: Formula, fresh) -> tuple[
        list[tuple[tuple[str, ...], Formula]], tuple[str, ...], BTerm, BTerm]:
    blocks: list[tuple[tuple[str, ...], Formula]] = []
    cur = A
    while True:
        vs: list[str] = []
        while isinstance(cur, Forall):
            new = next(fresh)
            vs.append(new)
            cur = subst_formula(cur.body, [cur.var], [Var(new)])
        if isinstance(cur, Neq):
            return blocks, tuple(vs), cur.lhs, cur.rhs
        assert isinstance(cur, Impl)
        blocks.append((tuple(vs), cur.ante))
        cur = cur.cons


def decompose(A: Formula) -> Decomposition:
    """Unique (up to renaming) two-level normal form.  All bound variable
    lists are freshened to a reserved namespace, pairwise distinct and
    disjoint from the free variables of A."""
    fresh = _fresh_stream(free_vars(A), prefix="_d")
    outer, tail, lhs, rhs = _split_one_level(A, fresh)
    blocks = []
    for vs, premise in outer:
        iblocks, itail, ilhs, irhs = _split_one_level(premise, fresh)
        blocks.append((vs, InnerDecomposition(tuple(iblocks), itail, ilhs, irhs)))
    return Decomposition(tuple(blocks), tail, lhs, rhs)


def recompose_inner(d: InnerDecomposition) -> Formula:
    body: Formula = Neq(d.head_lhs, d.head_rhs)
    body = forall_many(d.tail_vars, body)
    for vs, sub in reversed(d.blocks):
        body = forall_many(vs, Impl(sub, body))
    return body


def recompose(d: Decomposition) -> Formula:
    body: Formula = Neq(d.head_lhs, d.head_rhs)
    body = forall_many(d.tail_vars, body)
    for vs, inner in reversed(d.blocks):
        body = forall_many(vs, Impl(recompose_inner(inner), body))
    return body


def is_ground(A: Formula) -> bool:
    """No variable occurrences in any term (quantifiers may be vacuous)."""
    if isinstance(A, Neq):
        return not (term_vars(A.lhs) | term_vars(A.rhs))
    if isinstance(A, Impl):
        return is_ground(A.ante) and is_ground(A.cons)
    if isinstance(A, Forall):
        return is_ground(A.body)
    raise TypeError(f"not a formula: {A!r}")
