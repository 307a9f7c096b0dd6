"""Finite-rank approximation of the reflexive lattice model.

Rank 0 is the two-point lattice; rank n+1 is the lattice of monotone maps
from rank n to itself, ordered pointwise.  Values are represented by
canonical tables: a rank-0 value is 0 or 1 (equal to its enumeration
index), and a rank-(n+1) value is a tuple assigning to each enumeration
index of rank n an enumeration index of rank n.  Enumeration is in
lexicographic order, which is inductively a linear extension of the
pointwise order, so index 0 is bottom and the last index is top.

Elements of the limit are families of per-rank components coherent under
the downward projections; they are built lazily and memoised.  The rank
cap (default 3, override via REALIZ_RANK_CAP) bounds which components can
be materialised; the top enumerated rank is 3 regardless, and rank-4
components are never built.

On top: step functions (arrow), application and abstraction through the
retraction, the truncated control-operator element, denotations of machine
terms and of closed formulas, formula synthesis from an element, and the
sequentialisability check.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping

from .bamodels import DEFAULT_FAMILY, Verdict, valid_all_bas
from .formulas import (
    Formula, Forall, Impl, Neq, ONE, UsageError, ZERO, eval_term_01,
    forall_many, free_vars, subst_formula, table_term,
)
from .lcterms import (
    App, CC, Cc, Eta, Gamma, Kont, LVar, Lam, LcTerm, Zeta, free_lvars,
    stack_to_list,
)


class RankCapError(Exception):
    """An operation demanded a component beyond the configured rank cap."""


_HARD_ENUM_LIMIT = 3  # rank-4 tables are astronomically many


def rank_cap() -> int:
    return int(os.environ.get("REALIZ_RANK_CAP", "3"))


# --------------------------------------------------------------------------
# Level enumeration and table algebra
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def level(n: int) -> tuple:
    """All values of rank n, lexicographically sorted."""
    if n < 0:
        raise UsageError("negative rank")
    if n > max(rank_cap(), 0) or n > _HARD_ENUM_LIMIT:
        raise RankCapError(f"rank {n} exceeds the enumeration cap")
    if n == 0:
        return (0, 1)
    below = level(n - 1)
    m = len(below)
    # For assigned positions j < i with value(j) <= value(i) pointwise,
    # monotonicity forces table[i] >= join of those entries; lexicographic
    # index order is a linear extension, so no constraint points forward.
    out: list[tuple[int, ...]] = []

    def dfs(prefix: list[int]):
        i = len(prefix)
        if i == m:
            out.append(tuple(prefix))
            return
        lo = 0
        for j in range(i):
            if idx_leq(n - 1, j, i):
                lo = idx_of(n - 1, tbl_join(n - 1, val(n - 1, lo),
                                            val(n - 1, prefix[j])))
        for c in range(m):
            if idx_leq(n - 1, lo, c):
                prefix.append(c)
                dfs(prefix)
                prefix.pop()

    dfs([])
    out.sort()
    return tuple(out)


def level_size(n: int) -> int:
    return len(level(n))


def val(n: int, i: int):
    """The rank-n value at enumeration index i."""
    return i if n == 0 else level(n)[i]


@lru_cache(maxsize=None)
def _index_map(n: int) -> dict:
    return {v: i for i, v in enumerate(level(n))}


def idx_of(n: int, v) -> int:
    return v if n == 0 else _index_map(n)[v]


def tbl_leq(n: int, x, y) -> bool:
    """Pointwise order on rank-n values."""
    if n == 0:
        return x <= y
    return all(idx_leq(n - 1, a, b) for a, b in zip(x, y))


@lru_cache(maxsize=None)
def idx_leq(n: int, i: int, j: int) -> bool:
    return tbl_leq(n, val(n, i), val(n, j))


def tbl_join(n: int, x, y):
    if n == 0:
        return x | y
    return tuple(idx_of(n - 1, tbl_join(n - 1, val(n - 1, a), val(n - 1, b)))
                 for a, b in zip(x, y))


def bottom_val(n: int):
    return 0 if n == 0 else level(n)[0]


def top_val(n: int):
    return 1 if n == 0 else level(n)[-1]


@dataclass(frozen=True)
class FinLattice:
    """Convenience view of one rank: elements in canonical order plus the
    order and join as functions of indices."""
    rank: int
    elements: tuple

    @classmethod
    def at(cls, n: int) -> "FinLattice":
        return cls(n, level(n))

    def leq(self, i: int, j: int) -> bool:
        return idx_leq(self.rank, i, j)

    def join(self, i: int, j: int) -> int:
        return idx_of(self.rank, tbl_join(self.rank, val(self.rank, i),
                                          val(self.rank, j)))

    def meet(self, i: int, j: int) -> int:
        # greatest lower bound by scan; the lattice is finite
        best = 0
        for k in range(len(self.elements)):
            if self.leq(k, i) and self.leq(k, j) and self.leq(best, k):
                best = k
        return best

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1


# --------------------------------------------------------------------------
# Projection pairs
# --------------------------------------------------------------------------

def phi_tbl(n: int, a):
    """The rank-raising half: D_n -> D_{n+1}."""
    if n == 0:
        return (a, a)  # the constant map
    out = []
    for i in range(level_size(n)):
        f = val(n, i)
        x = psi_tbl(n - 1, f)
        e = a[idx_of(n - 1, x)]
        out.append(idx_of(n, phi_tbl(n - 1, val(n - 1, e))))
    return tuple(out)


def psi_tbl(n: int, f):
    """The rank-lowering half: D_{n+1} -> D_n."""
    if n == 0:
        return f[0]  # evaluate at bottom
    out = []
    for i in range(level_size(n - 1)):
        x = val(n - 1, i)
        k = idx_of(n, phi_tbl(n - 1, x))
        out.append(idx_of(n - 1, psi_tbl(n - 1, val(n, f[k]))))
    return tuple(out)


# --------------------------------------------------------------------------
# Limit elements
# --------------------------------------------------------------------------

class DElem:
    """A lazily materialised family of per-rank components.

    ``fn(n)`` supplies the component at ranks >= home; below home the
    component is the downward projection of the one above.  ``tag`` is
    "exact" for elements whose family is coherent by construction and
    "cc-truncated" for elements built from the truncated control-operator
    join, where comparisons are at-rank evidence only.
    """

    __slots__ = ("home", "tag", "_fn", "_memo")

    def __init__(self, home: int, fn: Callable[[int], object],
                 tag: str = "exact"):
        self.home = home
        self.tag = tag
        self._fn = fn
        self._memo: dict[int, object] = {}

    def component(self, n: int):
        if n < 0:
            raise UsageError("negative rank")
        if n > rank_cap():
            raise RankCapError(f"component({n}) exceeds the rank cap {rank_cap()}")
        if n not in self._memo:
            if n >= self.home:
                self._memo[n] = self._fn(n)
            else:
                self._memo[n] = psi_tbl(n, self.component(n + 1))
        return self._memo[n]

    def __repr__(self):
        shown = {n: self._memo[n] for n in sorted(self._memo)}
        return f"DElem(home={self.home}, tag={self.tag}, computed={shown})"


def elem(home: int, v) -> DElem:
    """The coherent family through a single rank-`home` value, raised by
    phi above and projected by psi below."""
    e = DElem(home, None)

    def fn(n: int):
        if n == home:
            return v
        return phi_tbl(n - 1, e.component(n - 1))

    e._fn = fn
    return e


def embed(v, n: int) -> DElem:
    return elem(n, v)


def project(x: DElem, n: int):
    return x.component(n)


def bottom() -> DElem:
    return elem(0, 0)


def top() -> DElem:
    return elem(0, 1)


def join(*xs: DElem) -> DElem:
    """Componentwise join; coherent because the projections preserve
    finite joins."""
    if not xs:
        return bottom()
    tag = "exact" if all(x.tag == "exact" for x in xs) else "cc-truncated"
    # keep the highest home so lower components come from projections
    home = max(x.home for x in xs)

    def fn(n: int):
        acc = xs[0].component(n)
        for x in xs[1:]:
            acc = tbl_join(n, acc, x.component(n))
        return acc

    return DElem(home, fn, tag)


def leq(x: DElem, y: DElem, rank: int) -> bool:
    """Order comparison of all components up to the given rank.  Sound
    globally for exact elements; at-rank evidence for truncated ones."""
    return all(tbl_leq(n, x.component(n), y.component(n))
               for n in range(rank + 1))


def eq_at(x: DElem, y: DElem, rank: int) -> bool:
    return all(x.component(n) == y.component(n) for n in range(rank + 1))


def arrow(x: DElem, y: DElem) -> DElem:
    """The least element whose applicative behaviour sends x above y: at
    each rank above its home it is the step table v |-> y if v >= x,
    bottom otherwise."""
    if x.tag != "exact" or y.tag != "exact":
        raise UsageError("arrow needs exact arguments")
    h = max(x.home, y.home) + 1

    def fn(n: int):
        xc = x.component(n - 1)
        yi = idx_of(n - 1, y.component(n - 1))
        return tuple(
            yi if tbl_leq(n - 1, xc, val(n - 1, i)) else 0
            for i in range(level_size(n - 1)))

    return DElem(h, fn, "exact")


def app(f: DElem, a: DElem) -> DElem:
    """Application through the retraction: the rank-n component reads the
    rank-(n+1) table of f at the rank-n component of a."""
    tag = "exact" if f.tag == a.tag == "exact" else "cc-truncated"

    def fn(n: int):
        ft = f.component(n + 1)
        return val(n, ft[idx_of(n, a.component(n))])

    return DElem(0, fn, tag)


def lam(body: Callable[[DElem], DElem], tag: str = "exact") -> DElem:
    """Abstraction through the retraction: the rank-(n+1) table maps each
    rank-n value v to the rank-n component of body at the embedding of v.
    The body must be monotone at the ranks used (checked)."""

    def fn(n: int):
        if n == 0:
            return body(bottom()).component(0)
        m = level_size(n - 1)
        tbl = tuple(idx_of(n - 1, body(elem(n - 1, val(n - 1, i)))
                           .component(n - 1))
                    for i in range(m))
        for i in range(m):
            for j in range(m):
                if idx_leq(n - 1, i, j) and not idx_leq(n - 1, tbl[i], tbl[j]):
                    raise UsageError("non-monotone abstraction body")
        return tbl

    return DElem(0, fn, tag)


def cc_elem(n_prime: int = 0) -> DElem:
    """Truncated control-operator element: the join of the dominance
    pattern ((b -> c) -> b) -> b over all b, c of rank n_prime.  The full
    element joins over the whole limit, so this is a lower bound."""
    if n_prime > rank_cap() - 3:
        raise RankCapError(
            f"cc truncation {n_prime} needs rank {n_prime + 3} > cap {rank_cap()}")
    parts = []
    for bi in range(level_size(n_prime)):
        b = elem(n_prime, val(n_prime, bi))
        for ci in range(level_size(n_prime)):
            c = elem(n_prime, val(n_prime, ci))
            parts.append(arrow(arrow(arrow(b, c), b), b))
    out = join(*parts)
    out.tag = "cc-truncated"
    return out


# --------------------------------------------------------------------------
# Denotation of machine terms
# --------------------------------------------------------------------------

def denote(t: LcTerm, env: Mapping[str, DElem] | None = None, *,
           cc_trunc: int = 0) -> DElem:
    """Denotation of a machine term.  Variables come from env; tagged,
    raw-restricted and raw-unrestricted instructions denote bottom; a
    stack constant denotes the term that replays its entries."""
    env = dict(env or {})

    def go(t: LcTerm, env: dict[str, DElem]) -> DElem:
        if isinstance(t, LVar):
            try:
                return env[t.name]
            except KeyError:
                raise UsageError(f"unbound variable {t.name!r}") from None
        if isinstance(t, App):
            return app(go(t.fn, env), go(t.arg, env))
        if isinstance(t, Lam):
            def body(d: DElem, t=t, env=dict(env)) -> DElem:
                env2 = dict(env)
                env2[t.var] = d
                return go(t.body, env2)
            return lam(body)
        if isinstance(t, Cc):
            return cc_elem(cc_trunc)
        if isinstance(t, (Gamma, Zeta, Eta)):
            return bottom()
        if isinstance(t, Kont):
            entries = stack_to_list(t.stack)
            avoid = set()
            for u in entries:
                avoid |= free_lvars(u)
            y = "y"
            while y in avoid:
                y += "'"
            expansion: LcTerm = LVar(y)
            for u in entries:
                expansion = App(expansion, u)
            return go(Lam(y, expansion), env)
        raise TypeError(f"not a term: {t!r}")

    return go(t, env)


# --------------------------------------------------------------------------
# Denotation and synthesis of closed formulas
# --------------------------------------------------------------------------

def denote_formula(A: Formula) -> DElem:
    """Denotation of a closed formula: a true inequation is bottom and a
    false one top; implication is the step function; a quantifier is the
    join of its two instances."""
    if free_vars(A):
        raise UsageError("denote_formula needs a closed formula")
    if isinstance(A, Neq):
        truth = eval_term_01(A.lhs, {}) != eval_term_01(A.rhs, {})
        return bottom() if truth else top()
    if isinstance(A, Impl):
        return arrow(denote_formula(A.ante), denote_formula(A.cons))
    if isinstance(A, Forall):
        return join(denote_formula(subst_formula(A.body, [A.var], [ZERO])),
                    denote_formula(subst_formula(A.body, [A.var], [ONE])))
    raise TypeError(f"not a formula: {A!r}")


def _famcode(n: int, g: Callable[[tuple[int, ...]], object],
             us: tuple[str, ...], fresh) -> Formula:
    """A formula in the variables us whose denotation at each 0/1
    instantiation of us is the rank-n value g(bits).

    Rank 0 values are coded by an inequation against 0 whose left side is
    the truth table sending bits to 1 exactly when g(bits) is bottom.
    Rank n+1 values are coded as a quantified implication whose selector
    variables sweep the rank-n values: the instance at selector index s is
    (code of value_s) -> (code of g(bits) applied to value_s), and the
    join of those step functions is g(bits) itself."""
    if n == 0:
        return Neq(table_term(lambda bits: 1 if g(bits) == 0 else 0, us), ZERO)
    m = level_size(n - 1)
    r = max(1, math.ceil(math.log2(max(m, 2))))
    vs = tuple(next(fresh) for _ in range(r))

    def sel(vbits: tuple[int, ...]) -> int:
        i = 0
        for b in vbits:
            i = (i << 1) | b
        return min(i, m - 1)  # padding indices repeat the top value

    def h_b(bits: tuple[int, ...]):
        return val(n - 1, sel(bits[len(us):]))

    def h_c(bits: tuple[int, ...]):
        table = g(bits[:len(us)])
        return val(n - 1, table[sel(bits[len(us):])])

    body = Impl(_famcode(n - 1, h_b, us + vs, fresh),
                _famcode(n - 1, h_c, us + vs, fresh))
    return forall_many(vs, body)


def theta(alpha: DElem) -> Formula:
    """A closed formula whose denotation is the given exact element."""
    if alpha.tag != "exact":
        raise UsageError("theta needs an exact element")
    n = alpha.home
    v = alpha.component(n)
    if n == 0:
        return Neq(ZERO, ONE) if v == 0 else Neq(ZERO, ZERO)
    counter = itertools.count()
    fresh = (f"u{i}" for i in counter)
    return _famcode(n, lambda bits: v, (), fresh)


# --------------------------------------------------------------------------
# Term search and the sequentialisability check
# --------------------------------------------------------------------------

def _debruijn_terms(size: int, depth: int, allow_cc: bool):
    """Closed term skeletons of exactly the given size; variables cost 1,
    abstraction and application cost 1 plus their parts."""
    if size <= 0:
        return
    if size == 1:
        for i in range(depth):
            yield ("v", i)
        if allow_cc:
            yield ("cc",
)
    for body_size in (size - 1,
):
        if body_size >= 1:
            for b in _debruijn_terms(body_size, depth + 1, allow_cc):
                yield ("l", b)
    for left in range(1, size - 1):
        for f in _debruijn_terms(left, depth, allow_cc):
            for a in _debruijn_terms(size - 1 - left, depth, allow_cc):
                yield ("a", f, a)


def _skeleton_to_term(sk) -> LcTerm:
    def go(sk, depth: int) -> LcTerm:
        if sk[0] == "v":
            return LVar(f"x{depth - 1 - sk[1]}")
        if sk[0] == "cc":
            return CC
        if sk[0] == "l":
            return Lam(f"x{depth}", go(sk[1], depth + 1))
        return App(go(sk[1], depth), go(sk[2], depth))
    return go(sk, 0)


def term_search(alpha: DElem, size_budget: int = 5, work_rank: int = 2,
                *, cc_trunc: int = 0) -> LcTerm | None:
    """First closed machine term (abstraction, application, control
    operator) whose denotation dominates alpha at work_rank.  Terms
    without the control operator are tried first at every size."""
    rank = min(work_rank, rank_cap())
    for allow_cc in (False, True):
        for size in range(1, size_budget + 1):
            for sk in _debruijn_terms(size, 0, allow_cc):
                if allow_cc and not _uses_cc(sk):
                    continue  # already tried in the pure pass
                t = _skeleton_to_term(sk)
                try:
                    if leq(alpha, denote(t, cc_trunc=cc_trunc), rank):
                        return t
                except RankCapError:
                    continue
    return None


def _uses_cc(sk) -> bool:
    if sk[0] == "cc":
        return True
    if sk[0] == "l":
        return _uses_cc(sk[1])
    if sk[0] == "a":
        return _uses_cc(sk[1]) or _uses_cc(sk[2])
    return False


@dataclass(frozen=True)
class SeqVerdict:
    status: str                 # "sequentialisable" | "not-sequentialisable" | "unknown"
    witness: LcTerm | None = None
    validity: Verdict | None = None
    detail: str = ""


def seq_check(alpha: DElem, *, family=DEFAULT_FAMILY, search_budget: int = 5,
              work_rank: int = 2, cc_trunc: int = 0) -> SeqVerdict:
    """Is some closed machine term denoted at or above alpha?  Equivalent
    to truth of the synthesized formula in every Boolean algebra with at
    least two elements, which is decided as far as the validity layer
    allows; a dominance witness (searched term, or the truncated control
    element) corroborates or settles the positive side."""
    A = theta(alpha)
    v = valid_all_bas(A, family)
    if v.is_refuted:
        return SeqVerdict("not-sequentialisable", validity=v)
    if v.is_valid:
        w = term_search(alpha, search_budget, work_rank, cc_trunc=cc_trunc)
        if w is None and _cc_dominates(alpha, cc_trunc):
            w = CC
        return SeqVerdict("sequentialisable", witness=w, validity=v,
                          detail="" if w else "no witness within budget")
    # Validity undecided: a dominance witness still settles the question.
    if _cc_dominates(alpha, cc_trunc):
        return SeqVerdict("sequentialisable", witness=CC, validity=v,
                          detail="dominated by the truncated control element")
    w = term_search(alpha, search_budget, work_rank, cc_trunc=cc_trunc)
    if w is not None:
        return SeqVerdict("sequentialisable", witness=w, validity=v,
                          detail="search witness; validity layer undecided")
    return SeqVerdict("unknown", validity=v, detail=v.detail)


def _cc_dominates(alpha: DElem, cc_trunc: int) -> bool:
    try:
        return leq(alpha, cc_elem(cc_trunc), min(alpha.home, rank_cap()))
    except RankCapError:
        return False
