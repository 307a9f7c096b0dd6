"""Truth of first-order formulas in concrete Boolean algebras.

Two families of algebras are supported: the finite powerset algebras
{0,1}^k and the countable atomless algebra.  The model checker keeps a
partition of the unit into minterm cells of the quantified variables and
records only the size of each cell (an exact count for the finite
algebras, zero-or-infinite for the atomless one).  A term then denotes a
set of cells, an inequation holds when the symmetric difference contains
a cell of nonzero size, and a universal quantifier ranges over all splits
of every cell.  Sizes determine the isomorphism type of the partition, so
this is complete for the supported algebras.

On top sits a three-valued validity layer for "true in every Boolean
algebra with at least two elements": complete fragments (ground sentences,
Horn clauses, propositional tautologies over inequation atoms) plus a
configurable refutation family.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .formulas import (
    Formula, Forall, HornKind, Impl, Neq, UsageError, canon, classify_horn,
    eval_formula_01, eval_term_01, free_vars, is_ground,
)


@dataclass(frozen=True)
class BASpec:
    pass


@dataclass(frozen=True)
class PowerFinite(BASpec):
    atoms: int

    def __post_init__(self):
        if self.atoms < 1:
            raise UsageError("PowerFinite needs at least one atom")

    def __str__(self):
        return f"PowerFinite({self.atoms})"


@dataclass(frozen=True)
class Atomless(BASpec):
    def __str__(self):
        return "Atomless"


DEFAULT_FAMILY: tuple[BASpec, ...] = (
    PowerFinite(1), PowerFinite(2), PowerFinite(3), PowerFinite(4), Atomless(),
)


class GuardExceeded(Exception):
    """A cost guard (atom count or quantifier depth) was hit."""


# Cell sizes: exact naturals for PowerFinite, 0 or math.inf for Atomless.
# Cells are indexed by bitmasks over the current quantified-variable list
# (bit i belongs to the i-th innermost-to-outermost... actually to the i-th
# variable bound so far, in binding order).

def _splits(size, atomless: bool):
    if atomless:
        if size == 0:
            return ((0, 0),)
        return ((math.inf, math.inf), (math.inf, 0), (0, math.inf))
    return tuple((i, size - i) for i in range(size + 1))


@dataclass
class CellState:
    vars: list[str]
    sizes: dict[int, object]   # mask -> int or math.inf

    @classmethod
    def initial(cls, spec: BASpec) -> "CellState":
        if isinstance(spec, PowerFinite):
            return cls([], {0: spec.atoms})
        return cls([], {0: math.inf})


def _term_cells(a, env: Mapping[str, int], masks: Iterable[int],
                nvars: int) -> frozenset[int]:
    """The set of cells contained in the value of a term.  env maps each
    variable name to its bit position."""
    out = []
    for mask in masks:
        bits = {name: (mask >> pos) & 1 for name, pos in env.items()}
        if eval_term_01(a, bits):
            out.append(mask)
    return frozenset(out)


def model_check(A: Formula, spec: BASpec, *, max_atoms: int = 6,
                max_depth: int = 6, trace: list[str] | None = None) -> bool:
    """Truth of a closed formula in the denoted algebra."""
    if free_vars(A):
        raise UsageError(f"model_check needs a closed formula, free: {sorted(free_vars(A))}")
    atomless = isinstance(spec, Atomless)
    if isinstance(spec, PowerFinite) and spec.atoms > max_atoms:
        raise GuardExceeded(f"{spec.atoms} atoms exceeds the guard of {max_atoms}")

    def go(f: Formula, env: dict[str, int], cells: CellState) -> bool:
        if isinstance(f, Neq):
            masks = cells.sizes.keys()
            sa = _term_cells(f.lhs, env, masks, len(cells.vars))
            sb = _term_cells(f.rhs, env, masks, len(cells.vars))
            hit = any(cells.sizes[m] for m in sa ^ sb)
            if not hit and trace is not None:
                trace.append(f"inequation fails on cell sizes {cells.sizes}")
            return hit
        if isinstance(f, Impl):
            return (not go(f.ante, env, cells)) or go(f.cons, env, cells)
        if isinstance(f, Forall):
            pos = len(cells.vars)
            if pos + 1 > max_depth:
                raise GuardExceeded(
                    f"quantifier depth {pos + 1} exceeds the guard of {max_depth}")
            env2 = dict(env)
            env2[f.var] = pos
            masks = sorted(cells.sizes)
            options = [_splits(cells.sizes[m], atomless) for m in masks]
            for combo in itertools.product(*options):
                sizes = {}
                for m, (s0, s1) in zip(masks, combo):
                    sizes[m] = s0              # bit pos = 0: outside z
                    sizes[m | (1 << pos)] = s1  # bit pos = 1: inside z
                sub = CellState(cells.vars + [f.var], sizes)
                if not go(f.body, env2, sub):
                    if trace is not None:
                        picked = {m: combo[i] for i, m in enumerate(masks)}
                        trace.append(
                            f"forall {f.var}: failing split {picked}")
                    return False
            return True
        raise TypeError(f"not a formula: {f!r}")

    return go(A, {}, CellState.initial(spec))


def brute_check(A: Formula, k: int, *, max_k: int = 3) -> bool:
    """Truth in {0,1}^k by direct enumeration; elements are k-bit masks."""
    if free_vars(A):
        raise UsageError("brute_check needs a closed formula")
    if not 1 <= k <= max_k:
        raise UsageError(f"brute_check supports 1 <= k <= {max_k}, got {k}")
    full = (1 << k) - 1

    def term(a, env: dict[str, int]) -> int:
        from .formulas import And, Not, One, Or, Var, Zero
        if isinstance(a, Var):
            return env[a.name]
        if isinstance(a, Zero):
            return 0
        if isinstance(a, One):
            return full
        if isinstance(a, Not):
            return full ^ term(a.arg, env)
        if isinstance(a, Or):
            return term(a.lhs, env) | term(a.rhs, env)
        if isinstance(a, And):
            return term(a.lhs, env) & term(a.rhs, env)
        raise TypeError(f"not a term: {a!r}")

    def go(f: Formula, env: dict[str, int]) -> bool:
        if isinstance(f, Neq):
            return term(f.lhs, env) != term(f.rhs, env)
        if isinstance(f, Impl):
            return (not go(f.ante, env)) or go(f.cons, env)
        if isinstance(f, Forall):
            saved = env.get(f.var)
            try:
                for v in range(full + 1):
                    env[f.var] = v
                    if not go(f.body, env):
                        return False
                return True
            finally:
                if saved is None:
                    env.pop(f.var, None)
                else:
                    env[f.var] = saved
        raise TypeError(f"not a formula: {f!r}")

    return go(A, {})


# --------------------------------------------------------------------------
# Validity in all Boolean algebras with at least two elements
# --------------------------------------------------------------------------

class Justification(Enum):
    GROUND = "ground"
    HORN = "horn"
    TAUTOLOGY = "tautology"
    FAMILY = "family-complete"


@dataclass(frozen=True)
class Verdict:
    status: str                       # "valid" | "refuted" | "unknown"
    justification: Justification | None = None
    witness: BASpec | None = None
    trace: tuple[str, ...] = ()
    detail: str = ""

    @property
    def is_valid(self) -> bool:
        return self.status == "valid"

    @property
    def is_refuted(self) -> bool:
        return self.status == "refuted"


def _strip_matrix(A: Formula) -> Formula:
    """Drop every quantifier of the canonical form, keeping the matrix."""
    if isinstance(A, Forall):
        return _strip_matrix(A.body)
    if isinstance(A, Impl):
        return Impl(_strip_matrix(A.ante), _strip_matrix(A.cons))
    return A


def is_prop_tautology(A: Formula, *, max_atoms: int = 14) -> bool:
    """Sound incomplete validity test: treat the inequation atoms of the
    quantifier-stripped matrix as independent propositional atoms and
    truth-table the implication structure.  Any truth-value assignment the
    atoms can take in some algebra is among those enumerated, so a
    tautology here is true in every Boolean algebra."""
    matrix = _strip_matrix(canon(A))
    atoms: list[Neq] = []
    fixed: dict[Neq, bool] = {}

    def collect(f: Formula):
        if isinstance(f, Neq):
            if f in atoms or f in fixed:
                return
            # pin atoms whose truth value is the same in every algebra
            if f.lhs == f.rhs:
                fixed[f] = False
            elif is_ground(f):
                fixed[f] = eval_formula_01(f, {}) == 1
            else:
                atoms.append(f)
        else:
            assert isinstance(f, Impl)
            collect(f.ante)
            collect(f.cons)

    collect(matrix)
    if len(atoms) > max_atoms:
        return False
    index = {a: i for i, a in enumerate(atoms)}

    def ev(f: Formula, bits: int) -> bool:
        if isinstance(f, Neq):
            if f in fixed:
                return fixed[f]
            return bool((bits >> index[f]) & 1)
        return (not ev(f.ante, bits)) or ev(f.cons, bits)

    return all(ev(matrix, bits) for bits in range(1 << len(atoms)))


def valid_all_bas(A: Formula, family: Sequence[BASpec] = DEFAULT_FAMILY, *,
                  family_complete: bool = False, max_atoms: int = 6,
                  max_depth: int = 6) -> Verdict:
    """Three-valued verdict on truth in every Boolean algebra with at
    least two elements."""
    if free_vars(A):
        raise UsageError("valid_all_bas needs a closed formula")
    if is_ground(A):
        # Ground terms land in the two-element subalgebra {0,1}, which
        # embeds in every algebra with at least two elements.
        if eval_formula_01(A):
            return Verdict("valid", Justification.GROUND)
        tr: list[str] = []
        model_check(A, PowerFinite(1), trace=tr)
        return Verdict("refuted", witness=PowerFinite(1), trace=tuple(tr))
    if classify_horn(A) is not HornKind.NOT_HORN:
        # Horn clauses transfer between {0,1} and every algebra >= 2.
        if eval_formula_01(A):
            return Verdict("valid", Justification.HORN)
        tr = []
        model_check(A, PowerFinite(1), trace=tr)
        return Verdict("refuted", witness=PowerFinite(1), trace=tuple(tr))
    if is_prop_tautology(A):
        return Verdict("valid", Justification.TAUTOLOGY)
    for spec in family:
        tr = []
        try:
            ok = model_check(A, spec, max_atoms=max_atoms,
                             max_depth=max_depth, trace=tr)
        except GuardExceeded as e:
            return Verdict("unknown", detail=f"guard: {e}")
        if not ok:
            return Verdict("refuted", witness=spec, trace=tuple(tr))
    if family_complete:
        return Verdict("valid", Justification.FAMILY)
    return Verdict("unknown", detail="family-passed")


# --------------------------------------------------------------------------
# Theory oracles
# --------------------------------------------------------------------------

@dataclass
class TheoryOracle:
    """Membership in the intersection of the complete theories of a family
    of Boolean algebras.  Such an intersection is closed under classical
    deduction, and every member algebra has at least two elements, so the
    background axioms all belong."""
    family: tuple[BASpec, ...] = DEFAULT_FAMILY
    max_atoms: int = 6
    max_depth: int = 6
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.family:
            raise UsageError("a theory oracle needs a nonempty family")
        self.family = tuple(self.family)

    def membership(self, A: Formula) -> bool:
        key = canon(A)
        if key not in self._cache:
            self._cache[key] = all(
                model_check(A, spec, max_atoms=self.max_atoms,
                            max_depth=self.max_depth)
                for spec in self.family)
        return self._cache[key]


def theory_contains(oracle: TheoryOracle, A: Formula) -> bool:
    return oracle.membership(A)
