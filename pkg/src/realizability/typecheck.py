"""Checker for explicit typing derivations over eight rules.

The rule set (abstraction, application, quantifier introduction and
elimination, context axiom, the control-operator axiom, inequation
substitution and inequation elimination) is not syntax-directed, so
derivations are explicit input trees and the checker verifies each node,
reporting the path of the first offending node.  Judgements are compared
up to context permutation and alpha-equivalence of formulas and subjects.

Also here: the admissible equality-elimination macro cc (\\k. x (k t)),
a builder for its full derivation, and a weakening transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from .formulas import (
    BTerm, Formula, Forall, Impl, Neq, UsageError, ZERO, alpha_eq,
    canon, free_vars, subst_formula, term_vars,
)
from .lcterms import (
    App, CC, Cc, LVar, Lam, LcTerm, free_lvars, lc_alpha_eq,
)

RULES = ("Abs", "App", "ForallIntro", "ForallElim", "Axiom", "Peirce",
         "NeqSubst", "NeqElim")
_ARITY = {"Abs": 1, "App": 2, "ForallIntro": 1, "ForallElim": 1,
          "Axiom": 0, "Peirce": 0, "NeqSubst": 1, "NeqElim": 1}

Context = tuple[tuple[str, Formula], ...]


class TypingError(Exception):
    def __init__(self, path: str, msg: str):
        super().__init__(f"at {path}: {msg}")
        self.path = path
        self.msg = msg


@dataclass(frozen=True)
class Judgement:
    context: Context
    subject: LcTerm
    type: Formula

    def __post_init__(self):
        names = [x for x, _ in self.context]
        if len(set(names)) != len(names):
            raise UsageError("context variables must be pairwise distinct")
        if not free_lvars(self.subject) <= set(names):
            raise UsageError("subject has free variables outside the context")


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: tuple["Derivation", ...]
    conclusion: Judgement
    rule_data: object = None

    def __post_init__(self):
        if self.rule not in RULES:
            raise UsageError(f"unknown rule {self.rule!r}")
        if len(self.premises) != _ARITY[self.rule]:
            raise UsageError(
                f"{self.rule} takes {_ARITY[self.rule]} premises, "
                f"got {len(self.premises)}")


def _ctx_map(ctx: Context) -> dict[str, Formula]:
    return {x: canon(A) for x, A in ctx}


def ctx_eq(c1: Context, c2: Context) -> bool:
    return _ctx_map(c1) == _ctx_map(c2)


def judgement_eq(j1: Judgement, j2: Judgement) -> bool:
    return (ctx_eq(j1.context, j2.context)
            and lc_alpha_eq(j1.subject, j2.subject)
            and alpha_eq(j1.type, j2.type))


def _require(cond: bool, path: str, msg: str):
    if not cond:
        raise TypingError(path, msg)


def check_derivation(d: Derivation, path: str = "root") -> Judgement:
    """Verify every node and return the root conclusion."""
    for i, p in enumerate(d.premises):
        check_derivation(p, f"{path}.{i}")
    c = d.conclusion
    ctx = c.context

    if d.rule == "Axiom":
        hit = any(c.subject == LVar(x) and alpha_eq(A, c.type)
                  for x, A in ctx)
        _require(hit, path, "subject is not a context entry of this type")

    elif d.rule == "Peirce":
        _require(isinstance(c.subject, Cc), path, "subject must be cc")
        t = c.type
        ok = (isinstance(t, Impl) and isinstance(t.ante, Impl)
              and isinstance(t.ante.ante, Impl)
              and alpha_eq(t.ante.ante.ante, t.ante.cons)
              and alpha_eq(t.ante.cons, t.cons))
        _require(ok, path, "type is not of the shape ((A -> B) -> A) -> A")

    elif d.rule == "Abs":
        _require(isinstance(c.subject, Lam), path, "subject must be an abstraction")
        _require(isinstance(c.type, Impl), path, "type must be an implication")
        x = c.subject.var
        _require(all(y != x for y, _ in ctx), path,
                 f"abstracted variable {x} already occurs in the context")
        want = Judgement(ctx + ((x, c.type.ante),
), c.subject.body, c.type.cons)
        _require(judgement_eq(d.premises[0].conclusion, want), path,
                 "premise does not extend the context by the bound variable")

    elif d.rule == "App":
        _require(isinstance(c.subject, App), path, "subject must be an application")
        p1, p2 = d.premises[0].conclusion, d.premises[1].conclusion
        _require(ctx_eq(p1.context, ctx) and ctx_eq(p2.context, ctx), path,
                 "premise contexts differ from the conclusion context")
        _require(lc_alpha_eq(p1.subject, c.subject.fn)
                 and lc_alpha_eq(p2.subject, c.subject.arg), path,
                 "premise subjects do not split the application")
        _require(isinstance(p1.type, Impl), path,
                 "function premise type must be an implication")
        _require(alpha_eq(p1.type.ante, p2.type), path,
                 "argument type does not match the implication domain")
        _require(alpha_eq(p1.type.cons, c.type), path,
                 "conclusion type does not match the implication codomain")

    elif d.rule == "ForallIntro":
        p = d.premises[0].conclusion
        _require(isinstance(c.type, Forall), path, "type must be quantified")
        z = c.type.var
        _require(ctx_eq(p.context, ctx), path, "context must be unchanged")
        _require(lc_alpha_eq(p.subject, c.subject), path,
                 "subject must be unchanged")
        _require(alpha_eq(c.type.body, p.type), path,
                 "quantifier body does not match the premise type")
        _require(all(z not in free_vars(A) for _, A in ctx), path,
                 f"side condition violated: {z} is free in the context")

    elif d.rule == "ForallElim":
        p = d.premises[0].conclusion
        b = d.rule_data
        _require(isinstance(b, BTerm), path,
                 "rule_data must be the instantiating term")
        _require(isinstance(p.type, Forall), path,
                 "premise type must be quantified")
        _require(ctx_eq(p.context, ctx), path, "context must be unchanged")
        _require(lc_alpha_eq(p.subject, c.subject), path,
                 "subject must be unchanged")
        inst = subst_formula(p.type.body, [p.type.var], [b])
        _require(alpha_eq(c.type, inst), path,
                 "conclusion type is not the instantiated quantifier body")

    elif d.rule == "NeqSubst":
        p = d.premises[0].conclusion
        _require(isinstance(d.rule_data, tuple) and len(d.rule_data) == 4,
                 path, "rule_data must be (z, a, b, context template)")
        z, a, b, template = d.rule_data
        _require(isinstance(c.type, Neq) and c.type.lhs == a
                 and c.type.rhs == b, path,
                 "conclusion type must be the inequation a != b")
        _require(alpha_eq(p.type, c.type), path, "type must be unchanged")
        _require(lc_alpha_eq(p.subject, c.subject), path,
                 "subject must be unchanged")
        _require(z not in term_vars(a) | term_vars(b), path,
                 f"substituted variable {z} occurs in the inequation sides")
        want_p = tuple((x, subst_formula(A, [z], [a])) for x, A in template)
        want_c = tuple((x, subst_formula(A, [z], [b])) for x, A in template)
        _require(ctx_eq(p.context, want_p), path,
                 "premise context is not the a-instance of the template")
        _require(ctx_eq(ctx, want_c), path,
                 "conclusion context is not the b-instance of the template")

    elif d.rule == "NeqElim":
        p = d.premises[0].conclusion
        _require(ctx_eq(p.context, ctx), path, "context must be unchanged")
        _require(lc_alpha_eq(p.subject, c.subject), path,
                 "subject must be unchanged")
        _require(isinstance(p.type, Neq) and p.type.lhs == p.type.rhs, path,
                 "premise type must be a reflexive inequation a != a")

    return c


# --------------------------------------------------------------------------
# Weakening
# --------------------------------------------------------------------------

def _all_lvars(d: Derivation) -> set[str]:
    out = set()

    def lterm(t: LcTerm):
        if isinstance(t, LVar):
            out.add(t.name)
        elif isinstance(t, App):
            lterm(t.fn)
            lterm(t.arg)
        elif isinstance(t, Lam):
            out.add(t.var)
            lterm(t.body)

    def go(d: Derivation):
        for x, _ in d.conclusion.context:
            out.add(x)
        lterm(d.conclusion.subject)
        for p in d.premises:
            go(p)

    go(d)
    return out


def weaken(d: Derivation, x: str, A: Formula) -> Derivation:
    """Add an unused context entry x : A to every judgement of an accepted
    derivation; the result is again accepted."""
    if x in _all_lvars(d):
        raise UsageError(f"weakening variable {x} occurs in the derivation")
    rule_data = d.rule_data
    if d.rule == "NeqSubst":
        z, a, b, template = rule_data
        if z in free_vars(A):
            raise UsageError(
                f"weakening formula must not contain the substituted variable {z}")
        rule_data = (z, a, b, template + ((x, A),
))
    c = d.conclusion
    return Derivation(
        d.rule,
        tuple(weaken(p, x, A) for p in d.premises),
        Judgement(c.context + ((x, A),
), c.subject, c.type),
        rule_data)


# --------------------------------------------------------------------------
# The equality-elimination macro and its derivation
# --------------------------------------------------------------------------

def eq_elim_macro(x: str, t: LcTerm, k: str = "k") -> LcTerm:
    """cc (\\k. x (k t)): turns a proof of A[z := a] and a hypothesis
    a = b into a proof of A[z := b]."""
    return App(CC, Lam(k, App(LVar(x), App(LVar(k), t))))


def _eq(a: BTerm, b: BTerm) -> Formula:
    return Impl(Neq(a, b), Neq(ZERO, ZERO))


def eq_elim_derivation(d: Derivation, z: str, a: BTerm, b: BTerm,
                       A: Formula) -> Derivation:
    """Derivation of Gamma, x : a=b |- cc (\\k. x (k t)) : A[z := b] from
    a derivation d of Gamma |- t : A[z := a].

    A is the template with z free; z must not occur in a, b or Gamma.
    The tree instantiates the admissible rule: weaken by x and k, apply k
    to t, rewrite the context hypothesis on k along a = b, refute with x,
    eliminate the reflexive inequation, abstract k and cut with the
    control-operator axiom.
    """
    c = d.conclusion
    gamma = c.context
    t = c.subject
    a_inst = subst_formula(A, [z], [a])
    b_inst = subst_formula(A, [z], [b])
    if not alpha_eq(c.type, a_inst):
        raise UsageError("derivation does not conclude the a-instance of A")
    bad = term_vars(a) | term_vars(b)
    bad |= set().union(set(), *(free_vars(F) for _, F in gamma))
    if z in bad:
        raise UsageError(f"{z} must not occur in a, b or the context")

    used = _all_lvars(d) | {z}
    def fresh(base: str) -> str:
        name = base
        while name in used:
            name += "'"
        used.add(name)
        return name
    x = fresh("x")
    k = fresh("k")

    eq_ab = _eq(a, b)
    hyp_a = Impl(a_inst, Neq(a, b))     # the k-hypothesis at the a-instance
    hyp_tmpl = Impl(A, Neq(a, b))       # its template in z
    hyp_b = Impl(b_inst, Neq(a, b))

    d0 = weaken(weaken(d, x, eq_ab), k, hyp_a)
    ctx_a = gamma + ((x, eq_ab), (k, hyp_a))
    ctx_b = gamma + ((x, eq_ab), (k, hyp_b))

    ax_k = Derivation("Axiom", (), Judgement(ctx_a, LVar(k), hyp_a))
    kt_a = Derivation("App", (ax_k, d0),
                      Judgement(ctx_a, App(LVar(k), t), Neq(a, b)))
    template = gamma + ((x, eq_ab), (k, hyp_tmpl))
    kt_b = Derivation("NeqSubst", (kt_a,
),
                      Judgement(ctx_b, App(LVar(k), t), Neq(a, b)),
                      rule_data=(z, a, b, template))
    ax_x = Derivation("Axiom", (), Judgement(ctx_b, LVar(x), eq_ab))
    xkt_bot = Derivation("App", (ax_x, kt_b),
                         Judgement(ctx_b, App(LVar(x), App(LVar(k), t)),
                                   Neq(ZERO, ZERO)))
    xkt_b = Derivation("NeqElim", (xkt_bot,
),
                       Judgement(ctx_b, App(LVar(x), App(LVar(k), t)), b_inst))
    ctx_xb = gamma + ((x, eq_ab),
)
    lam_k = Derivation("Abs", (xkt_b,
),
                       Judgement(ctx_xb, Lam(k, App(LVar(x), App(LVar(k), t))),
                                 Impl(hyp_b, b_inst)))
    peirce = Derivation("Peirce", (),
                        Judgement(ctx_xb, CC,
                                  Impl(Impl(hyp_b, b_inst), b_inst)))
    return Derivation("App", (peirce, lam_k),
                      Judgement(ctx_xb, eq_elim_macro(x, t, k), b_inst))


# --------------------------------------------------------------------------
# Text format for derivations
# --------------------------------------------------------------------------
#
# (RuleName
#   [(term "<b-term>")]                              ; ForallElim data
#   [(subst z "<a>" "<b>" ((x "<F>") ...))]          ; NeqSubst data
#   (premises <node> ...)
#   (judgement ((x "<formula>") ...) "<term>" "<formula>"))

def _sexpr_tokens(src: str):
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            yield ch
            i += 1
        elif ch == '"':
            j = src.index('"', i + 1)
            yield ("str", src[i + 1:j])
            i = j + 1
        elif ch == ";":
            i = src.index("\n", i) if "\n" in src[i:] else len(src)
        else:
            j = i
            while j < len(src) and not src[j].isspace() and src[j] not in '()";':
                j += 1
            yield ("atom", src[i:j])
            i = j
    yield ("eof", "")


def _read_sexpr(toks):
    tok = next(toks)
    if tok == "(":
        out = []
        while True:
            tok2 = next(toks)
            if tok2 == ")":
                return out
            out.append(_read_back(tok2, toks))
    return _read_back(tok, toks)


def _read_back(tok, toks):
    if tok == "(":
        out = []
        while True:
            tok2 = next(toks)
            if tok2 == ")":
                return out
            out.append(_read_back(tok2, toks))
    if isinstance(tok, tuple):
        return tok
    raise UsageError(f"unexpected token {tok!r} in derivation text")


def parse_derivation(src: str) -> Derivation:
    from .syntax import parse_bterm, parse_formula, parse_lcterm

    def ctx_of(form) -> Context:
        out = []
        for entry in form:
            (_, name), (_, fsrc) = entry
            out.append((name, parse_formula(fsrc)))
        return tuple(out)

    def node(form) -> Derivation:
        if not form or form[0][0] != "atom":
            raise UsageError("derivation node must start with a rule name")
        rule = form[0][1]
        rule_data = None
        premises: tuple[Derivation, ...] = ()
        judgement = None
        for part in form[1:]:
            head = part[0][1]
            if head == "term":
                rule_data = parse_bterm(part[1][1])
            elif head == "subst":
                (_, z), (_, asrc), (_, bsrc) = part[1], part[2], part[3]
                rule_data = (z, parse_bterm(asrc), parse_bterm(bsrc),
                             ctx_of(part[4]))
            elif head == "premises":
                premises = tuple(node(sub) for sub in part[1:])
            elif head == "judgement":
                ctx = ctx_of(part[1])
                subject = parse_lcterm(part[2][1])
                ftype = parse_formula(part[3][1])
                judgement = Judgement(ctx, subject, ftype)
            else:
                raise UsageError(f"unknown derivation block {head!r}")
        if judgement is None:
            raise UsageError(f"rule {rule} has no judgement block")
        return Derivation(rule, premises, judgement, rule_data)

    toks = _sexpr_tokens(src)
    form = _read_sexpr(toks)
    tail = next(toks)
    if tail != ("eof", ""):
        raise UsageError("trailing input after derivation")
    return node(form)
