import pytest

from realizability.bamodels import TheoryOracle
from realizability.formulas import (
    Forall, Impl, Neq, ONE, Or, Not, Var, ZERO, bot, eq,
)
from realizability.lcterms import (
    CC, EMPTY, Gamma, Lam, LVar, App, Process, constraint_of, fo_subst,
    is_proof_like, stack_of,
)
from realizability.pole import (
    ExplicitTheory, GammaClass, PoleConfig, canonical_falsity_stacks,
    constraint_check, gamma_classify, in_pole, in_pole_limit,
    realizes_bounded,
)
from realizability.syntax import parse_formula, parse_lcterm, parse_process


@pytest.fixture()
def cfg():
    return PoleConfig()


def test_false_tag_enters_at_one(cfg):
    assert in_pole_limit(parse_process("g{_|_} * []"), cfg) == 1


def test_true_tag_never_enters(cfg):
    p = parse_process("g{0 != 1} * []")
    assert in_pole_limit(p, cfg) is None
    for pi in ("cc . []", "g{_|_} . []"):
        assert in_pole_limit(parse_process(f"g{{0 != 1}} * {pi}"), cfg) is None


def test_implication_consumes_stack(cfg):
    # the refutable premise hands its obligation to the pushed term
    p = parse_process("g{_|_ -> _|_} * g{_|_} . []")
    assert in_pole_limit(p, cfg) == 2
    # a true premise generates no obligation at all
    q = parse_process("g{0 != 1 -> _|_} * g{_|_} . []")
    assert in_pole_limit(q, cfg) == 1


def test_machine_step_counts(cfg):
    p = parse_process("(\\x. x) g{_|_} * []")
    assert in_pole_limit(p, cfg) == 3


def test_cc_alone_absent(cfg):
    assert in_pole_limit(parse_process("cc * []"), cfg) is None


def test_cumulativity(cfg):
    p = parse_process("g{_|_} * []")
    for k in (1, 2, 5, 20):
        assert in_pole(p, k, cfg)
    assert not in_pole(p, 0, cfg)


def test_saturation_under_antireduction(cfg):
    # if a reduct is in the pole at k, the redex is in at k + steps
    q = parse_process("g{_|_} * []")
    p = parse_process("(\\x. \\y. x) g{_|_} (\\x. x) * []")
    kq = in_pole_limit(q, cfg)
    kp = in_pole_limit(p, cfg)
    assert kq is not None and kp is not None and kp > kq


def test_fo_subst_compat(cfg):
    p = Process(Gamma(Neq(Var("z"), ZERO)), EMPTY)
    q = fo_subst(p, ["z"], [ONE])
    assert q == Process(Gamma(Neq(ONE, ZERO)), EMPTY)
    assert in_pole_limit(q, cfg) is None
    r = fo_subst(p, ["z"], [ZERO])
    assert in_pole_limit(r, cfg) == 1


def test_forall_tag_obligations(cfg):
    # every 0/1 instance with a true head must discharge
    p = parse_process("g{forall z. z \\/ ~z != 0} * []")
    assert in_pole_limit(p, cfg) is None
    q = parse_process("g{forall z. z /\\ ~z != 0} * []")
    assert in_pole_limit(q, cfg) == 1


def test_gamma_classify():
    oracle = TheoryOracle()
    assert gamma_classify(bot(), oracle) == GammaClass.RESTRICTED
    assert gamma_classify(parse_formula("forall z. z != 0"), oracle) == GammaClass.RESTRICTED
    assert gamma_classify(parse_formula("0 != 1"), oracle) == GammaClass.UNRESTRICTED


def test_explicit_theory():
    th = ExplicitTheory([parse_formula("0 != 1")])
    assert th.membership(parse_formula("0 != 1"))
    assert not th.membership(parse_formula("1 != 0"))


def test_is_proof_like():
    assert is_proof_like(parse_lcterm("\\x. x cc"))
    assert is_proof_like(parse_lcterm("g{_|_}"))
    assert not is_proof_like(parse_lcterm("k[]"))
    assert not is_proof_like(LVar("x"))


def test_canonical_falsity_stacks_shapes():
    stacks = canonical_falsity_stacks(parse_formula("_|_"), depth=2)
    assert stacks
    assert canonical_falsity_stacks(parse_formula("forall z. z != 0"), depth=2)
    # a true inequation is opposed by nothing
    assert canonical_falsity_stacks(parse_formula("0 != 1"), depth=2) == []
    A_true_forall = parse_formula("forall z. z \\/ ~z != 0")
    assert canonical_falsity_stacks(A_true_forall, depth=2) == []


def test_identity_realizes_commutativity(cfg):
    A = parse_formula("forall z. forall w. z /\\ w == w /\\ z")
    rep = realizes_bounded(parse_lcterm("\\x. x"), A, cfg)
    assert rep.clean and rep.results


def test_bad_realizer_reported(cfg):
    A = parse_formula("0 == 0")
    rep = realizes_bounded(parse_lcterm("g{0 != 1}"), A, cfg)
    assert not rep.clean
    assert rep.failures


def test_gamma_of_formula_realizes_it(cfg):
    for src in ("_|_", "0 != 1 -> _|_", "forall z. z != z"):
        A = parse_formula(src)
        rep = realizes_bounded(Gamma(A), A, cfg)
        assert rep.clean, (src, rep.failures)


def test_constraint_check():
    ok = constraint_check(parse_process("g{0 != 0} * []"))
    assert ok.status in ("valid", "unknown")
    bad = constraint_check(parse_process("g{0 != 1} * []"))
    assert bad.is_refuted
    assert constraint_of(parse_process("cc * []")) is not None
