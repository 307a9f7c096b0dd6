import pytest
from hypothesis import given, strategies as st

from realizability.formulas import (
    And, Forall, HornKind, Impl, Neq, Not, ONE, Or, UsageError, Var, ZERO,
    alpha_eq, bot, canon, classify_horn, conj, conj_many, decompose, disj,
    eq, eval_formula_01, eval_term_01, exists, free_vars, recompose,
    subst_formula, table_term, tbool_axioms, term_vars,
)


def bterms(depth=3):
    leaf = st.sampled_from([ZERO, ONE, Var("z"), Var("w")])
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(Or, sub, sub),
            st.builds(And, sub, sub)),
        max_leaves=8)


def test_term_vars():
    t = Or(Var("z"), Not(And(Var("w"), ONE)))
    assert term_vars(t) == {"z", "w"}


@given(bterms(), st.booleans(), st.booleans())
def test_eval_term_total(t, bz, bw):
    env = {"z": int(bz), "w": int(bw)}
    assert eval_term_01(t, env) in (0, 1)


def test_table_term_matches_function():
    f = lambda bits: bits[0] ^ bits[1]
    t = table_term(f, ("z", "w"))
    for a in (0, 1):
        for b in (0, 1):
            assert eval_term_01(t, {"z": a, "w": b}) == a ^ b


def test_encodings_two_valued():
    A = Neq(Var("z"), ZERO)
    # bot is false, eq agrees with equality, conj/disj are classical
    assert eval_formula_01(bot(), {}) == 0
    assert eval_formula_01(eq(Var("z"), Var("z")), {"z": 1}) == 1
    assert eval_formula_01(eq(ZERO, ONE), {}) == 0
    for v in (0, 1):
        env = {"z": v}
        assert eval_formula_01(conj(A, A), env) == eval_formula_01(A, env)
        assert eval_formula_01(disj(A, bot()), env) == eval_formula_01(A, env)


def test_exists_two_valued():
    A = exists("z", Neq(Var("z"), ZERO))
    assert eval_formula_01(A, {}) == 1
    B = exists("z", Neq(Var("z"), Var("z")))
    assert eval_formula_01(B, {}) == 0


def test_forall_two_valued():
    assert eval_formula_01(Forall("z", Neq(Or(Var("z"), Not(Var("z"))), ZERO)), {}) == 1
    assert eval_formula_01(Forall("z", Neq(Var("z"), ZERO)), {}) == 0


def test_free_vars_and_shadowing():
    A = Forall("z", Impl(Neq(Var("z"), Var("w")), Forall("w", Neq(Var("w"), ZERO))))
    assert free_vars(A) == {"w"}


def test_subst_capture_avoiding():
    A = Forall("z", Neq(Var("z"), Var("w")))
    B = subst_formula(A, ["w"], [Var("z")])
    # the bound z must be renamed, keeping the substituted z free
    assert free_vars(B) == {"z"}
    assert not alpha_eq(B, Forall("z", Neq(Var("z"), Var("z"))))


def test_alpha_eq_and_canon():
    A = Forall("z", Neq(Var("z"), ZERO))
    B = Forall("w", Neq(Var("w"), ZERO))
    assert alpha_eq(A, B)
    assert canon(A) == canon(B)
    assert not alpha_eq(A, Forall("z", Neq(ZERO, Var("z"))))


def test_conj_many_empty_is_truth():
    assert eval_formula_01(conj_many(()), {}) == 1


def test_tbool_axioms_true_on_bits():
    for ax in tbool_axioms():
        assert eval_formula_01(ax, {}) == 1


def test_classify_horn():
    assert classify_horn(Forall("z", eq(Var("z"), Var("z")))) == HornKind.DEFINITE
    assert classify_horn(Forall("z", Impl(eq(Var("z"), ONE), bot()))) == HornKind.GOAL
    A = Forall("z", disj(eq(Var("z"), ZERO), eq(Var("z"), ONE)))
    assert classify_horn(A) == HornKind.NOT_HORN
    # open formulas are never Horn
    assert classify_horn(eq(Var("z"), Var("z"))) == HornKind.NOT_HORN


def test_decompose_recompose():
    A = Forall("z", Impl(Forall("w", Neq(Var("w"), Var("z"))),
                         Neq(Var("z"), ONE)))
    d = decompose(A)
    assert alpha_eq(recompose(d), A)
    assert len(d.blocks) == 1


def test_decompose_plain_inequation():
    d = decompose(Neq(ZERO, ONE))
    assert d.blocks == ()
    assert d.head_lhs == ZERO and d.head_rhs == ONE


def test_eval_rejects_missing_var():
    with pytest.raises(UsageError):
        eval_term_01(Var("z"), {})
