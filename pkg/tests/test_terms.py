import pytest
from hypothesis import given, strategies as st

from gakit.parser import parse, print_term
from gakit.terms import (
    Apply, CaptureError, Cond, Eq, Exists, Forall, Neg, Or, Pred, Succ,
    Var, ZERO, bool_of, conj, free_vars, fresh_var, iff, implies,
    is_pure, nat_of, neq, numeral, numeral_value, positions_of, replace_at,
    subst, subst_many, subterm_at, term_size,
)


def test_numeral_roundtrip():
    for n in range(50):
        assert numeral_value(numeral(n)) == n


def test_numeral_value_rejects_non_numerals():
    assert numeral_value(Var(0)) is None
    assert numeral_value(Succ(Var(0))) is None


def test_shorthands_expand_to_core_constructors():
    p, q = Eq(Var(0), ZERO), Eq(Var(1), ZERO)
    assert nat_of(Var(0)) == Eq(Var(0), Var(0))
    assert bool_of(p) == Or(p, Neg(p))
    assert implies(p, q) == Or(Neg(p), q)
    assert conj(p, q) == Neg(Or(Neg(p), Neg(q)))
    assert iff(p, q) == conj(implies(p, q), implies(q, p))
    assert neq(Var(0), ZERO) == Neg(Eq(Var(0), ZERO))


def test_free_vars():
    t = Or(Eq(Var(0), Var(1)), Neg(Var(2)))
    assert free_vars(t) == {0, 1, 2}
    assert free_vars(Forall(0, Eq(Var(0), Var(1)))) == {1}
    assert free_vars(Exists(1, Var(1))) == frozenset()


def test_fresh_var():
    assert fresh_var(Eq(Var(0), Var(3))) == 4
    assert fresh_var(ZERO) == 0


def test_subst_basic():
    t = Eq(Var(0), Succ(Var(1)))
    assert subst(t, 0, ZERO) == Eq(ZERO, Succ(Var(1)))
    assert subst(t, 2, ZERO) == t


def test_subst_respects_binding():
    t = Forall(0, Eq(Var(0), Var(1)))
    assert subst(t, 0, ZERO) == t  # bound occurrence untouched
    assert subst(t, 1, ZERO) == Forall(0, Eq(Var(0), ZERO))


def test_subst_capture_is_an_error():
    t = Forall(0, Eq(Var(0), Var(1)))
    with pytest.raises(CaptureError):
        subst(t, 1, Var(0))


def test_subst_many_is_simultaneous():
    t = Eq(Var(0), Var(1))
    assert subst_many(t, {0: Var(1), 1: Var(0)}) == Eq(Var(1), Var(0))


def test_paths():
    t = Cond(Eq(Var(0), ZERO), Succ(ZERO), ZERO)
    assert subterm_at(t, ()) == t
    assert subterm_at(t, (0,)) == Eq(Var(0), ZERO)
    assert subterm_at(t, (1,)) == Succ(ZERO)
    assert replace_at(t, (2,), Succ(ZERO)) == Cond(
        Eq(Var(0), ZERO), Succ(ZERO), Succ(ZERO)
    )
    assert positions_of(t, ZERO) == [(0, 1), (1, 0), (2,)]


def test_is_pure():
    assert is_pure(Apply(0, (Var(0),)))
    assert not is_pure(Forall(0, Eq(Var(0), ZERO)))
    assert not is_pure(Neg(Exists(0, Var(0))))


def _terms(max_depth=4):
    leaves = st.one_of(
        st.integers(0, 3).map(Var),
        st.just(ZERO),
        st.integers(0, 5).map(numeral),
    )

    def extend(children):
        return st.one_of(
            children.map(Succ),
            children.map(Pred),
            children.map(Neg),
            st.tuples(children, children).map(lambda ab: Or(*ab)),
            st.tuples(children, children).map(lambda ab: Eq(*ab)),
            st.tuples(children, children, children).map(lambda abc: Cond(*abc)),
            st.tuples(st.integers(0, 2), children).map(lambda xb: Forall(*xb)),
            st.tuples(st.integers(0, 2), children).map(lambda xb: Exists(*xb)),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(_terms())
def test_print_parse_roundtrip(t):
    assert parse(print_term(t)) == t


@given(_terms())
def test_term_size_positive(t):
    assert term_size(t) >= 1
