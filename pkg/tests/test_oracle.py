import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setbdd import Manager, UnboundVariableError, VarBinding, tr_cons
from setbdd.lang import (
    Complement, Difference, DisjointUnion, Empty, Equal, FalseC, Or, Subset, TrueC,
    Universe as UniverseExpr, Var, parse_constraint,
)
from setbdd.oracle import (
    OracleCapError, Universe, Valuation, enumerate_gamma, enumerate_solutions,
    eval_expr, gamma_member, gamma_S_eval, satisfies, valuations,
)

from strategies import build, random_formula

A, B, C = Var("A"), Var("B"), Var("C")
U12 = Universe.of_size(2)


def test_universe_validation():
    assert list(Universe.of_size(3)) == [1, 2, 3]
    with pytest.raises(ValueError):
        Universe([])
    with pytest.raises(ValueError):
        Universe([1, 1])


def test_subsets_in_characteristic_order():
    assert U12.subsets() == [frozenset(), frozenset({2}), frozenset({1}), frozenset({1, 2})]


def test_eval_expr_examples():
    eta = {"A": {1, 2}, "B": {2}}
    assert eval_expr(UniverseExpr(), eta, U12) == {1, 2}
    assert eval_expr(Complement(Empty()), eta, U12) == {1, 2}
    assert eval_expr(Difference(A, B), eta, U12) == {1}
    assert eval_expr(DisjointUnion(A, B), eta, U12) == {1, 2}


def test_satisfies_examples():
    assert satisfies(Subset(A, B), {"A": {1}, "B": {1, 2}}, U12)
    assert not satisfies(Equal(C, DisjointUnion(A, B)), {"A": {1}, "B": {1}, "C": {1}}, U12)
    assert satisfies(Equal(C, DisjointUnion(A, B)), {"A": {1}, "B": {2}, "C": {1, 2}}, U12)
    assert satisfies(Or(FalseC(), TrueC()), {}, U12)


def test_nested_disjoint_union_obligation():
    k = parse_constraint("~(A ++ B) <= U")
    assert not satisfies(k, {"A": {1}, "B": {1}}, U12)
    assert satisfies(k, {"A": {1}, "B": set()}, U12)


def test_gamma_s_terminals_and_var():
    m = Manager(1)
    binding = VarBinding.of(["A"])
    eta = {"A": {1}}
    assert gamma_S_eval(m.false, eta, U12, binding) == frozenset()
    assert gamma_S_eval(m.true, eta, U12, binding) == {1, 2}
    # (A^c | U) & (A | {}) = A
    assert gamma_S_eval(m.var(0), eta, U12, binding) == {1}


def test_gamma_s_unbound_support():
    m = Manager(2)
    with pytest.raises(UnboundVariableError):
        gamma_S_eval(m.var(1), {"A": set()}, U12, VarBinding.of(["A"]))
    with pytest.raises(UnboundVariableError):
        gamma_S_eval(m.var(0), {}, U12, VarBinding.of(["A"]))


def test_enumerate_gamma_examples():
    m = Manager(2)
    b1 = VarBinding.of(["A"])
    assert len(enumerate_gamma(m.true, b1, Universe.of_size(1))) == 2
    b2 = VarBinding.of(["A", "B"])
    sols = enumerate_gamma(tr_cons(Subset(A, B), b2, m), b2, Universe.of_size(1))
    assert len(sols) == 3
    assert Valuation({"A": {1}, "B": set()}) not in sols


def test_gamma_member_equality_counterexample():
    m = Manager(2)
    binding = VarBinding.of(["A", "B"])
    b = tr_cons(Equal(A, B), binding, m)
    eta = {"A": {1}, "B": {2}}
    assert gamma_S_eval(b, eta, U12, binding) == frozenset()
    assert not gamma_member(b, eta, U12, binding)


def test_enumerate_solutions_examples():
    assert len(enumerate_solutions(TrueC(), VarBinding.of(["A"]), Universe.of_size(1))) == 2
    # containment pairs among 16: sum over B of 2^|B| = 1 + 2 + 2 + 4
    assert len(enumerate_solutions(Subset(A, B), VarBinding.of(["A", "B"]), U12)) == 9


def test_or_witness_is_strict():
    m = Manager(1)
    binding = VarBinding.of(["A"])
    k = Or(Equal(A, Empty()), Equal(A, UniverseExpr()))
    sols = enumerate_solutions(k, binding, U12)
    gam = enumerate_gamma(tr_cons(k, binding, m), binding, U12)
    assert len(sols) == 2
    # the translation is the true BDD, so every one of the 4 valuations is kept
    assert tr_cons(k, binding, m) == m.true
    assert len(gam) == 4
    assert set(sols) < set(gam)


def test_cap():
    binding = VarBinding.of(["A", "B", "C"])
    with pytest.raises(OracleCapError):
        list(valuations(binding, Universe.of_size(3), max_enum=100))
    assert len(list(valuations(binding, Universe.of_size(2), max_enum=64))) == 64


def test_valuations_deterministic_order():
    binding = VarBinding.of(["A", "B"])
    vals = list(valuations(binding, Universe.of_size(1)))
    assert [(sorted(v["A"]), sorted(v["B"])) for v in vals] == [
        ([], []), ([], [1]), ([1], []), ([1], [1]),
    ]


def test_valuation_is_hashable_mapping():
    v = Valuation({"A": [1, 2]})
    assert v == Valuation({"A": {2, 1}})
    assert hash(v) == hash(Valuation({"A": {1, 2}}))
    assert v.restrict([]) == Valuation({})
    assert repr(v) == "{A={1,2}}"


seeds = st.integers(0, 2 ** 32 - 1)


def _random_eta(rng, names, u):
    subsets = u.subsets()
    return {n: rng.choice(subsets) for n in names}


@settings(max_examples=150, deadline=None)
@given(seeds, st.integers(1, 3))
def test_homomorphism(seed, size):
    rng = random.Random(seed)
    m = Manager(3)
    binding = VarBinding.of(["A", "B", "C"])
    u = Universe.of_size(size)
    f = build(m, random_formula(rng, 3, 5))
    g = build(m, random_formula(rng, 3, 5))
    eta = _random_eta(rng, binding.names, u)
    sf = gamma_S_eval(f, eta, u, binding)
    sg = gamma_S_eval(g, eta, u, binding)
    assert gamma_S_eval(m.and_(f, g), eta, u, binding) == sf & sg
    assert gamma_S_eval(m.or_(f, g), eta, u, binding) == sf | sg
    assert gamma_S_eval(m.not_(f), eta, u, binding) == u.full - sf


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_singleton_universe_collapses_to_evaluate(seed):
    rng = random.Random(seed)
    m = Manager(3)
    binding = VarBinding.of(["A", "B", "C"])
    u = Universe.of_size(1)
    f = build(m, random_formula(rng, 3, 6))
    for eta in valuations(binding, u):
        assignment = [bool(eta[n]) for n in binding.names]
        assert gamma_member(f, eta, u, binding) == m.evaluate(f, assignment)
