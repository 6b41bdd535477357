"""The BDD set domain: abstract states and their lattice operations.

An abstract state is one BDD over the variables of a `VarBinding`.  The
lattice is the Boolean algebra of those BDDs: join is disjunction, the
order is implication, projection is existential quantification.  For a
fixed set of variables the lattice is finite, so join doubles as widening.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from typing import NamedTuple

from .bdd import Manager, NodeHandle
from .lang import SetConstraint
from .translate import VarBinding, tr_cons


class BindingMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class AbstractState:
    manager: Manager
    binding: VarBinding
    bdd: NodeHandle

    def __post_init__(self):
        if self.bdd.manager is not self.manager:
            raise ValueError("state BDD belongs to a different manager")
        stray = set(self.manager.support(self.bdd)) - set(self.binding.var_ids)
        if stray:
            raise ValueError(f"BDD tests unbound variables {sorted(stray)}")

    def __repr__(self):
        return f"AbstractState({self.binding!r}, nodes={self.manager.node_count(self.bdd)})"


class Stats(NamedTuple):
    node_count: int
    support: list[str]


def _check_binding(binding: VarBinding, m: Manager) -> None:
    too_big = [v for v in binding.var_ids if v >= m.var_count]
    if too_big:
        raise ValueError(f"binding uses ids {too_big} beyond the manager's {m.var_count} variables")


def top(binding: VarBinding, m: Manager) -> AbstractState:
    _check_binding(binding, m)
    return AbstractState(m, binding, m.true)


def bottom(binding: VarBinding, m: Manager) -> AbstractState:
    _check_binding(binding, m)
    return AbstractState(m, binding, m.false)


def _same(s1: AbstractState, s2: AbstractState) -> Manager:
    if s1.manager is not s2.manager:
        raise BindingMismatchError("states come from different managers")
    if s1.binding != s2.binding:
        raise BindingMismatchError(f"binding mismatch: {s1.binding!r} vs {s2.binding!r}")
    return s1.manager


def assume(s: AbstractState, k: SetConstraint) -> AbstractState:
    """Meet `s` with the translation of `k`."""
    m = s.manager
    return AbstractState(m, s.binding, m.and_(s.bdd, tr_cons(k, s.binding, m)))


def join(s1: AbstractState, s2: AbstractState) -> AbstractState:
    m = _same(s1, s2)
    return AbstractState(m, s1.binding, m.or_(s1.bdd, s2.bdd))


def widen(s1: AbstractState, s2: AbstractState) -> AbstractState:
    # the lattice has finite height, so the join terminates
    return join(s1, s2)


def leq(s1: AbstractState, s2: AbstractState) -> bool:
    """Containment: `s1` is below `s2` iff ``s1 and not s2`` is unsatisfiable."""
    m = _same(s1, s2)
    return not m.is_sat(m.and_(s1.bdd, m.not_(s2.bdd)))


def leq_forall(s1: AbstractState, s2: AbstractState) -> bool:
    """Containment decided by universally quantifying ``not s1 or s2``.

    Slower than `leq`; kept as an independent cross-check.
    """
    m = _same(s1, s2)
    return m.is_valid(m.forall(m.implies(s1.bdd, s2.bdd), s1.binding.var_ids))


def project(s: AbstractState, names: Iterable[str]) -> AbstractState:
    """Existentially quantify `names` away and drop them from the binding."""
    names = list(names)
    m = s.manager
    ids = [s.binding.var_of(n) for n in names]
    return AbstractState(m, s.binding.without(names), m.exists(s.bdd, ids))


def is_bottom(s: AbstractState) -> bool:
    return not s.manager.is_sat(s.bdd)


def is_top(s: AbstractState) -> bool:
    return s.manager.is_valid(s.bdd)


def stats(s: AbstractState) -> Stats:
    m = s.manager
    return Stats(m.node_count(s.bdd), [s.binding.name_of(v) for v in m.support(s.bdd)])
