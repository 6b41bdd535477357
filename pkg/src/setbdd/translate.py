"""Translation of set expressions and constraints into BDDs.

Each set variable is bound to one BDD variable.  Set operators become the
corresponding Boolean connectives: union is `or`, intersection `and`,
complement `not`, difference ``a and not b``.  A disjoint union also emits
a side constraint ``not (a and b)``; side constraints are conjoined into
the enclosing comparison.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from typing import NamedTuple

from .bdd import Manager, NodeHandle
from .lang import (
    And, Complement, Difference, DisjointUnion, Empty, Equal, FalseC, Intersect,
    Or, SetConstraint, SetExpr, Subset, TrueC, Union, Universe, Var,
)


class UnboundVariableError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound set variable {self.name!r}"


class VarBinding:
    """Bijection between set-variable names and BDD variable ids."""

    __slots__ = ("_ids", "_names")

    def __init__(self, mapping: Mapping[str, int]):
        ids = dict(mapping)
        names = {}
        for name, v in ids.items():
            if not name:
                raise ValueError("empty variable name")
            if v in names:
                raise ValueError(f"variables {names[v]!r} and {name!r} share id {v}")
            names[v] = name
        self._ids = ids
        self._names = names

    @classmethod
    def of(cls, names: Iterable[str]) -> VarBinding:
        """Bind `names` to ids 0, 1, ... in the given order."""
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        return cls({name: i for i, name in enumerate(names)})

    def var_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UnboundVariableError(name) from None

    def name_of(self, v: int) -> str:
        return self._names[v]

    @property
    def names(self) -> list[str]:
        """Bound names, in variable order."""
        return [self._names[v] for v in sorted(self._names)]

    @property
    def var_ids(self) -> list[int]:
        return sorted(self._names)

    def without(self, names: Iterable[str]) -> VarBinding:
        drop = set(names)
        for name in drop:
            self.var_of(name)
        return VarBinding({n: v for n, v in self._ids.items() if n not in drop})

    def __contains__(self, name):
        return name in self._ids

    def __len__(self):
        return len(self._ids)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other):
        if not isinstance(other, VarBinding):
            return NotImplemented
        return self._ids == other._ids

    def __hash__(self):
        return hash(frozenset(self._ids.items()))

    def __repr__(self):
        inner = ", ".join(f"{n}={self._ids[n]}" for n in self.names)
        return f"VarBinding({inner})"

    def as_dict(self) -> dict[str, int]:
        return dict(self._ids)


class ExprTranslation(NamedTuple):
    expr_bdd: NodeHandle
    side_bdd: NodeHandle


def tr_expr(e: SetExpr, binding: VarBinding, m: Manager) -> ExprTranslation:
    """Translate a set expression to its (value, side constraint) BDD pair."""
    if isinstance(e, Empty):
        return ExprTranslation(m.false, m.true)
    if isinstance(e, Universe):
        return ExprTranslation(m.true, m.true)
    if isinstance(e, Var):
        return ExprTranslation(m.var(binding.var_of(e.name)), m.true)
    if isinstance(e, Complement):
        inner, side = tr_expr(e.expr, binding, m)
        return ExprTranslation(m.not_(inner), side)

    e1, c1 = tr_expr(e.left, binding, m)
    e2, c2 = tr_expr(e.right, binding, m)
    side = m.and_(c1, c2)
    if isinstance(e, Union):
        return ExprTranslation(m.or_(e1, e2), side)
    if isinstance(e, Intersect):
        return ExprTranslation(m.and_(e1, e2), side)
    if isinstance(e, DisjointUnion):
        return ExprTranslation(m.or_(e1, e2), m.and_(side, m.not_(m.and_(e1, e2))))
    if isinstance(e, Difference):
        return ExprTranslation(m.and_(e1, m.not_(e2)), side)
    raise TypeError(f"not a set expression: {e!r}")


def tr_cons(k: SetConstraint, binding: VarBinding, m: Manager) -> NodeHandle:
    """Translate a set constraint to a single BDD."""
    if isinstance(k, TrueC):
        return m.true
    if isinstance(k, FalseC):
        return m.false
    if isinstance(k, And):
        return m.and_(tr_cons(k.left, binding, m), tr_cons(k.right, binding, m))
    if isinstance(k, Or):
        return m.or_(tr_cons(k.left, binding, m), tr_cons(k.right, binding, m))
    if isinstance(k, (Subset, Equal)):
        e1, c1 = tr_expr(k.left, binding, m)
        e2, c2 = tr_expr(k.right, binding, m)
        rel = m.or_(m.not_(e1), e2)
        if isinstance(k, Equal):
            rel = m.and_(rel, m.or_(m.not_(e2), e1))
        return m.and_(m.and_(rel, c1), c2)
    raise TypeError(f"not a set constraint: {k!r}")
