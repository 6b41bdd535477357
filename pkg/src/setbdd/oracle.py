"""Brute-force concrete semantics over finite universes.

Ground truth for the abstraction: concrete evaluation of set expressions
and constraints, and the concretization of a BDD computed through
validation sets.  Everything here enumerates, so it is only usable on
small universes and few variables.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping

from .bdd import FALSE_ID, TRUE_ID, NodeHandle
from .lang import (
    And, Complement, Difference, DisjointUnion, Empty, Equal, FalseC, Intersect,
    Or, SetConstraint, SetExpr, Subset, TrueC, Union, Universe as UniverseExpr, Var,
)
from .translate import UnboundVariableError, VarBinding

DEFAULT_MAX_ENUM = 2 ** 20


class OracleCapError(RuntimeError):
    pass


class Universe:
    """A finite nonempty set of atoms, kept in a fixed order."""

    __slots__ = ("values", "_full")

    def __init__(self, values: Iterable[int]):
        values = tuple(values)
        if not values:
            raise ValueError("universe must be nonempty")
        if len(set(values)) != len(values):
            raise ValueError(f"duplicate atoms in universe {values}")
        self.values = values
        self._full = frozenset(values)

    @classmethod
    def of_size(cls, n: int) -> Universe:
        """The atoms ``1..n``."""
        return cls(range(1, n + 1))

    @property
    def full(self) -> frozenset:
        return self._full

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, Universe) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Universe({list(self.values)})"

    def subsets(self) -> list[frozenset]:
        """All subsets, ordered lexicographically by characteristic vector."""
        n = len(self.values)
        out = []
        for mask in range(2 ** n):
            out.append(frozenset(x for j, x in enumerate(self.values) if mask >> (n - 1 - j) & 1))
        return out


class Valuation(Mapping):
    """Immutable map from set-variable names to concrete sets."""

    __slots__ = ("_sets", "_hash")

    def __init__(self, sets: Mapping[str, Iterable[int]] | Iterable[tuple[str, Iterable[int]]] = ()):
        items = sets.items() if isinstance(sets, Mapping) else sets
        self._sets = {name: frozenset(s) for name, s in items}
        self._hash = None

    def __getitem__(self, name):
        return self._sets[name]

    def __iter__(self):
        return iter(self._sets)

    def __len__(self):
        return len(self._sets)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._sets.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Valuation):
            return self._sets == other._sets
        return NotImplemented

    def restrict(self, names: Iterable[str]) -> Valuation:
        names = set(names)
        return Valuation({n: s for n, s in self._sets.items() if n in names})

    def __repr__(self):
        return "{" + ", ".join(f"{n}={_fmt_set(s)}" for n, s in self._sets.items()) + "}"


def _fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def format_valuation(eta: Mapping[str, frozenset], names: Iterable[str] | None = None) -> str:
    names = list(eta) if names is None else list(names)
    return "{" + ", ".join(f"{n}={_fmt_set(eta[n])}" for n in names) + "}"


# ----------------------------------------------------------------------
# concrete evaluation

def eval_expr(e: SetExpr, eta: Mapping[str, frozenset], u: Universe) -> frozenset:
    """The subset of `u` denoted by `e`.  Disjoint union evaluates as union."""
    if isinstance(e, Empty):
        return frozenset()
    if isinstance(e, UniverseExpr):
        return u.full
    if isinstance(e, Var):
        try:
            return frozenset(eta[e.name])
        except KeyError:
            raise UnboundVariableError(e.name) from None
    if isinstance(e, Complement):
        return u.full - eval_expr(e.expr, eta, u)
    left = eval_expr(e.left, eta, u)
    right = eval_expr(e.right, eta, u)
    if isinstance(e, (Union, DisjointUnion)):
        return left | right
    if isinstance(e, Intersect):
        return left & right
    if isinstance(e, Difference):
        return left & (u.full - right)
    raise TypeError(f"not a set expression: {e!r}")


def _disjointness_holds(e: SetExpr, eta, u: Universe) -> bool:
    """Every disjoint union inside `e` has disjoint operands."""
    if isinstance(e, Complement):
        return _disjointness_holds(e.expr, eta, u)
    if isinstance(e, (Union, Intersect, Difference, DisjointUnion)):
        if not (_disjointness_holds(e.left, eta, u) and _disjointness_holds(e.right, eta, u)):
            return False
        if isinstance(e, DisjointUnion):
            return not (eval_expr(e.left, eta, u) & eval_expr(e.right, eta, u))
    return True


def satisfies(k: SetConstraint, eta: Mapping[str, frozenset], u: Universe) -> bool:
    """Truth of `k` under `eta`.

    Disjointness of every ``++`` operand pair is required by the comparison
    that contains it, matching where the translation conjoins side
    constraints.
    """
    if isinstance(k, TrueC):
        return True
    if isinstance(k, FalseC):
        return False
    if isinstance(k, And):
        return satisfies(k.left, eta, u) and satisfies(k.right, eta, u)
    if isinstance(k, Or):
        return satisfies(k.left, eta, u) or satisfies(k.right, eta, u)
    if isinstance(k, (Subset, Equal)):
        left = eval_expr(k.left, eta, u)
        right = eval_expr(k.right, eta, u)
        holds = left <= right if isinstance(k, Subset) else left == right
        return (holds and _disjointness_holds(k.left, eta, u)
                and _disjointness_holds(k.right, eta, u))
    raise TypeError(f"not a set constraint: {k!r}")


# ----------------------------------------------------------------------
# concretization

def gamma_S_eval(b: NodeHandle, eta: Mapping[str, frozenset], u: Universe,
                 binding: VarBinding) -> frozenset:
    """Validation set of `b` under `eta`.

    ``false`` validates nothing, ``true`` everything, and a node on
    variable v with children t, e validates ``(eta(v)^c | S_t) & (eta(v) | S_e)``.
    """
    m = b.manager
    full = u.full
    memo = {FALSE_ID: frozenset(), TRUE_ID: full}
    sets = {}
    for v in m.support(b):
        try:
            name = binding.name_of(v)
        except KeyError:
            raise UnboundVariableError(f"<variable {v}>") from None
        try:
            sets[v] = frozenset(eta[name])
        except KeyError:
            raise UnboundVariableError(name) from None

    def walk(i: int) -> frozenset:
        s = memo.get(i)
        if s is not None:
            return s
        n = m._nodes[i]
        ev = sets[n.var]
        s = ((full - ev) | walk(n.hi)) & (ev | walk(n.lo))
        memo[i] = s
        return s

    return walk(b.id)


def gamma_member(b: NodeHandle, eta: Mapping[str, frozenset], u: Universe,
                 binding: VarBinding) -> bool:
    return gamma_S_eval(b, eta, u, binding) == u.full


def valuations(binding: VarBinding, u: Universe,
               max_enum: int = DEFAULT_MAX_ENUM) -> Iterator[Valuation]:
    """Every valuation of the bound names over `u`, in lexicographic order."""
    names = binding.names
    count = (2 ** len(u)) ** len(names)
    if count > max_enum:
        raise OracleCapError(
            f"{count} valuations ({len(names)} variables, |universe|={len(u)}) "
            f"exceed the enumeration cap of {max_enum}"
        )
    subsets = u.subsets()
    for combo in itertools.product(subsets, repeat=len(names)):
        yield Valuation(zip(names, combo))


def enumerate_gamma(b: NodeHandle, binding: VarBinding, u: Universe,
                    max_enum: int = DEFAULT_MAX_ENUM) -> list[Valuation]:
    return [eta for eta in valuations(binding, u, max_enum) if gamma_member(b, eta, u, binding)]


def enumerate_solutions(k: SetConstraint, binding: VarBinding, u: Universe,
                        max_enum: int = DEFAULT_MAX_ENUM) -> list[Valuation]:
    return [eta for eta in valuations(binding, u, max_enum) if satisfies(k, eta, u)]
