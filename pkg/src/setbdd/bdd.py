"""Reduced ordered binary decision diagrams.

A small, self-contained ROBDD engine.  Nodes are hash-consed through a
unique table keyed on ``(var, lo, hi)`` so that two handles from the same
manager are equal exactly when they denote the same Boolean function.
Every connective is derived from a single memoized ``ite``.

Variables are dense integers ``0 .. n-1``; their numeric order is the
variable order.  Node ids 0 and 1 are the false and true terminals.

Limitations: plain nodes (no complement edges), no garbage collection,
no dynamic reordering.  A manager is single-writer.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from typing import NamedTuple

FALSE_ID = 0
TRUE_ID = 1

# stands in for the var of a terminal; larger than any real VarId
_TERMINAL_LEVEL = float("inf")

_manager_ids = itertools.count()


class BDDError(Exception):
    """Misuse of the BDD engine (bad variable, foreign handle, ...)."""


class Node(NamedTuple):
    var: int
    lo: int
    hi: int


class NodeHandle:
    """Reference to a node owned by one `Manager`."""

    __slots__ = ("manager", "id")

    def __init__(self, manager: Manager, id: int):
        self.manager = manager
        self.id = id

    def __eq__(self, other):
        if not isinstance(other, NodeHandle):
            return NotImplemented
        return self.manager is other.manager and self.id == other.id

    def __hash__(self):
        return hash((self.manager.uid, self.id))

    def __repr__(self):
        if self.id == FALSE_ID:
            return "NodeHandle(false)"
        if self.id == TRUE_ID:
            return "NodeHandle(true)"
        return f"NodeHandle({self.id})"

    # operator sugar, used heavily by tests
    def __and__(self, other):
        return self.manager.and_(self, other)

    def __or__(self, other):
        return self.manager.or_(self, other)

    def __invert__(self):
        return self.manager.not_(self)

    def __xor__(self, other):
        return self.manager.not_(self.manager.iff(self, other))

    @property
    def is_terminal(self) -> bool:
        return self.id in (FALSE_ID, TRUE_ID)


class Manager:
    """Owns the variable order, the node store and the operation cache.

    >>> m = Manager(2)
    >>> x, y = m.var(0), m.var(1)
    >>> m.or_(x, m.not_(x)) == m.true
    True
    """

    def __init__(self, var_count: int = 0):
        if var_count < 0:
            raise BDDError(f"negative variable count: {var_count}")
        self.uid = next(_manager_ids)
        self.var_count = var_count
        # node store; terminals use a sentinel level
        self._nodes: list[Node] = [Node(-1, FALSE_ID, FALSE_ID), Node(-1, TRUE_ID, TRUE_ID)]
        self._unique: dict[Node, int] = {}
        self._cache: dict[tuple, int] = {}

    def __len__(self):
        """Number of stored decision nodes."""
        return len(self._nodes) - 2

    def __repr__(self):
        return f"Manager(var_count={self.var_count}, nodes={len(self)})"

    # ------------------------------------------------------------------
    # handles and nodes

    def _wrap(self, i: int) -> NodeHandle:
        return NodeHandle(self, i)

    def _unwrap(self, f: NodeHandle) -> int:
        if not isinstance(f, NodeHandle):
            raise BDDError(f"not a node handle: {f!r}")
        if f.manager is not self:
            raise BDDError("handle belongs to a different manager")
        return f.id

    def _check_var(self, v: int) -> None:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < self.var_count:
            raise BDDError(f"variable {v!r} out of range 0..{self.var_count - 1}")

    def add_var(self) -> int:
        """Append a fresh variable at the bottom of the order."""
        self.var_count += 1
        return self.var_count - 1

    def node(self, f: NodeHandle) -> Node | None:
        """The ``(var, lo, hi)`` triple of `f`, or None for a terminal."""
        i = self._unwrap(f)
        if i <= TRUE_ID:
            return None
        return self._nodes[i]

    def low(self, f: NodeHandle) -> NodeHandle:
        n = self.node(f)
        if n is None:
            raise BDDError("terminal has no children")
        return self._wrap(n.lo)

    def high(self, f: NodeHandle) -> NodeHandle:
        n = self.node(f)
        if n is None:
            raise BDDError("terminal has no children")
        return self._wrap(n.hi)

    def top_var(self, f: NodeHandle) -> int | None:
        n = self.node(f)
        return None if n is None else n.var

    def _level(self, i: int):
        return _TERMINAL_LEVEL if i <= TRUE_ID else self._nodes[i].var

    def _mk(self, var: int, lo: int, hi: int) -> int:
        if lo == hi:
            return lo
        key = Node(var, lo, hi)
        i = self._unique.get(key)
        if i is None:
            i = len(self._nodes)
            self._nodes.append(key)
            self._unique[key] = i
        return i

    def clear_cache(self) -> None:
        self._cache.clear()

    # ------------------------------------------------------------------
    # constructors

    @property
    def true(self) -> NodeHandle:
        return self._wrap(TRUE_ID)

    @property
    def false(self) -> NodeHandle:
        return self._wrap(FALSE_ID)

    def constant(self, b: bool) -> NodeHandle:
        return self._wrap(TRUE_ID if b else FALSE_ID)

    def var(self, v: int) -> NodeHandle:
        self._check_var(v)
        return self._wrap(self._mk(v, FALSE_ID, TRUE_ID))

    # ------------------------------------------------------------------
    # ite and the connectives

    def ite(self, f: NodeHandle, g: NodeHandle, h: NodeHandle) -> NodeHandle:
        """Canonical BDD of ``(f and g) or (not f and h)``."""
        return self._wrap(self._ite(self._unwrap(f), self._unwrap(g), self._unwrap(h)))

    def _ite(self, f: int, g: int, h: int) -> int:
        # terminal short-circuits
        if f == TRUE_ID:
            return g
        if f == FALSE_ID:
            return h
        if g == h:
            return g
        if g == TRUE_ID and h == FALSE_ID:
            return f
        key = ("ite", f, g, h)
        r = self._cache.get(key)
        if r is not None:
            return r
        v = min(self._level(f), self._level(g), self._level(h))
        f0, f1 = self._cofactors(f, v)
        g0, g1 = self._cofactors(g, v)
        h0, h1 = self._cofactors(h, v)
        lo = self._ite(f0, g0, h0)
        hi = self._ite(f1, g1, h1)
        r = self._mk(v, lo, hi)
        self._cache[key] = r
        return r

    def _cofactors(self, i: int, v) -> tuple[int, int]:
        if i <= TRUE_ID:
            return i, i
        n = self._nodes[i]
        if n.var == v:
            return n.lo, n.hi
        return i, i

    def not_(self, f: NodeHandle) -> NodeHandle:
        return self._wrap(self._ite(self._unwrap(f), FALSE_ID, TRUE_ID))

    def and_(self, f: NodeHandle, g: NodeHandle) -> NodeHandle:
        return self._wrap(self._ite(self._unwrap(f), self._unwrap(g), FALSE_ID))

    def or_(self, f: NodeHandle, g: NodeHandle) -> NodeHandle:
        return self._wrap(self._ite(self._unwrap(f), TRUE_ID, self._unwrap(g)))

    def implies(self, f: NodeHandle, g: NodeHandle) -> NodeHandle:
        return self._wrap(self._ite(self._unwrap(f), self._unwrap(g), TRUE_ID))

    def iff(self, f: NodeHandle, g: NodeHandle) -> NodeHandle:
        gi = self._unwrap(g)
        ng = self._ite(gi, FALSE_ID, TRUE_ID)
        return self._wrap(self._ite(self._unwrap(f), gi, ng))

    def conjoin(self, fs: Iterable[NodeHandle]) -> NodeHandle:
        r = self.true
        for f in fs:
            r = self.and_(r, f)
        return r

    def disjoin(self, fs: Iterable[NodeHandle]) -> NodeHandle:
        r = self.false
        for f in fs:
            r = self.or_(r, f)
        return r

    # ------------------------------------------------------------------
    # restriction and quantification

    def restrict(self, f: NodeHandle, v: int, b: bool) -> NodeHandle:
        """Cofactor of `f` with variable `v` fixed to `b`."""
        self._check_var(v)
        return self._wrap(self._restrict(self._unwrap(f), v, bool(b)))

    def _restrict(self, i: int, v: int, b: bool) -> int:
        if i <= TRUE_ID:
            return i
        n = self._nodes[i]
        if n.var > v:
            return i
        if n.var == v:
            return n.hi if b else n.lo
        key = ("restrict", i, v, b)
        r = self._cache.get(key)
        if r is not None:
            return r
        r = self._mk(n.var, self._restrict(n.lo, v, b), self._restrict(n.hi, v, b))
        self._cache[key] = r
        return r

    def exists(self, f: NodeHandle, vars: Iterable[int]) -> NodeHandle:
        r = self._unwrap(f)
        for v in vars:
            self._check_var(v)
            r = self._ite(self._restrict(r, v, True), TRUE_ID, self._restrict(r, v, False))
        return self._wrap(r)

    def forall(self, f: NodeHandle, vars: Iterable[int]) -> NodeHandle:
        r = self._unwrap(f)
        for v in vars:
            self._check_var(v)
            r = self._ite(self._restrict(r, v, True), self._restrict(r, v, False), FALSE_ID)
        return self._wrap(r)

    # ------------------------------------------------------------------
    # queries

    def evaluate(self, f: NodeHandle, assignment: Sequence[bool] | Mapping[int, bool]) -> bool:
        """Value of `f` under a total assignment of the manager's variables."""
        i = self._unwrap(f)
        if isinstance(assignment, Mapping):
            missing = [v for v in range(self.var_count) if v not in assignment]
            if missing:
                raise BDDError(f"assignment is missing variables {missing}")
        elif len(assignment) != self.var_count:
            raise BDDError(
                f"assignment has {len(assignment)} values, manager has {self.var_count} variables"
            )
        while i > TRUE_ID:
            n = self._nodes[i]
            i = n.hi if assignment[n.var] else n.lo
        return i == TRUE_ID

    def is_sat(self, f: NodeHandle) -> bool:
        return self._unwrap(f) != FALSE_ID

    def is_valid(self, f: NodeHandle) -> bool:
        return self._unwrap(f) == TRUE_ID

    def _reachable(self, i: int) -> list[int]:
        """Decision node ids reachable from `i`, in DFS preorder."""
        seen = set()
        order = []
        stack = [i]
        while stack:
            j = stack.pop()
            if j <= TRUE_ID or j in seen:
                continue
            seen.add(j)
            order.append(j)
            n = self._nodes[j]
            stack.append(n.hi)
            stack.append(n.lo)
        return order

    def node_count(self, f: NodeHandle) -> int:
        return len(self._reachable(self._unwrap(f)))

    def support(self, f: NodeHandle) -> list[int]:
        return sorted({self._nodes[j].var for j in self._reachable(self._unwrap(f))})

    def to_dot(self, f: NodeHandle, names: Mapping[int, str] | None = None) -> str:
        """Render `f` as a DOT digraph.

        Else edges are solid and then edges dashed.  Nodes are named
        ``n<id>`` after their handle id, so output is stable for identical
        builds.  `names` optionally relabels variables (default ``v<k>``).
        """
        root = self._unwrap(f)
        ids = sorted(self._reachable(root))
        terminals = set()
        for j in ids:
            n = self._nodes[j]
            terminals.update(t for t in (n.lo, n.hi) if t <= TRUE_ID)
        if root <= TRUE_ID:
            terminals.add(root)
        lines = ["digraph bdd {"]
        for t in sorted(terminals):
            label = "T" if t == TRUE_ID else "F"
            lines.append(f'  n{t} [label="{label}", shape=box];')
        for j in ids:
            v = self._nodes[j].var
            label = names[v] if names is not None and v in names else f"v{v}"
            lines.append(f'  n{j} [label="{label}", shape=circle];')
        for j in ids:
            n = self._nodes[j]
            lines.append(f"  n{j} -> n{n.lo} [style=solid];")
            lines.append(f"  n{j} -> n{n.hi} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def check_invariants(self) -> None:
        """Assert the structural ROBDD invariants over the whole store."""
        assert len(self._unique) == len(self._nodes) - 2
        for i, n in enumerate(self._nodes[2:], start=2):
            assert self._unique[n] == i, "unique table out of sync"
            assert n.lo != n.hi, f"redundant node {i}"
            assert 0 <= n.var < self.var_count
            for c in (n.lo, n.hi):
                assert c < i, "child created after parent"
                if c > TRUE_ID:
                    assert self._nodes[c].var > n.var, f"unordered edge {i} -> {c}"


def new_manager(var_count: int) -> Manager:
    return Manager(var_count)
