"""A BDD-based abstract domain for relations between sets."""
from .bdd import BDDError, Manager, Node, NodeHandle, new_manager
from .domain import (
    AbstractState, BindingMismatchError, assume, bottom, is_bottom, join, leq,
    project, stats, top, widen,
)
from .lang import SetSyntaxError, format, parse_constraint, parse_expr
from .translate import ExprTranslation, UnboundVariableError, VarBinding, tr_cons, tr_expr

__all__ = [
    "AbstractState", "BDDError", "BindingMismatchError", "ExprTranslation", "Manager",
    "Node", "NodeHandle", "SetSyntaxError", "UnboundVariableError", "VarBinding",
    "assume", "bottom", "format", "is_bottom", "join", "leq", "new_manager",
    "parse_constraint", "parse_expr", "project", "stats", "top", "tr_cons", "tr_expr",
    "widen",
]
