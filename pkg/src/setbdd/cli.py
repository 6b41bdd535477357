"""Batch analyzer for constraint scripts.

A script is a sequence of ``;``-terminated commands run against a stack of
abstract states that starts as a single top state::

    universe 2;                # oracle atoms {1, 2}
    decl A B C;
    assume A <= B and B <= C;
    project B;
    check A <= C;              # entailment: pass iff state <= constraint
    checknot false;            # pass iff the state is not entailed, i.e. satisfiable
    push; swap; pop;           # duplicate / exchange / drop stack tops
    join; widen;               # replace the top two states by their join
    dot "out.dot"; stats; gamma;

Each command prints ``L<line>: <command> -> <result>``.  The exit status is
0 when every check passes, 2 when some check fails and 1 on any error.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import domain
from .bdd import Manager
from .lang import (
    Parser, SetConstraint, SetSyntaxError, constraint_vars, format, tokenize,
)
from .oracle import (
    DEFAULT_MAX_ENUM, OracleCapError, Universe, enumerate_gamma, format_valuation,
)
from .translate import UnboundVariableError, VarBinding, tr_cons

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CHECK_FAILED = 2

_NO_ARGS = {"push", "pop", "swap", "join", "widen", "stats", "gamma"}
_CONSTRAINT_ARGS = {"assume", "check", "checknot"}
COMMANDS = _NO_ARGS | _CONSTRAINT_ARGS | {"universe", "decl", "project", "dot"}


class ScriptError(Exception):
    """A command that cannot be executed."""


@dataclass(frozen=True)
class Command:
    name: str
    line: int
    constraint: SetConstraint | None = None
    names: tuple[str, ...] = ()
    number: int | None = None
    path: str | None = None

    def render(self) -> str:
        if self.constraint is not None:
            return f"{self.name} {format(self.constraint)}"
        if self.name in ("decl", "project"):
            return " ".join((self.name,) + self.names)
        if self.name == "universe":
            return f"universe {self.number}"
        if self.name == "dot":
            return f'dot "{self.path}"'
        return self.name


@dataclass
class Script:
    commands: list[Command]

    @property
    def declared(self) -> list[str]:
        """Declared names, in order of first declaration."""
        seen = []
        for c in self.commands:
            if c.name == "decl":
                seen.extend(n for n in c.names if n not in seen)
        return seen


def parse_script(text: str) -> Script:
    p = Parser(tokenize(text))
    commands = []
    universes = 0
    declared: set[str] = set()
    try:
        while p.peek.kind != "eof":
            tok = p.advance()
            if tok.kind != "name" or tok.text not in COMMANDS:
                p.fail(f"unknown command {tok.text!r}", tok)
            name = tok.text
            if name in _NO_ARGS:
                cmd = Command(name, tok.line)
            elif name in _CONSTRAINT_ARGS:
                cmd = Command(name, tok.line, constraint=p.constraint())
            elif name == "universe":
                universes += 1
                if universes > 1:
                    p.fail("at most one universe directive is allowed", tok)
                n = p.peek
                if n.kind != "number" or int(n.text) < 1:
                    p.fail("universe size must be a positive integer")
                p.advance()
                cmd = Command(name, tok.line, number=int(n.text))
            elif name == "dot":
                s = p.peek
                if s.kind != "string":
                    p.fail('dot expects a quoted path, e.g. dot "out.dot"')
                p.advance()
                cmd = Command(name, tok.line, path=s.text[1:-1])
            else:
                names = []
                while p.peek.kind == "name" and not p.at("U") and p.peek.text not in ("and", "or", "true", "false"):
                    names.append(p.advance().text)
                if name == "decl":
                    if not names:
                        p.fail("decl needs at least one name")
                    dup = [n for n in names if n in declared or names.count(n) > 1]
                    if dup:
                        p.fail(f"variable {dup[0]!r} declared twice", tok)
                    declared.update(names)
                cmd = Command(name, tok.line, names=tuple(names))
            if not p.at(";"):
                p.fail(f"expected ';', found {p._describe(p.peek)}")
            p.advance()
            commands.append(cmd)
    except SetSyntaxError as err:
        raise p.best_error(err) from None
    return Script(commands)


@dataclass
class RunOptions:
    order: str = "decl"
    universe: int | None = None
    max_enum: int = DEFAULT_MAX_ENUM
    dot_dir: str | None = None


@dataclass
class Session:
    """Mutable interpreter state for one script run."""

    manager: Manager
    binding: VarBinding
    options: RunOptions
    universe: Universe | None = None
    declared: set[str] = field(default_factory=set)
    stack: list[domain.AbstractState] = field(default_factory=list)
    failures: int = 0

    @property
    def current(self) -> domain.AbstractState:
        if not self.stack:
            raise ScriptError("state stack is empty")
        return self.stack[-1]

    def check_names(self, names) -> None:
        binding = self.current.binding
        for name in names:
            if name not in self.declared or name not in binding:
                raise UnboundVariableError(name)

    def translate(self, k: SetConstraint) -> domain.AbstractState:
        self.check_names(constraint_vars(k))
        s = self.current
        return domain.AbstractState(self.manager, s.binding, tr_cons(k, s.binding, self.manager))

    def gamma(self, state: domain.AbstractState):
        if self.universe is None:
            raise ScriptError("no universe: use 'universe <n>;' or --universe")
        return enumerate_gamma(state.bdd, state.binding, self.universe, self.options.max_enum)

    def execute(self, cmd: Command) -> str:
        name = cmd.name
        if name == "universe":
            self.universe = Universe.of_size(cmd.number)
            return "ok"
        if name == "decl":
            self.declared.update(cmd.names)
            return "ok"
        if name == "assume":
            self.check_names(constraint_vars(cmd.constraint))
            s = domain.assume(self.stack.pop(), cmd.constraint)
            self.stack.append(s)
            return "bottom" if domain.is_bottom(s) else "ok"
        if name in ("check", "checknot"):
            entailed = domain.leq(self.current, self.translate(cmd.constraint))
            passed = entailed if name == "check" else not entailed
            if not passed:
                self.failures += 1
            return "pass" if passed else "fail"
        if name == "push":
            self.stack.append(self.current)
            return f"ok (depth {len(self.stack)})"
        if name == "pop":
            if len(self.stack) < 2:
                raise ScriptError("cannot pop the last state")
            self.stack.pop()
            return f"ok (depth {len(self.stack)})"
        if name == "swap":
            if len(self.stack) < 2:
                raise ScriptError("swap needs two states on the stack")
            self.stack[-2:] = self.stack[:-3:-1]
            return f"ok (depth {len(self.stack)})"
        if name in ("join", "widen"):
            if len(self.stack) < 2:
                raise ScriptError(f"{name} needs two states on the stack")
            s2 = self.stack.pop()
            s1 = self.stack.pop()
            op = domain.join if name == "join" else domain.widen
            self.stack.append(op(s1, s2))
            return f"ok (depth {len(self.stack)})"
        if name == "project":
            self.check_names(cmd.names)
            self.stack.append(domain.project(self.stack.pop(), cmd.names))
            return "ok"
        if name == "dot":
            s = self.current
            names = {v: s.binding.name_of(v) for v in s.binding.var_ids}
            path = Path(cmd.path)
            if self.options.dot_dir is not None and not path.is_absolute():
                path = Path(self.options.dot_dir) / path
            try:
                path.write_text(self.manager.to_dot(s.bdd, names))
            except OSError as err:
                raise ScriptError(f"cannot write {path}: {err.strerror}") from None
            return f"wrote {cmd.path}"
        if name == "stats":
            s = self.current
            st = domain.stats(s)
            out = f"nodes={st.node_count} support=[{', '.join(st.support)}]"
            if self.universe is not None:
                try:
                    out += f" gamma={len(self.gamma(s))}"
                except OracleCapError:
                    pass
            return out
        if name == "gamma":
            s = self.current
            vals = self.gamma(s)
            listed = " ".join(format_valuation(v, s.binding.names) for v in vals)
            return f"{len(vals)} valuations" + (f": {listed}" if listed else "")
        raise ScriptError(f"unknown command {name!r}")


def run(script_text: str, options: RunOptions | None = None) -> tuple[str, int]:
    """Run a script; return the report text and the exit code."""
    options = options or RunOptions()
    lines: list[str] = []
    try:
        script = parse_script(script_text)
    except SetSyntaxError as err:
        return f"error: {err}\n", EXIT_ERROR

    names = script.declared
    if options.order == "alpha":
        names = sorted(names)
    elif options.order != "decl":
        return f"error: unknown variable order {options.order!r}\n", EXIT_ERROR
    binding = VarBinding.of(names)
    m = Manager(len(names))
    session = Session(m, binding, options)
    if options.universe is not None:
        session.universe = Universe.of_size(options.universe)
    session.stack.append(domain.top(binding, m))

    for cmd in script.commands:
        prefix = f"L{cmd.line}: {cmd.render()} -> "
        try:
            result = session.execute(cmd)
        except (ScriptError, UnboundVariableError, OracleCapError, domain.BindingMismatchError) as err:
            lines.append(prefix + f"error: {err}")
            return "\n".join(lines) + "\n", EXIT_ERROR
        lines.append(prefix + result)
    code = EXIT_CHECK_FAILED if session.failures else EXIT_OK
    return "\n".join(lines) + ("\n" if lines else ""), code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setbdd",
        description="Run a set-constraint script against the BDD set domain.",
    )
    parser.add_argument("--script", metavar="FILE", help="script file (default: stdin)")
    parser.add_argument("--order", choices=("decl", "alpha"), default="decl",
                        help="BDD variable order: declaration order or alphabetical")
    parser.add_argument("--universe", type=int, metavar="N",
                        help="oracle universe {1..N} for stats and gamma")
    parser.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM, metavar="COUNT",
                        help="largest number of valuations the oracle may enumerate")
    parser.add_argument("--dot-dir", metavar="PATH", help="directory for relative dot paths")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.universe is not None and args.universe < 1:
        print("setbdd: error: --universe must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    try:
        if args.script is None:
            text = sys.stdin.read()
        else:
            text = Path(args.script).read_text()
    except OSError as err:
        print(f"setbdd: error: cannot read script: {err}", file=sys.stderr)
        return EXIT_ERROR
    options = RunOptions(order=args.order, universe=args.universe,
                         max_enum=args.max_enum, dot_dir=args.dot_dir)
    report, code = run(text, options)
    sys.stdout.write(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
