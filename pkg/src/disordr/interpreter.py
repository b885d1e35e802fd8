"""Evaluator for the session language.

Each statement that produces visible output adds one :class:`Record` to
the transcript.  Records are classified so storage-order neutrality can
be checked line by line: disord displays show storage order and hash
tokens, everything else must not depend on them.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import disord as D
from .disord import Disord, is_number
from .errors import DisordError, ParseError, TypeMismatch, LengthMismatch
from .formatting import BOOLEAN, NUMBER, SYMBOL, format_vector
from .lang import (
    Assign,
    Binary,
    Bool,
    Call,
    Index,
    Name,
    Num,
    Paren,
    Statement,
    Str,
    Unary,
    parse_line,
    parse_script,
)
from .mvp import Mvp, coeffs, mvp_from_triples, powers, rmvp, set_coeffs, vars
from .polytext import parse_mvp, print_mvp
from .storage import INSERTION, storage_order

ORDER_EXPOSED_KINDS = frozenset({"disord"})


class ScriptError(DisordError):
    code = "script-error"


@dataclass(frozen=True)
class Record:
    line: int
    stream: str  # "out" or "err"
    kind: str  # scalar, vector, mvp, disord, error
    text: str
    code: Optional[str] = None

    @property
    def order_exposed(self) -> bool:
        return self.kind in ORDER_EXPOSED_KINDS


@dataclass
class RunResult:
    records: list = field(default_factory=list)
    status: int = 0

    @property
    def stdout(self) -> str:
        return "".join(r.text + "\n" for r in self.records if r.stream == "out")

    @property
    def stderr(self) -> str:
        return "".join(r.text + "\n" for r in self.records if r.stream == "err")

    @property
    def transcript(self) -> str:
        return "".join(r.text + "\n" for r in self.records)


def error_record(line: int, exc: DisordError) -> Record:
    return Record(line, "err", "error", f"Error [{exc.code}]: {exc}", exc.code)


def display(value, line: int = 0) -> Optional[Record]:
    if value is None:
        return None
    if isinstance(value, Disord):
        return Record(line, "out", "disord", str(value))
    if isinstance(value, Mvp):
        return Record(line, "out", "mvp", print_mvp(value))
    if isinstance(value, tuple):
        return Record(line, "out", "vector", "\n".join(format_vector(value, _plain_kind(value))))
    return Record(line, "out", "scalar", "\n".join(format_vector([value], _plain_kind([value]))))


def _plain_kind(values):
    if values and all(isinstance(v, bool) for v in values):
        return BOOLEAN
    if values and all(isinstance(v, str) for v in values):
        return SYMBOL
    return NUMBER


# -- plain (ordered) vector helpers ---------------------------------------

def _as_tuple(v):
    return v if isinstance(v, tuple) else (v,)


def _collapse(values):
    values = tuple(values)
    return values[0] if len(values) == 1 else values


def _plain_binary(op, left, right):
    if op in D._ARITHMETIC:
        fn = D._ARITHMETIC[op]
        for side in (left, right):
            for v in _as_tuple(side):
                if not is_number(v):
                    raise TypeMismatch(f"arithmetic operator {op} needs numbers")
    else:
        fn = D._COMPARISON[op]
    a, b = _as_tuple(left), _as_tuple(right)
    if len(a) == 0 or len(b) == 0:
        return ()
    if len(a) != len(b) and 1 not in (len(a), len(b)):
        raise LengthMismatch(f"vectors of lengths {len(a)} and {len(b)}")
    n = max(len(a), len(b))
    out = [fn(a[i if len(a) > 1 else 0], b[i if len(b) > 1 else 0]) for i in range(n)]
    return _collapse(out)


def _range(left, right):
    for v in (left, right):
        if not is_number(v) or not float(v).is_integer():
            raise TypeMismatch("range bounds must be integers")
    lo, hi = int(left), int(right)
    step = 1 if hi >= lo else -1
    return _collapse(range(lo, hi + step, step))


def _positions(value):
    out = []
    for v in _as_tuple(value):
        if not is_number(v):
            raise TypeMismatch(f"positional index must be a number, not {v!r}")
        out.append(v - 1)
    return out


def _double(x):
    if isinstance(x, tuple):
        return tuple(2 * v for v in x)
    if is_number(x):
        return 2 * x
    raise TypeMismatch("double needs numbers")


def _upper(x):
    if isinstance(x, tuple):
        return tuple(_upper(v) for v in x)
    if isinstance(x, str):
        return x.upper()
    raise TypeMismatch("upper needs symbols")


def _lengths(x):
    return len(x) if isinstance(x, tuple) else 1


MAP_FUNCTIONS = {
    "double": _double,
    "upper": _upper,
    "toupper": _upper,
    "lengths": _lengths,
    "length": _lengths,
}

_REDUCERS = ("max", "min", "sum", "prod", "any", "all", "length")


class Interpreter:
    """Evaluates statements against one environment."""

    def __init__(self, storage=INSERTION):
        self.storage = storage
        self.env: dict = {}
        self.records: list = []
        self._line = 0

    # -- statement execution -------------------------------------------
    def execute(self, statement: Statement) -> bool:
        """Run one statement; returns False if it raised an uncaught error."""
        self._line = statement.line
        with storage_order(self.storage):
            try:
                value, visible = self.eval(statement.expr)
            except DisordError as exc:
                self.records.append(error_record(statement.line, exc))
                return False
        if visible:
            record = display(value, statement.line)
            if record is not None:
                self.records.append(record)
        return True

    def eval(self, node):
        """Return ``(value, visible)``."""
        if isinstance(node, Assign):
            self.assign(node.target, self.value(node.value))
            return None, False
        if isinstance(node, Paren):
            value, _ = self.eval(node.expr)
            if isinstance(node.expr, Assign):
                value = self.value(_assigned_name(node.expr.target))
            return value, True
        if isinstance(node, Call) and node.func == "try":
            if len(node.args) != 1:
                raise ScriptError("try() takes exactly one argument")
            try:
                return self.eval(node.args[0])
            except DisordError as exc:
                self.records.append(error_record(self._line, exc))
                return None, False
        return self.value(node), True

    def value(self, node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Bool):
            return node.value
        if isinstance(node, Str):
            return node.value
        if isinstance(node, Name):
            if node.id not in self.env:
                raise ScriptError(f"object '{node.id}' not found")
            return self.env[node.id]
        if isinstance(node, (Paren, Assign)) or (isinstance(node, Call) and node.func == "try"):
            return self.eval(node)[0]
        if isinstance(node, Unary):
            operand = self.value(node.operand)
            return operand if node.op == "+" else self.negate(operand)
        if isinstance(node, Binary):
            return self.binary(node.op, self.value(node.left), self.value(node.right))
        if isinstance(node, Index):
            target = self.value(node.target)
            index = None if node.index is None else self.value(node.index)
            return self.index(target, index)
        if isinstance(node, Call):
            return self.call(node)
        raise ScriptError(f"cannot evaluate {node!r}")

    # -- operators ------------------------------------------------------
    def negate(self, v):
        if isinstance(v, (Disord, Mvp)):
            return -v
        return _plain_binary("*", v, -1)

    def binary(self, op, left, right):
        if op == ":":
            return _range(left, right)
        if isinstance(left, Disord) or isinstance(right, Disord):
            if isinstance(left, Mvp) or isinstance(right, Mvp):
                raise TypeMismatch("cannot combine a disord with a polynomial")
            return D.elementwise_binary(op, left, right)
        if isinstance(left, Mvp) or isinstance(right, Mvp):
            return self.poly_binary(op, left, right)
        return _plain_binary(op, left, right)

    def poly_binary(self, op, left, right):
        for side in (left, right):
            if not (isinstance(side, Mvp) or is_number(side)):
                raise TypeMismatch(f"cannot combine a polynomial with {type(side).__name__}")
        if op == "+":
            return left + right
        if op == "-":
            return left - right
        if op == "*":
            return left * right
        if op == "^" and isinstance(left, Mvp) and is_number(right):
            return left ** right
        if op == "==":
            return Mvp.constant(left) == right if not isinstance(left, Mvp) else left == right
        if op == "!=":
            return not self.poly_binary("==", left, right)
        raise TypeMismatch(f"operator {op} is not defined for polynomials")

    def index(self, target, index):
        if isinstance(target, Disord):
            if index is None:
                return target
            if isinstance(index, Disord):
                return D.extract_bool(target, index)
            return D.extract_int(target, _positions(index))
        if isinstance(target, Mvp):
            raise TypeMismatch("cannot index a polynomial; use coeffs(), vars() or powers()")
        values = _as_tuple(target)
        if index is None:
            return target
        if isinstance(index, Disord):
            raise TypeMismatch("a plain vector cannot be indexed by a disord")
        out = []
        for i in _positions(index):
            if not float(i).is_integer() or not 0 <= i < len(values):
                raise D.BadIndex(f"index {int(i) + 1} out of range")
            out.append(values[int(i)])
        return _collapse(out)

    # -- assignment -------------------------------------------------------
    def assign(self, target, value):
        index = None
        indexed = isinstance(target, Index)
        if indexed:
            index = None if target.index is None else self.value(target.index)
            target = target.target
        if isinstance(target, Name):
            if not indexed:
                self.env[target.id] = value
                return
            current = self.value(target)
            if not isinstance(current, Disord):
                raise TypeMismatch("indexed assignment needs a disord")
            self.env[target.id] = self._replace(current, index, value)
            return
        # coeffs(name) <- value, coeffs(name)[index] <- value
        name = target.args[0].id
        p = self.value(target.args[0])
        if not isinstance(p, Mvp):
            raise TypeMismatch("coeffs() needs a polynomial")
        if indexed:
            value = self._replace(coeffs(p), index, value)
        self.env[name] = set_coeffs(p, value)

    def _replace(self, current: Disord, index, value):
        if index is None:
            return D.replace_all(current, value)
        if isinstance(index, Disord):
            return D.replace_bool(current, index, value)
        return D.replace_int(current, _positions(index), value)

    # -- builtins -------------------------------------------------------
    def call(self, node: Call):
        name = node.func
        if name in ("map", "sapply"):
            return self._map(node)
        args = [self.value(a) for a in node.args]
        handler = getattr(self, f"_fn_{name}", None)
        if handler is not None:
            return handler(*args) if name not in ("c", "disord") else handler(args)
        if name in _REDUCERS:
            (x,) = self._arity(name, args, 1)
            return D.reduce(name, x if isinstance(x, Disord) else self._plain_disord(x))
        raise ScriptError(f'could not find function "{name}"')

    def _arity(self, name, args, n):
        if len(args) != n:
            raise ScriptError(f"{name}() takes {n} argument(s), got {len(args)}")
        return args

    @staticmethod
    def _plain_disord(x):
        if isinstance(x, Mvp):
            raise TypeMismatch("reductions need a vector, not a polynomial")
        with storage_order(INSERTION):
            return Disord(list(_as_tuple(x)))

    def _map(self, node: Call):
        if len(node.args) != 2 or not isinstance(node.args[1], Name):
            raise ScriptError("map(x, f) needs a vector and one of: " + ", ".join(MAP_FUNCTIONS))
        fname = node.args[1].id
        if fname not in MAP_FUNCTIONS:
            raise ScriptError(f"unknown map function '{fname}'; use one of: " + ", ".join(MAP_FUNCTIONS))
        fn = MAP_FUNCTIONS[fname]
        x = self.value(node.args[0])
        if isinstance(x, Disord):
            return D.map_elements(fn, x)
        if isinstance(x, Mvp):
            raise TypeMismatch("cannot map over a polynomial")
        return _collapse(fn(v) for v in _as_tuple(x))

    @staticmethod
    def _flatten(args):
        out = []
        for a in args:
            if isinstance(a, (Disord, Mvp)):
                raise TypeMismatch("c() and disord() take plain values")
            out.extend(_as_tuple(a))
        return out

    def _fn_c(self, args):
        return _collapse(self._flatten(args))

    def _fn_disord(self, args):
        return Disord(self._flatten(args))

    def _fn_mvp(self, *args):
        if len(args) == 1 and isinstance(args[0], str):
            return parse_mvp(args[0])
        if len(args) == 3:
            return mvp_from_triples(*args)
        raise ScriptError('mvp() takes a literal string or three arguments (vars, powers, coeffs)')

    def _poly_arg(self, name, args):
        (p,) = self._arity(name, args, 1)
        if not isinstance(p, Mvp):
            raise TypeMismatch(f"{name}() needs a polynomial")
        return p

    def _fn_coeffs(self, *args):
        return coeffs(self._poly_arg("coeffs", args))

    def _fn_vars(self, *args):
        return vars(self._poly_arg("vars", args))

    def _fn_powers(self, *args):
        return powers(self._poly_arg("powers", args))

    def _fn_sort(self, *args):
        (x,) = self._arity("sort", args, 1)
        if isinstance(x, Disord):
            return tuple(D.sort_plain(x))
        return _collapse(D.sort_plain(self._plain_disord(x)))

    def _fn_rev(self, *args):
        (x,) = self._arity("rev", args, 1)
        if isinstance(x, Disord):
            return D.reverse(x)
        if isinstance(x, Mvp):
            raise TypeMismatch("cannot reverse a polynomial")
        return _collapse(reversed(_as_tuple(x)))

    def _fn_pmax(self, *args):
        a, b = self._arity("pmax", args, 2)
        if isinstance(a, Disord) or isinstance(b, Disord):
            return D.pmax(a, b)
        return _plain_binary("pmax", a, b)

    def _fn_pmin(self, *args):
        a, b = self._arity("pmin", args, 2)
        if isinstance(a, Disord) or isinstance(b, Disord):
            return D.pmin(a, b)
        return _plain_binary("pmin", a, b)

    def _fn_rdis(self, n=9, seed=0):
        return D.rdis(_int_arg("n", n), _int_arg("seed", seed))

    def _fn_rmvp(self, seed=0):
        return rmvp(_int_arg("seed", seed))

    def _fn_print(self, *args):
        (x,) = self._arity("print", args, 1)
        return x


def _int_arg(name, v):
    if not is_number(v) or not float(v).is_integer():
        raise TypeMismatch(f"{name} must be an integer")
    return int(v)


def _assigned_name(target):
    return target.target if isinstance(target, Index) else (
        target.args[0] if isinstance(target, Call) else target)


def run_statements(statements, storage=INSERTION) -> RunResult:
    interp = Interpreter(storage)
    for statement in statements:
        if not interp.execute(statement):
            return RunResult(interp.records, 1)
    return RunResult(interp.records, 0)


def run_script(source: str, storage=INSERTION) -> RunResult:
    """Parse and run a whole script.

    Parse errors abort before anything runs (status 2); an uncaught runtime
    error stops execution (status 1).  Errors inside ``try(...)`` are
    reported and execution continues.
    """
    try:
        statements = parse_script(source)
    except ParseError as exc:
        line = source.count("\n", 0, exc.position) + 1
        return RunResult([error_record(line, exc)], 2)
    return run_statements(statements, storage)


EXIT_WORDS = ("q", "q()", "quit", "quit()")


def repl(storage=INSERTION, stdin=None, stdout=None, stderr=None, prompt="> ") -> int:
    """Interactive loop; errors are reported and the loop continues."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    interactive = stdin is sys.stdin and sys.stdin.isatty()
    if interactive:
        try:
            import readline  # noqa: F401  (line editing only)
        except ImportError:
            pass
    interp = Interpreter(storage)
    lineno = 0
    while True:
        if interactive:
            try:
                text = input(prompt)
            except EOFError:
                stdout.write("\n")
                return 0
        else:
            stdout.write(prompt)
            text = stdin.readline()
            if not text:
                return 0
            text = text.rstrip("\n")
        lineno += 1
        if text.strip() in EXIT_WORDS:
            return 0
        start = len(interp.records)
        try:
            node = parse_line(text)
        except ParseError as exc:
            interp.records.append(error_record(lineno, exc))
            node = None
        if node is not None:
            interp.execute(Statement(lineno, text, node))
        for record in interp.records[start:]:
            stream = stdout if record.stream == "out" else stderr
            stream.write(record.text + "\n")
            stream.flush()
