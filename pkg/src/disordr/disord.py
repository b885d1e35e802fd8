"""Disordered vectors.

A :class:`Disord` holds values in an implementation-specific order together
with a provenance token.  Operations whose answer does not depend on that
order (elementwise arithmetic between compatible objects, reductions,
sorting into a plain list, boolean-mask extraction and replacement) are
allowed; everything that would expose the order raises.

    >>> a = Disord([9, 4, 7, 1, 2, 6, 3, 8, 5])
    >>> (a ** 2).hash == a.hash
    True
    >>> a.max()
    9
    >>> a.sort()
    [1, 2, 3, 4, 5, 6, 7, 8, 9]
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import storage
from .errors import (
    EXTRACT_MESSAGE,
    REPLACE_MESSAGE,
    BadIndex,
    HashMismatch,
    LengthMismatch,
    MixedKinds,
    PlainVectorOperand,
    PlainVectorReplacement,
    TypeMismatch,
)
from .formatting import (
    BOOLEAN,
    NUMBER,
    NUMBER_LIST,
    SYMBOL,
    SYMBOL_LIST,
    format_values,
)
from .provenance import (
    ProvenanceHash,
    derive_permutation,
    derive_subset,
    fresh_from_sequence,
    involute_reverse,
)

__all__ = [
    "Disord",
    "make_disord",
    "rdis",
    "elementwise_binary",
    "map_elements",
    "reduce",
    "sort_plain",
    "reverse",
    "extract_bool",
    "extract_int",
    "replace_bool",
    "replace_int",
    "replace_all",
    "pmax",
    "pmin",
    "compatible",
    "check_compatible",
]

_LIST_KINDS = (NUMBER_LIST, SYMBOL_LIST)
_UNDECIDED_LIST = "list"
_PLAIN = (list, tuple, range)


def is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def kind_of(value):
    if isinstance(value, bool):
        return BOOLEAN
    if is_number(value):
        return NUMBER
    if isinstance(value, str):
        return SYMBOL
    if isinstance(value, (list, tuple)):
        inner = {kind_of(v) for v in value}
        if not inner:
            return _UNDECIDED_LIST
        if inner == {SYMBOL}:
            return SYMBOL_LIST
        if inner == {NUMBER}:
            return NUMBER_LIST
        raise MixedKinds(f"list element mixes kinds {sorted(inner)}")
    raise TypeMismatch(f"unsupported element type {type(value).__name__}")


def _normalize(value):
    if isinstance(value, list):
        return tuple(value)
    return _tame(value)


def _infer_kind(values, kind=None):
    kinds = {kind_of(v) for v in values}
    if _UNDECIDED_LIST in kinds:
        kinds.discard(_UNDECIDED_LIST)
        if not kinds:
            kinds = {kind if kind in _LIST_KINDS else NUMBER_LIST}
        elif not kinds <= set(_LIST_KINDS):
            raise MixedKinds("cannot mix lists with atomic values")
    if len(kinds) > 1:
        raise MixedKinds(f"a disord must be homogeneous; got kinds {sorted(kinds)}")
    found = kinds.pop() if kinds else None
    if kind is not None and found is not None and kind != found:
        raise MixedKinds(f"values of kind {found} do not match requested kind {kind}")
    return found if found is not None else kind


def _encode_atom(x) -> str:
    if isinstance(x, bool):
        return "T" if x else "F"
    if isinstance(x, int):
        return "n" + str(x)
    if isinstance(x, float):
        if math.isfinite(x) and x.is_integer() and abs(x) < 2 ** 63:
            return "n" + str(int(x))
        return "n" + repr(x)
    return "s" + json.dumps(x)


def _encode_element(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_encode_atom(v) for v in x) + ")"
    return _encode_atom(x)


def canonical_encoding(kind, encoded: Sequence[str]) -> bytes:
    """Order-sensitive byte encoding of a stored sequence."""
    return (f"{kind}|" + ";".join(encoded)).encode()


class Disord:
    """An immutable sequence stored in an unspecified order.

    ``Disord(values)`` creates a new object whose token is the digest of its
    stored sequence; two objects created from identical values are
    compatible.  Every operation returns a new object.
    """

    __slots__ = ("_elements", "_hash", "_kind")
    __hash__ = None  # == is elementwise

    def __init__(self, values: Sequence[Any] = (), kind=None):
        values = [_normalize(v) for v in values]
        kind = _infer_kind(values, kind)
        encoded = [_encode_element(v) for v in values]
        multiset_key = canonical_encoding(kind, sorted(encoded))
        perm = storage.current().arrange(len(values), multiset_key)
        self._elements = tuple(values[i] for i in perm)
        self._kind = kind
        self._hash = fresh_from_sequence(canonical_encoding(kind, [encoded[i] for i in perm]))

    @classmethod
    def _derived(cls, elements, hash: ProvenanceHash, kind) -> "Disord":
        obj = cls.__new__(cls)
        obj._elements = tuple(elements)
        obj._hash = hash
        obj._kind = kind
        return obj

    # -- introspection -------------------------------------------------
    @property
    def hash(self) -> ProvenanceHash:
        return self._hash

    @property
    def kind(self):
        return self._kind

    @property
    def elements(self) -> tuple:
        """The stored sequence.  Its order is not meaningful."""
        return self._elements

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        raise TypeError("iterating over a disord exposes its storage order; use sort() or a reduction")

    def __bool__(self):
        raise TypeError("the truth value of a disord is ambiguous; use any() or all()")

    def __contains__(self, value):
        return value in self._elements

    def compatible(self, other: "Disord") -> bool:
        return compatible(self, other)

    def identical(self, other: "Disord") -> bool:
        """Same token, kind and stored elements."""
        return (
            isinstance(other, Disord)
            and self._hash == other._hash
            and self._kind == other._kind
            and self._elements == other._elements
        )

    def as_multiset(self) -> Counter:
        return Counter(self._elements)

    def __str__(self):
        lines = [f"A disord object with hash {self._hash.hex()} and elements"]
        lines.extend(format_values(self._elements, self._kind))
        lines.append("(in some order)")
        return "\n".join(lines)

    def __repr__(self):
        return f"<Disord kind={self._kind} n={len(self)} hash={self._hash.short()}>"

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        return elementwise_binary("+", self, other)

    def __radd__(self, other):
        return elementwise_binary("+", other, self)

    def __sub__(self, other):
        return elementwise_binary("-", self, other)

    def __rsub__(self, other):
        return elementwise_binary("-", other, self)

    def __mul__(self, other):
        return elementwise_binary("*", self, other)

    def __rmul__(self, other):
        return elementwise_binary("*", other, self)

    def __truediv__(self, other):
        return elementwise_binary("/", self, other)

    def __rtruediv__(self, other):
        return elementwise_binary("/", other, self)

    def __pow__(self, other):
        return elementwise_binary("^", self, other)

    def __rpow__(self, other):
        return elementwise_binary("^", other, self)

    def __mod__(self, other):
        return elementwise_binary("%%", self, other)

    def __rmod__(self, other):
        return elementwise_binary("%%", other, self)

    def __neg__(self):
        return elementwise_binary("*", self, -1)

    def __lt__(self, other):
        return elementwise_binary("<", self, other)

    def __le__(self, other):
        return elementwise_binary("<=", self, other)

    def __gt__(self, other):
        return elementwise_binary(">", self, other)

    def __ge__(self, other):
        return elementwise_binary(">=", self, other)

    def __eq__(self, other):
        return elementwise_binary("==", self, other)

    def __ne__(self, other):
        return elementwise_binary("!=", self, other)

    # -- indexing ------------------------------------------------------
    def __getitem__(self, index):
        if isinstance(index, Disord):
            return extract_bool(self, index)
        if isinstance(index, slice) and index == slice(None):
            return self
        return extract_int(self, index)

    def replace(self, index, value) -> "Disord":
        """Functional counterpart of ``x[index] <- value``.

        ``index`` is a boolean Disord, a plain sequence of positions, or
        ``None``/``slice(None)`` for whole-object replacement.
        """
        if index is None or (isinstance(index, slice) and index == slice(None)):
            return replace_all(self, value)
        if isinstance(index, Disord):
            return replace_bool(self, index, value)
        return replace_int(self, index, value)

    # -- order-free questions ------------------------------------------
    def map(self, f: Callable, kind=None) -> "Disord":
        return map_elements(f, self, kind)

    def max(self):
        return reduce("max", self)

    def min(self):
        return reduce("min", self)

    def sum(self):
        return reduce("sum", self)

    def prod(self):
        return reduce("prod", self)

    def any(self):
        return reduce("any", self)

    def all(self):
        return reduce("all", self)

    def sort(self, ascending: bool = True) -> list:
        return sort_plain(self, ascending)

    def reverse(self) -> "Disord":
        return reverse(self)


def make_disord(values: Sequence[Any] = (), kind=None) -> Disord:
    return Disord(values, kind)


def rdis(n: int = 9, seed: int = 0) -> Disord:
    """Random permutation of ``1..n`` as a fresh disord."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Disord(random.Random(seed).sample(range(1, n + 1), n))


def compatible(a: Disord, b: Disord) -> bool:
    return len(a) == 0 or len(b) == 0 or a.hash == b.hash


def check_compatible(a: Disord, b: Disord) -> None:
    if not compatible(a, b):
        raise HashMismatch(a.hash, b.hash)


# -- scalar arithmetic with IEEE results instead of exceptions ---------------

# Integers stay exact up to this many bits, then degrade to floats so that
# mixing them with floats can never overflow the conversion.
_EXACT_BITS = 1000


def _to_float(x) -> float:
    try:
        return float(x)
    except OverflowError:
        return math.copysign(math.inf, x)


def _tame(x):
    if isinstance(x, int) and not isinstance(x, bool) and x.bit_length() > _EXACT_BITS:
        return _to_float(x)
    return x


def _mul(a, b):
    if isinstance(a, int) and isinstance(b, int) and a.bit_length() + b.bit_length() > _EXACT_BITS:
        return _to_float(a) * _to_float(b)
    return a * b


def _div(a, b):
    try:
        return a / b
    except ZeroDivisionError:
        if a == 0 or math.isnan(a):
            return math.nan
        return math.copysign(math.inf, a) * math.copysign(1.0, b)


def _mod(a, b):
    if b == 0:
        return math.nan
    return a % b


def _pow(a, b):
    if isinstance(a, int) and isinstance(b, int) and b > 0 and a not in (0, 1, -1):
        # keep exact integers, but not astronomically large ones
        if b * math.log2(abs(a)) > _EXACT_BITS:
            a = _to_float(a)
    try:
        r = a ** b
    except ZeroDivisionError:
        return math.inf
    except OverflowError:
        return math.inf if a > 0 or b % 2 == 0 else -math.inf
    if isinstance(r, complex):
        return math.nan
    return r


def _pmax(a, b):
    if math.isnan(a) or math.isnan(b):
        return math.nan
    return a if a >= b else b


def _pmin(a, b):
    if math.isnan(a) or math.isnan(b):
        return math.nan
    return a if a <= b else b


_ARITHMETIC = {
    "+": lambda a, b: _tame(a + b),
    "-": lambda a, b: _tame(a - b),
    "*": _mul,
    "/": _div,
    "^": _pow,
    "%%": _mod,
    "pmax": _pmax,
    "pmin": _pmin,
}

_COMPARISON = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}

BINARY_OPS = tuple(_ARITHMETIC) + tuple(_COMPARISON)


def _operand(x):
    if isinstance(x, Disord):
        return x
    if isinstance(x, _PLAIN):
        if len(x) != 1:
            raise PlainVectorOperand(
                f"cannot combine a disord with a plain vector of length {len(x)}; "
                "its order has no relation to the disord's storage order"
            )
        x = x[0]
    kind = kind_of(x)
    if kind not in (NUMBER, BOOLEAN, SYMBOL):
        raise TypeMismatch(f"unsupported operand {x!r}")
    return x


def _kind(x):
    return x.kind if isinstance(x, Disord) else kind_of(x)


def elementwise_binary(op: str, lhs, rhs) -> Disord:
    """Apply ``op`` elementwise; scalars broadcast.

    Both sides being disords requires compatible tokens.  The result
    carries the token of the non-empty disord operand.
    """
    if op in _ARITHMETIC:
        fn, result_kind = _ARITHMETIC[op], NUMBER
    elif op in _COMPARISON:
        fn, result_kind = _COMPARISON[op], BOOLEAN
    else:
        raise ValueError(f"unknown operator {op!r}")
    if not isinstance(lhs, Disord) and not isinstance(rhs, Disord):
        raise TypeError("at least one operand must be a Disord")
    lhs, rhs = _operand(lhs), _operand(rhs)

    lk, rk = _kind(lhs), _kind(rhs)
    if result_kind == NUMBER:
        for k in (lk, rk):
            if k not in (NUMBER, None):
                raise TypeMismatch(f"arithmetic operator {op} needs numbers, not {k}")
    else:
        for k in (lk, rk):
            if k in _LIST_KINDS:
                raise TypeMismatch(f"cannot compare values of kind {k}")
        if lk is not None and rk is not None and lk != rk:
            raise TypeMismatch(f"cannot compare {lk} with {rk}")

    if isinstance(lhs, Disord) and isinstance(rhs, Disord):
        check_compatible(lhs, rhs)
        token = lhs.hash if len(lhs) else rhs.hash
        if len(lhs) == 0 or len(rhs) == 0:
            return Disord._derived((), token, result_kind)
        elements = [fn(a, b) for a, b in zip(lhs._elements, rhs._elements)]
    elif isinstance(lhs, Disord):
        token = lhs.hash
        elements = [fn(a, rhs) for a in lhs._elements]
    else:
        token = rhs.hash
        elements = [fn(lhs, b) for b in rhs._elements]
    return Disord._derived(elements, token, result_kind)


def pmax(a, b) -> Disord:
    return elementwise_binary("pmax", a, b)


def pmin(a, b) -> Disord:
    return elementwise_binary("pmin", a, b)


def map_elements(f: Callable, d: Disord, kind=None) -> Disord:
    """Apply ``f`` to every element; the token is preserved."""
    values = [_normalize(f(x)) for x in d._elements]
    return Disord._derived(values, d.hash, _infer_kind(values, kind))


# -- reductions ----------------------------------------------------------

def _require(d: Disord, kinds, what: str):
    if d.kind is not None and d.kind not in kinds:
        raise TypeMismatch(f"{what} is not defined for a disord of kind {d.kind}")


def _sum(values):
    if all(isinstance(v, int) for v in values):
        return _tame(sum(values))
    if any(math.isnan(v) for v in values):
        return math.nan
    infinities = {v for v in values if isinstance(v, float) and math.isinf(v)}
    if infinities:
        return infinities.pop() if len(infinities) == 1 else math.nan
    try:
        return math.fsum(values)
    except OverflowError:
        return _to_float(sum(Fraction(v) for v in values))


def _prod(values):
    if all(isinstance(v, int) for v in values):
        return _tame(math.prod(values))
    if all(math.isfinite(v) for v in values):
        # exact rational product rounds once, independent of order
        return _to_float(math.prod((Fraction(v) for v in values), start=Fraction(1)))
    if any(math.isnan(v) for v in values):
        return math.nan
    if any(v == 0 for v in values):
        return math.nan
    negatives = sum(1 for v in values if v < 0)
    return -math.inf if negatives % 2 else math.inf


def _order_key(v):
    """Total order that also separates values comparing equal (-0 and 0, 1 and 1.0)."""
    if isinstance(v, float):
        return (v, math.copysign(1.0, v), 1)
    return (v, 1.0, 0)


def _extreme(values, pick, empty):
    if not values:
        return empty
    if any(isinstance(v, float) and math.isnan(v) for v in values):
        return math.nan
    # ties are broken by _order_key so the winner never depends on storage order
    return pick(values, key=_order_key)


REDUCTIONS = ("max", "min", "sum", "prod", "any", "all", "length")


def reduce(op: str, d: Disord):
    """Collapse ``d`` to a plain scalar.  No provenance survives."""
    values = d._elements
    if op == "length":
        return len(values)
    if op in ("any", "all"):
        _require(d, (BOOLEAN,), op)
        return any(values) if op == "any" else all(values)
    _require(d, (NUMBER,), op)
    if op == "max":
        return _extreme(values, max, -math.inf)
    if op == "min":
        return _extreme(values, min, math.inf)
    if op == "sum":
        return _sum(values)
    if op == "prod":
        return _prod(values)
    raise ValueError(f"unknown reduction {op!r}")


def sort_plain(d: Disord, ascending: bool = True) -> list:
    _require(d, (NUMBER, BOOLEAN, SYMBOL), "sort")
    nans = [v for v in d._elements if isinstance(v, float) and math.isnan(v)]
    rest = sorted((v for v in d._elements if not (isinstance(v, float) and math.isnan(v))),
                  key=_order_key if d.kind == NUMBER else None, reverse=not ascending)
    return rest + nans


def reverse(d: Disord) -> Disord:
    return Disord._derived(d._elements[::-1], involute_reverse(d.hash), d.kind)


# -- extraction and replacement ------------------------------------------

def _mask_bits(d: Disord, mask) -> list[bool]:
    if not isinstance(mask, Disord):
        raise TypeMismatch("a logical index must be a boolean disord")
    if mask.kind not in (BOOLEAN, None):
        raise TypeMismatch(f"index disord must be boolean, not {mask.kind}")
    check_compatible(d, mask)
    if len(mask) != len(d):
        raise LengthMismatch(f"mask has length {len(mask)} but the disord has length {len(d)}")
    return list(mask._elements)


def _positions(indices) -> list[int]:
    if isinstance(indices, bool) or is_number(indices):
        indices = [indices]
    if not isinstance(indices, _PLAIN):
        raise TypeMismatch(f"unsupported index {indices!r}")
    out = []
    for i in indices:
        if isinstance(i, bool) or not is_number(i) or not float(i).is_integer():
            raise TypeMismatch(f"positional index must be an integer, not {i!r}")
        out.append(int(i))
    return out


def _is_full_permutation(idx: list[int], n: int) -> bool:
    return len(idx) == n and sorted(idx) == list(range(n))


def _check_value_kind(target, value_kind):
    if target is None or value_kind is None or target == value_kind:
        return
    raise TypeMismatch(f"cannot store values of kind {value_kind} in a disord of kind {target}")


def _scalar(value, error):
    if isinstance(value, _PLAIN):
        if len(value) != 1:
            raise error(
                f"replacement value is a plain vector of length {len(value)}; "
                "only a single value or a compatible disord is allowed"
            )
        value = value[0]
    kind = kind_of(value)
    if kind not in (NUMBER, BOOLEAN, SYMBOL):
        raise TypeMismatch(f"unsupported replacement value {value!r}")
    return value


def extract_bool(d: Disord, mask: Disord) -> Disord:
    bits = _mask_bits(d, mask)
    chosen = [x for x, keep in zip(d._elements, bits) if keep]
    return Disord._derived(chosen, derive_subset(d.hash, bits), d.kind)


def extract_int(d: Disord, indices) -> Disord:
    """Positional extraction: all positions exactly once, or none."""
    idx = _positions(indices)
    n = len(d)
    if not idx:
        return Disord._derived((), derive_subset(d.hash, [False] * n), d.kind)
    if not _is_full_permutation(idx, n):
        raise BadIndex(EXTRACT_MESSAGE)
    return Disord._derived([d._elements[i] for i in idx], derive_permutation(d.hash, idx), d.kind)


def replace_bool(d: Disord, mask: Disord, value) -> Disord:
    bits = _mask_bits(d, mask)
    count = sum(bits)
    if isinstance(value, Disord):
        target = derive_subset(d.hash, bits)
        if len(value) and value.hash != target:
            raise HashMismatch(target, value.hash)
        if len(value) != count:
            raise LengthMismatch(f"replacement has length {len(value)} but the mask selects {count}")
        _check_value_kind(d.kind, value.kind)
        supply = iter(value._elements)
        new = [next(supply) if keep else x for x, keep in zip(d._elements, bits)]
    else:
        scalar = _scalar(value, PlainVectorReplacement)
        if count:
            _check_value_kind(d.kind, kind_of(scalar))
        new = [scalar if keep else x for x, keep in zip(d._elements, bits)]
    return Disord._derived(new, d.hash, d.kind)


def replace_int(d: Disord, indices, value) -> Disord:
    """Positional replacement; every position must be named exactly once.

    A full-length plain vector is accepted but severs the link to the old
    storage order, so the result is a freshly created disord.
    """
    idx = _positions(indices)
    n = len(d)
    if not _is_full_permutation(idx, n):
        raise BadIndex(REPLACE_MESSAGE)
    if isinstance(value, Disord):
        target = derive_permutation(d.hash, idx)
        if len(value) and value.hash != target:
            raise HashMismatch(target, value.hash)
        if len(value) != n:
            raise LengthMismatch(f"replacement has length {len(value)}, expected {n}")
        _check_value_kind(d.kind, value.kind)
        new = [None] * n
        for k, i in enumerate(idx):
            new[i] = value._elements[k]
        return Disord._derived(new, d.hash, d.kind)
    if isinstance(value, _PLAIN) and len(value) != 1:
        if len(value) != n:
            raise LengthMismatch(f"replacement has length {len(value)}, expected {n}")
        new = [None] * n
        for k, i in enumerate(idx):
            new[i] = value[k]
        fresh = Disord(new)
        _check_value_kind(d.kind, fresh.kind)
        return fresh
    scalar = _scalar(value, PlainVectorReplacement)
    if n:
        _check_value_kind(d.kind, kind_of(scalar))
    return Disord._derived([scalar] * n, d.hash, d.kind)


def replace_all(d: Disord, value) -> Disord:
    if isinstance(value, Disord):
        check_compatible(d, value)
        if len(value) != len(d):
            raise LengthMismatch(f"replacement has length {len(value)}, expected {len(d)}")
        _check_value_kind(d.kind, value.kind)
        return Disord._derived(value._elements, d.hash, d.kind or value.kind)
    scalar = _scalar(value, PlainVectorReplacement)
    if len(d):
        _check_value_kind(d.kind, kind_of(scalar))
    return Disord._derived([scalar] * len(d), d.hash, d.kind)
