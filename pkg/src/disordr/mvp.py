"""Sparse multivariate polynomials backed by a map from monomials to coefficients.

An :class:`Mvp` keeps its terms in some internal order decided when it is
built (see :mod:`disordr.storage`).  Algebra, equality and printing ignore
that order.  :func:`coeffs`, :func:`vars` and :func:`powers` expose it, but
only as disords sharing one token derived from the polynomial itself, so
they can be combined with each other and with nothing else.
"""

from __future__ import annotations

import math
import random
from types import MappingProxyType
from typing import Iterable, Mapping

from . import storage
from .disord import Disord, _PLAIN, is_number
from .errors import (
    HashMismatch,
    LengthMismatch,
    NegativePower,
    PlainVectorReplacement,
    TypeMismatch,
)
from .formatting import NUMBER, NUMBER_LIST, SYMBOL_LIST
from .provenance import ProvenanceHash, fresh_from_sequence

__all__ = [
    "Monomial",
    "Mvp",
    "normalize_term",
    "mvp_from_triples",
    "coeffs",
    "vars",
    "powers",
    "canonical_digest",
    "set_coeffs",
    "rmvp",
]


class Monomial:
    """Product of symbols raised to nonzero integer powers.

    Stored as ``(symbol, exponent)`` pairs sorted by symbol.  Ordering
    compares those pairs lexicographically, symbols by code point and
    exponents numerically; this is the order terms are printed in.
    """

    __slots__ = ("_pairs", "_hash")

    def __init__(self, pairs: Iterable[tuple[str, int]] = ()):
        merged: dict[str, int] = {}
        for symbol, exponent in pairs:
            merged[symbol] = merged.get(symbol, 0) + int(exponent)
        self._pairs = tuple(sorted((s, e) for s, e in merged.items() if e != 0))
        self._hash = hash(self._pairs)

    @classmethod
    def _trusted(cls, pairs: tuple) -> "Monomial":
        obj = cls.__new__(cls)
        obj._pairs = pairs
        obj._hash = hash(pairs)
        return obj

    @property
    def pairs(self) -> tuple:
        return self._pairs

    @property
    def symbols(self) -> tuple:
        return tuple(s for s, _ in self._pairs)

    @property
    def exponents(self) -> tuple:
        return tuple(e for _, e in self._pairs)

    def is_constant(self) -> bool:
        return not self._pairs

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other._pairs:
            return self
        if not self._pairs:
            return other
        merged = dict(self._pairs)
        for s, e in other._pairs:
            merged[s] = merged.get(s, 0) + e
        return Monomial._trusted(tuple(sorted((s, e) for s, e in merged.items() if e != 0)))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._pairs == other._pairs

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Monomial"):
        return self._pairs < other._pairs

    def __str__(self):
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self._pairs)

    def __repr__(self):
        return f"Monomial({self._pairs!r})"


CONSTANT = Monomial()


def normalize_term(raw: Iterable[tuple[str, int]], coeff) -> tuple[Monomial, object]:
    """Collapse repeated symbols and drop zero exponents."""
    return Monomial(raw), coeff


def _check_coefficient(c):
    if not is_number(c):
        raise TypeMismatch(f"coefficient must be a number, not {c!r}")
    if isinstance(c, float) and not math.isfinite(c):
        raise TypeMismatch(f"coefficient must be finite, not {c!r}")
    return c


def _combine(contributions: Mapping[Monomial, list]) -> dict:
    # Sums every contribution at once so float results do not depend on
    # the order terms were visited in.
    out = {}
    for m, values in contributions.items():
        if len(values) == 1:
            total = values[0]
        elif all(isinstance(v, int) for v in values):
            total = sum(values)
        else:
            total = math.fsum(values)
        if total != 0:
            out[m] = total
    return out


def _encode_coefficient(c) -> str:
    if isinstance(c, float) and c.is_integer() and abs(c) < 2 ** 63:
        return str(int(c))
    return repr(c) if isinstance(c, float) else str(c)


class Mvp:
    """Immutable multivariate polynomial.

    Construct with :func:`disordr.parse_mvp`, :func:`mvp_from_triples` or
    ``Mvp({monomial: coefficient})``.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_digest")
    __hash__ = None

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        terms = terms or {}
        cleaned = {}
        for m, c in terms.items():
            if not isinstance(m, Monomial):
                raise TypeMismatch(f"term key must be a Monomial, not {m!r}")
            _check_coefficient(c)
            if c != 0:
                cleaned[m] = c
        self._arrange(cleaned)

    @classmethod
    def _from_clean(cls, terms: dict) -> "Mvp":
        obj = cls.__new__(cls)
        obj._arrange(terms)
        return obj

    def _arrange(self, terms: dict) -> None:
        keys = sorted(terms)
        self._digest = _digest_sorted(keys, terms)
        perm = storage.current().arrange(len(keys), self._digest.digest)
        self._terms = {keys[i]: terms[keys[i]] for i in perm}

    @classmethod
    def constant(cls, value) -> "Mvp":
        _check_coefficient(value)
        return cls._from_clean({CONSTANT: value} if value != 0 else {})

    @classmethod
    def symbol(cls, name: str) -> "Mvp":
        return cls._from_clean({Monomial([(name, 1)]): 1})

    @property
    def terms(self) -> Mapping[Monomial, object]:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def digest(self) -> ProvenanceHash:
        return self._digest

    # -- algebra -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Mvp):
            return other
        if is_number(other):
            return Mvp.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        contributions = {m: [c] for m, c in self._terms.items()}
        for m, c in other._terms.items():
            contributions.setdefault(m, []).append(c)
        return Mvp._from_clean(_combine(contributions))

    __radd__ = __add__

    def __neg__(self):
        return Mvp._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        contributions: dict[Monomial, list] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                contributions.setdefault(m1 * m2, []).append(c1 * c2)
        return Mvp._from_clean(_combine(contributions))

    __rmul__ = __mul__

    def __pow__(self, k):
        if isinstance(k, float) and k.is_integer():
            k = int(k)
        if not isinstance(k, int) or isinstance(k, bool):
            raise TypeMismatch(f"polynomial power must be an integer, not {k!r}")
        if k < 0:
            raise NegativePower(f"cannot raise a polynomial to the negative power {k}")
        result = Mvp.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __str__(self):
        from .polytext import print_mvp

        return print_mvp(self)

    def __repr__(self):
        from .polytext import format_terms

        return f"Mvp({format_terms(self)!r})"

    # convenience accessors
    def coeffs(self) -> Disord:
        return coeffs(self)

    def vars(self) -> Disord:
        return vars(self)

    def powers(self) -> Disord:
        return powers(self)


def _digest_sorted(keys, terms) -> ProvenanceHash:
    parts = []
    for m in keys:
        mono = ",".join(f"{s}^{e}" for s, e in m.pairs)
        parts.append(f"{mono}:{_encode_coefficient(terms[m])}")
    return fresh_from_sequence(("mvp|" + ";".join(parts)).encode())


def canonical_digest(p: Mvp) -> ProvenanceHash:
    """Token shared by the accessors of ``p``; independent of term order."""
    return p._digest


def add(p: Mvp, q: Mvp) -> Mvp:
    return p + q


def negate(p: Mvp) -> Mvp:
    return -p


def sub(p: Mvp, q: Mvp) -> Mvp:
    return p - q


def scalar_mul(k, p: Mvp) -> Mvp:
    return Mvp.constant(k) * p


def mul(p: Mvp, q: Mvp) -> Mvp:
    return p * q


def int_pow(p: Mvp, k: int) -> Mvp:
    return p ** k


def equals(p: Mvp, q: Mvp) -> bool:
    return p == q


# -- accessors -------------------------------------------------------------

def coeffs(p: Mvp) -> Disord:
    return Disord._derived(list(p._terms.values()), p._digest, NUMBER)


def vars(p: Mvp) -> Disord:
    return Disord._derived([m.symbols for m in p._terms], p._digest, SYMBOL_LIST)


def powers(p: Mvp) -> Disord:
    return Disord._derived([m.exponents for m in p._terms], p._digest, NUMBER_LIST)


def _plain_or_disord(name, value):
    if isinstance(value, Disord):
        return list(value.elements)
    if isinstance(value, _PLAIN):
        return list(value)
    raise TypeMismatch(f"{name} must be a disord or a plain sequence")


def mvp_from_triples(vars, powers, coeffs) -> Mvp:
    """Rebuild a polynomial from aligned symbol lists, exponent lists and coefficients.

    Either all three arguments are plain sequences, or they are disords
    with one shared token (typically from the accessors of one polynomial).
    """
    given = [x for x in (vars, powers, coeffs) if isinstance(x, Disord)]
    if given and len(given) != 3:
        raise TypeMismatch("mix of disord and plain arguments; their orders cannot be aligned")
    if given:
        reference = max(given, key=len)
        for d in given:
            if len(d) and d.hash != reference.hash:
                raise HashMismatch(reference.hash, d.hash)
    vs = _plain_or_disord("vars", vars)
    ps = _plain_or_disord("powers", powers)
    cs = _plain_or_disord("coeffs", coeffs)
    if not (len(vs) == len(ps) == len(cs)):
        raise LengthMismatch(
            f"vars, powers and coeffs have lengths {len(vs)}, {len(ps)}, {len(cs)}"
        )
    contributions: dict[Monomial, list] = {}
    for symbols, exponents, c in zip(vs, ps, cs):
        symbols = [symbols] if isinstance(symbols, str) else list(symbols)
        exponents = [exponents] if is_number(exponents) else list(exponents)
        if len(symbols) != len(exponents):
            raise LengthMismatch(
                f"term has {len(symbols)} symbols but {len(exponents)} exponents"
            )
        for e in exponents:
            if not is_number(e) or not float(e).is_integer():
                raise TypeMismatch(f"exponent must be an integer, not {e!r}")
        for s in symbols:
            if not isinstance(s, str):
                raise TypeMismatch(f"symbol must be a string, not {s!r}")
        _check_coefficient(c)
        m = Monomial(zip(symbols, (int(e) for e in exponents)))
        contributions.setdefault(m, []).append(c)
    return Mvp._from_clean(_combine(contributions))


def set_coeffs(p: Mvp, value) -> Mvp:
    """Functional ``coeffs(p) <- value``.

    ``value`` is a single number, or a numeric disord carrying ``p``'s
    token (for example ``coeffs(p) % 2``).
    """
    if isinstance(value, Disord):
        if len(value) and value.hash != p._digest:
            raise HashMismatch(p._digest, value.hash)
        if len(value) != len(p):
            raise LengthMismatch(f"replacement has length {len(value)}, polynomial has {len(p)} terms")
        if value.kind not in (NUMBER, None):
            raise TypeMismatch(f"coefficients must be numbers, not {value.kind}")
        new = dict(zip(p._terms, value.elements))
    else:
        if isinstance(value, _PLAIN):
            if len(value) != 1:
                raise PlainVectorReplacement(
                    f"replacement value is a plain vector of length {len(value)}; "
                    "only a single value or a compatible disord is allowed"
                )
            value = value[0]
        _check_coefficient(value)
        new = {m: value for m in p._terms}
    return Mvp._from_clean({m: c for m, c in new.items() if c != 0})


def rmvp(seed: int = 0, terms: int = 7, symbols: str = "abcdef", max_power: int = 14) -> Mvp:
    """Random polynomial shaped like the package's sample objects.

    Coefficients are a shuffle of ``1..terms``; each term uses a random
    subset of ``symbols`` with exponents in ``1..max_power``.
    """
    rng = random.Random(seed)
    coefficients = list(range(1, terms + 1))
    rng.shuffle(coefficients)
    contributions: dict[Monomial, list] = {}
    for c in coefficients:
        k = rng.randint(1, len(symbols))
        chosen = rng.sample(symbols, k)
        m = Monomial((s, rng.randint(1, max_power)) for s in chosen)
        contributions.setdefault(m, []).append(c)
    return Mvp._from_clean(_combine(contributions))
