"""Storage-order policies.

The order in which a disord or polynomial keeps its elements is
implementation specific.  A policy decides that order at creation time so
tests can rerun a computation under a different, but reproducible, layout.

The arrangement is a function of the *content* being stored (a multiset
key), never of how many objects were created before.  Two objects built
from the same content therefore share a layout within one run, which is
what keeps provenance equality meaningful: equal tokens imply aligned
positions under every policy.
"""

from __future__ import annotations

import contextlib
import hashlib
import random
from contextvars import ContextVar
from dataclasses import dataclass


class Insertion:
    """Keep the order the values were supplied in."""

    def arrange(self, n: int, key: bytes) -> list[int]:
        return list(range(n))

    def __repr__(self):
        return "Insertion()"

    def __eq__(self, other):
        return isinstance(other, Insertion)

    def __hash__(self):
        return hash(Insertion)


@dataclass(frozen=True)
class Shuffle:
    """Pseudo-random layout, deterministic in ``(seed, key)``."""

    seed: int

    def arrange(self, n: int, key: bytes) -> list[int]:
        digest = hashlib.sha1(f"{self.seed}\0".encode() + key).digest()
        rng = random.Random(int.from_bytes(digest, "big"))
        perm = list(range(n))
        rng.shuffle(perm)
        return perm


INSERTION = Insertion()

_current: ContextVar = ContextVar("disordr_storage_order", default=INSERTION)


def current():
    return _current.get()


@contextlib.contextmanager
def storage_order(policy):
    token = _current.set(policy)
    try:
        yield policy
    finally:
        _current.reset(token)


def parse_storage_order(text: str):
    """Parse ``insertion`` or ``shuffle:<seed>``."""
    if text == "insertion":
        return INSERTION
    if text.startswith("shuffle:"):
        try:
            return Shuffle(int(text[len("shuffle:"):]))
        except ValueError:
            pass
    raise ValueError(f"invalid storage order {text!r}; use 'insertion' or 'shuffle:<seed>'")
