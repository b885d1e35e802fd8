"""Provenance tokens.

A :class:`ProvenanceHash` names the (unknown) storage order a disordered
vector was born with.  Two disords may be combined elementwise only when
their tokens are equal.  Tokens are SHA-1 digests; nothing here depends on
cryptographic strength, only on equality.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

DIGEST_SIZE = 20

# fixed nonzero mask; XOR with it is an involution that never fixes a token
_REVERSE_MASK = hashlib.sha1(b"disordr/reverse").digest()


@dataclass(frozen=True)
class ProvenanceHash:
    digest: bytes

    def __post_init__(self):
        if len(self.digest) != DIGEST_SIZE:
            raise ValueError(f"digest must be {DIGEST_SIZE} bytes, got {len(self.digest)}")

    def hex(self) -> str:
        return self.digest.hex()

    def short(self) -> str:
        """Truncated form used in error messages."""
        return self.digest.hex()[:12] + "..."

    def __str__(self):
        return self.hex()

    def __repr__(self):
        return f"ProvenanceHash({self.hex()!r})"


def _sha1(*parts: bytes) -> ProvenanceHash:
    h = hashlib.sha1()
    for part in parts:
        h.update(part)
    return ProvenanceHash(h.digest())


def fresh_from_sequence(canonical_bytes: bytes) -> ProvenanceHash:
    return _sha1(b"fresh\0", canonical_bytes)


def derive_subset(parent: ProvenanceHash, mask: Sequence[bool]) -> ProvenanceHash:
    """Token for the elements of ``parent`` selected by ``mask``.

    An all-true mask is the identity view and returns ``parent`` itself.
    """
    if all(mask):
        return parent
    bits = b"".join(b"1" if m else b"0" for m in mask)
    return _sha1(b"subset\0", parent.digest, bits)


def derive_permutation(parent: ProvenanceHash, perm: Sequence[int]) -> ProvenanceHash:
    if all(i == p for i, p in enumerate(perm)):
        return parent
    encoded = ",".join(str(int(p)) for p in perm).encode()
    return _sha1(b"perm\0", parent.digest, encoded)


def involute_reverse(h: ProvenanceHash) -> ProvenanceHash:
    return ProvenanceHash(bytes(a ^ b for a, b in zip(h.digest, _REVERSE_MASK)))


def render_hex(h: ProvenanceHash) -> str:
    return h.hex()


def parse_hex(text: str) -> ProvenanceHash:
    if len(text) != 2 * DIGEST_SIZE:
        raise ValueError(f"expected {2 * DIGEST_SIZE} hex characters, got {len(text)}")
    return ProvenanceHash(bytes.fromhex(text))
