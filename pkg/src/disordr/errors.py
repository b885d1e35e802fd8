"""Exception hierarchy.

Every error carries a stable ``code`` so transcripts and the fuzz harness
can compare failures without depending on message text (which may embed
hash tokens).
"""

EXTRACT_MESSAGE = (
    "if using a regular index to extract, must extract each element once "
    "and once only (or none of them)"
)
REPLACE_MESSAGE = (
    "if using a regular index to replace, must specify each element once "
    "and once only"
)


class DisordError(Exception):
    code = "disord-error"

    def __str__(self):
        return self.args[0] if self.args else self.code


class HashMismatch(DisordError):
    code = "hash-mismatch"

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(
            f"hash codes {left.short()} and {right.short()} do not match"
        )


class TypeMismatch(DisordError):
    code = "type-mismatch"


class MixedKinds(DisordError):
    code = "mixed-kinds"


class PlainVectorOperand(DisordError):
    code = "plain-vector-operand"


class PlainVectorReplacement(DisordError):
    code = "plain-vector-replacement"


class BadIndex(DisordError):
    code = "bad-index"


class LengthMismatch(DisordError):
    code = "length-mismatch"


class NegativePower(DisordError):
    code = "negative-power"


class ParseError(DisordError):
    """Raised for malformed polynomial literals and scripts.

    ``position`` is a 0-based character offset into the source and
    ``expected`` the set of token descriptions that would have been valid.
    """

    code = "parse-error"

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = frozenset(expected)
        if self.expected:
            message = f"{message} at position {position}; expected one of: " + ", ".join(
                sorted(self.expected)
            )
        else:
            message = f"{message} at position {position}"
        super().__init__(message)
