"""Shared exception types.

Errors specific to a single module live next to their code; the ones here
are raised from more than one place.
"""


class ParseError(ValueError):
    """Malformed textual input (cycle strings, matrix literals, group specs).

    Carries the byte offset of the failure and the set of tokens that would
    have been accepted there, so callers can point at the exact position.
    """

    def __init__(self, message, pos=None, expected=()):
        super().__init__(message)
        self.pos = pos
        self.expected = frozenset(expected)

    def __str__(self):
        base = super().__str__()
        if self.pos is not None:
            base += f" (at offset {self.pos})"
        if self.expected:
            base += " (expected: " + ", ".join(sorted(self.expected)) + ")"
        return base


class CapExceeded(RuntimeError):
    """A computation would exceed a configured size cap."""
