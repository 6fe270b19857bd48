"""Exception types shared across the package."""

from __future__ import annotations


class NgroupsError(Exception):
    """Base class for every error raised by this package."""


class ParseError(NgroupsError, ValueError):
    """Malformed text input: transformation literals, spec strings, dumps."""


class DomainMismatchError(NgroupsError, ValueError):
    """Operands live on carriers of different sizes."""


class IllDefinedMapError(NgroupsError, ValueError):
    """A block-level map whose value depends on the representative chosen."""


class CapExceededError(NgroupsError, RuntimeError):
    """An enumeration guard tripped; pass a larger cap to proceed."""


class NotAGroupError(NgroupsError, ValueError):
    """A set of maps failed a group axiom; carries the rejection report."""

    def __init__(self, rejection):
        super().__init__(f"not a group: {rejection.axiom}")
        self.rejection = rejection


class InternalCheckError(NgroupsError, RuntimeError):
    """A state the underlying algebra forbids; indicates a bug here."""
