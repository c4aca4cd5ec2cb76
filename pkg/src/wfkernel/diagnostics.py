"""Shared diagnostic record for both proof checkers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """A single check failure.

    where: "line N" for linear proofs, a dotted child path for trees.
    code:  stable machine-readable identifier, e.g. "mp-major-depends".
    message: human-readable explanation.
    """

    where: str
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.code}: {self.message}"
