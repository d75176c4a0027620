"""Labels for coherent-state families."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter

KINDS = ("coherent", "su11", "su2", "bg")


@dataclass(frozen=True)
class RepParams:
    """A coherent-state family.

    ``kind`` is one of ``coherent`` (harmonic oscillator), ``su11`` (Perelomov, spin ``K``),
    ``su2`` (spin ``J``) or ``bg`` (Barut-Girardello, level ``k``). ``label`` carries
    ``K``, ``J`` or ``k`` and is ignored for ``coherent``.
    """

    kind: str
    label: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameter(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.kind != "coherent":
            if self.label is None or self.label <= 0:
                raise InvalidParameter(f"{self.kind} family needs a positive label")
        if self.kind == "su2" and abs(2 * self.label - round(2 * self.label)) > 1e-12:
            raise InvalidParameter("J must be a half-integer")

    @property
    def two_j(self) -> int:
        return int(round(2 * self.label))
