from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from verdex.core.errors import LieDataError
from verdex.models.scalar import BaseRing


@dataclass(frozen=True, slots=True)
class LieData:
    """Finite-dimensional Lie algebra with an invariant symmetric form, in a fixed basis.

    ``structure[i][j][k]`` is the coefficient of e_k in [e_i, e_j].
    """

    name: str
    labels: tuple[str, ...]
    structure: tuple[tuple[tuple[Fraction, ...], ...], ...]
    form: tuple[tuple[Fraction, ...], ...]
    ring: BaseRing

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LieDataError("basis", f"unknown label {label!r}") from None

    def bracket(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        return tuple((k, c) for k, c in enumerate(self.structure[i][j]) if c)

    def pairing(self, i: int, j: int) -> Fraction:
        return self.form[i][j]
