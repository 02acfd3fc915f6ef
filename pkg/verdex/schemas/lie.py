from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator

from verdex.schemas.config import Rational


class BracketEntry(BaseModel):
    left: str
    right: str
    result: dict[str, Rational]

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)


class LieDataFile(BaseModel):
    """On-disk Lie data: labels, sparse brackets [left, right] = result, and the form matrix."""

    name: str
    ring: str = "Z"
    labels: list[str] = Field(min_length=1)
    form: list[list[Rational]]
    brackets: list[BracketEntry] = Field(default_factory=list)

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    @field_validator("labels")
    @classmethod
    def _distinct(cls, value: list[str]) -> list[str]:
        if len(set(value)) != len(value):
            raise ValueError("labels must be distinct")
        for label in value:
            if not label.isidentifier() or label in {"I", "C", "K"}:
                raise ValueError(f"label {label!r} must be an identifier other than I, C, K")
        return value
