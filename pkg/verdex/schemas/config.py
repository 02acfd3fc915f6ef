from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Optional

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, field_validator, model_validator

from verdex.core.constants import SUITES, SUITES_SET
from verdex.models.scalar import BaseRing, NormCtx, NormKind
from verdex.models.state import SpaceTag


def _to_fraction(value: object) -> object:
    if value is None or isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("expected a rational number, got a boolean")
    if isinstance(value, (int, str)):
        return Fraction(str(value).strip())
    if isinstance(value, float):
        return Fraction(repr(value))
    raise ValueError(f"expected a rational number, got {value!r}")


Rational = Annotated[Fraction, BeforeValidator(_to_fraction)]


class NormSection(BaseModel):
    kind: NormKind = NormKind.TRIVIAL
    p: Optional[int] = None

    model_config = ConfigDict(extra="forbid")

    def to_ctx(self) -> NormCtx:
        return NormCtx(self.kind, self.p)

    @model_validator(mode="after")
    def _check_prime(self) -> "NormSection":
        self.to_ctx()
        return self


class AlgebraSection(BaseModel):
    kind: SpaceTag
    ring: Optional[str] = None
    norm: NormSection = Field(default_factory=NormSection)
    central_charge: Optional[Rational] = None
    lie_data: Optional[str] = None
    level: Optional[Rational] = None
    radius: Optional[Rational] = None
    truncation: int = Field(default=12, ge=0, le=64)
    witness_levels: int = Field(default=3, ge=0, le=8)

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)

    @field_validator("ring")
    @classmethod
    def _parse_ring(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            BaseRing.parse(value)
        return value

    @model_validator(mode="after")
    def _check_parameters(self) -> "AlgebraSection":
        if self.kind is SpaceTag.AFFINE and not self.lie_data:
            raise ValueError("kind 'affine' needs lie_data")
        if self.kind is SpaceTag.POWER_SERIES and (self.radius is None or self.radius <= 0):
            raise ValueError("kind 'commutativePS' needs a positive radius")
        if self.central_charge is not None and self.kind is not SpaceTag.VIRASORO:
            raise ValueError("central_charge only applies to kind 'virasoro'")
        if self.level is not None and self.kind is not SpaceTag.AFFINE:
            raise ValueError("level only applies to kind 'affine'")
        return self

    def base_ring(self) -> Optional[BaseRing]:
        return BaseRing.parse(self.ring) if self.ring else None


class ProbeSection(BaseModel):
    grade_cap: int = Field(default=4, ge=0, le=12)
    count: int = Field(default=200, ge=0, le=100000)
    seed: int = 1
    modes: int = Field(default=3, ge=0, le=12)

    model_config = ConfigDict(extra="forbid")


class BudgetSection(BaseModel):
    depth: Optional[int] = Field(default=None, gt=0)
    nmax: Optional[int] = Field(default=None, gt=0, le=64)

    model_config = ConfigDict(extra="forbid")


class WindowSection(BaseModel):
    margin: Optional[int] = Field(default=None, gt=0, le=64)
    closure_depth: int = Field(default=0, ge=0, le=4)
    n_min: int = -2
    n_max: int = 4

    model_config = ConfigDict(extra="forbid")

    @model_validator(mode="after")
    def _check_range(self) -> "WindowSection":
        if self.n_min > self.n_max:
            raise ValueError("windows.n_min must not exceed windows.n_max")
        return self


class RunConfig(BaseModel):
    suites: list[str] = Field(default_factory=list)
    algebra: AlgebraSection
    probes: ProbeSection = Field(default_factory=ProbeSection)
    budgets: BudgetSection = Field(default_factory=BudgetSection)
    windows: WindowSection = Field(default_factory=WindowSection)

    model_config = ConfigDict(extra="forbid")

    @field_validator("suites")
    @classmethod
    def _known_suites(cls, value: list[str]) -> list[str]:
        unknown = [name for name in value if name not in SUITES_SET]
        if unknown:
            raise ValueError(f"unknown suites {unknown}; choose from {', '.join(SUITES)}")
        return list(dict.fromkeys(value))
