from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from verdex.core.constants import REPORT_SCHEMA_VERSION
from verdex.models.algebra import Quantity, QuantityKind


class NumberOut(BaseModel):
    kind: QuantityKind
    value: Union[str, float, None]
    base: Optional[int] = None

    @classmethod
    def from_quantity(cls, quantity: Quantity) -> "NumberOut":
        if quantity.kind is QuantityKind.REAL:
            return cls(kind=quantity.kind, value=float(quantity.value))
        value = None if quantity.value is None else str(quantity.value)
        return cls(kind=quantity.kind, value=value, base=quantity.base)

    @classmethod
    def exact(cls, value: Fraction | int) -> "NumberOut":
        return cls.from_quantity(Quantity.exact(value))


class CaseOut(BaseModel):
    index: int
    suite: str
    identity: str
    algebra: str
    params: dict[str, Union[str, int]]
    defect: NumberOut
    verdict: str
    detail: Optional[str] = None
    values: dict[str, NumberOut] = Field(default_factory=dict)


class SummaryOut(BaseModel):
    total: int = 0
    exact_zero: int = 0
    nonzero: int = 0
    inconclusive: int = 0
    probe: int = 0
    certified: int = 0


class ReportOut(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schemaVersion")
    algebra: str
    ring: str
    norm: str
    seed: int
    suites: list[str]
    cases: list[CaseOut]
    summary: SummaryOut
    inconclusive_cases: list[int] = Field(default_factory=list)
    exit_code: int

    model_config = ConfigDict(populate_by_name=True)


class GeneratorOut(BaseModel):
    label: str
    parity: str
    fs: str


class LocalityOut(BaseModel):
    left: str
    right: str
    order: Optional[int]


class BuildSummaryOut(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schemaVersion")
    algebra: str
    ring: str
    norm: str
    generators: list[GeneratorOut]
    locality: list[LocalityOut]

    model_config = ConfigDict(populate_by_name=True)


class EvalOut(BaseModel):
    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schemaVersion")
    algebra: str
    expression: str
    kind: str
    result: str

    model_config = ConfigDict(populate_by_name=True)
