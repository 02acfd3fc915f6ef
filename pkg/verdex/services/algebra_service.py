from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path

from pydantic import ValidationError

from verdex.core.config import settings
from verdex.core.errors import ConfigurationError, LieDataError
from verdex.models.algebra import VertexAlgebra
from verdex.models.lie import LieData
from verdex.models.scalar import BaseRing
from verdex.models.state import SpaceTag
from verdex.schemas.config import AlgebraSection
from verdex.schemas.lie import LieDataFile
from verdex.services.commutative_service import commutative_power_series, diagonal_algebra
from verdex.services.config_service import format_validation_error, read_toml
from verdex.services.free_field_service import free_boson, free_boson_t, free_fermion
from verdex.services.lie_algebra_service import affine, validate_lie_data, virasoro
from verdex.services.vertex_service import central_quotient, validate_algebra


logger = logging.getLogger(__name__)


def lie_data_from_file(model: LieDataFile) -> LieData:
    labels = tuple(model.labels)
    dim = len(labels)
    if len(model.form) != dim or any(len(row) != dim for row in model.form):
        raise LieDataError("form shape", f"the form must be a {dim}x{dim} matrix")
    position = {label: i for i, label in enumerate(labels)}

    def lookup(label: str) -> int:
        if label not in position:
            raise LieDataError("basis", f"unknown label {label!r}")
        return position[label]

    structure = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    given: set[tuple[int, int]] = set()
    for entry in model.brackets:
        i, j = lookup(entry.left), lookup(entry.right)
        row = [Fraction(0)] * dim
        for label, value in entry.result.items():
            row[lookup(label)] += value
        structure[i][j] = row
        given.add((i, j))
    for i, j in list(given):
        if (j, i) not in given:
            structure[j][i] = [-value for value in structure[i][j]]

    lie = LieData(
        name=model.name,
        labels=labels,
        structure=tuple(tuple(tuple(entry) for entry in row) for row in structure),
        form=tuple(tuple(row) for row in model.form),
        ring=BaseRing.parse(model.ring),
    )
    validate_lie_data(lie)
    return lie


def load_lie_data(path: Path | str) -> LieData:
    try:
        model = LieDataFile.model_validate(read_toml(path))
    except ValidationError as exc:
        raise ConfigurationError(f"{path}: {format_validation_error(exc)}") from None
    lie = lie_data_from_file(model)
    logger.info("loaded Lie data %s (dimension %d) from %s", lie.name, lie.dimension, path)
    return lie


def build_algebra(
    section: AlgebraSection,
    base_dir: Path | str | None = None,
    *,
    validate: bool | None = None,
    grade_cap: int = 2,
) -> VertexAlgebra:
    """AlgebraSection -> VertexAlgebra, specialized at its central value when one is given."""

    ctx = section.norm.to_ctx()
    ring = section.base_ring()
    kind = section.kind

    if kind is SpaceTag.BOSON:
        V = free_boson(ctx, ring)
    elif kind is SpaceTag.BOSON_T:
        V = free_boson_t(ctx, ring, section.witness_levels)
    elif kind is SpaceTag.FERMION:
        V = free_fermion(ctx, ring)
    elif kind is SpaceTag.VIRASORO:
        V = virasoro(ctx, ring)
        if section.central_charge is not None:
            V = central_quotient(V, section.central_charge)
    elif kind is SpaceTag.AFFINE:
        path = Path(section.lie_data)
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        V = affine(load_lie_data(path), ctx, ring)
        if section.level is not None:
            V = central_quotient(V, section.level)
    elif kind is SpaceTag.POWER_SERIES:
        V = commutative_power_series(ctx, section.radius, section.truncation, ring)
    else:
        V = diagonal_algebra(ctx, section.truncation, ring=ring)

    if settings.validate_on_build if validate is None else validate:
        validate_algebra(V, grade_cap)
    return V
