# Pydantic schemas for config files and reports.
from __future__ import annotations
