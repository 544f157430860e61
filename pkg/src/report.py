"""Shared base for JSON-serializable reports."""

import json
from typing import Any

from pydantic import BaseModel, ConfigDict
from pydantic.alias_generators import to_camel

SCHEMA_VERSION = "1.0"


class ReportModel(BaseModel):
    """Pydantic base whose JSON keys are camelCase.

    Fields are declared in snake_case and accepted under either name.
    """

    model_config = ConfigDict(alias_generator=to_camel, populate_by_name=True)

    def to_dict(self) -> dict[str, Any]:
        """JSON-compatible dict with camelCase keys."""
        return self.model_dump(mode="json", by_alias=True)

    def to_json(self) -> str:
        """Deterministic JSON (sorted keys)."""
        return dumps(self.to_dict())


def dumps(payload: Any) -> str:
    """Serialize with sorted keys so equal payloads give identical bytes."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
