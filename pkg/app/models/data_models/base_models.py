"""Base model classes without cross-dependencies"""
from pydantic import BaseModel, ConfigDict


class FrozenModel(BaseModel):
    """Immutable parameter record, unknown fields rejected"""
    model_config = ConfigDict(frozen=True, extra="forbid")


class ArrayModel(BaseModel):
    """Immutable record that carries numpy arrays"""
    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)


__all__ = ["FrozenModel", "ArrayModel"]
