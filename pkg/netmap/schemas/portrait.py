"""
Portrait and choice-policy schemas
"""
from typing import Dict, List, Tuple
from pydantic import BaseModel, Field


class PostcriticalEntry(BaseModel):
    """A named portrait vertex and its out-edge"""
    id: str = Field(..., description="Vertex label")
    weight: int = Field(..., description="Local degree at the vertex: 1 or 2")
    to: str = Field(..., description="Label of the image vertex")


class ExtraCriticalEntry(BaseModel):
    """Anonymous critical vertices mapping to one named vertex"""
    to: str = Field(..., description="Label of the common image vertex")
    count: int = Field(..., ge=0, description="Number of anonymous critical vertices")


class PortraitDocument(BaseModel):
    """JSON form of a dynamic portrait"""
    postcritical: List[PostcriticalEntry] = Field(..., description="Named vertices")
    extra_critical: List[ExtraCriticalEntry] = Field(default_factory=list, description="Anonymous critical vertices")

    class Config:
        json_schema_extra = {
            "example": {
                "postcritical": [
                    {"id": "v2", "weight": 1, "to": "v3"},
                    {"id": "v3", "weight": 2, "to": "v2"},
                    {"id": "v4", "weight": 2, "to": "v3"},
                    {"id": "v5", "weight": 2, "to": "v4"}
                ],
                "extra_critical": [
                    {"to": "v2", "count": 1},
                    {"to": "v5", "count": 2}
                ]
            }
        }


class ChoicePolicy(BaseModel):
    """Explicit choices for realizing a portrait; omitted parts use the defaults"""
    new_points: Dict[str, str] = Field(
        default_factory=dict,
        description="New noncritical P1 points and the P2 vertex each maps to"
    )
    corners: Dict[str, Tuple[int, int]] = Field(
        default_factory=dict,
        description="Corner index (i, j) of each P1 point, standing for i·λ1 + j·λ2"
    )
    eta: Dict[str, str] = Field(
        default_factory=dict,
        description="Arc pairing: P1 point -> P2 point"
    )
    parities: Dict[str, Tuple[int, int]] = Field(
        default_factory=dict,
        description="Parity class assigned to a φ-value not reached from P1"
    )
    positions: Dict[str, Tuple[int, int]] = Field(
        default_factory=dict,
        description="Standardized lattice position of a P2 point outside P1"
    )

    class Config:
        json_schema_extra = {
            "example": {
                "new_points": {"v8": "v3", "v9": "v4", "v10": "v4"},
                "corners": {"v2": [0, 0], "v8": [1, 0], "v9": [0, 1], "v10": [1, 1]},
                "eta": {"v2": "v2", "v8": "v3", "v9": "v4", "v10": "v5"},
                "parities": {"v2": [1, 0]}
            }
        }
