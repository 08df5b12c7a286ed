"""
Run configuration built from command-line arguments
"""
from typing import List, Literal, Optional
from pydantic import BaseModel, Field

from netmap.services.errors import UsageError


class RunConfig(BaseModel):
    """Validated settings for one command invocation"""
    command: str = Field(..., description="Subcommand name")
    inputs: List[str] = Field(default_factory=list, description="Input file paths")
    max_degree: int = Field(12, gt=0, description="Largest degree accepted by enumeration commands")
    allow_large: bool = Field(False, description="Lift the enumeration degree cap")
    output_format: Literal["text", "json", "dot"] = Field("text", description="Report format")
    choice_policy: Optional[str] = Field(None, description="Choice-policy JSON for from-portrait")
    workers: int = Field(1, ge=1, description="Worker processes for enumeration kernels")

    class Config:
        json_schema_extra = {
            "example": {
                "command": "count-hurwitz",
                "inputs": [],
                "max_degree": 12,
                "allow_large": False,
                "output_format": "json",
                "choice_policy": None,
                "workers": 2
            }
        }

    def check_degree(self, degree: int) -> None:
        """Raise UsageError for enumeration degrees outside the accepted range."""
        if degree < 2:
            raise UsageError("degree must be at least 2")
        if degree > self.max_degree and not self.allow_large:
            raise UsageError(
                f"degree {degree} exceeds the enumeration cap {self.max_degree}; pass --allow-large to override"
            )
