from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class CriterionResult(BaseModel):
    """Outcome of one acceptance check."""
    number: int = Field(..., description="Criterion number")
    name: str = Field(..., description="Short name")
    passed: bool = Field(..., description="Whether every assertion of the criterion held")
    detail: str = Field("", description="Counts or the first failing case")
    seconds: float = Field(0.0, exclude=True, description="Wall time, kept out of JSON output")


class ReproductionReport(VersionedModel):
    """All acceptance checks in criterion order."""
    passed: bool = Field(..., description="True when every criterion passed")
    criteria: list[CriterionResult] = Field(default_factory=list, description="Results sorted by number")
