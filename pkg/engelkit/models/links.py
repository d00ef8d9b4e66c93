from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class Classification(str, Enum):
    """Link-homotopy taxonomy."""
    ESSENTIAL = "h-essential"
    TRIVIAL_NOT_PLUS = "h-trivial-not-plus"
    TRIVIAL_PLUS = "h-trivial-plus"


class ComponentDump(BaseModel):
    """One component of a serialized link model."""
    meridian: str = Field(..., description="Meridian generator name")
    longitude: str = Field(..., description="Longitude word text over all meridians")
    framing: int = Field(0, description="Framing")


class LinkDump(VersionedModel):
    """Serialized word-level link model."""
    provenance: str = Field(..., description="Construction expression that built the model")
    components: list[ComponentDump] = Field(default_factory=list, description="Components in order")


class MuBarValue(VersionedModel):
    """A distinct-index Milnor invariant."""
    indices: list[int] = Field(..., description="Component indices, last one names the longitude")
    value: int = Field(..., description="Coefficient in the reduced expansion of the longitude")
    valid: bool = Field(..., description="True when all shorter invariants with the same last index vanish")


class ClassificationReport(VersionedModel):
    """Classifier verdict with its evidence."""
    provenance: str = Field(..., description="Construction expression")
    components: int = Field(..., description="Number of components")
    classification: Classification = Field(..., description="Verdict")
    obstruction: Optional[MuBarValue] = Field(None, description="First nonvanishing invariant of the link, if any")
    plus_failures: list[int] = Field(default_factory=list, description="Components whose parallel copy makes the link essential")
    linking_numbers_zero: bool = Field(..., description="True when all pairwise linking numbers vanish")


class FamilyMember(VersionedModel):
    """One generated member of a doubling family."""
    name: str = Field(..., description="Member description")
    seed: str = Field(..., description="hopf or wh")
    ramified: bool = Field(..., description="True when seed ramification is at least 2")
    companion: ClassificationReport = Field(..., description="Classification of the link before Whitehead doubling")
    member_components: int = Field(..., description="Components of the final member")
    member_linking_numbers_zero: bool = Field(..., description="True when the final member has vanishing linking numbers")


class FamilySweep(VersionedModel):
    """Generated family members in sweep order."""
    members: list[FamilyMember] = Field(default_factory=list, description="Members with their companion verdicts")
