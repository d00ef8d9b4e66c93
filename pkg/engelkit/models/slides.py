from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class CurveRole(str, Enum):
    """What a framed curve stands for in a diagram state."""
    GAMMA = "gamma"
    ENGEL_COMPONENT = "engel-component"
    DUAL = "dual"
    CORRECTION = "correction"


class CurveDump(BaseModel):
    """A framed curve of a diagram state."""
    name: str = Field(..., description="Curve name, also the name of its meridian")
    word: str = Field(..., description="Word read by the curve")
    framing: int = Field(0, description="Framing")
    role: CurveRole = Field(..., description="Role of the curve")


class DiagramDump(VersionedModel):
    """Serialized diagram state."""
    dotted: list[str] = Field(default_factory=list, description="Dotted generators (1-handles)")
    curves: list[CurveDump] = Field(default_factory=list, description="Framed curves in order")
    parallel_pairs: list[list[str]] = Field(default_factory=list, description="Curve pairs registered as parallel")


class SlidePropertyReport(VersionedModel):
    """Outcome of sliding one parallel component over the other."""
    pattern: str = Field(..., description="Word of the distinguished curve before the slide")
    slid: str = Field(..., description="Curve that was slid")
    over: str = Field(..., description="Curve it was slid over")
    slid_word: str = Field(..., description="Word of the slid curve afterwards")
    split_unknot: bool = Field(..., description="Slid curve is empty and no other word mentions its meridian")
    rest_h_trivial: bool = Field(..., description="Remaining link has no nonvanishing distinct-index invariant")
    holds: bool = Field(..., description="Both checks pass")
    stabilization_modeled: bool = Field(False, description="Whether the dotted-to-2-handle step is part of the model")


class WndlResult(VersionedModel):
    """Hypotheses of the weak null disk lemma for one boundary word."""
    word: str = Field(..., description="Boundary word")
    n: int = Field(..., description="Number of generators")
    free_trivial: bool = Field(..., description="Word reduces to the identity in the free group")
    milnor_trivial: bool = Field(..., description="Word is trivial in the free Milnor group")
    instance: bool = Field(..., description="Freely nontrivial and Milnor-trivial")


class WndlCase(BaseModel):
    """One deletion from an elementary Engel state."""
    commutator: str = Field(..., description="Elementary commutator")
    deleted: str = Field(..., description="Deleted dotted generator")
    in_product_slot: bool = Field(..., description="Deleted generator sits in the repeated product slot")
    result: WndlResult = Field(..., description="Check of the remaining boundary word")


class StateReport(VersionedModel):
    """Snapshot emitted by a report line of a slide script."""
    line: int = Field(..., description="Script line number")
    state: DiagramDump = Field(..., description="Current state")
    h_trivial: bool = Field(..., description="Link model of the state is h-trivial")
    split_curves: list[str] = Field(default_factory=list, description="Curves with empty word that nothing else mentions")
    stabilization_modeled: bool = Field(False, description="Whether the dotted-to-2-handle step is part of the model")
    note: Optional[str] = Field(None, description="Remarks on what the model leaves out")


class ScriptReport(VersionedModel):
    """All reports produced by one slide script."""
    slides: int = Field(..., description="Number of slides applied")
    reports: list[StateReport] = Field(default_factory=list, description="Reports in script order")
