from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class DecompositionTerm(BaseModel):
    """One elementary Engel commutator with its exponent."""
    commutator: str = Field(..., description="Bracket form, e.g. [m1,m2*m3,m2*m3,m4]")
    slots: list[list[int]] = Field(..., description="Generator ids in each slot")
    conjugator: str = Field("1", description="Conjugating word h of (C^exp)^h; 1 when unconjugated")
    exp: int = Field(..., description="Integer exponent")


class DecompositionCertificate(VersionedModel):
    """Decomposition of an attaching curve into elementary Engel commutators."""
    target: str = Field(..., description="Attaching-curve word text")
    n: int = Field(..., description="Number of generators")
    terms: list[DecompositionTerm] = Field(default_factory=list, description="Commutators with exponents")
    correction_word: str = Field(..., description="W = target * product^-1")
    correction_trivial_in_mf: bool = Field(..., description="Whether W is trivial in the reduced Milnor model")
    verified: bool = Field(False, description="True after the round-trip check")
    transcript: list[str] = Field(default_factory=list, description="Verification transcript")


class CorrectionCheck(VersionedModel):
    """Milnor-triviality of gamma * gamma'^-1."""
    gamma: str = Field(..., description="First word")
    gamma_prime: str = Field(..., description="Second word")
    n: int = Field(..., description="Number of generators")
    equal_in_mf: bool = Field(..., description="True when gamma * gamma'^-1 is Milnor-trivial")
