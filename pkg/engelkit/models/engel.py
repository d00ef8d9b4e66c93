from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class EngelVerdict(str, Enum):
    """Outcome of a 2-Engel triviality check modulo the fifth lower central term."""
    CERTIFIED_TRIVIAL = "certified-trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown-at-depth"


class CertificateFactor(BaseModel):
    """One factor (instance^conjugator)^exp of a certificate product."""
    instance: str = Field(..., description="Engel relator instance [w, w^v] as word text")
    conjugator: str = Field(..., description="Conjugating word text, 1 for none")
    exp: int = Field(..., description="Integer exponent")


class EngelCertificate(VersionedModel):
    """Product of conjugated Engel instances equal to a target modulo the fifth lower central term."""
    target: str = Field(..., description="Target word text")
    n: int = Field(..., description="Number of generators")
    depth: int = Field(..., description="Enumeration depth the certificate was requested at")
    stage: Optional[str] = Field(None, description="Instance stage that produced the certificate")
    factors: list[CertificateFactor] = Field(default_factory=list, description="Factors of the product")
    verified: bool = Field(False, description="True after independent re-multiplication at degree 4")
    transcript: list[str] = Field(default_factory=list, description="Verification transcript")


class WitnessTerm(BaseModel):
    """A surviving coefficient that obstructs triviality."""
    basis: str = Field(..., description="Monomial or Lyndon bracket the coefficient belongs to")
    coefficient: int = Field(..., description="Surviving coefficient")


class EngelCheckResult(VersionedModel):
    """Verdict of is_trivial_engel with its evidence."""
    word: str = Field(..., description="Word that was tested")
    n: int = Field(..., description="Number of generators")
    depth: int = Field(..., description="Enumeration depth")
    verdict: EngelVerdict = Field(..., description="Checked outcome")
    degree: Optional[int] = Field(None, description="Degree in which the obstruction survives")
    witness: list[WitnessTerm] = Field(default_factory=list, description="Surviving coefficients for nontrivial verdicts")
    certificate: Optional[EngelCertificate] = Field(None, description="Certificate for certified-trivial verdicts")


class Class3Report(VersionedModel):
    """Certificates for every left-normed 4-fold generator commutator."""
    n: int = Field(..., description="Number of generators")
    depth: int = Field(..., description="Enumeration depth")
    sufficient: bool = Field(..., description="False when some target had no certificate at this depth")
    certificates: list[EngelCertificate] = Field(default_factory=list, description="One certificate per target")
    missing: list[str] = Field(default_factory=list, description="Targets without a certificate")


class ExponentThreeCase(BaseModel):
    """Membership of three times a degree-3 basis element in the relation lattice."""
    basis: str = Field(..., description="Lyndon bracket")
    in_lattice: bool = Field(..., description="Whether three times it lies in the degree-3 relation lattice")


class ExponentThreeReport(VersionedModel):
    """Degree-3 exponent check over all Lyndon brackets of length 3."""
    n: int = Field(..., description="Number of generators")
    cases: list[ExponentThreeCase] = Field(default_factory=list, description="Per-bracket results")

    @property
    def passed(self) -> bool:
        return all(case.in_lattice for case in self.cases)


class InstanceList(VersionedModel):
    """Enumerated Engel relator instances."""
    n: int = Field(..., description="Number of generators")
    depth: int = Field(..., description="Maximum length of w and v")
    count: int = Field(..., description="Number of distinct instances")
    instances: list[str] = Field(default_factory=list, description="Instance word texts in enumeration order")


class MinimalDepth(VersionedModel):
    """Smallest enumeration depth at which a certificate exists."""
    word: str = Field(..., description="Target word")
    n: int = Field(..., description="Number of generators")
    max_depth: int = Field(..., description="Largest depth searched")
    depth: Optional[int] = Field(None, description="Minimal depth, or null when none was found")
