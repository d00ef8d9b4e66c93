from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class ProbeCase(BaseModel):
    """One sampled (n+1)-fold commutator."""
    commutator: str = Field(..., description="Left-normed commutator of generators")
    trivial: bool = Field(..., description="Whether its reduced expansion is 1")


class ClassProbeReport(VersionedModel):
    """Nilpotency-class probe for a free Milnor group."""
    n: int = Field(..., description="Number of generators")
    witness: str = Field(..., description="The n-fold commutator of distinct generators")
    witness_coefficient: int = Field(..., description="Coefficient of X1...Xn in its reduced expansion")
    witness_nontrivial: bool = Field(..., description="True when the witness survives")
    exhaustive: bool = Field(..., description="True when every (n+1)-fold commutator was checked")
    checked: int = Field(..., description="Number of (n+1)-fold commutators checked")
    all_trivial: bool = Field(..., description="True when every checked commutator is trivial")
    failures: list[str] = Field(default_factory=list, description="Checked commutators that survived")

    @property
    def passed(self) -> bool:
        return self.witness_nontrivial and self.all_trivial


class TrivialityResult(VersionedModel):
    """Answer to a Milnor-group word problem."""
    word: str = Field(..., description="Word that was tested")
    n: int = Field(..., description="Number of generators")
    trivial: bool = Field(..., description="True when the reduced expansion is 1")
    lowest_degree: int | None = Field(None, description="Lowest surviving degree, if any")


class EqualityResult(VersionedModel):
    """Answer to an equality question in the free Milnor group."""
    left: str = Field(..., description="First word")
    right: str = Field(..., description="Second word")
    n: int = Field(..., description="Number of generators")
    equal: bool = Field(..., description="True when the reduced expansions agree")
