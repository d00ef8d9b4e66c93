from pydantic import BaseModel, Field

from engelkit.models import VersionedModel


class SeriesTerm(BaseModel):
    """One monomial of a serialized series."""
    mono: list[int] = Field(..., description="Generator ids of the monomial, empty for the unit")
    coef: str = Field(..., description="Integer coefficient encoded as a string")


class SeriesDump(VersionedModel):
    """Serialized truncated or reduced Magnus series."""
    D: int = Field(..., description="Truncation degree")
    reduced: bool = Field(False, description="True when repeated-index monomials are deleted")
    terms: list[SeriesTerm] = Field(default_factory=list, description="Terms sorted by degree, then indices")


class WordDump(VersionedModel):
    """Serialized normalized word."""
    word: str = Field(..., description="Freely reduced word text")
    length: int = Field(..., description="Number of letters")
    generators: list[str] = Field(..., description="Generator context in id order")
