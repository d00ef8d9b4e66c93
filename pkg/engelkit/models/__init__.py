from pydantic import BaseModel, ConfigDict, Field

SCHEMA = "engelkit/1"


class VersionedModel(BaseModel):
    """Top-level JSON document carrying the schema version."""

    model_config = ConfigDict(populate_by_name=True)

    schema_: str = Field(SCHEMA, alias="schema", description="Output schema version")

    def to_json(self, indent: int | None = None) -> str:
        return self.model_dump_json(by_alias=True, indent=indent)
