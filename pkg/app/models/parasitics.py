"""
Red de parásitos concentrados alrededor del varactor intrínseco
"""
from pydantic import BaseModel, ConfigDict, Field


class ParasiticNetwork(BaseModel):
    """Elementos en SI: pad C - serie RL - intrínseco∥G - serie RL - pad C"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    l_in: float = Field(default=0.0, ge=0)
    r_in: float = Field(default=0.0, ge=0)
    l_out: float = Field(default=0.0, ge=0)
    r_out: float = Field(default=0.0, ge=0)
    c_pad_in: float = Field(default=0.0, ge=0)
    c_pad_out: float = Field(default=0.0, ge=0)
    g_loss: float = Field(default=0.0, ge=0)

    @classmethod
    def symmetric(cls, l: float, r: float, c_pad: float, g_loss: float) -> "ParasiticNetwork":
        return cls(l_in=l, r_in=r, l_out=l, r_out=r, c_pad_in=c_pad, c_pad_out=c_pad, g_loss=g_loss)

    @classmethod
    def from_dict(cls, data: dict) -> "ParasiticNetwork":
        return cls.model_validate(data)

    def to_dict(self) -> dict:
        return self.model_dump()
