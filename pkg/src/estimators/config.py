from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.array.geometry import AngleSet, CoefVector
from src.config import MAX_ITERATIONS, RELATIVE_TOLERANCE
from src.errors import ValidationError


class Method(str, Enum):
    MODE = "MODE"     # two-step MODE
    PUMA = "PUMA"     # iteratively reweighted, c_0 = 1
    MODEX = "MODEX"   # MODE at degree r+p, best r-subset by V_ML
    EPUMA = "EPUMA"   # Enhanced-PUMA: PUMA at degree r+p, same subset search

    @property
    def uses_extra_coefs(self):
        return self in (Method.MODEX, Method.EPUMA)


class EstimatorConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    method: Method = Method.MODE
    p_extra: int = Field(default=0, ge=0)
    max_iterations: int = Field(default=MAX_ITERATIONS, gt=0)
    relative_tolerance: float = Field(default=RELATIVE_TOLERANCE, gt=0)
    mode_extra_reweights: int = Field(default=0, ge=0)

    @field_validator("method", mode="before")
    @classmethod
    def _normalize_method(cls, v):
        return v.upper() if isinstance(v, str) else v

    @model_validator(mode="after")
    def _check_extra(self):
        if self.p_extra and not self.method.uses_extra_coefs:
            raise ValueError(f"p_extra is only meaningful for MODEX/EPUMA, not {self.method.value}")
        return self

    def check_dimensions(self, m, r):
        if self.p_extra >= m - r:
            raise ValidationError(
                f"p_extra={self.p_extra} violates the bound p < m - r = {m - r}")

    @property
    def label(self):
        if self.method.uses_extra_coefs:
            return f"{self.method.value}-p{self.p_extra}"
        return self.method.value


class CandidateScore(NamedTuple):
    indices: Tuple[int, ...]   # positions in the ascending candidate list
    angles: AngleSet
    value: float               # V_ML of the subset, inf when singular


@dataclass(frozen=True, eq=False)
class EstimationResult:
    angles: AngleSet
    coefs: CoefVector
    criterion_value: float
    iterations_used: int
    converged: bool
    candidate_log: Optional[List[CandidateScore]] = None
    criterion_history: List[float] = field(default_factory=list)
