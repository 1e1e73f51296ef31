"""
Pydantic schemas para configuracion y reportes
"""
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    field_validator,
    model_validator,
)
from sympy import isprime

from vallab.core.exponents import ExpField, OptionalBoundField
from vallab.utils import format_exp, parse_exp

# d es racional: entero en JSON cuando lo es, "a/b" si no; null sin registrar
OptionalRationalField = Annotated[
    Any,
    BeforeValidator(lambda v: None if v is None else parse_exp(v)),
    PlainSerializer(lambda v: None if v is None else (v.numerator if v.denominator == 1 else format_exp(v))),
]

SCHEMA_VERSION = "1"

# ============================================
# CONFIGURACION
# ============================================

class RunConfig(BaseModel):
    p: int = 2
    q: int = 3
    m: int = Field(1, ge=1)
    depth: int = Field(5, ge=1)
    prec: Optional[ExpField] = Field(None, description="Target precision; default β_{depth+1}")
    max_iter: int = Field(10, ge=1)
    seed: int = 0
    corpus_size: int = Field(100, ge=1)
    as_corpus_size: int = Field(200, ge=1)
    probe_prec: int = Field(6, ge=1, description="Head depth used by the immediacy probe")
    probe_retries: int = Field(3, ge=1)
    format: Literal["json", "text"] = "text"
    output: Optional[str] = None

    @field_validator("p", "q")
    def must_be_prime(cls, v):
        if not isprime(v):
            raise ValueError(f"{v} is not prime")
        return v

    @model_validator(mode="after")
    def p_differs_from_q(self):
        if self.p == self.q:
            raise ValueError(f"p and q must differ (both are {self.p})")
        return self

    class Config:
        json_schema_extra = {
            "example": {"p": 2, "q": 3, "depth": 5, "prec": "80/81", "seed": 7}
        }


# ============================================
# TAYLOR
# ============================================

class StabilizationCert(BaseModel):
    l0: int = Field(..., ge=1)
    e: int = Field(..., ge=0)
    value: ExpField
    trace: List[Tuple[int, OptionalBoundField]]
    paper_regime: bool = True
    minimizer: Optional[int] = None
    e_varies: bool = False
    full_value: OptionalBoundField = None

    class Config:
        json_schema_extra = {
            "example": {"l0": 2, "e": 0, "value": "8/9", "trace": [[1, "inf"], [2, "8/9"]]}
        }


# ============================================
# DEFECTLAB
# ============================================

Verdict = Literal["yes-at-precision", "no", "inconclusive"]


class ExtensionReport(BaseModel):
    label: str = ""
    degree: int = Field(..., ge=1)
    e: Optional[int] = Field(None, ge=1)
    f: Optional[int] = Field(None, ge=1)
    d: OptionalRationalField = None
    immediate: Verdict
    witness: OptionalBoundField = None
    ostrowski_ok: bool
    notes: str = ""

    def fundamental_equality_ok(self) -> bool:
        """e·f·d = [L:K]; sin d registrado no hay igualdad que comprobar"""
        if self.d is None:
            return True
        return self.e * self.f * Fraction(self.d) == self.degree

    class Config:
        json_schema_extra = {
            "example": {
                "degree": 4, "e": 2, "f": 1, "d": 2,
                "immediate": "no", "ostrowski_ok": True,
            }
        }


class ProbeResult(BaseModel):
    value: ExpField
    in_base_group: bool
    depth: int = Field(..., ge=1, description="Head depth at which the value settled")


class ASVerdict(BaseModel):
    verdict: Literal["not-immediate", "inconclusive"]
    witness: OptionalBoundField = None
    steps: int = 0
    reason: str = ""


class PthPowerRow(BaseModel):
    label: str
    outcome: Literal["outside-pGamma", "exact-p-th-power", "inconclusive"]
    value: OptionalBoundField = None
    a: Optional[Dict[str, Any]] = None
    steps: int = 0
    note: str = ""


# ============================================
# EXPERIMENTO
# ============================================

class ProbeSummary(BaseModel):
    samples: int
    determinate: int
    all_in_group: bool
    within_bound: bool = True
    unresolved: List[int] = []
    out_of_group: List[int] = []
    degenerate: List[int] = []


class ASSummary(BaseModel):
    samples: int
    inclusion_ok: bool
    decrement_ok: bool
    classified: int
    within_bound: bool
    inconclusive: List[int] = []
    failures: List[int] = []


class SupportProfileRow(BaseModel):
    i: int
    beta: ExpField
    in_p_gamma: bool


class ExperimentReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(SCHEMA_VERSION, alias="schema")
    seed: int
    config: Dict[str, Any]
    support_profile: List[SupportProfileRow]
    tower: List[ExtensionReport]
    probe: ProbeSummary
    artin_schreier: ASSummary
    pth_powers: List[PthPowerRow]
    inconclusive: List[str] = []
    invariants_ok: bool = True

    def to_document(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)
