from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class IndexTupleModel(BaseModel):
    m: int
    entries: List[int] = Field(default_factory=list)
    e1: int = 0
    e2: int = 0


class MatrixModel(BaseModel):
    name: str = ""
    rows: List[str]
    cols: List[int]
    entries: List[List[str]]


class JkCheckModel(BaseModel):
    j: int
    k: int
    sign: Optional[int] = None
    match: bool
    difference: Optional[str] = None


class DecompositionModel(BaseModel):
    removed_rows: List[str]
    removed_cols: List[int]
    terms: List[List[int]]
    signs: Optional[List[int]] = None
    pattern_holds: bool
    certified: bool


class TrialsModel(BaseModel):
    count: int
    passed: int
    failed: int
    ranks: List[int] = Field(default_factory=list)
    replays: List[DecompositionModel] = Field(default_factory=list)


class CensusModel(BaseModel):
    e1: int
    e2: int
    dimension: int


class StructureModel(BaseModel):
    ok: bool
    findings: List[str] = Field(default_factory=list)


class VerificationReportModel(BaseModel):
    P: IndexTupleModel
    jk: List[JkCheckModel]
    trials: TrialsModel
    census: CensusModel
    structure: StructureModel
    a_condition_effect: List[List[int]] = Field(default_factory=list)
    ok: bool


class BatchReportModel(BaseModel):
    m: int
    seed: int
    ok: bool
    reports: List[VerificationReportModel]


class CellPointModel(BaseModel):
    P: IndexTupleModel
    field: str
    assignment: Dict[str, str]
    rank_N1: int
    rank_N2: int
    subrepresentation: bool
    N1: List[List[str]]
    N2: List[List[str]]


class ClusterCheckModel(BaseModel):
    m: int
    equal: bool
    value_at_ones: int
    tuple_count: int
    cluster_variable: str


class CensusRowModel(BaseModel):
    e1: int
    e2: int
    cells: int
    dimensions: Dict[str, int]


class CensusReportModel(BaseModel):
    m: int
    total: int
    rows: List[CensusRowModel]


class RelationModel(BaseModel):
    j: int
    k: int
    nu: int
    mu: int
    D: str
    Dhat: str
    linear: str


class RelationsReportModel(BaseModel):
    P: IndexTupleModel
    a_set: List[int]
    solving_order: List[List[int]]
    relations: List[RelationModel]
    structure: StructureModel


class EnumerationModel(BaseModel):
    m: int
    count: int
    tuples: List[IndexTupleModel]


class MatricesModel(BaseModel):
    P: IndexTupleModel
    matrices: List[MatrixModel]


class TreeModel(BaseModel):
    eta: int
    nu: int
    mu: int
    n: int
    size: int
    vertices: List[str]


class ClusterCheckReportModel(BaseModel):
    ok: bool
    rows: List[ClusterCheckModel]
