"""
Pydantic records for everything that leaves the toolkit: verification reports,
suite summaries, catalog rows and the operator family file format.
"""

import time
from typing import Any, Dict, Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class ResidualItem(BaseModel):
    """One checked (or skipped) item of a verification sweep."""
    item: str = Field(description="What was checked, e.g. 'vertex=3 relation=TLb'")
    residual: Optional[float] = Field(default=None, description="Max block residual; None when skipped")
    skipped: bool = False
    reason: Optional[str] = None


# =============================================================================
# REPORT (shared by every checker and the CLI)
# =============================================================================

class Report(BaseModel):
    """
    Result of one verification.
    passed <=> max_residual < inputs['tol'] and at least one item was checked.
    """
    model_config = ConfigDict(populate_by_name=True)

    check: str
    graph: Optional[str] = None
    family: Optional[str] = None
    inputs: Dict[str, Any] = Field(default_factory=dict)
    per_item: List[ResidualItem] = Field(default_factory=list)
    max_residual: float = 0.0
    passed: bool = Field(default=False, alias="pass")
    wall_time_ms: float = 0.0

    @property
    def tol(self) -> float:
        return float(self.inputs["tol"])

    @property
    def checked(self) -> List[ResidualItem]:
        return [i for i in self.per_item if not i.skipped]

    @property
    def skipped(self) -> List[ResidualItem]:
        return [i for i in self.per_item if i.skipped]

    @classmethod
    def from_items(cls, check: str, items: Iterable[ResidualItem], tol: float,
                   started: Optional[float] = None, graph: Optional[str] = None,
                   family: Optional[str] = None, **inputs: Any) -> "Report":
        """Aggregate per-item residuals into a finalized report."""
        items = list(items)
        residuals = [i.residual for i in items if not i.skipped]
        max_residual = float(max(residuals)) if residuals else 0.0
        elapsed = (time.perf_counter() - started) * 1000.0 if started is not None else 0.0
        return cls(
            check=check,
            graph=graph,
            family=family,
            inputs={"tol": tol, **inputs},
            per_item=items,
            max_residual=max_residual,
            passed=bool(residuals) and max_residual < tol,
            wall_time_ms=round(elapsed, 3),
        )


class SuiteSummary(BaseModel):
    """Aggregate of the acceptance battery."""
    model_config = ConfigDict(populate_by_name=True)

    profile: str
    total: int
    passed_count: int
    passed: bool = Field(alias="pass")
    reports: List[Report] = Field(default_factory=list)
    errors: List[str] = Field(default_factory=list)


class CatalogEntry(BaseModel):
    """One row of `graphs list`."""
    name: str
    family: str
    L: Optional[int] = None
    vertices: int
    coxeter: Optional[int] = None
    eigenvalue: float
    expected: float = Field(description="2cos(pi/h) for classical diagrams, 2 for affine ones")


# =============================================================================
# OPERATOR FAMILY FILE
# =============================================================================

class BlockEntry(BaseModel):
    """Scalar block of the order-2 operator at `base`."""
    model_config = ConfigDict(populate_by_name=True)

    base: int
    in_path: List[int] = Field(alias="in")
    out_path: List[int] = Field(alias="out")
    re: float
    im: float = 0.0


class ScalarEntry(BaseModel):
    vertex: int
    re: float
    im: float = 0.0


class FamilyFile(BaseModel):
    """
    User-supplied operator family. Which scalar map is present decides the
    family type: nubar -> BMW (blocks are U), qbar -> Hecke (blocks are S),
    kappa -> TL (blocks are T).
    """
    graph: List[List[int]] = Field(description="edge list")
    vertices: Optional[List[int]] = None
    name: str = "custom"
    order: int = 2
    blocks: List[BlockEntry] = Field(default_factory=list)
    kappa: Optional[List[ScalarEntry]] = None
    qbar: Optional[List[ScalarEntry]] = None
    nubar: Optional[List[ScalarEntry]] = None
