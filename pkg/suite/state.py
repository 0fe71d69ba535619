"""
LangGraph state schema for the acceptance battery.
Every node appends its reports and errors; the reducers concatenate them in
node order, so the final lists are deterministic.
"""

import operator
import time
from typing import Annotated, List, Optional, TypedDict

from models.schemas import Report


class SuiteState(TypedDict):
    """Shared state passed through the battery's nodes."""
    # Input
    profile: str

    # Results
    reports: Annotated[List[Report], operator.add]
    errors: Annotated[List[str], operator.add]

    # Control Flow
    current_node: str
    started: float


def create_initial_state(profile: Optional[str] = None) -> SuiteState:
    """Fresh state for one battery run; None uses the configured profile."""
    from config import get_settings

    return SuiteState(
        profile=profile or get_settings().tol_profile,
        reports=[],
        errors=[],
        current_node="prepare",
        started=time.perf_counter(),
    )
