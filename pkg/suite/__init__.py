# Acceptance battery package
from suite.workflow import create_suite_workflow, run_suite

__all__ = ["create_suite_workflow", "run_suite"]
