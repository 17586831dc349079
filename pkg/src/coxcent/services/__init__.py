"""Pipeline, brute-force oracle and table verification."""

from .analysis import PipelineResult, build_report, order_identity, render_text, run_pipeline
from .oracle import brute_force_centralizer, run_oracle
from .table_check import verify_tables

__all__ = [
    "PipelineResult",
    "brute_force_centralizer",
    "build_report",
    "order_identity",
    "render_text",
    "run_oracle",
    "run_pipeline",
    "verify_tables",
]
