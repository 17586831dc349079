"""Graphviz DOT rendering of a report through the package templates."""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Optional

import structlog
from jinja2 import Environment, FileSystemLoader, StrictUndefined

from ..api.schemas import AnalysisReport
from ..config import get_settings

logger = structlog.get_logger(__name__)

TEMPLATES = {
    "cgraph.dot": "cgraph.dot.j2",
    "ycomplex.dot": "ycomplex.dot.j2",
    "wperp.dot": "wperp.dot.j2",
}


def _environment(templates_dir: Optional[Path] = None) -> Environment:
    directory = templates_dir or get_settings().TEMPLATES_DIR
    return Environment(
        loader=FileSystemLoader(str(directory)),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def render_dot(report: AnalysisReport, templates_dir: Optional[Path] = None) -> Dict[str, str]:
    """File name -> DOT source for the graph C, the 1-skeleton of Y and the W-perp window."""
    env = _environment(templates_dir)
    context = {
        "report": report,
        "tree": set(report.pi1.tree_edges),
        "named": {key: name for name, key in report.pi1.generator_edges.items()},
    }
    return {name: env.get_template(template).render(**context) for name, template in TEMPLATES.items()}


def write_dot(report: AnalysisReport, directory: Path, templates_dir: Optional[Path] = None) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, source in render_dot(report, templates_dir).items():
        (directory / name).write_text(source, encoding="utf-8")
    logger.info("dot files written", directory=str(directory), files=sorted(TEMPLATES))
