"""DOT export."""

from .dot import render_dot, write_dot

__all__ = ["render_dot", "write_dot"]
