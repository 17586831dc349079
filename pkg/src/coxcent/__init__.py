"""Centralizers and normalizers of parabolic subgroups of Coxeter groups."""

__version__ = "1.0.0"
__author__ = "coxcent developers"
