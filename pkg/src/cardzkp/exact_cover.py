"""Exact-cover search backend, compiled when available.

Set ``CARDZKP_PURE_PYTHON=1`` to force the pure-Python implementation.
"""
import os

from . import _exact_cover_py

py_search = _exact_cover_py.search

try:
    if os.environ.get("CARDZKP_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from ._exact_cover import search as compiled_search
except ImportError:
    compiled_search = None

search = compiled_search or py_search
BACKEND = "cython" if compiled_search is not None else "python"

__all__ = ["search", "py_search", "compiled_search", "BACKEND"]
