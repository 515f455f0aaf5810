"""Python interface to the hodge-dtn library.

Thin wrappers over the C++ core: mesh generation, the analysis report
(returned as parsed JSON), the analytic cylinder oracle, and dense
operator matrices as numpy arrays.
"""

import json as _json

from ._core import analyze as _analyze
from ._core import make_mesh, operator_matrix
from ._core import oracle as _oracle

__all__ = ["make_mesh", "operator_matrix", "analyze", "oracle"]


def analyze(mesh_text, identities=False, rank_threshold=1e3):
    """Analyze a mesh (text format) and return the report as a dict."""
    return _json.loads(_analyze(mesh_text, identities, rank_threshold, False))


def oracle(m_max=20, L=1.0):
    """Cylinder oracle report (identities + topology) as a dict."""
    return _json.loads(_oracle(m_max, L))
