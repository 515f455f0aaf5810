"""Smoke tests for the python extension module.

In the CMake build tree only the raw extension `_core` is on PYTHONPATH;
in an installed wheel the `hodgedtn` package wraps it.  Both are covered.
"""

import json

import numpy as np
import pytest

try:
    import hodgedtn as hd

    def analyze(text, **kw):
        return hd.analyze(text, **kw)

    make_mesh = None  # set below
    make_mesh, operator_matrix = hd.make_mesh, hd.operator_matrix
    oracle = hd.oracle
except ImportError:
    import _core

    def analyze(text, identities=False, rank_threshold=1e3):
        return json.loads(_core.analyze(text, identities, rank_threshold,
                                        False))

    def oracle(m_max=20, L=1.0):
        return json.loads(_core.oracle(m_max, L))

    make_mesh, operator_matrix = _core.make_mesh, _core.operator_matrix


def test_make_mesh_text_format():
    text = make_mesh("annulus2d", 3)
    lines = text.strip().splitlines()
    assert lines[0].startswith("dim 2")
    assert any(l.startswith("vertices") for l in lines)
    assert any(l.startswith("cells") for l in lines)


def test_make_mesh_rejects_unknown_name():
    with pytest.raises(Exception):
        make_mesh("moebius", 3)


def test_analyze_recovers_annulus_topology():
    report = analyze(make_mesh("annulus2d", 3))
    assert report["schema"] == 1
    topo = report["topology"]
    assert topo["betti_abs"][:2] == [1, 1]
    for deg in topo["degrees"]:
        assert deg["matches_oracle"]
    assert topo["cor3"]["dim"] == topo["cor3"]["expected"] == 1


def test_analyze_reports_identities():
    report = analyze(make_mesh("annulus2d", 4), identities=True)
    names = {i["name"] for i in report["identities"]}
    assert "lemma_phi_psi" in names
    assert "remark_lambda_sq" in names
    # discretely exact identities sit at roundoff; the rest converge
    by_name = {(i["name"], i["k"]): i["residual"]
               for i in report["identities"]}
    assert by_name[("lemma_phi_psi", 1)] < 1e-10
    assert by_name[("lemma_phi_sq", 0)] < 1e-10
    assert all(i["residual"] < 0.25 for i in report["identities"])


def test_oracle_is_exact():
    report = oracle(m_max=10)
    assert report["max_residual"] < 1e-12


def test_operator_matrix_shape_and_symmetry():
    text = make_mesh("annulus2d", 3)
    phi0 = np.asarray(operator_matrix(text, "Phi0"))
    assert phi0.shape[0] == phi0.shape[1] > 0
    assert np.linalg.norm(phi0 - phi0.T) < 1e-9 * np.linalg.norm(phi0)
