import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from treewalk import (
    WalkOperator,
    amplitude,
    complete_graph,
    cycle_graph,
    derive_iterated,
    gamma8,
    infinitesimal_table,
    path_graph,
    periodic_return_scan,
    pst_scan,
    transition_operator,
)
from treewalk.walk import laplacian

GRAPHS = [cycle_graph(4), cycle_graph(7), path_graph(4), complete_graph(5), gamma8()]


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: f"n{g.n}m{g.m}")
@pytest.mark.parametrize("t", [0.0, 0.37, 5.0, 41.3])
def test_matches_expm(g, t):
    a = g.adjacency_matrix()
    assert np.abs(transition_operator(a, t) - expm(1j * t * a)).max() < 1e-10


@settings(max_examples=30, deadline=None)
@given(st.floats(-20, 20), st.floats(-20, 20))
def test_group_law_and_symmetry(t, s):
    op = WalkOperator.from_matrix(gamma8().adjacency_matrix())
    h = op.at(t)
    assert np.abs(op.at(t + s) - h @ op.at(s)).max() < 1e-10
    assert np.abs(h - h.T).max() < 1e-12
    assert np.abs(h.conj().T @ h - np.eye(8)).max() < 1e-10


def test_projectors_resolve_identity():
    op = WalkOperator.from_matrix(cycle_graph(8).adjacency_matrix())
    assert len(op.spectrum) == 5
    assert np.allclose(sum(op.projectors), np.eye(8))


def test_k2_closed_form():
    a = complete_graph(2).adjacency_matrix()
    for t in (0.1, 1.0, 2.5):
        assert abs(amplitude(a, 0, 0, t) - np.cos(t)) < 1e-12
        assert abs(amplitude(a, 0, 1, t) - 1j * np.sin(t)) < 1e-12


def test_c4_closed_form():
    # eigenvalues 2, 0, 0, -2: the diagonal entry is (1 + cos 2t) / 2
    a = cycle_graph(4).adjacency_matrix()
    for t in (0.3, 1.1):
        assert abs(amplitude(a, 0, 0, t) - (1 + np.cos(2 * t)) / 2) < 1e-12


def test_scans():
    k2 = complete_graph(2).adjacency_matrix()
    r = pst_scan(k2, 0, 1)
    assert r.found and abs(r.time - np.pi / 2) < 1e-6
    r = periodic_return_scan(cycle_graph(4).adjacency_matrix())
    assert r.found and abs(r.time - np.pi) < 1e-6
    r = periodic_return_scan(complete_graph(4).adjacency_matrix())
    assert r.found and abs(r.time - np.pi / 2) < 1e-6
    r = periodic_return_scan(path_graph(3).adjacency_matrix())
    assert r.found and abs(r.time - np.pi * np.sqrt(2)) < 1e-6
    r = periodic_return_scan(cycle_graph(8).adjacency_matrix(), t_max=100)
    assert not r.found and r.fidelity < 1 - 1e-6
    r = pst_scan(cycle_graph(4).adjacency_matrix(), 0, 2)
    assert r.found and abs(r.time - np.pi / 2) < 1e-6
    with pytest.raises(ValueError):
        pst_scan(k2, 0, 0)


def test_first_order_bound():
    d = derive_iterated(gamma8(), "tl", 3)
    eps = 1e-3
    t = infinitesimal_table(d, 0, eps)
    delta = max(d.degree(i) for i in range(d.n_vertices))
    for r in t.rows:
        assert abs(r.amplitude - r.first_order) <= (eps * delta) ** 2
    assert abs(t.norm - 1) < 1e-12


def test_table1_labels():
    d = derive_iterated(gamma8(), "tl", 3)
    t = infinitesimal_table(d, "{{{1,2},{2,3}},{{2,3},{2,4}}}", 1e-3)
    assert t.initial_label == "{{{1,2},{2,3}},{{2,3},{2,4}}}"
    names = {r.label for r in t.of_kind("neighbor")}
    assert d.label(d.find("{{{5,1},{1,2}},{{1,2},{2,3}}}")) in names
    assert len(t.of_kind("diagonal")) == 1
    with pytest.raises(ValueError):
        infinitesimal_table(d, 0, 0.5)


def test_laplacian_option():
    a = cycle_graph(5).adjacency_matrix()
    op = WalkOperator.from_matrix(a, hamiltonian="laplacian")
    assert np.abs(op.at(0.7) - expm(0.7j * laplacian(a))).max() < 1e-10
    with pytest.raises(ValueError):
        WalkOperator.from_matrix(a, hamiltonian="other")
    with pytest.raises(ValueError):
        WalkOperator.from_matrix(np.array([[0, 1], [0, 0]]))
