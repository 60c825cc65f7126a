import io

import numpy as np
import pytest
from hypothesis import given, settings

from densub.corpus import complete, k4_plus_pendant
from densub.exceptions import EdgeListParseError, GraphValidationError
from densub.graph import Graph, density, induced_degrees, induced_weight, load_edge_list, write_edge_list

from conftest import graphs


def test_load_triangle():
    g = load_edge_list(b"0 1\n1 2\n2 0\n")
    assert (g.n_nodes, g.n_edges) == (3, 3)
    assert g.is_unweighted
    assert np.all(g.weights == 1.0)


def test_load_drops_self_loops_and_duplicates():
    g = load_edge_list(b"5 5\n5 7\n7 5\n")
    assert (g.n_nodes, g.n_edges) == (2, 1)
    assert list(g.labels) == [5, 7]
    assert (g.edges_u[0], g.edges_v[0]) == (0, 1)


def test_load_weighted_total():
    g = load_edge_list(b"0 1 2.5\n1 2 0.5\n", weighted=True)
    assert g.n_edges == 2
    assert g.total_weight == 3.0
    assert not g.is_unweighted


def test_unweighted_flag_ignores_third_column():
    g = load_edge_list(b"0 1 2.5\n1 2 0.5\n")
    assert g.is_unweighted and g.total_weight == 2.0


def test_duplicate_keeps_first_weight():
    g = load_edge_list(b"0 1 2.0\n1 0 9.0\n", weighted=True)
    assert list(g.weights) == [2.0]


def test_comments_and_blank_lines():
    g = load_edge_list(b"# header\n% other\n\n3 4\n")
    assert g.n_edges == 1 and list(g.labels) == [3, 4]


def test_load_from_path_and_text_stream(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 2\n2 3\n")
    assert load_edge_list(str(p)) == load_edge_list(io.StringIO("1 2\n2 3\n"))


@pytest.mark.parametrize(
    "text, lineno",
    [(b"0 1\n0\n", 2), (b"0 1\na b\n", 2), (b"0 1 2 3\n", 1), (b"-1 2\n", 1), (b"0 1 x\n", 1)],
)
def test_malformed_line_reports_line_number(text, lineno):
    with pytest.raises(EdgeListParseError) as exc:
        load_edge_list(text, weighted=True)
    assert exc.value.lineno == lineno


@pytest.mark.parametrize("w", ["0", "-1.5", "nan"])
def test_non_positive_weight_rejected(w):
    with pytest.raises(GraphValidationError):
        load_edge_list(f"0 1 {w}\n".encode(), weighted=True)


@pytest.mark.parametrize("text", [b"", b"# nothing\n", b"3 3\n"])
def test_empty_graph_rejected(text):
    with pytest.raises(GraphValidationError):
        load_edge_list(text)


def test_density_examples():
    assert density(complete(4), range(4)) == 1.5
    assert density(complete(2), [0, 1]) == 0.5
    assert density(k4_plus_pendant(), range(5)) == 7 / 5


def test_density_empty_set_rejected():
    with pytest.raises(GraphValidationError):
        density(complete(3), [])


def test_induced_degrees_examples():
    assert induced_degrees(complete(3), {0, 1}) == {0: 1.0, 1: 1.0}
    assert induced_degrees(k4_plus_pendant(), range(5)) == {0: 4.0, 1: 3.0, 2: 3.0, 3: 3.0, 4: 1.0}
    assert induced_degrees(complete(3), set()) == {}


def test_adjacency_matches_edge_list():
    g = k4_plus_pendant()
    inc = sorted((v, int(x), int(e)) for v in range(g.n_nodes) for x, e in zip(g.neighbors(v), g.incident_edges(v)))
    expect = sorted(
        [(int(u), int(v), e) for e, (u, v) in enumerate(zip(g.edges_u, g.edges_v))]
        + [(int(v), int(u), e) for e, (u, v) in enumerate(zip(g.edges_u, g.edges_v))]
    )
    assert inc == expect


def test_graph_arrays_are_read_only():
    g = complete(3)
    with pytest.raises(ValueError):
        g.weights[0] = 5.0


def test_subgraph_keeps_labels():
    g = load_edge_list(b"10 11\n11 12\n12 10\n12 13\n")
    h = g.subgraph([0, 1, 2])
    assert h.n_edges == 3 and list(h.labels) == [10, 11, 12]


def test_view_fields():
    v = k4_plus_pendant().view({0, 1, 2, 3})
    assert v.induced_weight == 6.0 and v.density == 1.5 and v.induced_degree[0] == 3.0


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_handshake_and_full_density(g):
    s = [v for v in range(g.n_nodes) if v % 2 == 0] or [0]
    for subset in (s, range(g.n_nodes)):
        degs = induced_degrees(g, subset)
        lhs, rhs = 2 * induced_weight(g, subset), sum(degs.values())
        if g.is_unweighted:
            assert lhs == rhs
        else:
            assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)
        full = induced_degrees(g, range(g.n_nodes))
        assert all(degs[u] <= full[u] + 1e-12 for u in degs)
    assert density(g, range(g.n_nodes)) == pytest.approx(g.total_weight / g.n_nodes, rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_serialization_round_trip(g):
    buf = io.StringIO()
    write_edge_list(g, buf)
    h = load_edge_list(buf.getvalue().encode(), weighted=not g.is_unweighted)
    # isolated nodes have no edge line, so compare on the edge-bearing part
    used = np.unique(np.concatenate([g.edges_u, g.edges_v]))
    gg = g.subgraph(used) if len(used) < g.n_nodes else g
    buf2 = io.StringIO()
    write_edge_list(h, buf2)
    assert h == load_edge_list(buf2.getvalue().encode(), weighted=not g.is_unweighted)
    assert h.n_edges == gg.n_edges
    assert np.array_equal(h.weights, gg.weights)


def test_loader_idempotent_on_file_ids():
    g = load_edge_list(b"7 3 1.25\n3 9 0.5\n9 7 2\n", weighted=True)
    buf = io.StringIO()
    write_edge_list(g, buf)
    assert load_edge_list(buf.getvalue().encode(), weighted=True) == g


def test_from_edges_rejects_out_of_range():
    with pytest.raises(GraphValidationError):
        Graph.from_edges([(0, 3)], n_nodes=3)
