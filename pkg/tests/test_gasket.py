import pytest
from hypothesis import given
from hypothesis import strategies as st

from sgtrees.gasket import (
    AddressError,
    build_graph,
    edge_count,
    enumerate_addresses,
    laplacian,
    parse_address,
    resolve_address,
    tilde,
    vertex_count,
)


@pytest.mark.parametrize("n, v, e", [(0, 3, 3), (1, 6, 9), (2, 15, 27), (3, 42, 81)])
def test_sizes(n, v, e):
    g = build_graph(n)
    assert (len(g.vertices), len(g.edges)) == (v, e) == (vertex_count(n), edge_count(n))


def test_corners_have_degree_two():
    g = build_graph(3)
    assert g.corners == ((0, 0), (8, 0), (0, 8))
    assert all(g.degree(c) == 2 for c in g.corners)
    assert {g.degree(v) for v in g.vertices} == {2, 4}


def test_laplacian_rows_sum_to_zero():
    g = build_graph(2)
    assert all(sum(r) == 0 for r in laplacian(g))
    weighted = laplacian(g, ((1, 1), 3))
    assert all(sum(r) == 0 for r in weighted)
    i = g.index[(1, 1)]
    assert weighted[i][i] == 3 * g.degree((1, 1))


def test_graph_json_schema():
    doc = build_graph(1).to_json()
    assert doc["stage"] == 1
    assert doc["vertices"][0] == {"id": 0, "p": 0, "q": 0}
    assert len(doc["edges"]) == 9


@pytest.mark.parametrize(
    "text, coord, n",
    [("o", (0, 0), 2), ("a[2]", (4, 0), 2), ("c[0]", (1, 1), 2), ("a[1,1]", (3, 0), 2), ("~a[1,1]", (0, 3), 2)],
)
def test_resolve(text, coord, n):
    assert resolve_address(parse_address(text, n), n) == coord


def test_parse_rejects_malformed():
    for bad in ["q[1]", "a[", "a[1,2]", "a[0,1]", "a[1,1,3]", "a[1,1,0,0]"]:
        with pytest.raises(AddressError):
            parse_address(bad)
    with pytest.raises(AddressError):
        parse_address("c[2]", stage=2)


def test_single_tilde_rewrites():
    assert str(parse_address("~a[1]")) == "b[1]"
    assert str(parse_address("~c[0]")) == "c[0]"


@pytest.mark.parametrize("n", range(0, 6))
def test_enumeration_is_a_bijection(n):
    addrs = enumerate_addresses(n)
    coords = [resolve_address(a, n) for a in addrs]
    assert len(addrs) == vertex_count(n)
    assert set(coords) == set(build_graph(n).vertices)
    assert len(set(coords)) == len(coords)


@given(st.data())
def test_tilde_is_the_mirror(data):
    n = data.draw(st.integers(min_value=1, max_value=4))
    addr = data.draw(st.sampled_from(enumerate_addresses(n)))
    p, q = resolve_address(addr, n)
    assert resolve_address(tilde(addr), n) == (q, p)
    assert tilde(tilde(addr)) == addr
    assert parse_address(str(addr), n) == addr
