import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from shintani.flow import transport


def nx_flow(sets, sigma, forced=()):
    g = nx.DiGraph()
    for j, s in enumerate(sets):
        if j in forced:
            g.add_edge("src", ("S", j))
        else:
            g.add_edge("src", ("S", j), capacity=1.0)
        for i in s:
            g.add_edge(("S", j), ("c", i))
    for i, x in enumerate(sigma):
        g.add_edge(("c", i), "sink", capacity=x)
    return nx.maximum_flow_value(g, "src", "sink")


@st.composite
def networks(draw):
    n = draw(st.integers(1, 6))
    m = draw(st.integers(1, 6))
    sets = [draw(st.sets(st.integers(0, n - 1), min_size=1)) for _ in range(m)]
    sigma = [draw(st.one_of(st.just(0.0), st.floats(1e-6, 3))) for _ in range(n)]
    return sets, sigma


@given(networks())
def test_matches_networkx(net):
    sets, sigma = net
    assert abs(transport(sets, sigma).value - nx_flow(sets, sigma)) < 1e-9


@given(networks())
def test_shipment_respects_capacities(net):
    sets, sigma = net
    res = transport(sets, sigma)
    for j, s in enumerate(sets):
        row = res.shipment[j]
        assert all(x >= 0 for x in row)
        assert all(row[i] == 0 for i in range(len(sigma)) if i not in s)
        assert sum(row) <= 1 + 1e-12
    for i, x in enumerate(sigma):
        assert sum(r[i] for r in res.shipment) <= x + 1e-12
    assert abs(sum(map(sum, res.shipment)) - res.value) < 1e-9


def test_cut_value_equals_flow():
    rng = random.Random(3)
    for _ in range(300):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        sets = [set(rng.sample(range(n), rng.randint(1, n))) for _ in range(m)]
        sigma = [rng.uniform(0, 2) for _ in range(n)]
        k = rng.randrange(m)
        res = transport(sets, sigma, forced=[k])
        K = res.cut_sets
        assert k in K
        cover = set().union(*(sets[j] for j in K))
        cut = (m - len(K)) + sum(sigma[i] for i in cover)
        assert abs(cut - res.value) < 1e-9
        assert abs(res.value - nx_flow(sets, sigma, forced=[k])) < 1e-9


def test_empty_capacity():
    assert transport([{0}], [0.0]).value == 0.0
    assert transport([{0}, {0}], [2.0]).value == pytest.approx(2.0)
