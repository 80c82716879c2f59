"""Smoke tests for the python bindings: thin checks that the main operations
are wired through correctly. The heavy verification lives in the C++ suites."""

import sipserlab as sl


def test_build_and_count():
    p = sl.SipserParams(u=2, w=2, wb=2, d=1)
    f = sl.build_skewed_sipser(p)
    assert f.num_vars == 8
    assert f.depth() == 3
    assert sl.AddressSpace(p).num_blocks == 2


def test_truth_tables():
    p = sl.SipserParams(u=2, w=2, wb=2, d=0)
    f = sl.build_skewed_sipser(p)
    assert f.truth_table() == "0111"
    assert sl.build_cnf_sipser(2, 1).truth_table() == "0001"


def test_optimal_depth_and_subfunction():
    assert sl.optimal_dt_depth("0111") == 2
    assert sl.is_subfunction("0111", "01111111")
    assert not sl.is_subfunction("0001", "0111")


def test_demorgan():
    p = sl.SipserParams(u=2, w=2, wb=2, d=1)
    f = sl.build_skewed_sipser(p)
    c = sl.demorgan_convert(f, p)
    assert c.depth() == 2
    assert c.truth_table() == f.truth_table()


def test_graph_reduction():
    p = sl.SipserParams(u=2, w=2, wb=2, d=1)
    g = sl.formula_to_graph(sl.build_skewed_sipser(p))
    assert len(g.edges) == 8
    assert g.shortest_st_path() == 2
    assert not g.is_simple()
    assert sl.formula_to_graph(sl.build_dagger(p)).is_simple()
    empty = g.subgraph([False] * 8)
    assert empty.shortest_st_path() is None


def test_support_and_weights():
    supp = sl.enumerate_support(2)
    assert len(supp) == 5
    p = sl.SipserParams(u=2, w=2, wb=2, d=1)
    w = sl.restriction_weight(p, "1/10", [("star",), ("star",)])
    assert w == "1/100"
    s = sl.expand_restriction(p, "1/10", [("pattern", 0, 0), ("star",)])
    assert s == "0011****"


def test_psl_bound_holds():
    p = sl.SipserParams(u=2, w=2, wb=2, d=1)
    f = sl.random_dnf(p, width=1, max_terms=6, seed=7)
    rep = sl.bad_set(f, p, r=1, s=1, q="1/10")
    assert rep["support"] == 25
    assert rep["bound_holds"]
    assert rep["injection_ok"] and rep["roundtrip_ok"] and rep["ratio_ok"]


def test_monte_carlo_reproducible():
    p = sl.SipserParams(u=2, w=2, wb=2, d=1)
    f = sl.random_dnf(p, width=1, max_terms=6, seed=7)
    a = sl.psl_monte_carlo(f, p, r=1, s=1, q="1/10", trials=2000, seed=3)
    b = sl.psl_monte_carlo(f, p, r=1, s=1, q="1/10", trials=2000, seed=3)
    assert a == b


def test_stconn():
    c = sl.build_squaring_circuit(4, 2)
    pw = sl.build_power_circuit(4, 4, 2)
    assert pw.depth() == 4
    # spot-check agreement with the oracle on a few graphs
    for mask in (0, 1, 5, 21, 63):
        adj = [(mask >> i) & 1 == 1 for i in range(6)]
        want = sl.bfs_oracle(adj, 4, 0, 1, 2)
        got = c.eval(adj)
        assert got == want


def test_preservation_and_reduction():
    p = sl.SipserParams(u=2, w=3, wb=1, d=1)
    r = sl.preservation_probability_exact(p, "1/2")
    assert r["exact_prob"] == r["closed_form"] == "7/8"
    rp = sl.reduction_params("1000000", "16", 2)
    assert rp["u0"] == "2"
    assert not rp["degenerate"]
    assert sl.size_budget(2, "1/10") == "1/64"
