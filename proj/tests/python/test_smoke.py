import json

import pytest

import transiso as ts

C2xC4 = {"kind": "direct_product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 4}]}


def test_group_construction():
    assert ts.Group("sym4").order == 24
    assert ts.Group(C2xC4).order == 8
    assert ts.Group(json.dumps({"kind": "cyclic", "n": 12})).label == "C12"
    assert len(ts.Group("quaternion8")) == 8
    g = ts.Group({"kind": "dihedral", "n": 4})
    assert g.mul(0, 5) == 5
    assert not g.is_abelian()
    with pytest.raises(ts.InvalidArgument):
        ts.Group("no such group")
    with pytest.raises(ts.OrderLimitExceeded):
        ts.Group({"kind": "symmetric", "n": 7})


def test_c2xc4_graphs():
    g = ts.Group(C2xC4)
    g2 = ts.build_graph(g, 2)
    assert len(g2.vertices) == 3
    assert g2.count("ADJACENT") == 1
    assert g2.verify() == []
    g4 = ts.build_graph(g, 4)
    assert g4.count("ADJACENT") == 3
    doc = g4.to_json()
    assert doc["d"] == 4 and len(doc["vertices"]) == 3
    assert g2.to_dot().count(" -- ") == 1


def test_vertices_outlive_group_handle():
    verts = ts.subgroups_of_order(ts.Group("sym4"), 2)
    assert len(verts) == 9
    assert sum(v.is_normal for v in verts) == 0
    assert all(v.order == 2 and v.index == 12 for v in verts)


def test_completeness_and_criteria():
    assert set(ts.complete_for_all_divisors(ts.Group({"kind": "dihedral", "n": 6})).values()) == {"COMPLETE"}
    assert ts.is_complete(ts.Group("quaternion8"), 2)["verdict"] == "COMPLETE"
    assert ts.pgroup_gamma_p_criterion(ts.Group("heisenberg3"), 3)["verdict"] == "COMPLETE"
    assert not ts.abelian_sylow_criterion(ts.Group(C2xC4))
    assert ts.abelian_sylow_criterion(ts.Group({"kind": "elementary_abelian", "p": 3, "rank": 3}))
    with pytest.raises(ts.InvalidArgument):
        ts.abelian_sylow_criterion(ts.Group("sym3"))


def test_subgroup_level_calls():
    s4 = ts.Group("sym4")
    assert ts.nrt_count(s4, [1]) == 2048
    assert not ts.all_nrts_generate(s4, [1])
    status, rule = ts.adjacency(ts.Group(C2xC4), [4], [2])
    assert (status, rule) == ("NON_ADJACENT", "normal_quotients")
    cs = ts.loop_class_set(ts.Group("sym3"), [1])
    assert cs["exhaustive"] is True
    big = ts.nrt_count(ts.Group({"kind": "symmetric", "n": 5}), [1])
    assert big == 2**59


def test_cli_entry():
    code, out, err = ts.run_cli(["subgroups", "--group", "heisenberg3", "--order", "9"])
    assert code == 0 and out.count("order 9") == 4
    code, _, err = ts.run_cli(["graph", "--group", "sym4", "--order", "5"])
    assert code == 1 and "does not divide" in err
