import pytest

import gridweaver as gw


def test_neighbors():
    assert gw.neighbors("hex", "0,0") == ["-1,0", "0,1", "1,0"]


def test_distance():
    assert gw.distance("square", "0,0", "3,4", 10) == 7
    assert gw.distance("square", "0,0", "3,4", 3) is None


def test_ball_size():
    assert gw.ball_size("regular_tree:3", "e", 4) == 46


def test_weave_roundtrip():
    sub = gw.weave("hex", 3, 3)
    report = gw.verify_subdivision("hex", sub)
    assert report["ok"]
    # every edge path of the hex identity weave has length 1
    assert all(len(ep["path"]) == 2 for ep in sub["edge_paths"])


def test_verify_flags_mutation():
    sub = gw.weave("hex", 2, 2)
    sub["edge_paths"][0]["path"][0] = "99,99"
    report = gw.verify_subdivision("hex", sub)
    assert not report["ok"]


def test_minor_demos():
    assert gw.verify_minor("cylinder:9", gw.chain_minor(6, 9, 4))["ok"]
    assert gw.verify_minor("cubic", gw.clique_minor_cubic(4))["ok"]


def test_diverging_pair():
    out = gw.diverging_pair("square", 8)
    assert out["cert"]["rows"][-1]["n"] == 8


def test_errors_surface():
    with pytest.raises(gw.GridweaverError):
        gw.neighbors("hex", "not-a-vertex")
