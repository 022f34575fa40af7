"""Thin python surface over the C++ core; heavy objects travel as JSON."""

import json

try:
    from gridweaver import _core
except ImportError:  # running against a bare build tree
    import _core

GridweaverError = _core.GridweaverError


def neighbors(graph, vertex):
    return _core.neighbors(graph, vertex)


def distance(graph, u, v, cap):
    return _core.distance(graph, u, v, cap)


def ball_size(graph, center, radius):
    return _core.ball_size(graph, center, radius)


def weave(graph, rows, cols):
    return json.loads(_core.weave(graph, rows, cols))


def verify_subdivision(graph, subdivision):
    return json.loads(_core.verify_subdivision(graph, json.dumps(subdivision)))


def verify_minor(graph, minor):
    return json.loads(_core.verify_minor(graph, json.dumps(minor)))


def diverging_pair(graph, scale, effort=10000):
    return json.loads(_core.diverging_pair(graph, scale, effort))


def chain_minor(m, n, length):
    return json.loads(_core.chain_minor(m, n, length))


def clique_minor_cubic(n):
    return json.loads(_core.clique_minor_cubic(n))
