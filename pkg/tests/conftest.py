"""Shared fixtures: small hand-built instances with known structure."""
from __future__ import annotations

import os

import pytest

from minpath import Instance, TerminalPair, make_graph
from minpath.planar import embedding_from_points

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def build_instance(num_colors, vertex_colors, edges, points, terminals):
    rotation = embedding_from_points(edges, points)
    graph = make_graph(num_colors, vertex_colors, edges, rotation)
    return Instance(graph, tuple(TerminalPair(*t) for t in terminals))


def grid_points(width, height):
    return [(float(v % width), -float(v // width)) for v in range(width * height)]


def grid_edges(width, height):
    edges = []
    for r in range(height):
        for c in range(width):
            v = r * width + c
            if c + 1 < width:
                edges.append((v, v + 1))
            if r + 1 < height:
                edges.append((v, v + width))
    return edges


@pytest.fixture
def diamond():
    """s=0 splits into a=1 (color 0) and b=2 (color 1), rejoining at t=3."""
    return build_instance(
        2,
        [set(), {0}, {1}, set()],
        [(0, 1), (0, 2), (1, 3), (2, 3)],
        [(0, 0), (1, 1), (1, -1), (2, 0)],
        [(0, 3)],
    )


@pytest.fixture
def walls():
    """Three colors: {0,1} jointly block the first column, {2} blocks the second.

    Layout is s | column(1,2,3) | column(4,5,6) | t with colors
    0 on {1,2}, 1 on {2,3}, 2 on {4,5,6}; so {2} and {0,1} are separators
    while {0} and {1} are not.
    """
    return build_instance(
        3,
        [set(), {0}, {0, 1}, {1}, {2}, {2}, {2}, set()],
        [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6), (4, 5), (5, 6), (4, 7), (5, 7), (6, 7)],
        [(0, 0), (1, 1), (1, 0), (1, -1), (2, 1), (2, 0), (2, -1), (3, 0)],
        [(0, 7)],
    )


@pytest.fixture
def ring():
    """Fractional LP: three 6-cell arcs around the center of a 5x5 grid.

    Any two arcs cover the whole ring, no single arc does, so the minimal
    separators are the three pairs and the LP optimum is 3/2 at x = (.5,.5,.5).
    """
    width = 5
    ring_cells = [(1, 1), (1, 2), (1, 3), (2, 3), (3, 3), (3, 2), (3, 1), (2, 1)]
    colors = [set() for _ in range(25)]
    for ci, start in enumerate((0, 3, 6)):
        for i in range(6):
            r, c = ring_cells[(start + i) % 8]
            colors[r * width + c].add(ci)
    return build_instance(3, colors, grid_edges(5, 5), grid_points(5, 5), [(12, 0)])


@pytest.fixture
def chain():
    """Two diamonds in series, both branches of each carrying color 0."""
    return build_instance(
        1,
        [set(), {0}, {0}, {0}, {0}, {0}, set()],
        [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)],
        [(0, 0), (1, 1), (1, -1), (2, 0), (3, 1), (3, -1), (4, 0)],
        [(0, 6)],
    )


@pytest.fixture
def path_graph():
    """s - a - t with a colored: both edges are bridges (dual self-loops)."""
    graph = make_graph(1, [set(), {0}, set()], [(0, 1), (1, 2)], ((0,), (0, 1), (1,)))
    return Instance(graph, (TerminalPair(0, 2),))


@pytest.fixture
def white_diamond(diamond):
    from dataclasses import replace

    graph = replace(diamond.graph, vertex_colors=(frozenset(), frozenset(), frozenset({1}), frozenset()))
    return replace(diamond, graph=graph)
