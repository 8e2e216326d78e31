# services/lattice_points.py
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

import networkx as nx
from sympy import Integer, Poly, factorial, interpolate, symbols

from core.config import settings
from core.errors import CapExceededError, InvariantViolation, NotAForestError, PreconditionError
from services.graphs import BipartiteGraph, Color

log = logging.getLogger(__name__)

_t = symbols("t")


def _edge_order(g: BipartiteGraph, eids: Sequence[int]) -> List[int]:
    """BFS order of a component's edges; keeps the set of open vertices small."""
    members = set(eids)
    start = min(x for e in eids for x in g.edges[e])
    order: List[int] = []
    for u, v in nx.edge_bfs(g.as_nx, start):
        eid = g.as_nx.edges[u, v]["eid"]
        if eid in members:
            order.append(eid)
    return order


def _count_component(g: BipartiteGraph, eids: Sequence[int], caps: Mapping[int, int]) -> int:
    edges = [g.edges[e] for e in _edge_order(g, eids)]
    last_use: Dict[int, int] = {}
    for i, (w, b) in enumerate(edges):
        last_use[w] = i
        last_use[b] = i

    @lru_cache(maxsize=None)
    def walk(i: int, open_caps: Tuple[Tuple[int, int], ...]) -> int:
        if i == len(edges):
            return 1
        w, b = edges[i]
        residual = dict(open_caps)
        rw = residual.get(w, caps[w])
        rb = residual.get(b, caps[b])
        total = 0
        for x in range(min(rw, rb) + 1):
            nxt = dict(residual)
            nxt[w] = rw - x
            nxt[b] = rb - x
            for v in (w, b):
                if last_use[v] == i:
                    del nxt[v]
            total += walk(i + 1, tuple(sorted(nxt.items())))
        return total

    return walk(0, ())


def count_weightings(g: BipartiteGraph, caps: Mapping[int, int]) -> int:
    """
    Number of nonnegative integer edge weightings with vertex sums at most
    caps[v]. Components are counted separately and multiplied.
    """
    if any(caps[v] < 0 for v in g.vertices):
        return 0
    total = 1
    for eids in g.component_edge_ids():
        total *= _count_component(g, eids, caps)
    return total


def lattice_count(g: BipartiteGraph, t: int) -> int:
    """Lattice points of the dilate t * M_G."""
    if t < 0:
        raise PreconditionError(f"dilation factor must be nonnegative, got {t}")
    return count_weightings(g, {v: t for v in g.vertices})


def m_count(g: BipartiteGraph, N: int) -> int:
    """Weightings with white sums <= N - 1 and black sums <= N - deg(v)."""
    if N < 1:
        raise PreconditionError(f"N must be at least 1, got {N}")
    if not g.is_forest:
        raise NotAForestError("m_count is defined on forests")
    caps = {
        v: N - 1 if g.color(v) is Color.WHITE else N - g.degree(v)
        for v in g.vertices
    }
    return count_weightings(g, caps)


def ehrhart_polynomial(g: BipartiteGraph) -> Poly:
    n = g.n
    if n > settings.EHRHART_MAX_N:
        raise CapExceededError("EHRHART_MAX_N", settings.EHRHART_MAX_N, n)
    points = [(t, lattice_count(g, t)) for t in range(n + 1)]
    if n == 0:
        return Poly(Integer(points[0][1]), _t)
    return Poly(interpolate(points, _t), _t)


def v_ehrhart(g: BipartiteGraph) -> int:
    """
    n! times the leading coefficient of the Ehrhart polynomial, interpolated
    exactly through the lattice counts at t = 0..n.
    """
    poly = ehrhart_polynomial(g)
    if poly.degree() != g.n and g.n > 0:
        raise InvariantViolation(f"Ehrhart polynomial has degree {poly.degree()}, expected {g.n}")
    volume = factorial(g.n) * poly.coeff_monomial(_t**g.n)
    if not volume.is_integer or volume < 0:
        raise InvariantViolation(f"normalized volume {volume} is not a nonnegative integer")
    return int(volume)


def fits_polynomial(values: Sequence[Tuple[int, int]], degree: int) -> bool:
    """True when the points (x, y) lie on one polynomial of degree <= degree."""
    if len(values) <= degree + 1:
        return True
    poly = Poly(interpolate(list(values), _t), _t)
    return poly.degree() <= degree
