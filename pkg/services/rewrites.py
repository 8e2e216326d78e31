# services/rewrites.py
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, TypeVar

import networkx as nx

from core.errors import NotAForestError, PreconditionError
from services.graphs import BipartiteGraph, Color, canonical_key

log = logging.getLogger(__name__)

T = TypeVar("T")

# star(n) -> value of the white-centered star with n edges
StarRule = Callable[[int], T]
# union([(n_1, value_1), ...]) -> value of the disjoint union; [] is the empty forest
UnionRule = Callable[[List[Tuple[int, T]]], T]


@dataclass(frozen=True)
class LeafTriple:
    """
    G = base + v1v1' + v2v2', G1 = base + v1v1' + v1v2, G2 = base + v2v2' + v1v2.
    `pendant1` / `pendant2` are the edge ids of v1v1' and v2v2' inside G.
    """
    g: BipartiteGraph
    g1: BipartiteGraph
    g2: BipartiteGraph
    pendant1: int
    pendant2: int


def _is_white_star(g: BipartiteGraph) -> bool:
    center = g.is_star()
    return center is not None and g.color(center) is Color.WHITE


def leaf_step(g: BipartiteGraph, root: int) -> Tuple[BipartiteGraph, BipartiteGraph]:
    """
    One step of the uniqueness argument for functions satisfying the leaf
    recurrence. Returns (H, Gp) with f(g) = f(H) - f(Gp): H is disconnected
    and Gp, rooted at the same vertex, has distance sum one less than g.
    """
    if g.n == 0 or not g.is_connected:
        raise PreconditionError("leaf_step needs a connected graph")
    if not g.is_forest:
        raise NotAForestError("leaf_step is defined on trees")
    if root not in g.colors or g.color(root) is not Color.WHITE:
        raise PreconditionError(f"root {root} must be a white vertex of the tree")
    if _is_white_star(g):
        raise PreconditionError("white star reached: base case, no leaf step")

    v1_leaf: Optional[int] = None
    for v in g.vertices:
        if v != root and g.is_leaf(v) and g.neighbors(v)[0] != root:
            v1_leaf = v
            break
    if v1_leaf is None:
        raise PreconditionError(f"no leaf at distance >= 2 from root {root}")

    v1 = g.neighbors(v1_leaf)[0]
    v2 = nx.shortest_path(g.as_nx, v1, root)[1]

    with_pendant, _ = g.add_pendant(v2)
    h = with_pendant.delete_edge(with_pendant.edge_id(v1, v2))
    gp = with_pendant.delete_edge(with_pendant.edge_id(v1, v1_leaf))
    log.debug("leaf_step root=%s leaf=%s v1=%s v2=%s", root, v1_leaf, v1, v2)
    return h, gp


def unfold_leaf_recurrence(g: BipartiteGraph, star: StarRule, union: UnionRule) -> T:
    """
    Evaluate the unique function on forests with the given value on white
    stars, the given disjoint-union rule, and the leaf recurrence.
    Intermediate results are shared between isomorphic subforests.
    """
    if not g.is_forest:
        raise NotAForestError("the leaf recurrence determines values on forests only")
    memo: Dict[str, T] = {}

    def solve(h: BipartiteGraph) -> T:
        if h.n == 0:
            return union([])
        key = canonical_key(h)
        if key in memo:
            return memo[key]
        if not h.is_connected:
            value = union([(c.n, solve(c)) for c in h.components()])
        elif _is_white_star(h):
            value = star(h.n)
        else:
            # the least white vertex survives every Gp step, so s strictly drops
            disconnected, smaller = leaf_step(h, h.whites()[0])
            value = solve(disconnected) - solve(smaller)
        memo[key] = value
        return value

    return solve(g)


def leaf_recurrence_triple(
    base: BipartiteGraph,
    v1: Optional[int] = None,
    v2: Optional[int] = None,
) -> LeafTriple:
    """
    Build the leaf recurrence triple from a base forest. v1 / v2 are vertices
    of base in different components, or None for a fresh vertex; they must
    end up with different colors.
    """
    if not base.is_forest:
        raise NotAForestError("leaf recurrence triples are built on forests")
    colors = base.colors
    for v in (v1, v2):
        if v is not None and v not in colors:
            raise PreconditionError(f"vertex {v} is not in the base graph")

    if v1 is not None and v2 is not None:
        if nx.has_path(base.as_nx, v1, v2):
            raise PreconditionError(f"{v1} and {v2} lie in the same component")
        if colors[v1] is colors[v2]:
            raise PreconditionError(f"{v1} and {v2} have the same color")

    next_id = base.fresh_id()
    if v1 is None:
        v1, next_id = next_id, next_id + 1
        colors[v1] = colors[v2].opposite() if v2 is not None else Color.WHITE
    if v2 is None:
        v2, next_id = next_id, next_id + 1
        colors[v2] = colors[v1].opposite()
    p1, p2 = next_id, next_id + 1
    colors[p1] = colors[v1].opposite()
    colors[p2] = colors[v2].opposite()

    edges = list(base.edges)
    g = BipartiteGraph(colors, edges + [(v1, p1), (v2, p2)], drop_isolated=True)
    g1 = BipartiteGraph(colors, edges + [(v1, p1), (v1, v2)], drop_isolated=True)
    g2 = BipartiteGraph(colors, edges + [(v2, p2), (v1, v2)], drop_isolated=True)
    return LeafTriple(g=g, g1=g1, g2=g2, pendant1=len(edges), pendant2=len(edges) + 1)
