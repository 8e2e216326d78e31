# services/generators.py
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import networkx as nx
import numpy as np

from core.errors import PreconditionError
from services.diagrams import Diagram, diagram_to_graph
from services.graphs import BipartiteGraph, Color, are_equivalent, canonical_form, canonical_key
from services.rewrites import LeafTriple, leaf_recurrence_triple

log = logging.getLogger(__name__)

UINT64_MASK = (1 << 64) - 1


def _rng(seed: int) -> np.random.Generator:
    # any 64-bit value (negative included) is a valid seed
    return np.random.default_rng(seed & UINT64_MASK)


def star(n: int, center: Color = Color.WHITE) -> BipartiteGraph:
    """T_n: center 1, leaves 2..n+1."""
    if n < 1:
        raise PreconditionError(f"a star needs at least one edge, got {n}")
    colors = {1: center}
    colors.update({v: center.opposite() for v in range(2, n + 2)})
    return BipartiteGraph(colors, [(1, v) for v in range(2, n + 2)])


def path(n: int) -> BipartiteGraph:
    """P_n: n edges on vertices 1..n+1, odd ids white."""
    if n < 1:
        raise PreconditionError(f"a path needs at least one edge, got {n}")
    colors = {v: Color.WHITE if v % 2 else Color.BLACK for v in range(1, n + 2)}
    return BipartiteGraph(colors, [(v, v + 1) for v in range(1, n + 1)])


def caterpillar(spine: int, legs: int) -> BipartiteGraph:
    """A path on `spine` vertices with `legs` pendant leaves on every spine vertex."""
    if spine < 1 or legs < 0:
        raise PreconditionError("caterpillar needs spine >= 1 and legs >= 0")
    if spine == 1 and legs == 0:
        raise PreconditionError("caterpillar(1, 0) has no edges")
    colors = {v: Color.WHITE if v % 2 else Color.BLACK for v in range(1, spine + 1)}
    edges = [(v, v + 1) for v in range(1, spine)]
    next_id = spine + 1
    for v in range(1, spine + 1):
        for _ in range(legs):
            colors[next_id] = colors[v].opposite()
            edges.append((v, next_id))
            next_id += 1
    return BipartiteGraph(colors, edges)


def _two_color(edges: List[Tuple[int, int]]) -> Dict[int, Color]:
    """BFS coloring with the least vertex of each tree white."""
    graph = nx.Graph(edges)
    colors: Dict[int, Color] = {}
    for comp in sorted(nx.connected_components(graph), key=min):
        root = min(comp)
        for v, depth in nx.single_source_shortest_path_length(graph, root).items():
            colors[v] = Color.WHITE if depth % 2 == 0 else Color.BLACK
    return colors


def random_forest(n: int, seed: int = 0, p_new_tree: float = 0.15) -> BipartiteGraph:
    """
    n edges grown one at a time: with probability p_new_tree a new isolated
    edge, otherwise a new leaf attached to a uniformly chosen vertex.
    Deterministic for a given seed.
    """
    if n < 1:
        raise PreconditionError(f"random_forest needs n >= 1, got {n}")
    return _random_forest(n, _rng(seed), p_new_tree)


def _random_forest(n: int, rng: np.random.Generator, p_new_tree: float) -> BipartiteGraph:
    edges: List[Tuple[int, int]] = [(1, 2)]
    next_id = 3
    for _ in range(n - 1):
        if rng.random() < p_new_tree:
            edges.append((next_id, next_id + 1))
            next_id += 2
        else:
            anchor = int(rng.integers(1, next_id))
            edges.append((anchor, next_id))
            next_id += 1
    return BipartiteGraph(_two_color(edges), edges)


@lru_cache(maxsize=None)
def forests_with_edges(n: int) -> Tuple[BipartiteGraph, ...]:
    """Every colored forest with n edges up to isomorphism, in canonical form."""
    if n == 0:
        return (BipartiteGraph({}, []),)
    found: Dict[str, BipartiteGraph] = {}
    for smaller in forests_with_edges(n - 1):
        candidates = []
        for v in smaller.vertices:
            grown, _ = smaller.add_pendant(v)
            candidates.append(grown)
        for color in (Color.WHITE, Color.BLACK):
            w, b = smaller.fresh_id(), smaller.fresh_id() + 1
            colors = smaller.colors
            colors[w], colors[b] = color, color.opposite()
            candidates.append(BipartiteGraph(colors, list(smaller.edges) + [(w, b)]))
        for g in candidates:
            key = canonical_key(g)
            if key not in found:
                found[key] = canonical_form(g)
    return tuple(found[k] for k in sorted(found))


def all_forests(max_edges: int, min_edges: int = 1) -> List[BipartiteGraph]:
    out: List[BipartiteGraph] = []
    for n in range(min_edges, max_edges + 1):
        out.extend(forests_with_edges(n))
    return out


def random_leaf_triple(rng: np.random.Generator, n: int) -> LeafTriple:
    """
    A leaf recurrence triple whose graphs have n edges: a random base forest
    with n - 2 edges, and v1 / v2 picked in different components (or fresh).
    """
    if n < 2:
        raise PreconditionError("leaf recurrence triples need at least 2 edges")
    if n == 2:
        return leaf_recurrence_triple(BipartiteGraph({}, []))

    base = _random_forest(n - 2, rng, p_new_tree=0.3)
    comps = [sorted(c) for c in nx.connected_components(base.as_nx)]
    order = list(rng.permutation(len(comps) + 1))
    # index len(comps) stands for a fresh vertex
    picks = []
    for idx in order[:2]:
        picks.append(None if idx == len(comps) else int(rng.choice(comps[idx])))
    v1, v2 = picks
    if v1 is not None and v2 is not None and base.color(v1) is base.color(v2):
        v2 = next((u for u in base.neighbors(v2)), None)
    return leaf_recurrence_triple(base, v1, v2)


@lru_cache(maxsize=None)
def diagrams_with_boxes(n: int) -> Tuple[Diagram, ...]:
    """
    Every diagram with n boxes up to equivalence (cycles allowed), grown one
    box at a time inside the bounding box plus one new row and column.
    """
    if n == 0:
        return (Diagram([]),)
    buckets: Dict[str, List[Diagram]] = {}
    ordered: List[Diagram] = []
    for smaller in diagrams_with_boxes(n - 1):
        height = max(smaller.rows(), default=0)
        width = max(smaller.cols(), default=0)
        for r in range(1, height + 2):
            for c in range(1, width + 2):
                if (r, c) in smaller:
                    continue
                d = Diagram(list(smaller.boxes) + [(r, c)])
                g = diagram_to_graph(d)
                key = nx.weisfeiler_lehman_graph_hash(g.as_nx, node_attr="color")
                bucket = buckets.setdefault(key, [])
                if any(are_equivalent(g, diagram_to_graph(other)) for other in bucket):
                    continue
                bucket.append(d)
                ordered.append(d)
    return tuple(ordered)


def all_diagrams(max_boxes: int) -> List[Diagram]:
    return [d for n in range(1, max_boxes + 1) for d in diagrams_with_boxes(n)]
