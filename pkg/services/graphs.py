# services/graphs.py
from __future__ import annotations

from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import networkx as nx
from pydantic import ValidationError

from core.errors import GraphValidationError, NotAForestError
from models.schemas import GraphPayload, VertexPayload

Edge = Tuple[int, int]  # (white vertex id, black vertex id)


class Color(str, Enum):
    WHITE = "white"
    BLACK = "black"

    @property
    def rank(self) -> int:
        # canonical order puts white vertices first
        return 0 if self is Color.WHITE else 1

    def opposite(self) -> "Color":
        return Color.BLACK if self is Color.WHITE else Color.WHITE


class BipartiteGraph:
    """
    A 2-colored graph with no isolated vertices. Edge ids are positions in
    `edges` (0..n-1); every edge is stored as (white id, black id). The
    endpoint order of the input is kept separately for serialization.

    Instances are immutable; every structural operation returns a new graph.
    Equality is labeled equality (same ids, colors and edge list). Use
    `canonical_form` / `are_equivalent` for isomorphism questions.
    """

    def __init__(
        self,
        colors: Mapping[int, Color],
        edges: Iterable[Edge],
        *,
        drop_isolated: bool = False,
    ) -> None:
        colors = {int(v): Color(c) for v, c in colors.items()}
        normalized: List[Edge] = []
        given: List[Edge] = []
        seen = set()
        for u, v in edges:
            if u not in colors or v not in colors:
                raise GraphValidationError(f"Edge ({u}, {v}) uses an unknown vertex")
            if u == v:
                raise GraphValidationError(f"Self-loop at vertex {u}")
            if colors[u] is colors[v]:
                raise GraphValidationError(
                    f"non-bipartite edge ({u}, {v}): both endpoints are {colors[u].value}"
                )
            edge = (u, v) if colors[u] is Color.WHITE else (v, u)
            if edge in seen:
                raise GraphValidationError(f"Duplicate edge ({u}, {v})")
            seen.add(edge)
            normalized.append(edge)
            given.append((u, v))

        used = {x for e in normalized for x in e}
        isolated = [v for v in colors if v not in used]
        if isolated:
            if not drop_isolated:
                raise GraphValidationError(f"Isolated vertices: {sorted(isolated)}")
            colors = {v: c for v, c in colors.items() if v in used}

        self._colors: Dict[int, Color] = colors
        self._edges: Tuple[Edge, ...] = tuple(normalized)
        self._given: Tuple[Edge, ...] = tuple(given)

        incident: Dict[int, List[int]] = {v: [] for v in colors}
        for eid, (w, b) in enumerate(self._edges):
            incident[w].append(eid)
            incident[b].append(eid)
        self._incident = {v: tuple(eids) for v, eids in incident.items()}

    # -----------------------------
    # Basic accessors
    # -----------------------------
    @property
    def n(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def edges_as_given(self) -> Tuple[Edge, ...]:
        return self._given

    @property
    def colors(self) -> Dict[int, Color]:
        return dict(self._colors)

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        """Vertex ids in canonical order: whites then blacks, each by id."""
        return tuple(sorted(self._colors, key=lambda v: (self._colors[v].rank, v)))

    def whites(self) -> List[int]:
        return sorted(v for v, c in self._colors.items() if c is Color.WHITE)

    def blacks(self) -> List[int]:
        return sorted(v for v, c in self._colors.items() if c is Color.BLACK)

    def color(self, v: int) -> Color:
        return self._colors[v]

    def incident(self, v: int) -> Tuple[int, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def other_end(self, eid: int, v: int) -> int:
        w, b = self._edges[eid]
        return b if v == w else w

    def neighbors(self, v: int) -> List[int]:
        return [self.other_end(eid, v) for eid in self._incident[v]]

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) == 1

    def isolated_edges(self) -> List[int]:
        return [eid for eid, (w, b) in enumerate(self._edges) if self.degree(w) == 1 and self.degree(b) == 1]

    def edge_id(self, u: int, v: int) -> int:
        for eid in self._incident[u]:
            if self.other_end(eid, u) == v:
                return eid
        raise KeyError(f"No edge between {u} and {v}")

    # -----------------------------
    # Structure (networkx-backed)
    # -----------------------------
    @cached_property
    def as_nx(self) -> nx.Graph:
        graph = nx.Graph()
        for v in self.vertices:
            graph.add_node(v, color=self._colors[v].value)
        for eid, (w, b) in enumerate(self._edges):
            graph.add_edge(w, b, eid=eid)
        return graph

    @cached_property
    def is_forest(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_forest(self.as_nx)

    @cached_property
    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_connected(self.as_nx)

    def components(self) -> List["BipartiteGraph"]:
        """
        Connected components as graphs (edge ids renumbered inside each),
        ordered by their least vertex in canonical order.
        """
        order = {v: i for i, v in enumerate(self.vertices)}
        comps = sorted(nx.connected_components(self.as_nx), key=lambda c: min(order[v] for v in c))
        return [self.induced(c) for c in comps]

    def component_edge_ids(self) -> List[List[int]]:
        order = {v: i for i, v in enumerate(self.vertices)}
        comps = sorted(nx.connected_components(self.as_nx), key=lambda c: min(order[v] for v in c))
        return [[eid for eid, (w, _) in enumerate(self._edges) if w in c] for c in comps]

    def induced(self, vertex_set: Iterable[int]) -> "BipartiteGraph":
        keep = set(vertex_set)
        return BipartiteGraph(
            {v: c for v, c in self._colors.items() if v in keep},
            [(w, b) for (w, b) in self._edges if w in keep and b in keep],
            drop_isolated=True,
        )

    def distance_sum(self, root: int) -> int:
        """Sum of distances from every vertex of root's component to root."""
        return sum(nx.single_source_shortest_path_length(self.as_nx, root).values())

    def is_star(self) -> Optional[int]:
        """Center of a connected star (n >= 1), or None. A single edge reports its white end."""
        if self.n == 0 or not self.is_connected:
            return None
        if self.n == 1:
            return self._edges[0][0]
        for v in self.vertices:
            if self.degree(v) == self.n:
                return v
        return None

    # -----------------------------
    # Rewrites (all return new graphs)
    # -----------------------------
    def delete_edges(self, eids: Iterable[int]) -> "BipartiteGraph":
        drop = set(eids)
        return BipartiteGraph(
            self._colors,
            [e for i, e in enumerate(self._edges) if i not in drop],
            drop_isolated=True,
        )

    def delete_edge(self, eid: int) -> "BipartiteGraph":
        return self.delete_edges([eid])

    def add_edge(self, u: int, v: int) -> "BipartiteGraph":
        return BipartiteGraph(self._colors, list(self._edges) + [(u, v)])

    def fresh_id(self) -> int:
        return max(self._colors, default=0) + 1

    def add_pendant(self, v: int) -> Tuple["BipartiteGraph", int]:
        """Attach a new leaf to v; the new edge gets id n. Returns (graph, leaf id)."""
        leaf = self.fresh_id()
        colors = dict(self._colors)
        colors[leaf] = self._colors[v].opposite()
        return BipartiteGraph(colors, list(self._edges) + [(v, leaf)]), leaf

    def flip_colors(self) -> "BipartiteGraph":
        return BipartiteGraph({v: c.opposite() for v, c in self._colors.items()}, self._edges)

    def relabel(self, mapping: Mapping[int, int]) -> "BipartiteGraph":
        return BipartiteGraph(
            {mapping[v]: c for v, c in self._colors.items()},
            [(mapping[w], mapping[b]) for w, b in self._edges],
        )

    def disjoint_union(self, other: "BipartiteGraph") -> "BipartiteGraph":
        """G1 + G2; other's vertices are shifted past ours, its edge ids follow ours."""
        offset = self.fresh_id()
        shifted = other.relabel({v: v + offset for v in other._colors})
        colors = dict(self._colors)
        colors.update(shifted._colors)
        return BipartiteGraph(colors, list(self._edges) + list(shifted._edges))

    # -----------------------------
    # Dunder
    # -----------------------------
    def _key(self) -> Tuple:
        return (tuple(sorted((v, c.rank) for v, c in self._colors.items())), self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<BipartiteGraph(n={self.n}, vertices={len(self._colors)}, edges={list(self._edges)})>"


# ---------------------------------------------------------
# Validation and JSON
# ---------------------------------------------------------
def validate_graph(raw: GraphPayload | Mapping) -> BipartiteGraph:
    """
    Build a validated graph from a payload (or a plain dict with the same shape).
    Forest/connectivity metadata is available as `is_forest` / `is_connected`.
    """
    if not isinstance(raw, GraphPayload):
        try:
            raw = GraphPayload.model_validate(raw)
        except ValidationError as e:
            raise GraphValidationError(f"Malformed graph description: {e}") from e

    colors: Dict[int, Color] = {}
    for vertex in raw.vertices:
        if vertex.id in colors:
            raise GraphValidationError(f"Duplicate vertex id {vertex.id}")
        colors[vertex.id] = Color(vertex.color)

    edges: List[Edge] = []
    for pair in raw.edges:
        if len(pair) != 2:
            raise GraphValidationError(f"Edge {pair} must have exactly two endpoints")
        edges.append((pair[0], pair[1]))

    return BipartiteGraph(colors, edges)


def parse_graph_json(text: str) -> BipartiteGraph:
    try:
        payload = GraphPayload.model_validate_json(text)
    except ValidationError as e:
        raise GraphValidationError(f"Malformed graph JSON: {e}") from e
    return validate_graph(payload)


def graph_payload(g: BipartiteGraph) -> GraphPayload:
    return GraphPayload(
        vertices=[VertexPayload(id=v, color=c.value) for v, c in g.colors.items()],
        edges=[[u, v] for u, v in g.edges_as_given],
    )


def dump_graph_json(g: BipartiteGraph) -> str:
    return graph_payload(g).model_dump_json()


# ---------------------------------------------------------
# Canonical forms and equivalence
# ---------------------------------------------------------
def _rooted_codes(tree: nx.Graph, colors: Mapping[int, Color], root: int) -> Dict[int, str]:
    """Bottom-up tree codes of every vertex when the tree hangs from root."""
    parent = {root: None}
    order = [root]
    for v in order:
        for w in tree.neighbors(v):
            if w not in parent:
                parent[w] = v
                order.append(w)

    codes: Dict[int, str] = {}
    for v in reversed(order):
        children = sorted(codes[w] for w in tree.neighbors(v) if parent.get(w) == v)
        codes[v] = ("w" if colors[v] is Color.WHITE else "b") + "(" + "".join(children) + ")"
    return codes


def _tree_code(tree: nx.Graph, colors: Mapping[int, Color]) -> Tuple[str, int, Dict[int, str]]:
    best = None
    for center in sorted(nx.center(tree)):
        codes = _rooted_codes(tree, colors, center)
        if best is None or codes[center] < best[0]:
            best = (codes[center], center, codes)
    return best


def canonical_key(g: BipartiteGraph) -> str:
    """String identifying the colored forest up to isomorphism."""
    if not g.is_forest:
        raise NotAForestError("canonical keys are only defined for forests")
    graph = g.as_nx
    return "|".join(sorted(_tree_code(graph.subgraph(c), g.colors)[0] for c in nx.connected_components(graph)))


def canonical_form(g: BipartiteGraph) -> BipartiteGraph:
    """
    Relabel a colored forest canonically: components in code order, vertices
    numbered 1.. in preorder from each tree's center, children in code order.
    Isomorphic colored forests give equal (==) canonical forms.
    """
    if not g.is_forest:
        raise NotAForestError("canonical forms are only defined for forests")
    colors = g.colors
    graph = g.as_nx

    trees = []
    for comp in nx.connected_components(graph):
        tree = graph.subgraph(comp)
        code, root, codes = _tree_code(tree, colors)
        trees.append((code, root, codes, tree))
    trees.sort(key=lambda t: t[0])

    new_id: Dict[int, int] = {}
    new_colors: Dict[int, Color] = {}
    new_edges: List[Edge] = []
    for _, root, codes, tree in trees:
        stack = [(root, None)]
        while stack:
            v, parent = stack.pop()
            new_id[v] = len(new_id) + 1
            new_colors[new_id[v]] = colors[v]
            if parent is not None:
                new_edges.append((new_id[parent], new_id[v]))
            children = sorted((w for w in tree.neighbors(v) if w != parent), key=lambda w: codes[w])
            # reversed so the smallest child is visited first
            stack.extend((w, v) for w in reversed(children))
    return BipartiteGraph(new_colors, new_edges)


def _color_match(a: Mapping, b: Mapping) -> bool:
    return a["color"] == b["color"]


def are_equivalent(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Colored-graph isomorphism (VF2 search); works for any bipartite graphs."""
    if g.n != h.n or len(g.colors) != len(h.colors):
        return False
    if g.is_forest and h.is_forest:
        return canonical_key(g) == canonical_key(h)
    return nx.is_isomorphic(g.as_nx, h.as_nx, node_match=_color_match)

