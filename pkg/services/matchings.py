# services/matchings.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Set, Tuple

import networkx as nx
import numpy as np

from core.errors import InvariantViolation, NotAForestError, PreconditionError
from services.diagrams import Box, Diagram, diagram_to_graph
from services.graphs import BipartiteGraph, Color

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Matching:
    edges: FrozenSet[int]
    is_matching: bool
    is_almost_perfect: bool
    is_special: bool


@dataclass(frozen=True)
class Transversal:
    # in standard form, boxes[k] == (k + 1, k + 1)
    boxes: Tuple[Box, ...]

    def __post_init__(self) -> None:
        rows = [r for r, _ in self.boxes]
        cols = [c for _, c in self.boxes]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise PreconditionError(f"{list(self.boxes)} is not a transversal: a row or column repeats")

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class StandardFormDiagram:
    diagram: Diagram
    transversal: Transversal
    # new label -> original label
    row_perm: Dict[int, int] = field(hash=False)
    col_perm: Dict[int, int] = field(hash=False)

    @property
    def u(self) -> int:
        return len(self.transversal)

    def to_original(self, box: Box) -> Box:
        return self.row_perm[box[0]], self.col_perm[box[1]]


ApmChoice = Callable[[BipartiteGraph], Matching]


# ---------------------------------------------------------
# Definitional checks
# ---------------------------------------------------------
def _require_matching(g: BipartiteGraph, m: Iterable[int]) -> FrozenSet[int]:
    m = frozenset(m)
    covered: Set[int] = set()
    for eid in m:
        if not 0 <= eid < g.n:
            raise PreconditionError(f"edge id {eid} out of range for a graph with {g.n} edges")
        w, b = g.edges[eid]
        if w in covered or b in covered:
            raise PreconditionError(f"{sorted(m)} is not a matching: vertex shared at edge {eid}")
        covered.update((w, b))
    return m


def is_matching(g: BipartiteGraph, m: Iterable[int]) -> bool:
    try:
        _require_matching(g, m)
    except PreconditionError:
        return False
    return True


def is_almost_perfect(g: BipartiteGraph, m: Iterable[int]) -> bool:
    """Every isolated edge is in m and every non-leaf vertex is covered by m."""
    m = _require_matching(g, m)
    if any(eid not in m for eid in g.isolated_edges()):
        return False
    covered = {x for eid in m for x in g.edges[eid]}
    return all(v in covered for v in g.vertices if g.degree(v) > 1)


def is_special(g: BipartiteGraph, m: Iterable[int]) -> bool:
    """
    No cycle of g has half of its edges in m. Orienting non-matching edges
    white -> black and matching edges black -> white turns m-alternating
    cycles into directed cycles.
    """
    m = _require_matching(g, m)
    if g.is_forest:
        return True
    digraph = nx.DiGraph()
    digraph.add_nodes_from(g.vertices)
    for eid, (w, b) in enumerate(g.edges):
        if eid in m:
            digraph.add_edge(b, w)
        else:
            digraph.add_edge(w, b)
    return nx.is_directed_acyclic_graph(digraph)


def classify(g: BipartiteGraph, m: Iterable[int]) -> Matching:
    m = _require_matching(g, m)
    return Matching(
        edges=m,
        is_matching=True,
        is_almost_perfect=is_almost_perfect(g, m),
        is_special=is_special(g, m),
    )


# ---------------------------------------------------------
# Almost perfect matchings
# ---------------------------------------------------------
def _component_roots(g: BipartiteGraph) -> List[Tuple[int, Set[int]]]:
    roots = []
    for comp in nx.connected_components(g.as_nx):
        whites = [v for v in comp if g.color(v) is Color.WHITE]
        roots.append((min(whites), set(comp)))
    roots.sort(key=lambda t: t[0])
    return roots


def _reachable(g: BipartiteGraph, start: int, alive: Set[int]) -> Set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w in alive and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _apm_rooted(g: BipartiteGraph, alive: Set[int], root: int, chosen: List[int]) -> None:
    at_root = [eid for eid in g.incident(root) if g.other_end(eid, root) in alive]
    if not at_root:
        return
    e = min(at_root)
    chosen.append(e)
    removed = g.edges[e]
    rest = alive - set(removed)
    # each remaining subtree hangs off exactly one endpoint of e; root it there
    for x in removed:
        for y in g.neighbors(x):
            if y in rest:
                subtree = _reachable(g, y, rest)
                _apm_rooted(g, subtree, y, chosen)
                rest -= subtree


def find_apm(g: BipartiteGraph) -> Matching:
    """
    Canonical almost perfect matching of a forest: root each tree at its
    least white vertex, take the least edge id at the root, delete both
    endpoints, and recurse on the pieces rooted next to the deleted edge.
    """
    if not g.is_forest:
        raise NotAForestError("almost perfect matchings are constructed for forests only")
    chosen: List[int] = []
    for root, comp in _component_roots(g):
        _apm_rooted(g, comp, root, chosen)
    result = classify(g, chosen)
    if not result.is_almost_perfect:
        raise InvariantViolation(f"constructed matching {sorted(chosen)} is not almost perfect")
    return result


def all_matchings(g: BipartiteGraph) -> List[FrozenSet[int]]:
    """Every matching (including the empty one), ordered by size then edge ids."""
    found: List[FrozenSet[int]] = []

    def extend(start: int, current: List[int], used: Set[int]) -> None:
        found.append(frozenset(current))
        for eid in range(start, g.n):
            w, b = g.edges[eid]
            if w in used or b in used:
                continue
            current.append(eid)
            used.update((w, b))
            extend(eid + 1, current, used)
            current.pop()
            used.difference_update((w, b))

    extend(0, [], set())
    return sorted(found, key=lambda m: (len(m), sorted(m)))


def all_apms(g: BipartiteGraph) -> List[Matching]:
    return [classify(g, m) for m in all_matchings(g) if is_almost_perfect(g, m)]


# ---------------------------------------------------------
# Transversals and standard form
# ---------------------------------------------------------
def transversal_of(d: Diagram, eids: Iterable[int]) -> Transversal:
    """Boxes of d indexed by the given edge ids, in id order."""
    return Transversal(tuple(d.boxes[e] for e in sorted(eids)))


def apm_transversal(d: Diagram, choice: ApmChoice = find_apm) -> Transversal:
    """Transversal of a forest diagram given by an APM of its graph."""
    if d.is_empty():
        return Transversal(())
    return transversal_of(d, choice(diagram_to_graph(d)).edges)


def standard_form(d: Diagram, U: Transversal) -> StandardFormDiagram:
    """
    Reorder rows and columns so that U sits at (1,1)..(u,u) with no box
    (i, j), i < j <= u. Rows/columns outside U keep their relative order
    after position u.
    """
    if any(box not in d for box in U.boxes):
        raise PreconditionError("transversal boxes must lie in the diagram")
    u = len(U)
    row_index = {r: k for k, (r, _) in enumerate(U.boxes)}
    col_index = {c: k for k, (_, c) in enumerate(U.boxes)}

    # H: i -> j when (row of U_i, column of U_j) is a non-U box
    H = nx.DiGraph()
    H.add_nodes_from(range(u))
    for r, c in d.boxes:
        if r in row_index and c in col_index and row_index[r] != col_index[c]:
            H.add_edge(row_index[r], col_index[c])
    if not nx.is_directed_acyclic_graph(H):
        raise PreconditionError("transversal is not special: its row/column digraph has a cycle")

    # i -> j must land below the diagonal, i.e. j placed before i
    order = list(nx.lexicographical_topological_sort(H.reverse(copy=True)))

    row_map: Dict[int, int] = {}
    col_map: Dict[int, int] = {}
    for pos, k in enumerate(order, start=1):
        r, c = U.boxes[k]
        row_map[r] = pos
        col_map[c] = pos
    for r in d.rows():
        if r not in row_map:
            row_map[r] = len(row_map) + 1
    for c in d.cols():
        if c not in col_map:
            col_map[c] = len(col_map) + 1

    diagram = d.relabel(row_map, col_map)
    return StandardFormDiagram(
        diagram=diagram,
        transversal=Transversal(tuple((k, k) for k in range(1, u + 1))),
        row_perm={new: old for old, new in row_map.items()},
        col_perm={new: old for old, new in col_map.items()},
    )


# ---------------------------------------------------------
# Alternative APM choices (counts must not depend on them)
# ---------------------------------------------------------
def last_apm(g: BipartiteGraph) -> Matching:
    apms = all_apms(g)
    if not apms:
        raise InvariantViolation(f"{g!r} has no almost perfect matching")
    return apms[-1]


def random_apm_choice(seed: int) -> ApmChoice:
    """
    A fixed but arbitrary choice: each labeled graph gets one APM drawn
    from a generator seeded by (seed, edge list).
    """

    def choose(g: BipartiteGraph) -> Matching:
        apms = all_apms(g)
        if not apms:
            raise InvariantViolation(f"{g!r} has no almost perfect matching")
        entropy = [seed & 0xFFFFFFFFFFFFFFFF] + [x for edge in g.edges for x in edge]
        rng = np.random.default_rng(entropy)
        return apms[int(rng.integers(len(apms)))]

    return choose


def pinned_apm_choice(top: BipartiteGraph, m: Matching, rest: ApmChoice = find_apm) -> ApmChoice:
    """Choose m on `top` itself and defer to `rest` on every smaller graph."""
    if not is_almost_perfect(top, m.edges):
        raise PreconditionError(f"{sorted(m.edges)} is not an almost perfect matching of {top!r}")

    def choose(g: BipartiteGraph) -> Matching:
        return m if g == top else rest(g)

    return choose
