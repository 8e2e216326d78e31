# services/volume.py
from __future__ import annotations

import logging
from functools import lru_cache
from math import comb
from typing import Dict, List, Sequence, Tuple

from core.config import settings
from core.errors import NotAForestError, PreconditionError
from services.graphs import BipartiteGraph, canonical_form
from services.lattice_points import v_ehrhart
from services.matchings import ApmChoice, find_apm
from services.rewrites import unfold_leaf_recurrence

log = logging.getLogger(__name__)

Labeling = Tuple[int, ...]  # label of edge k at position k


def product_rule(parts: Sequence[Tuple[int, int]]) -> int:
    """
    V(G_1 + ... + G_k) from [(n_i, V(G_i))]: multinomial(n; n_1..n_k) * prod V(G_i).
    The empty union is 1.
    """
    total_edges = 0
    value = 1
    for n_i, v_i in parts:
        total_edges += n_i
        value *= comb(total_edges, n_i) * v_i
    return value


def _require_forest(g: BipartiteGraph) -> None:
    if not g.is_forest:
        raise NotAForestError("volume recursions are defined on forests; use v_ehrhart for other graphs")


# ---------------------------------------------------------
# APM recursion
# ---------------------------------------------------------
@lru_cache(maxsize=settings.MEMO_SIZE)
def _v_apm_canonical(g: BipartiteGraph) -> int:
    if g.n == 0:
        return 1
    components = g.components()
    if len(components) > 1:
        return product_rule([(c.n, v_apm(c)) for c in components])
    if g.is_star() is not None:
        # the polytope does not see colors, so black stars count too
        return 1
    return sum(v_apm(g.delete_edge(e)) for e in sorted(find_apm(g).edges))


def v_apm(g: BipartiteGraph) -> int:
    """V(G) = sum over the canonical APM of V(G minus e), with product and star rules."""
    _require_forest(g)
    return _v_apm_canonical(canonical_form(g))


# ---------------------------------------------------------
# Leaf recurrence
# ---------------------------------------------------------
@lru_cache(maxsize=settings.MEMO_SIZE)
def _v_leaf_canonical(g: BipartiteGraph) -> int:
    return unfold_leaf_recurrence(g, star=lambda n: 1, union=product_rule)


def v_leaf(g: BipartiteGraph) -> int:
    _require_forest(g)
    return _v_leaf_canonical(canonical_form(g))


# ---------------------------------------------------------
# Standard labelings
# ---------------------------------------------------------
def count_standard_labelings(g: BipartiteGraph, choice: ApmChoice = find_apm) -> int:
    """
    Labelings z: E -> [n] with z^{-1}(n) in choice(G), recursively on G minus
    that edge. Counted on the labeled graphs, so choice sees real edge ids.
    """
    _require_forest(g)
    memo: Dict[BipartiteGraph, int] = {}

    def count(h: BipartiteGraph) -> int:
        if h.n == 0:
            return 1
        if h not in memo:
            memo[h] = sum(count(h.delete_edge(e)) for e in choice(h).edges)
        return memo[h]

    return count(g)


def enumerate_standard_labelings(g: BipartiteGraph, choice: ApmChoice = find_apm) -> List[Labeling]:
    """The standard labelings themselves, sorted."""
    _require_forest(g)
    found: List[Labeling] = []

    def extend(h: BipartiteGraph, original_ids: List[int], labels: Dict[int, int]) -> None:
        if h.n == 0:
            found.append(tuple(labels[k] for k in range(g.n)))
            return
        for e in sorted(choice(h).edges):
            labels[original_ids[e]] = h.n
            rest = original_ids[:e] + original_ids[e + 1:]
            extend(h.delete_edge(e), rest, labels)
            del labels[original_ids[e]]

    extend(g, list(range(g.n)), {})
    return sorted(found)


VOLUME_METHODS = {
    "apm": v_apm,
    "leaf": v_leaf,
    "ehrhart": v_ehrhart,
    "labelings": count_standard_labelings,
}


def volume(g: BipartiteGraph, method: str = "apm") -> int:
    try:
        fn = VOLUME_METHODS[method]
    except KeyError as e:
        raise PreconditionError(f"unknown volume method {method!r}; choose from {sorted(VOLUME_METHODS)}") from e
    return fn(g)
