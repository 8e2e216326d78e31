# services/tableaux.py
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Set, Tuple

from core.errors import InvariantViolation, PreconditionError
from services.diagrams import Box, Diagram, diagram_to_graph
from services.matchings import (
    ApmChoice,
    StandardFormDiagram,
    Transversal,
    apm_transversal,
    find_apm,
    standard_form,
)
from services.symfunc import Content
from services.volume import enumerate_standard_labelings

log = logging.getLogger(__name__)

HorizontalStrip = FrozenSet[Box]


@dataclass(frozen=True)
class ForestTableau:
    # ((box, label), ...) in the box order of the diagram
    cells: Tuple[Tuple[Box, int], ...]

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(label for _, label in self.cells)

    def as_dict(self) -> Dict[Box, int]:
        return dict(self.cells)

    def content(self, N: int) -> Content:
        counts = Counter(self.labels)
        return tuple(counts.get(i, 0) for i in range(1, N + 1))


# ---------------------------------------------------------
# Strips
# ---------------------------------------------------------
def derive_u_prime(sfd: StandardFormDiagram) -> Transversal:
    """
    Follow x_0 = (u, u), y_i = least-column other box in the row of x_i,
    x_{i+1} = (c, c) for the column c of y_i while c <= u. Swapping the x's
    for the y's gives a transversal of D minus column u.
    """
    u = sfd.u
    if u == 0:
        raise PreconditionError("derive_u_prime needs a nonempty transversal")
    d = sfd.diagram
    xs: List[Box] = [(u, u)]
    ys: List[Box] = []
    while True:
        row = xs[-1][0]
        others = sorted((b for b in d.boxes if b[0] == row and b != xs[-1]), key=lambda b: b[1])
        if not others:
            break
        y = others[0]
        ys.append(y)
        if y[1] > u:
            break
        xs.append((y[1], y[1]))

    kept = [b for b in sfd.transversal.boxes if b not in xs]
    return Transversal(tuple(sorted(kept + ys)))


def drop_column(d: Diagram, col: int) -> Diagram:
    return d.remove(b for b in d.boxes if b[1] == col)


def drop_row_and_column(d: Diagram, index: int) -> Diagram:
    return d.remove(b for b in d.boxes if b[0] == index or b[1] == index)


def _check_strip(strip: HorizontalStrip) -> None:
    cols = [c for _, c in strip]
    if len(cols) != len(set(cols)):
        raise InvariantViolation(f"strip {sorted(strip)} has two boxes in one column")


def horizontal_strips(sfd: StandardFormDiagram) -> Set[HorizontalStrip]:
    """
    Y(D) = { {(u,u)} + Y' : Y' in Y(D', U') } + Y(D'', U minus (u,u)), in the
    coordinates of sfd.diagram. Y(empty) = {empty}.
    """
    d = sfd.diagram
    if d.is_empty():
        return {frozenset()}
    u = sfd.u
    if u == 0:
        raise InvariantViolation(f"nonempty diagram {d!r} reached the strip recursion without a transversal")
    corner = (u, u)

    strips: Set[HorizontalStrip] = set()
    for tail in strips_with_transversal(drop_column(d, u), derive_u_prime(sfd)):
        strips.add(frozenset({corner}) | tail)
    rest = Transversal(tuple(b for b in sfd.transversal.boxes if b != corner))
    strips.update(strips_with_transversal(drop_row_and_column(d, u), rest))

    for strip in strips:
        _check_strip(strip)
    return strips


@lru_cache(maxsize=4096)
def strips_with_transversal(d: Diagram, U: Transversal) -> FrozenSet[HorizontalStrip]:
    """Y(D) for a diagram in any coordinates, threaded with the given transversal."""
    if d.is_empty():
        return frozenset({frozenset()})
    sfd = standard_form(d, U)
    return frozenset(
        frozenset(sfd.to_original(b) for b in strip) for strip in horizontal_strips(sfd)
    )


def strips_of(d: Diagram, choice: ApmChoice = find_apm) -> FrozenSet[HorizontalStrip]:
    """Y(D) with D's own APM transversal."""
    return strips_with_transversal(d, apm_transversal(d, choice))


# ---------------------------------------------------------
# Semistandard and standard tableaux
# ---------------------------------------------------------
def _sorted_strips(strips: FrozenSet[HorizontalStrip]) -> List[HorizontalStrip]:
    return sorted(strips, key=lambda s: sorted(s))


def ssyt_enumerate(d: Diagram, N: int, choice: ApmChoice = find_apm) -> List[ForestTableau]:
    """
    Chains empty = D^(0) < ... < D^(N) = d whose steps are strips; the boxes
    of D^(i) minus D^(i-1) get label i. Sorted by label sequence.
    """
    if N < 0:
        raise PreconditionError(f"N must be nonnegative, got {N}")
    found: List[ForestTableau] = []

    def descend(current: Diagram, level: int, labels: Dict[Box, int]) -> None:
        if level == 0:
            if current.is_empty():
                found.append(ForestTableau(tuple((b, labels[b]) for b in d.boxes)))
            return
        for strip in _sorted_strips(strips_of(current, choice)):
            for b in strip:
                labels[b] = level
            descend(current.remove(strip), level - 1, labels)
            for b in strip:
                del labels[b]

    descend(d, N, {})
    return sorted(found, key=lambda t: t.labels)


def ssyt_count(d: Diagram, N: int, choice: ApmChoice = find_apm) -> int:
    """|SS(D, N)| without listing the tableaux."""
    if N < 0:
        raise PreconditionError(f"N must be nonnegative, got {N}")
    memo: Dict[Tuple[Diagram, int], int] = {}

    def count(current: Diagram, level: int) -> int:
        if level == 0:
            return 1 if current.is_empty() else 0
        if current.is_empty():
            return 1
        key = (current, level)
        if key not in memo:
            memo[key] = sum(count(current.remove(s), level - 1) for s in strips_of(current, choice))
        return memo[key]

    return count(d, N)


def ssyt_generating_function(d: Diagram, N: int, choice: ApmChoice = find_apm) -> Dict[Content, int]:
    """{content alpha: number of tableaux in SS(D, N) with that content}."""
    if N < 1:
        raise PreconditionError(f"N must be at least 1, got {N}")
    memo: Dict[Tuple[Diagram, int], Dict[Content, int]] = {}

    def gf(current: Diagram, level: int) -> Dict[Content, int]:
        if level == 0:
            return {(): 1} if current.is_empty() else {}
        key = (current, level)
        if key in memo:
            return memo[key]
        out: Dict[Content, int] = {}
        for strip in strips_of(current, choice):
            for alpha, count in gf(current.remove(strip), level - 1).items():
                beta = alpha + (len(strip),)
                out[beta] = out.get(beta, 0) + count
        memo[key] = out
        return out

    return gf(d, N)


def standard_tableaux(d: Diagram, choice: ApmChoice = find_apm) -> List[ForestTableau]:
    """Tableaux of SS(D, n) using each label 1..n exactly once."""
    n = d.n
    return [t for t in ssyt_enumerate(d, n, choice) if sorted(t.labels) == list(range(1, n + 1))]


def standard_tableaux_from_labelings(d: Diagram, choice: ApmChoice = find_apm) -> List[ForestTableau]:
    """The same set built from standard labelings of the graph of D."""
    if d.is_empty():
        return [ForestTableau(())]
    labelings = enumerate_standard_labelings(diagram_to_graph(d), choice)
    tableaux = [ForestTableau(tuple(zip(d.boxes, labels))) for labels in labelings]
    return sorted(tableaux, key=lambda t: t.labels)
