# services/diagrams.py
from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from core.errors import GraphValidationError, PreconditionError
from services.graphs import BipartiteGraph, Color

Box = Tuple[int, int]  # (row, col), both 1-based


class Diagram:
    """
    A finite set of boxes. The box order is significant: box k is the
    image of edge k of the corresponding graph, and the symmetric group
    acts on boxes through these indices. Equality ignores the order.
    """

    def __init__(self, boxes: Iterable[Box]) -> None:
        ordered: List[Box] = []
        seen = set()
        for r, c in boxes:
            r, c = int(r), int(c)
            if r < 1 or c < 1:
                raise GraphValidationError(f"Box ({r}, {c}) must have positive coordinates")
            if (r, c) in seen:
                raise GraphValidationError(f"Duplicate box ({r}, {c})")
            seen.add((r, c))
            ordered.append((r, c))
        self.boxes: Tuple[Box, ...] = tuple(ordered)
        self.box_set = frozenset(ordered)

    @property
    def n(self) -> int:
        return len(self.boxes)

    def is_empty(self) -> bool:
        return not self.boxes

    def rows(self) -> List[int]:
        return sorted({r for r, _ in self.boxes})

    def cols(self) -> List[int]:
        return sorted({c for _, c in self.boxes})

    def row_groups(self) -> List[List[int]]:
        """Box indices grouped by row (rows in increasing order)."""
        return self._groups(0)

    def col_groups(self) -> List[List[int]]:
        return self._groups(1)

    def _groups(self, axis: int) -> List[List[int]]:
        groups: Dict[int, List[int]] = {}
        for idx, box in enumerate(self.boxes):
            groups.setdefault(box[axis], []).append(idx)
        return [groups[k] for k in sorted(groups)]

    def index(self, box: Box) -> int:
        return self.boxes.index(box)

    def remove(self, boxes: Iterable[Box]) -> "Diagram":
        drop = set(boxes)
        return Diagram(b for b in self.boxes if b not in drop)

    def transpose(self) -> "Diagram":
        return Diagram((c, r) for r, c in self.boxes)

    def relabel(self, row_map: Mapping[int, int], col_map: Mapping[int, int]) -> "Diagram":
        return Diagram((row_map[r], col_map[c]) for r, c in self.boxes)

    def direct_sum(self, other: "Diagram") -> "Diagram":
        """D ⊕ E: E shifted so that it shares no row or column with D."""
        shift = max([r for r, _ in self.boxes] + [c for _, c in self.boxes] + [0])
        return Diagram(list(self.boxes) + [(r + shift, c + shift) for r, c in other.boxes])

    def __contains__(self, box: object) -> bool:
        return box in self.box_set

    def __iter__(self) -> Iterator[Box]:
        return iter(self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.box_set == other.box_set

    def __hash__(self) -> int:
        return hash(self.box_set)

    def __repr__(self) -> str:
        return f"<Diagram({sorted(self.box_set)})>"


def young_diagram(shape: Sequence[int]) -> Diagram:
    return Diagram((i + 1, j + 1) for i, length in enumerate(shape) for j in range(length))


# ---------------------------------------------------------
# ASCII form: one line per row, '#' box, '.' absent
# ---------------------------------------------------------
def parse_diagram_ascii(text: str) -> Diagram:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    boxes = []
    for i, line in enumerate(lines, start=1):
        for j, ch in enumerate(line, start=1):
            if ch == "#":
                boxes.append((i, j))
            elif ch != ".":
                raise GraphValidationError(f"Unexpected character {ch!r} at row {i}, column {j}")
    return Diagram(boxes)


def format_diagram_ascii(d: Diagram) -> str:
    if d.is_empty():
        return ""
    height = max(r for r, _ in d.boxes)
    width = max(c for _, c in d.boxes)
    lines = [
        "".join("#" if (i, j) in d else "." for j in range(1, width + 1))
        for i in range(1, height + 1)
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------
# Graph <-> diagram
# ---------------------------------------------------------
def graph_to_diagram(g: BipartiteGraph) -> Diagram:
    """
    White vertices (by id) index rows, black vertices (by id) index columns;
    box k is edge k.
    """
    row_of = {v: i for i, v in enumerate(g.whites(), start=1)}
    col_of = {v: j for j, v in enumerate(g.blacks(), start=1)}
    return Diagram((row_of[w], col_of[b]) for w, b in g.edges)


def diagram_to_graph(d: Diagram) -> BipartiteGraph:
    """
    Row i becomes white vertex i, column j becomes black vertex
    (max row + j); edge k is box k.
    """
    if d.is_empty():
        raise PreconditionError("empty diagram has no graph")
    offset = max(d.rows())
    colors = {r: Color.WHITE for r in d.rows()}
    colors.update({offset + c: Color.BLACK for c in d.cols()})
    return BipartiteGraph(colors, [(r, offset + c) for r, c in d.boxes])


def split_diagram(d: Diagram, b1: Box, b2: Box) -> Tuple[Diagram, Diagram]:
    """
    Split D along boxes b1 = (i1, j1), b2 = (i2, j2) with (i1, j2), (i2, j1)
    absent. D^A: row i1 keeps the columns occupied in both rows i1 and i2,
    row i2 gets the columns occupied in either. D^B: the same on columns
    j1 and j2.
    """
    (i1, j1), (i2, j2) = b1, b2
    if b1 not in d or b2 not in d:
        raise PreconditionError(f"split boxes {b1}, {b2} must both lie in the diagram")
    if i1 == i2 or j1 == j2:
        raise PreconditionError(f"split boxes {b1}, {b2} share a row or a column")
    if (i1, j2) in d or (i2, j1) in d:
        raise PreconditionError(f"split needs ({i1}, {j2}) and ({i2}, {j1}) absent")

    row1 = {c for r, c in d.boxes if r == i1}
    row2 = {c for r, c in d.boxes if r == i2}
    d_a = [b for b in d.boxes if b[0] not in (i1, i2)]
    d_a += [(i1, c) for c in sorted(row1 & row2)]
    d_a += [(i2, c) for c in sorted(row1 | row2)]

    col1 = {r for r, c in d.boxes if c == j1}
    col2 = {r for r, c in d.boxes if c == j2}
    d_b = [b for b in d.boxes if b[1] not in (j1, j2)]
    d_b += [(r, j1) for r in sorted(col1 & col2)]
    d_b += [(r, j2) for r in sorted(col1 | col2)]

    return Diagram(d_a), Diagram(d_b)


def split_candidates(d: Diagram) -> List[Tuple[Box, Box]]:
    """All ordered box pairs along which D can be split."""
    pairs = []
    for b1 in d.boxes:
        for b2 in d.boxes:
            (i1, j1), (i2, j2) = b1, b2
            if i1 != i2 and j1 != j2 and (i1, j2) not in d and (i2, j1) not in d:
                pairs.append((b1, b2))
    return pairs
