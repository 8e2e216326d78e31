# services/group_algebra.py
from __future__ import annotations

from itertools import permutations, product
from math import factorial, prod
from typing import Dict, Iterator, List, Mapping, Sequence

from core.config import settings
from core.errors import CapExceededError, PreconditionError
from services.characters import Perm
from services.diagrams import Diagram


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(sigma: Perm, tau: Perm) -> Perm:
    """(sigma o tau)(i) = sigma[tau[i]]."""
    return tuple(sigma[i] for i in tau)


def inverse(sigma: Perm) -> Perm:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return tuple(inv)


def sign(sigma: Perm) -> int:
    seen = [False] * len(sigma)
    parity = 0
    for start in range(len(sigma)):
        if seen[start]:
            continue
        i, length = start, 0
        while not seen[i]:
            seen[i] = True
            i = sigma[i]
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1


def adjacent_transposition(n: int, i: int) -> Perm:
    """s_i swaps i and i + 1 (0-based)."""
    perm = list(range(n))
    perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


def all_permutations(n: int) -> List[Perm]:
    """Lexicographic; position in this list is the coordinate of sigma."""
    return list(permutations(range(n)))


def block_stabilizer(blocks: Sequence[Sequence[int]], n: int) -> Iterator[Perm]:
    """Permutations of {0..n-1} mapping every block to itself."""
    per_block = [list(permutations(block)) for block in blocks]
    for images in product(*per_block):
        perm = list(range(n))
        for block, image in zip(blocks, images):
            for src, dst in zip(block, image):
                perm[src] = dst
        yield tuple(perm)


class GroupAlgebraElement:
    """Sparse integer combination of permutations of {0..n-1}."""

    def __init__(self, n: int, terms: Mapping[Perm, int] | None = None) -> None:
        self.n = n
        self.terms: Dict[Perm, int] = {}
        for perm, coeff in (terms or {}).items():
            if len(perm) != n:
                raise PreconditionError(f"permutation {perm} is not on {n} points")
            if coeff:
                self.terms[tuple(perm)] = self.terms.get(tuple(perm), 0) + coeff
        self.terms = {p: c for p, c in self.terms.items() if c}

    @classmethod
    def group_sum(cls, n: int, perms: Iterator[Perm], signed: bool = False) -> "GroupAlgebraElement":
        return cls(n, {p: (sign(p) if signed else 1) for p in perms})

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        merged = dict(self.terms)
        for p, c in other.terms.items():
            merged[p] = merged.get(p, 0) + c
        return GroupAlgebraElement(self.n, merged)

    def __mul__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        out: Dict[Perm, int] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                pq = compose(p, q)
                out[pq] = out.get(pq, 0) + a * b
        return GroupAlgebraElement(self.n, out)

    def left_multiply(self, sigma: Perm) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.n, {compose(sigma, p): c for p, c in self.terms.items()})

    def to_vector(self, index: Mapping[Perm, int]) -> List[int]:
        vec = [0] * len(index)
        for p, c in self.terms.items():
            vec[index[p]] = c
        return vec

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"<GroupAlgebraElement(n={self.n}, terms={len(self.terms)})>"


def stabilizer_orders(d: Diagram) -> tuple[int, int]:
    """(|C_D|, |R_D|)."""
    cols = prod(factorial(len(g)) for g in d.col_groups())
    rows = prod(factorial(len(g)) for g in d.row_groups())
    return cols, rows


def symmetrizer(d: Diagram) -> GroupAlgebraElement:
    """
    C(D) R(D) with C(D) the signed sum over column stabilizers and R(D) the
    sum over row stabilizers; box k of d is the point k.
    """
    c_order, r_order = stabilizer_orders(d)
    if c_order * r_order > settings.SYMMETRIZER_MAX_TERMS:
        raise CapExceededError("SYMMETRIZER_MAX_TERMS", settings.SYMMETRIZER_MAX_TERMS, c_order * r_order)
    n = d.n
    rows = list(block_stabilizer(d.row_groups(), n))
    out: Dict[Perm, int] = {}
    for c in block_stabilizer(d.col_groups(), n):
        sgn = sign(c)
        for r in rows:
            cr = compose(c, r)
            out[cr] = out.get(cr, 0) + sgn
    return GroupAlgebraElement(n, out)
