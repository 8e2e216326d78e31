# services/characters.py
from __future__ import annotations

from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, Sequence, Tuple

from core.errors import PreconditionError

Partition = Tuple[int, ...]
Perm = Tuple[int, ...]  # one-line form on {0..n-1}


# ---------------------------------------------------------
# Partitions
# ---------------------------------------------------------
def as_partition(parts: Sequence[int]) -> Partition:
    """Validate a partition; zero parts are dropped."""
    lam = tuple(int(p) for p in parts if p != 0)
    if any(p < 0 for p in lam):
        raise PreconditionError(f"partition {tuple(parts)} has a negative part")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise PreconditionError(f"partition {tuple(parts)} is not weakly decreasing")
    return lam


@lru_cache(maxsize=None)
def partitions(n: int) -> Tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order: (n), (n-1, 1), ..., (1^n)."""

    def generate(rest: int, largest: int) -> Iterator[Partition]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, largest), 0, -1):
            for tail in generate(rest - first, first):
                yield (first,) + tail

    return tuple(generate(n, n))


def partition_sort_key(lam: Partition) -> Tuple:
    """Size first, then reverse lexicographic."""
    return (sum(lam), tuple(-p for p in lam))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (partitions of the same size)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def restrict_partition(lam: Partition) -> List[Partition]:
    """Partitions obtained by removing one corner box (branching to n - 1)."""
    children = []
    for i in range(len(lam)):
        if lam[i] > (lam[i + 1] if i + 1 < len(lam) else 0):
            child = list(lam)
            child[i] -= 1
            children.append(as_partition(child))
    return children


# ---------------------------------------------------------
# Dimensions
# ---------------------------------------------------------
def hook_dim(lam: Partition) -> int:
    """f^lam by the hook length formula."""
    lam = as_partition(lam)
    conj = conjugate(lam)
    hooks = prod(
        (lam[i] - j) + (conj[j] - i) - 1
        for i in range(len(lam))
        for j in range(lam[i])
    )
    return factorial(sum(lam)) // hooks


def standard_young_tableaux(lam: Partition) -> List[List[List[int]]]:
    """
    Every SYT of shape lam (labels 1..n, rows as lists), built by placing
    the largest label in each corner in turn.
    """
    lam = as_partition(lam)
    if not lam:
        return [[]]
    n = sum(lam)
    result = []
    for i in range(len(lam)):
        if lam[i] > (lam[i + 1] if i + 1 < len(lam) else 0):
            child = list(lam)
            child[i] -= 1
            for smaller in standard_young_tableaux(as_partition(child)):
                rows = [row[:] for row in smaller]
                while len(rows) <= i:
                    rows.append([])
                rows[i].append(n)
                result.append(rows)
    return result


def syt_count(lam: Partition) -> int:
    return len(standard_young_tableaux(lam))


# ---------------------------------------------------------
# Conjugacy classes of the symmetric group
# ---------------------------------------------------------
def z_value(rho: Partition) -> int:
    """Centralizer order z_rho = prod_i i^{m_i} m_i!."""
    counts: Dict[int, int] = {}
    for part in rho:
        counts[part] = counts.get(part, 0) + 1
    return prod(i**m * factorial(m) for i, m in counts.items())


def class_size(rho: Partition) -> int:
    return factorial(sum(rho)) // z_value(rho)


def cycle_type(perm: Perm) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def cycle_type_representative(rho: Partition) -> Perm:
    """Permutation whose cycles are consecutive blocks of lengths rho."""
    perm: List[int] = []
    start = 0
    for length in rho:
        block = list(range(start, start + length))
        perm.extend(block[1:] + block[:1])
        start += length
    return tuple(perm)


# ---------------------------------------------------------
# Murnaghan-Nakayama
# ---------------------------------------------------------
def _beta_set(lam: Partition) -> Tuple[int, ...]:
    k = len(lam)
    return tuple(lam[i] + (k - 1 - i) for i in range(k))


def _from_beta_set(beta: Sequence[int]) -> Partition:
    ordered = sorted(beta, reverse=True)
    k = len(ordered)
    return as_partition([ordered[i] - (k - 1 - i) for i in range(k)])


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: Partition) -> int:
    if not rho:
        return 1 if not lam else 0
    r, rest = rho[0], rho[1:]
    beta = _beta_set(lam)
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in occupied:
            continue
        # removing a border strip of size r; its height is the number of beads jumped
        height = sum(1 for x in beta if b - r < x < b)
        moved = [x if x != b else b - r for x in beta]
        total += (-1) ** height * _mn(_from_beta_set(moved), rest)
    return total


def mn_char(lam: Partition, rho: Partition) -> int:
    """chi^lam evaluated on the class of cycle type rho."""
    lam, rho = as_partition(lam), as_partition(sorted(rho, reverse=True))
    if sum(lam) != sum(rho):
        raise PreconditionError(f"|{lam}| != |{rho}|")
    return _mn(lam, rho)
