# services/symfunc.py
from __future__ import annotations

import logging
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Tuple, TypeVar

from sympy import Integer, Rational, binomial, factorial

from core.config import settings
from core.errors import InvariantViolation, NotAForestError, PreconditionError
from services.characters import Partition, as_partition, partition_sort_key, partitions
from services.graphs import BipartiteGraph, canonical_form
from services.rewrites import unfold_leaf_recurrence

log = logging.getLogger(__name__)

R = TypeVar("R")
SchurExpansion = Dict[Partition, int]
Content = Tuple[int, ...]


class HPoly:
    """
    Integer combination of products h_mu = h_{mu_1} h_{mu_2} ... of complete
    homogeneous symmetric functions. Zero coefficients are never stored.
    """

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None) -> None:
        self.terms: Dict[Partition, int] = {}
        for mu, coeff in (terms or {}).items():
            mu = tuple(sorted((int(p) for p in mu if p), reverse=True))
            if coeff:
                self.terms[mu] = self.terms.get(mu, 0) + int(coeff)
        self.terms = {mu: c for mu, c in self.terms.items() if c}

    @classmethod
    def h(cls, k: int) -> "HPoly":
        return cls({(k,): 1} if k > 0 else {(): 1})

    @classmethod
    def one(cls) -> "HPoly":
        return cls({(): 1})

    def degrees(self) -> set:
        return {sum(mu) for mu in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        if not self.is_homogeneous():
            raise PreconditionError(f"{self} is not homogeneous")
        return next(iter(self.degrees()), 0)

    def __add__(self, other: "HPoly") -> "HPoly":
        merged = dict(self.terms)
        for mu, c in other.terms.items():
            merged[mu] = merged.get(mu, 0) + c
        return HPoly(merged)

    def __neg__(self) -> "HPoly":
        return HPoly({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other: "HPoly") -> "HPoly":
        return hpoly_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def items(self) -> List[Tuple[Partition, int]]:
        return sorted(self.terms.items(), key=lambda kv: partition_sort_key(kv[0]))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*h{list(mu)}" for mu, c in self.items())


def hpoly_mul(a: HPoly, b: HPoly) -> HPoly:
    out: Dict[Partition, int] = {}
    for mu, x in a.terms.items():
        for nu, y in b.terms.items():
            key = tuple(sorted(mu + nu, reverse=True))
            out[key] = out.get(key, 0) + x * y
    return HPoly(out)


# ---------------------------------------------------------
# s_G
# ---------------------------------------------------------
def _union(parts: List[Tuple[int, HPoly]]) -> HPoly:
    result = HPoly.one()
    for _, value in parts:
        result = hpoly_mul(result, value)
    return result


@lru_cache(maxsize=settings.MEMO_SIZE)
def _s_forest_canonical(g: BipartiteGraph) -> HPoly:
    return unfold_leaf_recurrence(g, star=HPoly.h, union=_union)


def s_forest(g: BipartiteGraph) -> HPoly:
    """white star -> h_n, disjoint union -> product, leaf recurrence otherwise."""
    if not g.is_forest:
        raise NotAForestError("s_G is defined for forests")
    return _s_forest_canonical(canonical_form(g))


# ---------------------------------------------------------
# Kostka numbers and basis changes
# ---------------------------------------------------------
def _strip_removals(lam: Partition, k: int) -> Iterator[Partition]:
    """nu with lam / nu a horizontal strip of size k."""

    def walk(i: int, left: int, acc: List[int]) -> Iterator[Partition]:
        if i == len(lam):
            if left == 0:
                yield as_partition(acc)
            return
        floor = lam[i + 1] if i + 1 < len(lam) else 0
        for take in range(min(left, lam[i] - floor) + 1):
            yield from walk(i + 1, left - take, acc + [lam[i] - take])

    yield from walk(0, k, [])


@lru_cache(maxsize=None)
def _kostka(lam: Partition, mu: Tuple[int, ...]) -> int:
    if not mu:
        return 1 if not lam else 0
    return sum(_kostka(nu, mu[:-1]) for nu in _strip_removals(lam, mu[-1]))


def kostka(lam: Partition, mu: Iterable[int]) -> int:
    """
    Number of SSYT of shape lam and content mu. mu may be any composition;
    the count is symmetric in its entries.
    """
    lam = as_partition(lam)
    content = tuple(sorted((int(m) for m in mu if m), reverse=True))
    if any(m < 0 for m in content):
        raise PreconditionError(f"content {tuple(mu)} has a negative entry")
    if sum(lam) != sum(content):
        raise PreconditionError(f"|{lam}| != |{tuple(mu)}|")
    return _kostka(lam, content)


def h_to_schur(p: HPoly) -> SchurExpansion:
    """h_mu = sum_lam K_{lam, mu} s_lam, applied termwise."""
    n = p.degree()
    out: SchurExpansion = {}
    for lam in partitions(n):
        c = sum(a * kostka(lam, mu) for mu, a in p.terms.items())
        if c:
            out[lam] = c
    return out


def schur_to_h(c: Mapping[Partition, int]) -> HPoly:
    """
    Inverse of h_to_schur. Solved lambda by lambda in increasing lexicographic
    order, which refines dominance (K_{lam, mu} != 0 only if lam dominates mu).
    """
    sizes = {sum(lam) for lam in c}
    if len(sizes) > 1:
        raise PreconditionError("Schur expansion is not homogeneous")
    if not sizes:
        return HPoly()
    n = sizes.pop()
    solved: Dict[Partition, int] = {}
    for lam in reversed(partitions(n)):
        rest = sum(a * kostka(lam, mu) for mu, a in solved.items())
        a_lam = c.get(lam, 0) - rest
        if a_lam:
            solved[lam] = a_lam
    return HPoly(solved)


def schur_coeffs(g: BipartiteGraph) -> SchurExpansion:
    coeffs = h_to_schur(s_forest(g))
    negative = {lam: c for lam, c in coeffs.items() if c < 0}
    if negative:
        raise InvariantViolation(f"negative Schur coefficients {negative} for {g!r}")
    return coeffs


def compositions(n: int, parts: int) -> Iterator[Content]:
    """Weak compositions of n into exactly `parts` entries, lexicographically descending."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(n, -1, -1):
        for tail in compositions(n - first, parts - 1):
            yield (first,) + tail


def monomial_expansion(c: Mapping[Partition, int], N: int) -> Dict[Content, int]:
    """sum_lam c_lam s_lam(x_1..x_N) as {content alpha: coefficient}."""
    if N < 1:
        raise PreconditionError(f"N must be at least 1, got {N}")
    sizes = {sum(lam) for lam in c}
    if len(sizes) > 1:
        raise PreconditionError("Schur expansion is not homogeneous")
    n = sizes.pop() if sizes else 0
    out: Dict[Content, int] = {}
    for alpha in compositions(n, N):
        coeff = sum(c_lam * kostka(lam, alpha) for lam, c_lam in c.items() if len(lam) <= N)
        if coeff:
            out[alpha] = coeff
    return out


# ---------------------------------------------------------
# Ring morphisms out of Lambda
# ---------------------------------------------------------
def evaluate(p: HPoly, phi: Callable[[int], R], one: R) -> R:
    """The ring morphism determined by h_k -> phi(k), applied to p."""
    total = one - one
    for mu, a in p.terms.items():
        term = one
        for part in mu:
            term = term * phi(part)
        total = total + a * term
    return total


def exp_specialize(p: HPoly) -> Rational:
    """h_k -> 1/k!."""
    return evaluate(p, lambda k: Rational(1, factorial(k)), Integer(1))


def principal_specialize(p: HPoly, N: int) -> int:
    """h_k -> binomial(k + N - 1, k), i.e. evaluation at N ones."""
    if N < 1:
        raise PreconditionError(f"N must be at least 1, got {N}")
    return int(evaluate(p, lambda k: binomial(k + N - 1, k), Integer(1)))


def star_values_morphism(values: Mapping[int, R], one: R) -> Callable[[HPoly], R]:
    """phi(h_k) := values[k]; used to check universality of s_G."""
    return lambda p: evaluate(p, lambda k: values[k], one)


def leaf_extension(g: BipartiteGraph, values: Mapping[int, R], one: R) -> R:
    """
    The function with f(T_k) = values[k], f(G1 + G2) = f(G1) f(G2) and the
    leaf recurrence, evaluated directly on g (no symmetric functions).
    """

    def union(parts: List[Tuple[int, R]]) -> R:
        result = one
        for _, v in parts:
            result = result * v
        return result

    return unfold_leaf_recurrence(g, star=lambda k: values[k], union=union)

