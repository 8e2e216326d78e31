# services/specht.py
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.utilities.iterables import multiset_permutations

from core.config import settings
from core.errors import CapExceededError, InvariantViolation, PreconditionError
from services.characters import (
    Partition,
    class_size,
    cycle_type_representative,
    hook_dim,
    mn_char,
    partitions,
)
from services.diagrams import Diagram
from services.echelon import ModularEchelon, symmetric_lift
from services.group_algebra import (
    adjacent_transposition,
    all_permutations,
    compose,
    inverse,
    symmetrizer,
)
from services.symfunc import Content, SchurExpansion, compositions

log = logging.getLogger(__name__)

ClassFunction = Dict[Partition, int]


@dataclass
class TensorReport:
    N: int
    dimension: int
    character: Dict[Content, int]


@dataclass
class SpechtReport:
    dimension: int
    character: Optional[ClassFunction] = None
    decomposition: Optional[SchurExpansion] = None
    tensor: Optional[TensorReport] = None
    # ranks over the confirmation prime / QQ when they were computed
    confirmations: Dict[str, int] = field(default_factory=dict)


def _check_size(d: Diagram) -> None:
    if d.n > settings.SPECHT_MAX_N:
        raise CapExceededError("SPECHT_MAX_N", settings.SPECHT_MAX_N, d.n)


class IdealSpan:
    """
    The left ideal C[S_n] e, e = C(D) R(D), over GF(p): the closure of {e}
    under left multiplication by adjacent transpositions, in RREF.
    """

    def __init__(self, d: Diagram, p: int) -> None:
        self.n = d.n
        self.p = p
        self.perms = all_permutations(self.n)
        self.index = {perm: i for i, perm in enumerate(self.perms)}
        self.echelon = ModularEchelon(len(self.perms), p)

        e = np.array(symmetrizer(d).to_vector(self.index), dtype=np.int64) % p
        # (s x)[tau] = x[s^{-1} tau] and s^{-1} = s for transpositions
        gathers = [
            self._gather(adjacent_transposition(self.n, i)) for i in range(self.n - 1)
        ]
        frontier: List[np.ndarray] = []
        if self.echelon.insert(e):
            frontier.append(e)
        while frontier:
            v = frontier.pop()
            if not gathers:
                break
            images = np.stack([v[g] for g in gathers])
            for i in self.echelon.insert_batch(images):
                frontier.append(images[i])
        log.debug("ideal span n=%d p=%d rank=%d", self.n, p, self.rank)

    def _gather(self, sigma_inv: tuple) -> np.ndarray:
        """Index array g with (sigma x)[tau] = x[g[tau]]."""
        return np.array([self.index[compose(sigma_inv, tau)] for tau in self.perms], dtype=np.int64)

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def trace(self, g: tuple) -> int:
        """Trace of left multiplication by g on the ideal, lifted from GF(p)."""
        if not self.echelon.pivots:
            return 0
        gather = self._gather(inverse(g))
        pivots = np.array(self.echelon.pivots, dtype=np.int64)
        values = self.echelon.rows[np.arange(len(pivots)), gather[pivots]]
        return symmetric_lift(int(values.sum() % self.p), self.p)


@lru_cache(maxsize=128)
def ideal_span(d: Diagram, p: int) -> IdealSpan:
    _check_size(d)
    return IdealSpan(d, p)


def exact_rank(d: Diagram) -> int:
    """Rank over QQ of {sigma e : sigma in S_n}; only for small n."""
    if d.n > settings.EXACT_RANK_MAX_N:
        raise CapExceededError("EXACT_RANK_MAX_N", settings.EXACT_RANK_MAX_N, d.n)
    if d.n == 0:
        return 1
    perms = all_permutations(d.n)
    index = {perm: i for i, perm in enumerate(perms)}
    e = symmetrizer(d).to_vector(index)
    rows = []
    for sigma in perms:
        s_inv = inverse(sigma)
        rows.append([ZZ(e[index[compose(s_inv, tau)]]) for tau in perms])
    matrix = DomainMatrix(rows, (len(perms), len(perms)), ZZ).convert_to(QQ)
    return int(matrix.rank())


def specht_dim(d: Diagram, confirm: bool = False) -> int:
    """dim S^D over GF(PRIMES[0]); with confirm, also over PRIMES[1] (and QQ when small)."""
    _check_size(d)
    if d.n == 0:
        return 1
    rank = ideal_span(d, settings.PRIMES[0]).rank
    if confirm:
        _confirm(d, rank)
    return rank


def _confirm(d: Diagram, rank: int) -> Dict[str, int]:
    found = {"second_prime": ideal_span(d, settings.PRIMES[1]).rank}
    if d.n <= settings.EXACT_RANK_MAX_N:
        found["rational"] = exact_rank(d)
    mismatched = {k: v for k, v in found.items() if v != rank}
    if mismatched:
        raise InvariantViolation(f"Specht rank {rank} disagrees with {mismatched} for {d!r}")
    return found


def specht_character(d: Diagram) -> ClassFunction:
    """Character of S^D on one representative per cycle type."""
    _check_size(d)
    n = d.n
    if n == 0:
        return {(): 1}
    span = ideal_span(d, settings.PRIMES[0])
    return {rho: span.trace(cycle_type_representative(rho)) for rho in partitions(n)}


def decompose_character(chi: ClassFunction, n: int) -> SchurExpansion:
    """c_lam = (1/n!) sum_rho |class rho| chi(rho) chi^lam(rho)."""
    out: SchurExpansion = {}
    for lam in partitions(n):
        total = sum(class_size(rho) * chi[rho] * mn_char(lam, rho) for rho in partitions(n))
        c, remainder = divmod(total, factorial(n))
        if remainder or c < 0:
            raise InvariantViolation(f"multiplicity of {lam} is {total}/{factorial(n)}")
        if c:
            out[lam] = c
    return out


def specht_decompose(d: Diagram) -> SchurExpansion:
    return decompose_character(specht_character(d), d.n)


def specht_report(
    d: Diagram,
    character: bool = True,
    decompose: bool = True,
    confirm: bool = False,
    tensor_N: Optional[int] = None,
) -> SpechtReport:
    report = SpechtReport(dimension=specht_dim(d))
    if confirm and d.n > 0:
        report.confirmations = _confirm(d, report.dimension)
    if character or decompose:
        chi = specht_character(d)
        if character:
            report.character = chi
        if decompose:
            report.decomposition = decompose_character(chi, d.n)
            if sum(c * hook_dim(lam) for lam, c in report.decomposition.items()) != report.dimension:
                raise InvariantViolation(f"decomposition {report.decomposition} does not add up to dim {report.dimension}")
    if tensor_N is not None:
        report.tensor = schur_tensor_span(d, tensor_N)
    return report


# ---------------------------------------------------------
# Tensor space
# ---------------------------------------------------------
def _content_rank(word: tuple, terms: list, p: int) -> int:
    """Rank of {T e : T a word with this content} over GF(p)."""
    words = [tuple(w) for w in multiset_permutations(list(word))]
    index = {w: i for i, w in enumerate(words)}
    vectors = np.zeros((len(words), len(words)), dtype=np.int64)
    for row, w in enumerate(words):
        for sigma, coeff in terms:
            # right action: (w . sigma)[i] = w[sigma[i]]
            vectors[row, index[tuple(w[s] for s in sigma)]] += coeff
    echelon = ModularEchelon(len(words), p)
    echelon.insert_batch(vectors % p)
    return echelon.rank


def schur_tensor_span(d: Diagram, N: int) -> TensorReport:
    """
    The Schur module V^{(x)n} C(D) R(D), V = C^N. The symmetrizer preserves
    content, so words are grouped by content and ranked per group.
    """
    if N < 1:
        raise PreconditionError(f"N must be at least 1, got {N}")
    n = d.n
    if N**n > settings.TENSOR_MAX_WORDS:
        raise CapExceededError("TENSOR_MAX_WORDS", settings.TENSOR_MAX_WORDS, N**n)
    if n == 0:
        return TensorReport(N=N, dimension=1, character={(0,) * N: 1})

    terms = list(symmetrizer(d).terms.items())
    by_sorted: Dict[Content, int] = {}
    character: Dict[Content, int] = {}
    for alpha in compositions(n, N):
        key = tuple(sorted(alpha, reverse=True))
        if key not in by_sorted:
            word = tuple(label for label, count in enumerate(key) for _ in range(count))
            by_sorted[key] = _content_rank(word, terms, settings.PRIMES[0])
        if by_sorted[key]:
            character[alpha] = by_sorted[key]
    return TensorReport(N=N, dimension=sum(character.values()), character=character)
