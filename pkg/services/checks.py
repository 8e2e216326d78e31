# services/checks.py
from __future__ import annotations

import logging
import zlib
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Any, Callable, Dict, Iterable, List, Literal

import numpy as np
import pandas as pd
from sympy import GF, Integer, Rational

from core.config import settings
from core.errors import PreconditionError
from models.schemas import CheckRecord, CheckReport, CheckSummary, FamilySummary
from services.characters import hook_dim, restrict_partition
from services.diagrams import (
    Diagram,
    diagram_to_graph,
    format_diagram_ascii,
    graph_to_diagram,
    split_candidates,
    split_diagram,
    young_diagram,
)
from services.generators import (
    all_diagrams,
    all_forests,
    random_forest,
    random_leaf_triple,
    star,
)
from services.graphs import BipartiteGraph, dump_graph_json
from services.lattice_points import fits_polynomial, m_count, v_ehrhart
from services.matchings import (
    all_apms,
    all_matchings,
    find_apm,
    is_special,
    pinned_apm_choice,
    random_apm_choice,
)
from services.specht import exact_rank, ideal_span, schur_tensor_span, specht_decompose, specht_dim
from services.symfunc import (
    evaluate,
    exp_specialize,
    leaf_extension,
    monomial_expansion,
    principal_specialize,
    s_forest,
    schur_coeffs,
)
from services.tableaux import ssyt_count, ssyt_generating_function, standard_tableaux, strips_of
from services.volume import count_standard_labelings, product_rule, v_apm, v_leaf

log = logging.getLogger(__name__)

Scope = Literal["small", "full"]
VolumeFn = Callable[[BipartiteGraph], int]


@dataclass(frozen=True)
class ScopeLimits:
    exhaustive_edges: int
    ehrhart_edges: int
    random_forests: int
    random_edges: int
    specht_edges: int
    specht_random: int
    triples: int
    triple_edges: int
    apm_instances: int
    apm_edges: int
    web_edges: int
    strip_edges: int
    choice_edges: int
    diagram_boxes: int
    tensor_edges: int


SCOPES: Dict[str, ScopeLimits] = {
    "small": ScopeLimits(
        exhaustive_edges=4,
        ehrhart_edges=4,
        random_forests=10,
        random_edges=6,
        specht_edges=4,
        specht_random=0,
        triples=15,
        triple_edges=5,
        apm_instances=15,
        apm_edges=5,
        web_edges=3,
        strip_edges=4,
        choice_edges=4,
        diagram_boxes=4,
        tensor_edges=3,
    ),
    "full": ScopeLimits(
        exhaustive_edges=6,
        ehrhart_edges=6,
        random_forests=50,
        random_edges=7,
        specht_edges=6,
        specht_random=50,
        triples=100,
        triple_edges=6,
        apm_instances=100,
        apm_edges=6,
        web_edges=6,
        strip_edges=6,
        choice_edges=5,
        diagram_boxes=5,
        tensor_edges=5,
    ),
}


@dataclass(frozen=True)
class SuiteContext:
    limits: ScopeLimits
    seed: int
    volume: VolumeFn

    def rng(self, family: str) -> np.random.Generator:
        # one independent stream per family, so scheduling order never matters
        return np.random.default_rng([self.seed & 0xFFFFFFFFFFFFFFFF, zlib.crc32(family.encode())])


# ---------------------------------------------------------
# Record helpers
# ---------------------------------------------------------
def _fmt(value: Any) -> str:
    if isinstance(value, dict):
        return repr(sorted(value.items()))
    return str(value)


def _equal(identity: str, instance: str, left: Any, right: Any) -> CheckRecord:
    return CheckRecord(identity=identity, instance=instance, left=_fmt(left), right=_fmt(right), passed=left == right)


def _at_least(identity: str, instance: str, left: int, right: int) -> CheckRecord:
    return CheckRecord(identity=identity, instance=instance, left=str(left), right=str(right), passed=left >= right)


def _g(g: BipartiteGraph, **extra: Any) -> str:
    text = dump_graph_json(g)
    if extra:
        text += " " + " ".join(f"{k}={v}" for k, v in sorted(extra.items()))
    return text


def _d(d: Diagram, **extra: Any) -> str:
    text = format_diagram_ascii(d).replace("\n", "/")
    if extra:
        text += " " + " ".join(f"{k}={v}" for k, v in sorted(extra.items()))
    return text


def _graph(d: Diagram) -> BipartiteGraph:
    return BipartiteGraph({}, []) if d.is_empty() else diagram_to_graph(d)


def _forests(ctx: SuiteContext, family: str, max_exhaustive: int, n_random: int) -> List[BipartiteGraph]:
    out = all_forests(max_exhaustive)
    rng = ctx.rng(family)
    for _ in range(n_random):
        out.append(random_forest(ctx.limits.random_edges, seed=int(rng.integers(2**63))))
    return out


# ---------------------------------------------------------
# Volume families
# ---------------------------------------------------------
def check_pinned_values(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for n in range(1, 11):
        g = star(n)
        records.append(_equal("pinned-values", _g(g, route="apm"), ctx.volume(g), 1))
        records.append(_equal("pinned-values", _g(g, route="leaf"), v_leaf(g), 1))
        records.append(_equal("pinned-values", _g(g, route="labelings"), count_standard_labelings(g), 1))
        if n <= settings.EHRHART_MAX_N:
            records.append(_equal("pinned-values", _g(g, route="ehrhart"), v_ehrhart(g), 1))

    c4 = diagram_to_graph(young_diagram([2, 2]))
    records.append(_equal("pinned-values", _g(c4, route="ehrhart"), v_ehrhart(c4), 4))
    records.append(_equal("pinned-values", _g(c4, route="specht"), specht_dim(young_diagram([2, 2])), 2))
    for n in range(1, 6):
        row = young_diagram([n])
        records.append(_equal("pinned-values", _d(row, route="specht"), specht_dim(row), 1))
    return records


def check_volume_agreement(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    records = []
    for g in _forests(ctx, "volume-agreement", lim.exhaustive_edges, lim.random_forests):
        v = ctx.volume(g)
        records.append(_equal("volume-agreement", _g(g, route="leaf"), v, v_leaf(g)))
        records.append(_equal("volume-agreement", _g(g, route="labelings"), v, count_standard_labelings(g)))
        if g.n <= lim.ehrhart_edges:
            records.append(_equal("volume-agreement", _g(g, route="ehrhart"), v, v_ehrhart(g)))
    return records


def check_leaf_recurrence(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    rng = ctx.rng("leaf-recurrence")
    records = []
    for _ in range(lim.triples):
        t = random_leaf_triple(rng, int(rng.integers(2, lim.triple_edges + 1)))
        records.append(
            _equal("leaf-recurrence", _g(t.g), ctx.volume(t.g), ctx.volume(t.g1) + ctx.volume(t.g2))
        )
        records.append(
            _equal("leaf-recurrence-sym", _g(t.g), s_forest(t.g), s_forest(t.g1) + s_forest(t.g2))
        )
    return records


def check_apm_recurrence(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    rng = ctx.rng("apm-recurrence")
    records = []
    for _ in range(lim.apm_instances):
        g = random_forest(int(rng.integers(1, lim.apm_edges + 1)), seed=int(rng.integers(2**63)))
        apms = all_apms(g)
        m = apms[int(rng.integers(len(apms)))]
        right = sum(ctx.volume(g.delete_edge(e)) for e in sorted(m.edges))
        records.append(_equal("apm-recurrence", _g(g, apm=sorted(m.edges)), ctx.volume(g), right))
    return records


def check_product_rule(ctx: SuiteContext) -> List[CheckRecord]:
    rng = ctx.rng("product-rule")
    records = []
    for _ in range(ctx.limits.random_forests):
        g1 = random_forest(int(rng.integers(1, 4)), seed=int(rng.integers(2**63)))
        g2 = random_forest(int(rng.integers(1, 4)), seed=int(rng.integers(2**63)))
        union = g1.disjoint_union(g2)
        expected = product_rule([(g1.n, ctx.volume(g1)), (g2.n, ctx.volume(g2))])
        records.append(_equal("product-rule", _g(union), ctx.volume(union), expected))
    return records


def check_color_invariance(ctx: SuiteContext) -> List[CheckRecord]:
    return [
        _equal("color-invariance", _g(g), v_apm(g), v_apm(g.flip_colors()))
        for g in all_forests(ctx.limits.exhaustive_edges)
    ]


def check_polynomiality(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for g in all_forests(min(ctx.limits.exhaustive_edges, 4)):
        values = [(N, m_count(g, N)) for N in range(1, g.n + 3)]
        records.append(_equal("polynomiality", _g(g), fits_polynomial(values, g.n), True))
    return records


def check_choice_independence(ctx: SuiteContext) -> List[CheckRecord]:
    """
    Every APM of the top graph, followed below it by the canonical choice
    and by a seeded random one, gives the same counts as find_apm alone.
    """
    rest = {"canonical": find_apm, "random": random_apm_choice(ctx.seed)}
    records = []
    for g in all_forests(ctx.limits.choice_edges):
        d = graph_to_diagram(g)
        top = diagram_to_graph(d)
        base_labelings = count_standard_labelings(g, find_apm)
        base_ssyt = {N: ssyt_count(d, N, find_apm) for N in (1, 2, 3)}
        for name, below in sorted(rest.items()):
            for i, m in enumerate(all_apms(g)):
                choice = pinned_apm_choice(g, m, below)
                records.append(
                    _equal("choice-independence", _g(g, apm=i, below=name, count="labelings"),
                           base_labelings, count_standard_labelings(g, choice))
                )
            for i, m in enumerate(all_apms(top)):
                choice = pinned_apm_choice(top, m, below)
                for N in (1, 2, 3):
                    records.append(
                        _equal("choice-independence", _g(g, apm=i, below=name, count="ssyt", N=N),
                               base_ssyt[N], ssyt_count(d, N, choice))
                    )
    return records


# ---------------------------------------------------------
# Symmetric function families
# ---------------------------------------------------------
def check_symfunc_dimension(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for g in all_forests(ctx.limits.exhaustive_edges):
        v = v_apm(g)
        s = s_forest(g)
        coeffs = schur_coeffs(g)
        records.append(_equal("exp-specialization", _g(g), exp_specialize(s) * factorial(g.n), v))
        records.append(_equal("schur-dimension", _g(g), sum(c * hook_dim(lam) for lam, c in coeffs.items()), v))
    return records


def check_universality(ctx: SuiteContext) -> List[CheckRecord]:
    rng = ctx.rng("universality")
    field = GF(101)
    rings = {
        "gf101": ({k: field(int(rng.integers(101))) for k in range(1, 6)}, field(1)),
        "rational": ({k: Rational(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) for k in range(1, 6)}, Integer(1)),
    }
    records = []
    for g in all_forests(min(ctx.limits.exhaustive_edges, 5)):
        for name, (values, one) in sorted(rings.items()):
            left = leaf_extension(g, values, one)
            right = evaluate(s_forest(g), lambda k: values[k], one)
            records.append(_equal("universality", _g(g, ring=name), left, right))
    return records


def check_principal_specialization(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for g in all_forests(ctx.limits.web_edges):
        s = s_forest(g)
        for N in (1, 2, 3):
            records.append(_equal("principal-specialization", _g(g, N=N), principal_specialize(s, N), m_count(g, N)))
    return records


# ---------------------------------------------------------
# Specht families
# ---------------------------------------------------------
def check_specht_volume(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    forests = all_forests(lim.specht_edges)
    rng = ctx.rng("specht-volume")
    forests += [random_forest(7, seed=int(rng.integers(2**63))) for _ in range(lim.specht_random)]
    records = []
    for g in forests:
        d = graph_to_diagram(g)
        records.append(_equal("specht-volume", _g(g), specht_dim(d), v_apm(g)))
    return records


def check_decomposition(ctx: SuiteContext) -> List[CheckRecord]:
    return [
        _equal("decomposition", _g(g), specht_decompose(graph_to_diagram(g)), schur_coeffs(g))
        for g in all_forests(ctx.limits.specht_edges)
    ]


def check_exact_split(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    rng = ctx.rng("exact-split")
    records = []
    for _ in range(lim.triples):
        t = random_leaf_triple(rng, int(rng.integers(2, min(lim.triple_edges, lim.specht_edges) + 1)))
        whole = specht_decompose(graph_to_diagram(t.g))
        parts = Counter(specht_decompose(graph_to_diagram(t.g1))) + Counter(specht_decompose(graph_to_diagram(t.g2)))
        records.append(_equal("exact-split", _g(t.g), whole, dict(parts)))
    return records


def check_corners(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    rng = ctx.rng("corners")
    records = []
    for _ in range(lim.apm_instances):
        g = random_forest(int(rng.integers(2, min(lim.apm_edges, lim.specht_edges) + 1)), seed=int(rng.integers(2**63)))
        restricted: Counter = Counter()
        for lam, c in specht_decompose(graph_to_diagram(g)).items():
            for mu in restrict_partition(lam):
                restricted[mu] += c
        apms = all_apms(g)
        m = apms[int(rng.integers(len(apms)))]
        branches: Counter = Counter()
        for e in sorted(m.edges):
            branches.update(specht_decompose(graph_to_diagram(g.delete_edge(e))))
        records.append(_equal("corners", _g(g, apm=sorted(m.edges)), dict(restricted), dict(branches)))
    return records


def check_transpose_duality(ctx: SuiteContext) -> List[CheckRecord]:
    return [
        _equal("transpose-duality", _d(d), specht_dim(d), specht_dim(d.transpose()))
        for d in all_diagrams(ctx.limits.diagram_boxes)
    ]


def check_restrict_bound(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for d in all_diagrams(ctx.limits.diagram_boxes):
        g = diagram_to_graph(d)
        dim = specht_dim(d)
        for m in all_matchings(g):
            if not m or not is_special(g, m):
                continue
            right = sum(specht_dim(d.remove([d.boxes[e]])) for e in m)
            records.append(_at_least("restrict-bound", _d(d, transversal=sorted(d.boxes[e] for e in m)), dim, right))
    return records


def check_james_peel(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for d in all_diagrams(ctx.limits.diagram_boxes):
        dim = specht_dim(d)
        for b1, b2 in split_candidates(d):
            if b1 > b2:
                continue
            d_a, d_b = split_diagram(d, b1, b2)
            records.append(_at_least("james-peel", _d(d, split=[b1, b2]), dim, specht_dim(d_a) + specht_dim(d_b)))
    return records


# ---------------------------------------------------------
# Tableaux families
# ---------------------------------------------------------
def check_ssyt_web(ctx: SuiteContext) -> List[CheckRecord]:
    lim = ctx.limits
    records = []
    for g in all_forests(lim.web_edges):
        d = graph_to_diagram(g)
        s = s_forest(g)
        coeffs = schur_coeffs(g)
        for N in (1, 2, 3):
            count = ssyt_count(d, N)
            records.append(_equal("ssyt-web", _g(g, N=N, vs="principal"), count, principal_specialize(s, N)))
            if g.n <= lim.tensor_edges:
                records.append(_equal("ssyt-web", _g(g, N=N, vs="tensor"), count, schur_tensor_span(d, N).dimension))
            records.append(
                _equal("ssyt-content", _g(g, N=N), ssyt_generating_function(d, N), monomial_expansion(coeffs, N))
            )
        records.append(_equal("standard-tableaux", _g(g), len(standard_tableaux(d)), specht_dim(d)))
    return records


def check_tensor_character(ctx: SuiteContext) -> List[CheckRecord]:
    """Content-graded dimensions of the Schur module against the Kostka expansion of s_G."""
    lim = ctx.limits
    forests = all_forests(lim.tensor_edges)
    rng = ctx.rng("tensor-character")
    for _ in range(lim.random_forests):
        forests.append(random_forest(int(rng.integers(1, lim.tensor_edges + 1)), seed=int(rng.integers(2**63))))
    records = []
    for g in forests:
        d = graph_to_diagram(g)
        coeffs = schur_coeffs(g)
        for N in (1, 2, 3):
            records.append(
                _equal("tensor-character", _g(g, N=N), schur_tensor_span(d, N).character, monomial_expansion(coeffs, N))
            )
    return records


def check_modular_rank(ctx: SuiteContext) -> List[CheckRecord]:
    """Specht ranks over both primes agree, and match the rational rank where it is computed."""
    lim = ctx.limits
    primary, second = settings.PRIMES[0], settings.PRIMES[1]
    shapes = [graph_to_diagram(g) for g in all_forests(lim.specht_edges)] + list(all_diagrams(lim.diagram_boxes))
    rng = ctx.rng("modular-rank")
    shapes += [graph_to_diagram(random_forest(7, seed=int(rng.integers(2**63)))) for _ in range(lim.specht_random)]
    records = []
    for d in shapes:
        rank = ideal_span(d, primary).rank
        records.append(_equal("modular-rank", _d(d, over="second-prime"), rank, ideal_span(d, second).rank))
        if d.n <= settings.EXACT_RANK_MAX_N:
            records.append(_equal("modular-rank", _d(d, over="rationals"), rank, exact_rank(d)))
    return records


def check_strip_identity(ctx: SuiteContext) -> List[CheckRecord]:
    records = []
    for g in all_forests(ctx.limits.strip_edges):
        d = graph_to_diagram(g)
        strips = strips_of(d)
        apm_boxes = {d.boxes[e] for e in find_apm(diagram_to_graph(d)).edges}
        singles = {next(iter(s)) for s in strips if len(s) == 1}
        records.append(_equal("strip-apm", _g(g), sorted(singles), sorted(apm_boxes)))
        for N in (2, 3):
            right = sum(m_count(_graph(d.remove(y)), N - 1) for y in strips)
            records.append(_equal("strip-identity", _g(g, N=N), m_count(g, N), right))
            right = sum(ssyt_count(d.remove(y), N - 1) for y in strips)
            records.append(_equal("strip-branching", _g(g, N=N), ssyt_count(d, N), right))
    return records


FAMILIES: Dict[str, Callable[[SuiteContext], List[CheckRecord]]] = {
    "pinned-values": check_pinned_values,
    "volume-agreement": check_volume_agreement,
    "leaf-recurrence": check_leaf_recurrence,
    "apm-recurrence": check_apm_recurrence,
    "product-rule": check_product_rule,
    "color-invariance": check_color_invariance,
    "polynomiality": check_polynomiality,
    "choice-independence": check_choice_independence,
    "symfunc-dimension": check_symfunc_dimension,
    "universality": check_universality,
    "principal-specialization": check_principal_specialization,
    "specht-volume": check_specht_volume,
    "decomposition": check_decomposition,
    "exact-split": check_exact_split,
    "corners": check_corners,
    "transpose-duality": check_transpose_duality,
    "restrict-bound": check_restrict_bound,
    "james-peel": check_james_peel,
    "ssyt-web": check_ssyt_web,
    "tensor-character": check_tensor_character,
    "modular-rank": check_modular_rank,
    "strip-identity": check_strip_identity,
}


# ---------------------------------------------------------
# Suite
# ---------------------------------------------------------
def summarize(records: Iterable[CheckRecord]) -> CheckSummary:
    """Per-identity record and failure counts."""
    df = pd.DataFrame([r.model_dump() for r in records], columns=["identity", "passed"])
    if df.empty:
        return CheckSummary(records=0, failed=0, families={})
    df["failed"] = ~df["passed"].astype(bool)
    grouped = df.groupby("identity").agg(records=("passed", "size"), failed=("failed", "sum"))
    families = {
        str(name): FamilySummary(records=int(row["records"]), failed=int(row["failed"]))
        for name, row in grouped.iterrows()
    }
    return CheckSummary(records=int(len(df)), failed=int(df["failed"].sum()), families=families)


def run_checks(
    scope: Scope = "small",
    seed: int = 0,
    fault_injection: bool = False,
    families: Iterable[str] | None = None,
) -> CheckReport:
    """
    Evaluate the identity families on a thread pool. With fault_injection the
    volume used by the volume families is off by one, which must surface as
    failed records.
    """
    if scope not in SCOPES:
        raise PreconditionError(f"unknown scope {scope!r}; choose from {sorted(SCOPES)}")
    if not -(2**63) <= seed < 2**64:
        raise PreconditionError(f"seed must fit in 64 bits, got {seed}")
    selected = sorted(set(families)) if families is not None else sorted(FAMILIES)
    unknown = [name for name in selected if name not in FAMILIES]
    if unknown:
        raise PreconditionError(f"unknown check families {unknown}")
    volume: VolumeFn = (lambda g: v_apm(g) + 1) if fault_injection else v_apm
    ctx = SuiteContext(limits=SCOPES[scope], seed=seed, volume=volume)

    log.info("running %d check families (scope=%s, seed=%d)", len(selected), scope, seed)
    with ThreadPoolExecutor(max_workers=max(1, settings.THREADS)) as pool:
        batches = list(pool.map(lambda name: FAMILIES[name](ctx), selected))

    records = sorted(
        (r for batch in batches for r in batch),
        key=lambda r: (r.identity, r.instance, r.left, r.right),
    )
    summary = summarize(records)
    for name, fam in summary.families.items():
        log.info("family %s: %d records, %d failed", name, fam.records, fam.failed)
    return CheckReport(
        scope=scope,
        seed=seed,
        fault_injection=fault_injection,
        passed=summary.failed == 0,
        summary=summary,
        records=records,
    )
