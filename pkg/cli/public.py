from __future__ import annotations

import argparse
from math import factorial
from typing import Dict, List, Optional

import pandas as pd

from cli.common import emit, load_diagram, load_graph, mapping_table
from core.config import settings
from core.errors import NotAForestError, PreconditionError
from models.schemas import (
    SchurReport,
    SpechtReportOut,
    TableauOut,
    TableauxReport,
    TensorReportOut,
    VolumeCrossCheck,
    VolumeReport,
    array_key,
)
from services import generators
from services.characters import partition_sort_key
from services.graphs import Color, graph_payload
from services.specht import specht_report
from services.symfunc import exp_specialize, principal_specialize, s_forest, schur_coeffs
from services.tableaux import (
    ForestTableau,
    ssyt_count,
    ssyt_enumerate,
    ssyt_generating_function,
    standard_tableaux,
)
from services.volume import VOLUME_METHODS, volume


# ---------------------------------------------------------
# volume
# ---------------------------------------------------------
def volume_command(args: argparse.Namespace) -> None:
    """
    V(G) by one method, or by every method side by side with --all.
    """
    g = load_graph(args.graph)
    if not args.all:
        emit(VolumeReport(method=args.method, volume=volume(g, args.method)), args.pretty)
        return

    values: Dict[str, Optional[int]] = {}
    for method in VOLUME_METHODS:
        if method == "ehrhart" and g.n > settings.EHRHART_MAX_N:
            values[method] = None
            continue
        try:
            values[method] = volume(g, method)
        except NotAForestError:
            values[method] = None
    present = {v for v in values.values() if v is not None}
    report = VolumeCrossCheck(**values, agree=len(present) == 1)
    table = pd.DataFrame({"method": list(values), "volume": list(values.values())})
    emit(report, args.pretty, table)


# ---------------------------------------------------------
# schurfun
# ---------------------------------------------------------
def schurfun_command(args: argparse.Namespace) -> None:
    """
    s_G in the Schur (default) or complete homogeneous basis, with optional
    principal / exponential specializations.
    """
    g = load_graph(args.graph)
    s = s_forest(g)
    if args.basis == "s":
        coeffs = schur_coeffs(g)
        expansion = {array_key(lam): coeffs[lam] for lam in sorted(coeffs, key=partition_sort_key)}
    else:
        expansion = {array_key(mu): c for mu, c in s.items()}

    if not args.principal and not args.exp:
        emit(expansion, args.pretty, mapping_table(expansion, "partition", "coefficient"))
        return

    report = SchurReport(basis=args.basis, expansion=expansion)
    if args.principal:
        report.principal = {str(N): principal_specialize(s, N) for N in args.principal}
    if args.exp:
        value = exp_specialize(s)
        report.exp = str(value)
        report.volume = int(value * factorial(g.n))
    emit(report, args.pretty)


# ---------------------------------------------------------
# specht
# ---------------------------------------------------------
def specht_command(args: argparse.Namespace) -> None:
    """
    dim S^D, and on request its character, decomposition and the Schur
    module span in N variables.
    """
    d = load_diagram(args.diagram)
    report = specht_report(
        d,
        character=args.character,
        decompose=args.decompose,
        confirm=args.confirm,
        tensor_N=args.tensor,
    )
    out = SpechtReportOut(dimension=report.dimension)
    if report.character is not None:
        out.character = {array_key(rho): v for rho, v in report.character.items()}
    if report.decomposition is not None:
        out.decomposition = {
            array_key(lam): report.decomposition[lam]
            for lam in sorted(report.decomposition, key=partition_sort_key)
        }
    if report.tensor is not None:
        out.tensor = TensorReportOut(
            N=report.tensor.N,
            dimension=report.tensor.dimension,
            character={array_key(alpha): c for alpha, c in report.tensor.character.items()},
        )
    emit(out, args.pretty)


# ---------------------------------------------------------
# tableaux
# ---------------------------------------------------------
def _tableau_out(t: ForestTableau) -> TableauOut:
    return TableauOut(entries=[[r, c, label] for (r, c), label in sorted(t.cells)])


def tableaux_command(args: argparse.Namespace) -> None:
    """
    Semistandard tableaux with labels 1..N (count by default), or the
    standard tableaux with --standard.
    """
    d = load_diagram(args.graph)
    if args.standard:
        found = standard_tableaux(d)
        report = TableauxReport(n_labels=d.n, count=len(found), tableaux=[_tableau_out(t) for t in found])
        emit(report, args.pretty)
        return

    if args.n_labels is None:
        raise PreconditionError("tableaux needs --n-labels N unless --standard is given")
    N = args.n_labels
    if args.list:
        found = ssyt_enumerate(d, N)
        report = TableauxReport(n_labels=N, count=len(found), tableaux=[_tableau_out(t) for t in found])
    elif args.content:
        gf = ssyt_generating_function(d, N)
        content = {array_key(alpha): gf[alpha] for alpha in sorted(gf, reverse=True)}
        report = TableauxReport(n_labels=N, count=sum(gf.values()), content=content)
    else:
        report = TableauxReport(n_labels=N, count=ssyt_count(d, N))
    emit(report, args.pretty)


# ---------------------------------------------------------
# gen
# ---------------------------------------------------------
def _params(kind: str, params: List[int], expected: int) -> List[int]:
    if len(params) != expected:
        raise PreconditionError(f"gen {kind} takes {expected} integer parameter(s), got {len(params)}")
    return params


def gen_command(args: argparse.Namespace) -> None:
    """
    Deterministic forest generators; prints graph JSON.
    """
    kind, params = args.kind, args.params
    if kind == "star":
        (n,) = _params(kind, params, 1)
        g = generators.star(n, Color(args.center))
    elif kind == "path":
        (n,) = _params(kind, params, 1)
        g = generators.path(n)
    elif kind == "caterpillar":
        spine, legs = _params(kind, params, 2)
        g = generators.caterpillar(spine, legs)
    else:
        (n,) = _params(kind, params, 1)
        g = generators.random_forest(n, seed=args.seed)
    emit(graph_payload(g), args.pretty)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    p = subparsers.add_parser("volume", parents=[common], help="normalized matching polytope volume")
    p.add_argument("graph", help="graph JSON or diagram ASCII file")
    p.add_argument("--method", choices=sorted(VOLUME_METHODS), default="apm")
    p.add_argument("--all", action="store_true", help="every method side by side")
    p.set_defaults(handler=volume_command)

    p = subparsers.add_parser("schurfun", parents=[common], help="the symmetric function s_G")
    p.add_argument("graph")
    p.add_argument("--basis", choices=["s", "h"], default="s")
    p.add_argument("--principal", type=int, nargs="+", metavar="N", help="evaluate at N ones")
    p.add_argument("--exp", action="store_true", help="exponential specialization")
    p.set_defaults(handler=schurfun_command)

    p = subparsers.add_parser("specht", parents=[common], help="Specht module of a diagram")
    p.add_argument("diagram")
    p.add_argument("--character", action="store_true")
    p.add_argument("--decompose", action="store_true")
    p.add_argument("--confirm", action="store_true", help="recheck the rank over a second prime")
    p.add_argument("--tensor", type=int, metavar="N", help="Schur module in N variables")
    p.set_defaults(handler=specht_command)

    p = subparsers.add_parser("tableaux", parents=[common], help="forest tableaux")
    p.add_argument("graph")
    p.add_argument("--n-labels", type=int, metavar="N")
    p.add_argument("--standard", action="store_true")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true")
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--content", action="store_true")
    p.set_defaults(handler=tableaux_command)

    p = subparsers.add_parser("gen", parents=[common], help="forest generators")
    p.add_argument("kind", choices=["path", "star", "caterpillar", "random-forest"])
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--center", choices=[c.value for c in Color], default=Color.WHITE.value)
    p.set_defaults(handler=gen_command)
