"""
kronecker-cells command line
============================

Usage:
    kronecker-cells enumerate --m 5
    kronecker-cells matrices --m 11 --p 0,2,3,3,4,4,5,6 --jk 1,7
    kronecker-cells verify --m 7 --workers 4 --format json
    kronecker-cells subrep --m 11 --p 0,2,4,4,5,6 --ones
    kronecker-cells cluster-check --max 12

Exit codes:
    0: every check passed
    1: a verification mismatch was found
    2: usage, parse or configuration error
"""

import argparse
import json
import logging
import sys
from dataclasses import asdict
from typing import List, Optional

import numpy as np

from .cluster import cluster_check
from .combinatorics import IndexTuple, a_set, enumerate_tuples
from .config import Settings
from .engine import (
    cell_census,
    cell_point_model,
    check_subrepresentation,
    free_variables,
    ones_cell_point,
    random_cell_point,
    solve_cell_point,
    tuple_model,
    verify_batch,
)
from .exceptions import ConfigurationError, KroneckerError, VerificationError
from .fields import Field, field_by_name
from .matrices import build_N1, build_N2, build_N2_full, extract_A, render_matrix, s_prime, sparsity_pattern
from .poly import parse_variable, render
from .relations import check_structure, generator_set, solving_order
from .schemas import (
    BatchReportModel,
    CensusReportModel,
    CensusRowModel,
    ClusterCheckReportModel,
    ClusterCheckModel,
    EnumerationModel,
    MatricesModel,
    MatrixModel,
    RelationModel,
    RelationsReportModel,
    StructureModel,
    TreeModel,
)
from .trees import build_tree, frame, render_tree

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def _emit(args: argparse.Namespace, text: str, model=None) -> None:
    output = model.model_dump_json(indent=2) if args.format == "json" and model is not None else text
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(output + "\n")
    else:
        print(output)


def _tuple(args: argparse.Namespace) -> IndexTuple:
    return IndexTuple.parse(args.m, args.p or "")


def _pair(text: str):
    try:
        j, k = (int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected j,k, got {text!r}") from exc
    return j, k


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def cmd_enumerate(args: argparse.Namespace) -> int:
    tuples = enumerate_tuples(args.m)
    lines = [f"{P}  e=({P.e1},{P.e2})" for P in tuples] + [f"{len(tuples)} tuples for m={args.m}"]
    model = EnumerationModel(m=args.m, count=len(tuples), tuples=[tuple_model(P) for P in tuples])
    _emit(args, "\n".join(lines), model)
    return EXIT_OK


def cmd_matrices(args: argparse.Namespace) -> int:
    P = _tuple(args)
    named = [
        ("N2-full", build_N2_full(P)),
        ("N2", build_N2(P)),
        ("N1", build_N1(P)),
        ("S'", s_prime(P)),
    ]
    if args.jk:
        j, k = args.jk
        named.append((f"A_{j},{k}", extract_A(P, j, k)))
    blocks = []
    for name, matrix in named:
        body = sparsity_pattern(matrix) if args.pattern else render_matrix(matrix)
        blocks.append(f"{name} of {P} ({matrix.shape[0]}x{matrix.shape[1]}):\n{body}")
    model = MatricesModel(
        P=tuple_model(P),
        matrices=[MatrixModel(name=name, **matrix.to_json()) for name, matrix in named],
    )
    _emit(args, "\n\n".join(blocks), model)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    field = field_by_name(args.field)
    tuples = [_tuple(args)] if args.p is not None else None
    reports = verify_batch(
        args.m,
        tuples=tuples,
        trials=args.trials,
        workers=args.workers,
        seed=args.seed,
        field=field,
        corrupt=args.corrupt,
    )
    ok = all(report.ok for report in reports)
    lines = []
    for report in reports:
        signs = " ".join(
            f"({c.j},{c.k}):{'+' if c.sign == 1 else '-' if c.sign == -1 else '!'}" for c in report.jk
        )
        status = "ok" if report.ok else "FAIL"
        lines.append(
            f"{status:4} {report.P}  e=({report.P.e1},{report.P.e2}) dim={report.dimension}"
            f"  trials={report.trials.passed}/{report.trials.count}  {signs}".rstrip()
        )
        for check in report.jk:
            if not check.match:
                lines.append(f"     difference at ({check.j},{check.k}): {render(check.difference)}")
    lines.append(f"{sum(r.ok for r in reports)} of {len(reports)} tuples verified for m={args.m}")
    model = BatchReportModel(
        m=args.m,
        seed=Settings.SEED if args.seed is None else args.seed,
        ok=ok,
        reports=[report.to_model() for report in reports],
    )
    _emit(args, "\n".join(lines), model)
    return EXIT_OK if ok else EXIT_MISMATCH


def _load_assignment(path: str, field: Field):
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except (OSError, ValueError) as exc:
        raise KroneckerError(f"Cannot read assignment file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise KroneckerError(f"Assignment file {path} must hold a JSON object")
    assignment = {}
    for name, value in raw.items():
        var = parse_variable(name)
        try:
            assignment[var] = field.coerce(str(value))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise KroneckerError(f"Bad value {value!r} for {var} in {path}: {exc}") from exc
    return assignment


def cmd_subrep(args: argparse.Namespace) -> int:
    P = _tuple(args)
    field = field_by_name(args.field)
    if args.assignment:
        cp = solve_cell_point(P, _load_assignment(args.assignment, field), field)
    elif args.random:
        seed = Settings.SEED if args.seed is None else args.seed
        cp = random_cell_point(P, np.random.default_rng(seed), field)
    else:
        cp = ones_cell_point(P, field)
    check = check_subrepresentation(cp)
    free = set(free_variables(P))
    lines = [f"Cell point of {P} over {field.name}:"]
    for var, value in cp.assignment.items():
        marker = "" if var in free else "  (solved)"
        lines.append(f"  {var} = {value}{marker}")
    lines.append(f"rank N1 = {check.rank_N1} (e1={P.e1}), rank N2 = {check.rank_N2} (e2={P.e2})")
    lines.append(f"subrepresentation: {'yes' if check.ok else 'no'}")
    _emit(args, "\n".join(lines), cell_point_model(cp, check))
    return EXIT_OK if check.ok else EXIT_MISMATCH


def cmd_cluster_check(args: argparse.Namespace) -> int:
    rows = cluster_check(args.max)
    ok = all(row.equal for row in rows)
    lines = [
        f"m={row.m:<3} {'equal' if row.equal else 'DIFFER'}  x_m(1,1)={row.value_at_ones}  tuples={row.tuple_count}"
        for row in rows
    ]
    lines.append(f"{sum(row.equal for row in rows)} of {len(rows)} equalities hold")
    model = ClusterCheckReportModel(
        ok=ok,
        rows=[ClusterCheckModel(**asdict(row)) for row in rows],
    )
    _emit(args, "\n".join(lines), model)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_relations(args: argparse.Namespace) -> int:
    P = _tuple(args)
    generators = generator_set(P)
    order = solving_order(P, generators)
    structure = check_structure(P, generators)
    lines = [f"JK{P} has {len(generators)} pairs; A(P) = {sorted(a_set(P))}"]
    for relation in generators:
        j, k = relation.pair.j, relation.pair.k
        lines.append(f"D-hat_{j},{k} = {render(relation.Dhat)}")
        if relation.D != relation.Dhat:
            lines.append(f"    D_{j},{k} = {render(relation.D)}")
    lines.append("solving order: " + " ".join(f"({p.j},{p.k})" for p in order))
    lines.extend(f"finding: {finding}" for finding in structure.findings)
    model = RelationsReportModel(
        P=tuple_model(P),
        a_set=sorted(a_set(P)),
        solving_order=[[p.j, p.k] for p in order],
        relations=[
            RelationModel(
                j=rel.pair.j,
                k=rel.pair.k,
                nu=rel.pair.nu,
                mu=rel.pair.mu,
                D=render(rel.D),
                Dhat=render(rel.Dhat),
                linear=render(rel.L),
            )
            for rel in generators
        ],
        structure=StructureModel(ok=structure.ok, findings=list(structure.findings)),
    )
    _emit(args, "\n".join(lines), model)
    return EXIT_OK if structure.ok else EXIT_MISMATCH


def cmd_tree(args: argparse.Namespace) -> int:
    tree = build_tree(args.eta, args.nu, args.mu, args.n)
    if args.framed:
        tree = frame(tree)
    text = render_tree(tree) + f"\n{len(tree)} vertices"
    model = TreeModel(
        eta=tree.eta,
        nu=tree.nu,
        mu=tree.mu,
        n=tree.n,
        size=len(tree),
        vertices=[str(v) for v in tree.vertices],
    )
    _emit(args, text, model)
    return EXIT_OK


def cmd_census(args: argparse.Namespace) -> int:
    rows = cell_census(args.m)
    total = sum(row.cells for row in rows)
    lines = [
        f"e=({row.e1},{row.e2})  cells={row.cells}  by dimension: "
        + ", ".join(f"{dim}:{count}" for dim, count in row.dimensions.items())
        for row in rows
    ]
    lines.append(f"{total} cells for m={args.m}")
    model = CensusReportModel(
        m=args.m,
        total=total,
        rows=[
            CensusRowModel(
                e1=row.e1,
                e2=row.e2,
                cells=row.cells,
                dimensions={str(dim): count for dim, count in row.dimensions.items()},
            )
            for row in rows
        ],
    )
    _emit(args, "\n".join(lines), model)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text", help="Output format (default: text)")
    common.add_argument("--log-level", default=None, help="Logging level (default: KRONECKER_LOG_LEVEL)")
    common.add_argument("--output", default=None, help="Write output to this file instead of stdout")
    parser = argparse.ArgumentParser(
        prog="kronecker-cells",
        description="Cells of Kronecker quiver Grassmannians: relations, minors and checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", parents=[common], help="List the index tuples of m")
    p_enum.add_argument("--m", type=int, required=True)
    p_enum.set_defaults(handler=cmd_enumerate)

    p_mat = sub.add_parser("matrices", parents=[common], help="Show N2, N1, S' and optionally A_{j,k}")
    p_mat.add_argument("--m", type=int, required=True)
    p_mat.add_argument("--p", default="", help="Index tuple as a comma list, e.g. 0,2,4,6")
    p_mat.add_argument("--jk", type=_pair, default=None, help="Also extract A_{j,k}, given as j,k")
    p_mat.add_argument("--pattern", action="store_true", help="Print the */1/. sparsity pattern")
    p_mat.set_defaults(handler=cmd_matrices)

    p_ver = sub.add_parser("verify", parents=[common], help="Verify the identities for every tuple of m")
    p_ver.add_argument("--m", type=int, required=True)
    p_ver.add_argument("--p", default=None, help="Verify a single index tuple")
    p_ver.add_argument("--trials", type=_non_negative_int, default=None, help="Random cell points per tuple")
    p_ver.add_argument("--workers", type=_positive_int, default=None, help="Worker processes")
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--field", default="Fq", help="Field of the random points: Q or Fq")
    p_ver.add_argument("--corrupt", action="store_true", help="Debug: perturb every D-hat")
    p_ver.set_defaults(handler=cmd_verify)

    p_sub = sub.add_parser("subrep", parents=[common], help="Solve a cell point and check it is a subrepresentation")
    p_sub.add_argument("--m", type=int, required=True)
    p_sub.add_argument("--p", default="")
    source = p_sub.add_mutually_exclusive_group()
    source.add_argument("--ones", action="store_true", help="Every free variable set to 1 (default)")
    source.add_argument("--random", action="store_true", help="Random free variables")
    source.add_argument("--assignment", default=None, help="JSON file mapping free variables to values")
    p_sub.add_argument("--seed", type=int, default=None)
    p_sub.add_argument("--field", default="Q")
    p_sub.set_defaults(handler=cmd_subrep)

    p_clu = sub.add_parser("cluster-check", parents=[common], help="Compare X_M(m) with the cluster variable x_m")
    p_clu.add_argument("--max", type=int, required=True)
    p_clu.set_defaults(handler=cmd_cluster_check)

    p_rel = sub.add_parser("relations", parents=[common], help="Show the D-hat generators of a tuple")
    p_rel.add_argument("--m", type=int, required=True)
    p_rel.add_argument("--p", default="")
    p_rel.set_defaults(handler=cmd_relations)

    p_tree = sub.add_parser("tree", parents=[common], help="Show a Fibonacci tree")
    p_tree.add_argument("--eta", type=int, required=True)
    p_tree.add_argument("--nu", type=int, required=True)
    p_tree.add_argument("--mu", type=int, required=True)
    p_tree.add_argument("--n", type=int, required=True)
    p_tree.add_argument("--framed", action="store_true")
    p_tree.set_defaults(handler=cmd_tree)

    p_cen = sub.add_parser("census", parents=[common], help="Cell counts and dimensions per dimension vector")
    p_cen.add_argument("--m", type=int, required=True)
    p_cen.set_defaults(handler=cmd_census)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        Settings.LOG_LEVEL = args.log_level.upper()
    try:
        Settings.validate()
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=Settings.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except VerificationError as exc:
        logger.error(f"Verification failed: {exc}")
        return EXIT_MISMATCH
    except KroneckerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
