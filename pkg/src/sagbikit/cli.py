"""Command-line surface: sagbi, relations, matchings, verify, hilbert.

Exit codes: 0 success, 1 computational failure (with a counterexample
dump), 2 usage error.  All randomized reports embed the seed and the
sampling parameters; identical job specifications produce byte-identical
reports regardless of the worker count (SAGBIKIT_WORKERS or --workers).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .engine import GeneratorFamily, sagbi_by_degree, sagbi_general
from .formats import ParseError, matrix_to_csv, parse_polynomial, poly_to_json, poly_to_text
from .hilbert import h_vector, krull_dim_monomial, semigroup_hilbert, subalgebra_hilbert
from .matchings import (enumerate_vertices_exhaustive, enumerate_vertices_random,
                        full_support, sagbi_defect)
from .minors import (MatrixRing, diagonal_order, full_group, minors,
                     submax_lex_order)
from .orders import degrevlex_order, lex_order, weight_order
from .relations import minimize_relations, sagbi_with_relations, verify_relations
from .rings import RingContext
from .universal import VerificationError, diagonal_matching, verify_universal


class UsageError(ValueError):
    pass


@dataclass
class Job:
    ring: RingContext
    matrix: MatrixRing | None
    generators: list
    order_spec: str
    grading: str
    fmt: str
    workers: int


def _default_workers() -> int:
    env = os.environ.get("SAGBIKIT_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"SAGBIKIT_WORKERS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _build_ring(args) -> tuple[RingContext, MatrixRing | None]:
    if args.matrix and args.vars:
        raise UsageError("--matrix and --vars are mutually exclusive")
    if args.matrix:
        try:
            m, n = (int(v) for v in args.matrix.lower().split("x"))
        except ValueError:
            raise UsageError(f"--matrix expects MxN, got {args.matrix!r}")
        M = MatrixRing(m, n, args.char)
        return M.ring, M
    if args.vars:
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
        grading = None
        if getattr(args, "var_degrees", None):
            grading = [int(v) for v in args.var_degrees.split(",")]
        return RingContext(names, args.char, grading), None
    raise UsageError("a ring is required: --matrix MxN or --vars a,b,c")


def _build_generators(args, ring: RingContext, matrix: MatrixRing | None):
    sources = sum(1 for s in (args.minors, args.gens_file, args.gen) if s)
    if sources != 1:
        raise UsageError("exactly one generator source: --minors, --gens-file or --gen")
    if args.minors:
        if matrix is None:
            raise UsageError("--minors needs a --matrix ring")
        return [mi.polynomial for mi in minors(args.minors, matrix)]
    texts = []
    if args.gens_file:
        with open(args.gens_file) as fh:
            texts = [line.strip() for line in fh if line.strip()]
    else:
        texts = list(args.gen)
    out = []
    for i, text in enumerate(texts):
        try:
            f = parse_polynomial(ring, text)
        except ParseError as exc:
            raise UsageError(f"generator {i + 1}: {exc}")
        if f.is_zero():
            raise UsageError(f"generator {i + 1} is zero")
        out.append(f)
    if not out:
        raise UsageError("empty generator list")
    return out


def _build_order(spec: str, ring: RingContext, matrix: MatrixRing | None):
    kind, _, rest = spec.partition(":")
    n = ring.nvars
    if kind == "diag":
        if matrix is None:
            raise UsageError("order 'diag' needs a matrix ring")
        return diagonal_order(matrix)
    if kind == "submax":
        if matrix is None:
            raise UsageError("order 'submax' needs a matrix ring")
        return submax_lex_order(matrix)
    if kind in ("lex", "degrevlex"):
        perm = None
        if rest:
            perm = [int(v) - 1 for v in rest.split(",")]
        return lex_order(n, perm) if kind == "lex" else degrevlex_order(n, perm)
    if kind == "weight":
        if not rest:
            raise UsageError("order 'weight' needs entries, e.g. weight:1,2,3")
        w = [int(v) for v in rest.split(",")]
        if len(w) != n:
            raise UsageError(f"weight length {len(w)} != {n} variables")
        return weight_order(w, lex_order(n))
    raise UsageError(f"unknown order {spec!r}")


def _emit(lines):
    sys.stdout.write("\n".join(lines) + "\n")


def _job_header(cmd, args, extra=()):
    head = [f"# sagbikit {cmd}"]
    spec = {k: v for k, v in sorted(vars(args).items())
            if k not in ("func", "_parser") and v is not None}
    head.append(f"# job: {json.dumps(spec, sort_keys=True, default=str)}")
    head.extend(extra)
    return head


def cmd_sagbi(args) -> int:
    ring, matrix = _build_ring(args)
    gens = _build_generators(args, ring, matrix)
    order = _build_order(args.order, ring, matrix)
    if args.relations:
        result, retract, rels = sagbi_with_relations(
            gens, order, variant=args.variant,
            round_bound=args.round_bound, degree_bound=args.degree_bound)
        rels = minimize_relations(rels)
        ok, witness = verify_relations(result.basis, rels)
        if not ok:
            _emit([f"FAIL relation does not vanish: {poly_to_text(witness)}"])
            return 1
    else:
        family = GeneratorFamily(gens, order)
        if args.variant == "deg":
            if args.degree_bound is None:
                raise UsageError("--variant deg needs --degree-bound")
            result = sagbi_by_degree(family, args.degree_bound)
        else:
            result = sagbi_general(family, round_bound=args.round_bound,
                                   degree_bound=args.degree_bound)
        retract = rels = None
    lines = _job_header("relations" if args.relations else "sagbi", args)
    lines.append(f"# status: {result.status}; rounds: {result.rounds}"
                 + (f"; comp-degree: {result.comp_degree}"
                    if result.comp_degree is not None else ""))
    lines.append(f"#SAGBI\t{len(result.basis)}")
    lines.append(f"#maxdeg\t{result.max_degree()}")
    if rels is not None:
        lines.append(f"#rel\t{len(rels.generators)}")
    for i, f in enumerate(result.basis.members):
        tag = result.basis.presentation.tags[i]
        lines.append(f"{tag}\t{poly_to_text(f)}")
        if retract is not None and i >= result.basis.n_original:
            lines.append(f"{tag}=\t{poly_to_text(retract.image(i))}")
    if rels is not None:
        for g in rels.generators:
            lines.append(f"rel\t{poly_to_text(g)}")
    _emit(lines)
    return 0


def cmd_matchings(args) -> int:
    ring, matrix = _build_ring(args)
    if matrix is None:
        raise UsageError("matchings needs a --matrix ring")
    gens = _build_generators(args, ring, matrix)
    group = full_group(matrix.m, matrix.n)
    if args.mode == "exhaustive":
        catalog = enumerate_vertices_exhaustive(gens, group, cap=args.cap,
                                                workers=args.workers)
    else:
        if args.seed is None:
            raise UsageError("random mode requires --seed")
        catalog = enumerate_vertices_random(gens, group, trials=args.trials,
                                            stall_limit=args.stall, seed=args.seed)
    k_max = args.kmax
    if args.minors == matrix.m:
        # maximal minors: the diagonal matching already generates the full
        # initial algebra, so its semigroup is the reference
        reference = semigroup_hilbert(
            diagonal_matching(matrix, minors(matrix.m, matrix)).selection,
            k_max, ring, args.grading).values
        ref_k = k_max
    else:
        # exact linear algebra caps the reference depth
        ref_k = min(k_max, 3)
        order = diagonal_order(matrix)
        reference = subalgebra_hilbert(gens, ref_k, order, args.grading).values
    rows = []
    for entry in catalog.orbits:
        rep = entry.representative
        defect = sagbi_defect(rep, reference, ref_k, args.grading)
        dim = krull_dim_monomial(rep.selection)
        values = semigroup_hilbert(rep.selection, k_max, ring, args.grading).values
        hv = h_vector(values, dim)
        rows.append({
            "canonical": list(entry.canonical),
            "orbit_size": entry.size,
            "full_support": full_support(entry.canonical),
            "dim": dim,
            "h_vector": list(hv) if isinstance(hv, tuple) else hv,
            "first_defect": defect,
            "witness": rep.witness,
        })
    if args.format == "json":
        payload = {"total": catalog.total, "orbits": len(rows),
                   "exhaustive": catalog.exhaustive, "meta": catalog.meta,
                   "grading": args.grading, "reference": reference, "rows": rows}
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 0
    lines = _job_header("matchings", args, (
        f"# total\t{catalog.total}" + ("\t(lower bound)" if not catalog.exhaustive else ""),
        f"# orbits\t{len(rows)}",
        f"# grading\t{args.grading}",
        f"# reference\t{reference}",
        "canonical\torbit_size\tfull_support\tdim\th_vector\tfirst_defect"))
    for r in rows:
        hv = r["h_vector"]
        hv_text = ("(" + ",".join(str(v) for v in hv) + ")"
                   if isinstance(hv, list) else hv)
        lines.append("\t".join([
            " ".join(str(v) for v in r["canonical"]),
            str(r["orbit_size"]),
            "yes" if r["full_support"] else "no",
            str(r["dim"]), hv_text,
            "none" if r["first_defect"] is None else str(r["first_defect"])]))
    _emit(lines)
    return 0


def cmd_verify(args) -> int:
    kwargs = {}
    if args.case == "G37_sampled":
        if args.seed is None:
            raise UsageError("G37_sampled requires --seed")
        kwargs = {"count": args.count, "seed": args.seed}
    try:
        report = verify_universal(args.case, **kwargs)
    except VerificationError as exc:
        lines = [f"FAIL {args.case}: {exc}"]
        if exc.matching is not None:
            lines.append("counterexample selection:")
            for s in exc.matching.selection:
                lines.append("  " + " ".join(str(v) for v in s))
        _emit(lines)
        return 1
    lines = _job_header("verify", args, (f"# case: {report.case}", "PASS"))
    lines.extend(report.details)
    _emit(lines)
    return 0


def cmd_hilbert(args) -> int:
    ring, matrix = _build_ring(args)
    gens = _build_generators(args, ring, matrix)
    order = _build_order(args.order, ring, matrix)
    if args.kind == "subalgebra":
        data = subalgebra_hilbert(gens, args.kmax, order, args.grading)
        exps = None
    else:
        from .orders import leading_exponent
        exps = [leading_exponent(order, f) for f in gens]
        data = semigroup_hilbert(exps, args.kmax, ring, args.grading)
    dim = krull_dim_monomial(exps) if exps is not None else None
    lines = _job_header("hilbert", args)
    lines.append(f"# grading\t{args.grading}")
    lines.append("k\tH(k)")
    for k, v in enumerate(data.values):
        lines.append(f"{k}\t{v}")
    if dim is not None:
        hv = h_vector(data.values, dim)
        lines.append(f"dim\t{dim}")
        lines.append(f"h_vector\t{hv}")
    _emit(lines)
    return 0


def _add_ring_args(p):
    p.add_argument("--config", help="JSON file with default option values")
    p.add_argument("--matrix", help="matrix ring, e.g. 3x4")
    p.add_argument("--vars", help="comma-separated variable names")
    p.add_argument("--var-degrees", help="comma-separated variable degrees")
    p.add_argument("--char", type=int, default=0, help="field characteristic")


def _add_gen_args(p):
    p.add_argument("--minors", type=int, help="generate by t-minors")
    p.add_argument("--gens-file", help="file with one polynomial per line")
    p.add_argument("--gen", action="append", default=[],
                   help="inline polynomial (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sagbikit",
        description="SAGBI bases, defining ideals and coherent matchings "
                    "for subalgebras of polynomial rings")
    sub = ap.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("sagbi", help="compute a SAGBI basis")
    _add_ring_args(ps)
    _add_gen_args(ps)
    ps.add_argument("--order", default="degrevlex")
    ps.add_argument("--variant", choices=("gen", "deg"), default="gen")
    ps.add_argument("--degree-bound", type=int)
    ps.add_argument("--round-bound", type=int)
    ps.set_defaults(func=cmd_sagbi, relations=False, _parser=ps)

    pr = sub.add_parser("relations", help="SAGBI basis plus defining ideal")
    _add_ring_args(pr)
    _add_gen_args(pr)
    pr.add_argument("--order", default="degrevlex")
    pr.add_argument("--variant", choices=("general", "degree"), default="general")
    pr.add_argument("--degree-bound", type=int)
    pr.add_argument("--round-bound", type=int)
    pr.set_defaults(func=cmd_sagbi, relations=True, _parser=pr)

    pm = sub.add_parser("matchings", help="enumerate coherent matchings")
    _add_ring_args(pm)
    _add_gen_args(pm)
    pm.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    pm.add_argument("--cap", type=int, default=1 << 20,
                    help="exhaustive selection-space cap")
    pm.add_argument("--trials", type=int, default=10000)
    pm.add_argument("--stall", type=int, default=2000)
    pm.add_argument("--seed", type=int)
    pm.add_argument("--kmax", type=int, default=7)
    pm.add_argument("--grading", choices=("normalized", "ambient"),
                    default="normalized")
    pm.add_argument("--format", choices=("tsv", "json"), default="tsv")
    pm.add_argument("--workers", type=int, default=None)
    pm.set_defaults(func=cmd_matchings, _parser=pm)

    pv = sub.add_parser("verify", help="run a universal-basis verification case")
    pv.add_argument("--case", choices=("A233", "G36", "G37_sampled"), required=True)
    pv.add_argument("--count", type=int, default=50)
    pv.add_argument("--seed", type=int)
    pv.add_argument("--config", help="JSON file with default option values")
    pv.set_defaults(func=cmd_verify, _parser=pv)

    ph = sub.add_parser("hilbert", help="Hilbert function values")
    _add_ring_args(ph)
    _add_gen_args(ph)
    ph.add_argument("--kind", choices=("subalgebra", "semigroup"),
                    default="subalgebra")
    ph.add_argument("--order", default="degrevlex")
    ph.add_argument("--kmax", type=int, default=6)
    ph.add_argument("--grading", choices=("normalized", "ambient"),
                    default="normalized")
    ph.set_defaults(func=cmd_hilbert, _parser=ph)
    return ap


def _apply_config(args):
    """Fill defaults from a JSON config file; explicit flags win."""
    if not getattr(args, "config", None):
        return args
    ap = args._parser
    with open(args.config) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise UsageError(f"config key {key!r} is not a {args.command} option")
        if getattr(args, attr) == ap.get_default(attr):
            setattr(args, attr, value)
    return args


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args = _apply_config(args)
        if getattr(args, "workers", None) is None and args.command == "matchings":
            args.workers = _default_workers()
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
