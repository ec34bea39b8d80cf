"""Command-line front end: every verb prints one JSON document on stdout.

Exit status is 0 on success, 1 when a check fails (the report is still
printed) and 2 on input errors, including violated bounds.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import tempfile
from typing import Any, Callable

from freedeg import io
from freedeg.adjunction import (
    check_triangle_identities,
    counit,
    plus,
    random_semisimplicial,
    restrict,
)
from freedeg.category import CategoryError, poset_category
from freedeg.homotopy import (
    ConnectivityError,
    analyze_group,
    contractibility_probe,
    homology,
    normalized_chains,
    pi1_presentation,
)
from freedeg.homotopy.groups import DEFAULT_BUDGET
from freedeg.horn import counterexample_input, quasicheck
from freedeg.necklace import (
    DEFAULT_BOUND,
    DEFAULT_MAX_BEADS,
    F_iso_check,
    check_finality,
    comma_category,
    full_subcategory_F,
    full_subcategory_N,
    localization_pushout,
    mapping_space_probe,
    point_vertex,
)
from freedeg.sset import (
    DEFAULT_TRUNC_DIM,
    ClosureError,
    IntegrityError,
    SimplicialSet,
    TruncationError,
    boundary_simplex,
    nerve,
    standard_simplex,
)


class CheckFailed(Exception):
    """Raised by handlers after producing a report that records a failed check."""

    def __init__(self, report: dict, summary: str):
        super().__init__(summary)
        self.report = report


def _read_text(args) -> str:
    if args.input and args.input != "-":
        try:
            with open(args.input, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise io.InputError(f"cannot read {args.input}: {exc.strerror}") from None
    return sys.stdin.read()


def _load_sset(args, need_simplicial: bool = False):
    X = io.sset_from_json(io.loads(_read_text(args)), args.trunc_dim)
    if need_simplicial and not isinstance(X, SimplicialSet):
        raise io.InputError("this verb needs a simplicial set (degens missing)", "$.dims")
    try:
        X.validate()
    except IntegrityError as exc:
        raise io.InputError(f"structure maps are inconsistent: {exc}") from None
    return X


def _bound(name: str, value: int, limit: int, what: str) -> None:
    if value > limit:
        raise TruncationError(f"{name} {value} exceeds {what} {limit}")


# -- verbs -----------------------------------------------------------------


def cmd_build(args) -> tuple[dict, str]:
    D = args.dim if args.dim is not None else (args.trunc_dim or DEFAULT_TRUNC_DIM)
    if args.simplex is not None:
        X, what = standard_simplex(args.simplex, D), f"Delta^{args.simplex}"
    elif args.boundary is not None:
        X, what = boundary_simplex(args.boundary, D), f"boundary of Delta^{args.boundary}"
    elif args.poset is not None:
        X, what = nerve(poset_category(args.poset), D), f"nerve of [{args.poset}]"
    elif args.category is not None:
        with open(args.category, encoding="utf-8") as fh:
            C = io.category_from_json(io.loads(fh.read()))
        try:
            C.validate()
        except CategoryError as exc:
            raise io.InputError(f"not a category: {exc}") from None
        X, what = nerve(C, D), f"nerve of {args.category}"
    elif args.localization is not None:
        X, what = localization_pushout(args.localization, D), f"P(Delta^{args.localization})"
    elif args.counterexample:
        X, what = counterexample_input(D), "non-quasi counterexample C"
    elif args.random:
        X = random_semisimplicial(random.Random(args.seed), trunc_dim=D)
        what = f"random semisimplicial set (seed {args.seed})"
    else:
        raise io.InputError("build needs one of --simplex, --boundary, --poset, --category, "
                            "--localization, --counterexample, --random")
    return io.sset_to_json(X), f"built {what}, counts {X.counts()}"


def cmd_restrict(args):
    X = _load_sset(args)
    R = restrict(X) if isinstance(X, SimplicialSet) else X
    return io.sset_to_json(R), f"restricted, counts {R.counts()}"


def cmd_plus(args):
    X = _load_sset(args)
    base = restrict(X) if isinstance(X, SimplicialSet) else X
    P = plus(base)
    return io.sset_to_json(P), f"plus construction, counts {P.counts()}"


def cmd_count(args):
    X = _load_sset(args)
    report: dict[str, Any] = {"trunc_dim": X.trunc_dim, "counts": X.counts()}
    if isinstance(X, SimplicialSet):
        report["nondegenerate"] = [len(X.nondegenerate(n)) for n in range(X.trunc_dim + 1)]
    return report, f"counts {X.counts()}"


def cmd_counit_check(args):
    Y = _load_sset(args, need_simplicial=True)
    eps = counit(Y)
    bad = eps.violations()
    report = {"violations": bad[:50], "violation_count": len(bad),
              "surjective": eps.is_surjective(), "ok": not bad and eps.is_surjective()}
    if not report["ok"]:
        raise CheckFailed(report, f"counit check failed ({len(bad)} violations)")
    return report, "counit is a surjective simplicial map"


def cmd_triangle_check(args):
    if args.input:
        X = _load_sset(args)
        if isinstance(X, SimplicialSet):
            rep = check_triangle_identities(X=restrict(X), Y=X)
        else:
            rep = check_triangle_identities(X=X)
        reports = {"input": rep}
    else:
        rng = random.Random(args.seed)
        reports = {}
        for k in range(4):
            reports[f"Delta^{k}_inj"] = check_triangle_identities(X=restrict(standard_simplex(k, 4)))
            reports[f"nerve([{k}])"] = check_triangle_identities(Y=nerve(poset_category(k), 4))
        for i in range(args.count):
            reports[f"random#{i}"] = check_triangle_identities(X=random_semisimplicial(rng))
    out = {name: r.as_dict() for name, r in reports.items()}
    report = {"seed": args.seed, "reports": out, "ok": all(r.ok for r in reports.values())}
    checked = sum(r.checked for r in reports.values())
    if not report["ok"]:
        raise CheckFailed(report, "triangle identities violated")
    return report, f"triangle identities hold on {len(reports)} objects ({checked} simplices)"


def cmd_quasicheck(args):
    X = _load_sset(args, need_simplicial=True)
    rep = quasicheck(X, args.max_dim)
    report = rep.as_dict()
    summary = f"{rep.checked} inner horns up to dim {args.max_dim}, {len(rep.unfilled)} unfilled"
    if not rep.ok:
        raise CheckFailed(report, summary)
    return report, summary


def cmd_homology(args):
    X = _load_sset(args, need_simplicial=True)
    groups = homology(normalized_chains(X), args.max_dim)
    report = {"max_deg": args.max_dim, "homology": {str(n): g.as_dict() for n, g in enumerate(groups)}}
    return report, "H = " + ", ".join(str(g) for g in groups)


def cmd_pi1(args):
    X = _load_sset(args, need_simplicial=True)
    try:
        P = pi1_presentation(X, args.basepoint)
    except ConnectivityError as exc:
        raise io.InputError(f"pi1 needs a connected input: {exc}") from None
    analysis = analyze_group(P, args.budget)
    report = {"presentation": P.as_dict(), "analysis": analysis.as_dict()}
    return report, f"pi1 with {len(P.generators)} generators: {analysis.verdict.value}"


def cmd_probe(args):
    if args.input:
        X = _load_sset(args, need_simplicial=True)
        rep = contractibility_probe(X, args.max_dim, args.budget)
        report = rep.as_dict()
        report["verdict"] = "pass" if rep.passed else "fail"
    else:
        _check_vertices(args)
        report = mapping_space_probe(args.k, args.src, args.dst, args.bound, args.max_dim,
                                     args.budget, max_beads=args.max_beads)
    summary = f"probe verdict {report['verdict']}"
    if report["verdict"] != "pass":
        raise CheckFailed(report, summary)
    return report, summary


def _check_vertices(args) -> None:
    if args.k is None:
        raise io.InputError("--k is required without --input")
    if not 0 <= args.src <= args.dst <= args.k:
        raise io.InputError(f"need 0 <= --from <= --to <= --k, got {args.src}, {args.dst}, {args.k}")


def _localized_categories(args):
    _check_vertices(args)
    P = localization_pushout(args.k, max(args.bound, 1))
    vx, vy = point_vertex(P, args.src), point_vertex(P, args.dst)
    big = comma_category(P, vx, vy, args.bound, args.max_beads)
    return P, vx, vy, big


def cmd_necklace(args):
    if args.input:
        X = _load_sset(args, need_simplicial=True)
        for name, v in (("--from", args.src), ("--to", args.dst)):
            if not 0 <= v < X.count(0):
                raise io.InputError(f"{name} {v} is not a vertex")
        _bound("--bound", args.bound, X.trunc_dim, "trunc_dim")
        C = comma_category(X, args.src, args.dst, args.bound, args.max_beads)
    else:
        _, _, _, C = _localized_categories(args)
    report = io.category_to_json(C)
    return report, f"comma category with {len(C.objects)} objects, {C.num_morphisms} morphisms"


def cmd_finality(args):
    P, vx, vy, big = _localized_categories(args)
    N, n_inc = full_subcategory_N(big, P)
    F, f_inc = full_subcategory_F(N, P, vx, vy)
    first = check_finality(N, big, n_inc, "initial").as_dict()
    second = check_finality(F, N, f_inc, "terminal").as_dict()
    report = {
        "bounds": {"k": args.k, "x": args.src, "y": args.dst, "max_total_dim": args.bound,
                   "max_beads": args.max_beads},
        "N_in_Nec_initial": first,
        "F_in_N_terminal": second,
        "passed": first["passed"] and second["passed"],
    }
    summary = (f"N in Nec: {len(first['failures'])} failing fibers; "
               f"F in N: {len(second['failures'])} failing fibers")
    if not report["passed"]:
        raise CheckFailed(report, summary)
    return report, summary


def cmd_f_iso(args):
    if args.k is None:
        raise io.InputError("--k is required")
    rep = F_iso_check(args.k, args.bound)
    report = rep.as_dict()
    summary = (f"F: {rep.F_objects} objects / {rep.F_morphisms} morphisms; "
               f"power: {rep.power_objects} / {rep.power_morphisms}")
    if not rep.passed:
        raise CheckFailed(report, summary)
    return report, summary


VERBS: dict[str, Callable] = {
    "build": cmd_build,
    "restrict": cmd_restrict,
    "plus": cmd_plus,
    "counit-check": cmd_counit_check,
    "triangle-check": cmd_triangle_check,
    "quasicheck": cmd_quasicheck,
    "homology": cmd_homology,
    "pi1": cmd_pi1,
    "probe": cmd_probe,
    "necklace": cmd_necklace,
    "finality": cmd_finality,
    "f-iso": cmd_f_iso,
    "count": cmd_count,
}


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freedeg", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file (default: stdin)")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--trunc-dim", type=_nonneg, help="read the input only up to this dimension")
    common.add_argument("--max-dim", type=_nonneg, default=2, help="horn dimension or homology degree")
    common.add_argument("--bound", type=_nonneg, default=DEFAULT_BOUND,
                        help="necklace total dimension (f-iso: bead dimension)")
    common.add_argument("--max-beads", type=_nonneg, default=DEFAULT_MAX_BEADS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=_nonneg, default=DEFAULT_BUDGET, help="coset enumeration budget")

    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")
    build = sub.add_parser("build", parents=[common], help="construct a simplicial set")
    shape = build.add_mutually_exclusive_group()
    shape.add_argument("--simplex", type=_nonneg, metavar="K")
    shape.add_argument("--boundary", type=_nonneg, metavar="K")
    shape.add_argument("--poset", type=_nonneg, metavar="K", help="nerve of the poset [K]")
    shape.add_argument("--category", metavar="PATH", help="nerve of a category JSON file")
    shape.add_argument("--localization", type=_nonneg, metavar="K", help="the pushout P for Delta^K")
    shape.add_argument("--counterexample", action="store_true")
    shape.add_argument("--random", action="store_true", help="seeded random semisimplicial set")
    build.add_argument("--dim", type=_nonneg, help="truncation dimension of the result")

    simple = {
        "restrict": "forget degeneracies",
        "plus": "free degeneracies on a semisimplicial set",
        "count": "simplex counts per dimension",
        "counit-check": "check the counit is a simplicial map",
        "quasicheck": "look for unfilled inner horns up to --max-dim",
        "homology": "integral homology up to --max-dim",
    }
    for verb, text in simple.items():
        sub.add_parser(verb, parents=[common], help=text)
    tri = sub.add_parser("triangle-check", parents=[common], help="check both triangle identities")
    tri.add_argument("--count", type=_nonneg, default=20, help="random inputs when no --input")
    pi1 = sub.add_parser("pi1", parents=[common], help="fundamental group presentation and verdict")
    pi1.add_argument("--basepoint", type=_nonneg, default=0)
    necklace_verbs = {
        "probe": "mapping space probe over the localization of Delta^K",
        "necklace": "the bounded comma category of necklaces",
        "finality": "fiber checks for N in Nec|P and F in N",
        "f-iso": "compare F with the injective ordinal power",
    }
    for verb, text in necklace_verbs.items():
        p = sub.add_parser(verb, parents=[common], help=text)
        p.add_argument("--k", type=_nonneg)
        p.add_argument("--from", dest="src", type=_nonneg, default=0)
        p.add_argument("--to", dest="dst", type=_nonneg, default=1)
    return parser


def _emit(text: str, path: str | None) -> None:
    if not path:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".freedeg-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = 0
    try:
        report, summary = VERBS[args.verb](args)
    except CheckFailed as exc:
        report, summary, code = exc.report, str(exc), 1
    except io.InputError as exc:
        report, summary, code = exc.as_dict(), f"input error: {exc}", 2
    except (TruncationError, ClosureError) as exc:
        report, summary, code = {"error": f"bound violated: {exc}"}, f"bound violated: {exc}", 2
    except ValueError as exc:
        report, summary, code = {"error": str(exc)}, f"input error: {exc}", 2
    _emit(io.dumps(report), args.output)
    print(f"freedeg {args.verb}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
