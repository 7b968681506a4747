"""Command line interface: generate, solve, kcf, sweep, example."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bench import (
    QSVD_FORMULATIONS,
    RSVD_FORMULATIONS,
    SWEEP_AXES,
    run_sweep,
    worked_example,
    write_sweep_csv,
)
from .ddarith import dd_to_decimal_string
from .eigensolve import CLASS_FINITE, NotDefiniteError, solve_general, solve_hpd
from .genmat import GeneratorConfig, generate_qsvd, generate_rsvd
from .kcf import (
    partition_from_ranks,
    predict_kcf,
    qsvd_partition_from_ranks,
    spectrum_counts_check,
    svd_partition,
    verify_reduction,
)
from .matcore import rank_with_tol, read_matrix_text, write_matrix_text
from .pencils import (
    build_aug_qsvd,
    build_aug_rsvd,
    build_aug_svd,
    build_cpf_qsvd,
    build_cpf_rsvd,
    build_cpf_svd,
    build_qqqq,
    build_sq_qsvd,
    build_sq_svd,
)
from .recovery import classify_spectrum, group_quadruples


def _add_matrix_args(parser, names):
    for name in names:
        parser.add_argument(f"--{name}", type=Path, metavar="FILE",
                            help=f"matrix {name.upper()} in the text format")


def _load_inputs(args):
    mats = {}
    for name in ("a", "b", "c", "d", "e"):
        path = getattr(args, name, None)
        if path is not None:
            mats[name] = read_matrix_text(path)
    if "a" not in mats:
        raise SystemExit("matrix A is required (--a FILE)")
    return mats


def _problem_kind(mats) -> str:
    if "b" in mats and "c" in mats:
        return "rsvd"
    if "c" in mats:
        return "qsvd"
    return "svd"


def _build_pencil(form: str, mats):
    kind = _problem_kind(mats)
    if form == "qqqq":
        needed = {"a", "b", "c", "d", "e"}
        if set(mats) < needed:
            raise SystemExit("qqqq needs --a --b --c --d --e")
        return build_qqqq(mats["a"], mats["b"], mats["c"], mats["d"], mats["e"]), kind
    builders = {
        ("sq", "svd"): lambda: build_sq_svd(mats["a"]),
        ("aug", "svd"): lambda: build_aug_svd(mats["a"]),
        ("cpf", "svd"): lambda: build_cpf_svd(mats["a"]),
        ("sq", "qsvd"): lambda: build_sq_qsvd(mats["a"], mats["c"]),
        ("aug", "qsvd"): lambda: build_aug_qsvd(mats["a"], mats["c"]),
        ("cpf", "qsvd"): lambda: build_cpf_qsvd(mats["a"], mats["c"]),
        ("aug", "rsvd"): lambda: build_aug_rsvd(mats["a"], mats["b"], mats["c"]),
        ("cpf", "rsvd"): lambda: build_cpf_rsvd(mats["a"], mats["b"], mats["c"]),
    }
    try:
        return builders[(form, kind)](), kind
    except KeyError:
        raise SystemExit(f"formulation {form!r} is not defined for a {kind} problem")


def cmd_generate(args):
    cfg = GeneratorConfig(n=args.n, kappa_sigma=args.kappa_sigma,
                          kappa_y=args.kappa_y, kappa_x=args.kappa_x,
                          seed=args.seed)
    problem = generate_qsvd(cfg) if args.kind == "qsvd" else generate_rsvd(cfg)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_matrix_text(out / "A.txt", problem.a)
    if problem.b is not None:
        write_matrix_text(out / "B.txt", problem.b)
    write_matrix_text(out / "C.txt", problem.c)
    with open(out / "truth.txt", "w", newline="\n") as fh:
        for j in range(problem.n):
            fh.write(dd_to_decimal_string(problem.sigmas[j], 30) + "\n")
    print(f"wrote {args.kind} problem (n={args.n}) to {out}")


def cmd_solve(args):
    mats = _load_inputs(args)
    pencil, kind = _build_pencil(args.formulation, mats)
    sol = None
    if args.formulation in ("sq", "aug"):
        try:
            sol = solve_hpd(pencil)
        except (ValueError, NotDefiniteError):
            sol = None
    if sol is None:
        sol = solve_general(pencil)
    for v in sol.values:
        lam = v.value
        print(f"{lam.real:.16e} {lam.imag:.16e} {v.kind}")
    if args.recover:
        if args.formulation != "cpf":
            raise SystemExit("--recover needs the cpf formulation")
        dims = {"svd": (pencil.row_blocks[0], pencil.row_blocks[1]),
                "qsvd": (pencil.row_blocks[0], pencil.row_blocks[1], pencil.row_blocks[3]),
                "rsvd": (pencil.row_blocks[0], pencil.row_blocks[1],
                         pencil.row_blocks[2], pencil.row_blocks[3])}[kind]
        partition = None
        if kind == "rsvd":
            a, b, c = mats["a"], mats["b"], mats["c"]
            p, q = a.shape
            m, n = b.shape[1], c.shape[0]
            partition = partition_from_ranks(
                p, q, m, n,
                rank_with_tol(a).rank, rank_with_tol(b).rank, rank_with_tol(c).rank,
                rank_with_tol(np.hstack([a, b])).rank,
                rank_with_tol(np.vstack([a, c])).rank,
                rank_with_tol(np.block([[a, b], [c, np.zeros((n, m), dtype=complex)]])).rank)
        cls = classify_spectrum(sol, kind, dims, partition=partition)
        for t in cls.triplets:
            print(f"{t.kind} {t.alpha:.16e} {t.beta:.16e} {t.gamma:.16e} "
                  f"{t.sigma:.16e} {t.phase_residual:.3e}")


def cmd_kcf(args):
    if args.generated:
        cfg = GeneratorConfig(n=args.n, kappa_sigma=args.kappa_sigma,
                              kappa_y=args.kappa_y, kappa_x=args.kappa_x,
                              seed=args.seed)
        kind = args.kind
        problem = generate_qsvd(cfg) if kind == "qsvd" else generate_rsvd(cfg)
        n = problem.n
        if kind == "qsvd":
            partition = qsvd_partition_from_ranks(n, n, n, n, n, n)
            pencil = build_cpf_qsvd(problem.a, problem.c)
            formulation = "cpf-qsvd"
        else:
            partition = partition_from_ranks(n, n, n, n, n, n, n, n, n, 2 * n)
            pencil = build_cpf_rsvd(problem.a, problem.b, problem.c)
            formulation = "cpf-rsvd"
        sigmas = problem.true_sigmas_float()
        structure = predict_kcf(formulation, partition, sigmas)
        _print_structure(structure)
        if kind == "qsvd":
            report = verify_reduction(pencil, formulation, partition,
                                      u=problem.u, v=problem.v, y=problem.y)
        else:
            report = verify_reduction(pencil, formulation, partition,
                                      u=problem.u, v=problem.v,
                                      x=problem.x, y=problem.y)
        print(f"verification: stage1 off-structure {report.stage1_off:.3e}, "
              f"stage2 {report.stage2_off:.3e}, relative {report.relative:.3e}")
        sol = solve_general(pencil, class_tol_rel=args.class_tol)
        check = spectrum_counts_check(sol, structure)
        status = "ok" if check.ok else f"MISMATCH {check.mismatches()}"
        print(f"spectrum counts vs prediction: {status}")
        return

    mats = _load_inputs(args)
    kind = _problem_kind(mats)
    a = mats["a"]
    p, q = a.shape
    sigmas = ()
    if kind == "svd":
        r = rank_with_tol(a)
        partition = svd_partition(p, q, r.rank)
        sigmas = r.values[: r.rank]
        formulation = f"{args.formulation}-svd"
    elif kind == "qsvd":
        c = mats["c"]
        n = c.shape[0]
        r_a = rank_with_tol(a).rank
        r_c = rank_with_tol(c).rank
        r_ac = rank_with_tol(np.vstack([a, c])).rank
        partition = qsvd_partition_from_ranks(p, q, n, r_a, r_c, r_ac)
        formulation = f"{args.formulation}-qsvd"
        if partition.p1:
            sigmas = _quotient_sigmas(a, c, partition.p1)
    else:
        b, c = mats["b"], mats["c"]
        m, n = b.shape[1], c.shape[0]
        partition = partition_from_ranks(
            p, q, m, n,
            rank_with_tol(a).rank, rank_with_tol(b).rank, rank_with_tol(c).rank,
            rank_with_tol(np.hstack([a, b])).rank,
            rank_with_tol(np.vstack([a, c])).rank,
            rank_with_tol(np.block([[a, b], [c, np.zeros((n, m), dtype=complex)]])).rank)
        formulation = f"{args.formulation}-rsvd"
        if partition.p1:
            sigmas = _restricted_sigmas(a, b, c, partition.p1)
    structure = predict_kcf(formulation, partition, sigmas)
    _print_structure(structure)


def _quotient_sigmas(a, c, p1):
    """Finite nonzero quotient values via the cpf pencil itself."""
    sol = solve_general(build_cpf_qsvd(a, c), class_tol_rel=1e-4)
    finite = [v for v in sol.values if v.kind == CLASS_FINITE]
    quads = group_quadruples(finite, rel_tol=1e-3)
    if len(quads) != p1:
        raise SystemExit(f"recovered {len(quads)} quotient values, expected {p1}")
    return [q.sigma for q in quads]


def _restricted_sigmas(a, b, c, p1):
    sol = solve_general(build_cpf_rsvd(a, b, c), class_tol_rel=1e-4)
    finite = [v for v in sol.values if v.kind == CLASS_FINITE]
    quads = group_quadruples(finite, rel_tol=1e-3)
    if len(quads) != p1:
        raise SystemExit(f"recovered {len(quads)} restricted values, expected {p1}")
    return [q.sigma for q in quads]


def _print_structure(structure):
    print(f"predicted canonical structure ({structure.rows} x {structure.cols}):")
    for b in sorted(structure.blocks, key=lambda b: (b.kind, b.rows)):
        if b.kind == "zero-block":
            print(f"  zero block {b.rows} x {b.cols}")
        elif b.kind == "n-infinite":
            print(f"  N_{b.rows} (infinite eigenvalue)")
        elif b.kind == "j-finite":
            z = b.eigenvalue
            print(f"  J_{b.rows}({z.real:+.6e}{z.imag:+.6e}i)")
        else:
            print(f"  {b.kind} {b.rows} x {b.cols}")
    counts = structure.eigenvalue_counts()
    print("expected eigenvalue counts: " +
          ", ".join(f"{k}={v}" for k, v in counts.items()))


def cmd_sweep(args):
    grid = [float(g) for g in args.grid.split(",")]
    summary = run_sweep(args.kind, args.axis, grid, samples=args.samples,
                        seed=args.seed, n=args.n, kappa_sigma=args.kappa_sigma,
                        kappa_y=args.kappa_y, kappa_x=args.kappa_x)
    write_sweep_csv(summary, args.out)
    print(f"wrote {len(summary.cells)} rows to {args.out}")


def cmd_example(args):
    ex = worked_example(seed=args.seed)
    print("\n".join(ex.lines()))


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pencilsvd",
        description="Quotient and restricted singular values via "
                    "cross-product-free pencils")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a conditioned test problem")
    g.add_argument("--kind", choices=("qsvd", "rsvd"), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--kappa-y", dest="kappa_y", type=float, default=10.0)
    g.add_argument("--kappa-x", dest="kappa_x", type=float, default=1.0)
    g.add_argument("--kappa-sigma", dest="kappa_sigma", type=float, default=10.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve a pencil formulation for matrices")
    s.add_argument("--formulation", choices=("sq", "aug", "cpf", "qqqq"),
                   required=True)
    s.add_argument("--recover", action="store_true",
                   help="also print singular triplets (cpf only)")
    _add_matrix_args(s, ("a", "b", "c", "d", "e"))
    s.set_defaults(func=cmd_solve)

    k = sub.add_parser("kcf", help="predict (and optionally verify) structure")
    k.add_argument("--formulation", choices=("aug", "cpf"), default="cpf")
    _add_matrix_args(k, ("a", "b", "c"))
    k.add_argument("--generated", action="store_true",
                   help="generate a problem internally and verify the "
                        "transformation chain against its exact factors")
    k.add_argument("--kind", choices=("qsvd", "rsvd"), default="qsvd")
    k.add_argument("--n", type=int, default=4)
    k.add_argument("--kappa-y", dest="kappa_y", type=float, default=10.0)
    k.add_argument("--kappa-x", dest="kappa_x", type=float, default=10.0)
    k.add_argument("--kappa-sigma", dest="kappa_sigma", type=float, default=10.0)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--class-tol", dest="class_tol", type=float, default=1e-4)
    k.set_defaults(func=cmd_kcf)

    w = sub.add_parser("sweep", help="median-max chordal error sweep, CSV out")
    w.add_argument("--kind", choices=("qsvd", "rsvd"), required=True)
    w.add_argument("--axis", choices=SWEEP_AXES, required=True)
    w.add_argument("--grid", required=True,
                   help="comma-separated condition numbers, e.g. 1e1,1e2,1e3")
    w.add_argument("--samples", type=int, default=100)
    w.add_argument("--n", type=int, default=10)
    w.add_argument("--kappa-y", dest="kappa_y", type=float, default=10.0)
    w.add_argument("--kappa-x", dest="kappa_x", type=float, default=10.0)
    w.add_argument("--kappa-sigma", dest="kappa_sigma", type=float, default=10.0)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", type=Path, required=True)
    w.set_defaults(func=cmd_sweep)

    e = sub.add_parser("example", help="replay the n=4 accuracy illustration")
    e.add_argument("--seed", type=int, default=7)
    e.set_defaults(func=cmd_example)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
