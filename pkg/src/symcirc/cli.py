"""Command line front end.

Subcommands: partitions, rep, closure, check, ancilla, design.  Output is
JSON by default, CSV or an aligned table on request; runs with identical
flags produce byte-identical output.  SYMCIRC_THREADS caps the linear
algebra thread pool (it must be read before numpy loads, hence the early
environment setup below).
"""

from __future__ import annotations

import os

if "SYMCIRC_THREADS" in os.environ:
    _cap = os.environ["SYMCIRC_THREADS"]
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _cap)

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction


@dataclass
class RunConfig:
    tol: float = 1e-9
    max_dim: int | None = None
    seed: int = 0
    out: str | None = None
    format: str = "json"
    plot: bool = True

    def __post_init__(self):
        if not 0.0 < self.tol <= 1e-3:
            raise ValueError("tol must lie in (0, 1e-3]")


SCHEMA_PREFIX = "symcirc"


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    if isinstance(x, Fraction):
        return format(float(x), ".17g")
    return str(x)


def _json_default(obj):
    import numpy as np

    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _emit(cfg: RunConfig, payload, csv_rows=None, csv_header=None, schema=None):
    """Write the report in the configured format, to stdout or --out."""
    if cfg.format == "json" or csv_rows is None:
        text = json.dumps(payload, indent=2, sort_keys=False, default=_json_default) + "\n"
    elif cfg.format == "csv":
        lines = []
        if schema:
            lines.append(f"# schema={SCHEMA_PREFIX}.{schema}.v1")
        if csv_header:
            lines.append(csv_header)
        lines.extend(",".join(_fmt(v) for v in row) for row in csv_rows)
        text = "\n".join(lines) + "\n"
    else:  # aligned table
        header = csv_header.split(",") if csv_header else None
        rows = [[_fmt(v) for v in row] for row in csv_rows]
        cols = list(zip(*([header] + rows))) if header else list(zip(*rows))
        widths = [max(len(v) for v in col) for col in cols] if cols else []
        lines = []
        if header:
            lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_figure(cfg: RunConfig, kind: str, series: dict):
    """Render a figure next to the delimited output (report path only)."""
    if not (cfg.plot and cfg.out):
        return
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for label, (xs, ys) in sorted(series.items()):
        ax.plot(xs, ys, marker=".", linestyle="-", markersize=3, label=label)
    if kind == "ratio":
        ax.set_xlabel("k")
        ax.set_ylabel("resolved fraction of central constraints")
        ax.set_xscale("log")
        ax.set_yscale("log")
    elif kind == "design":
        ax.set_xlabel("n")
        ax.set_ylabel("moment-matching bound")
    else:
        ax.set_xlabel("k")
        ax.set_ylabel("number of sectors")
    ax.legend()
    fig.tight_layout()
    base, _ = os.path.splitext(cfg.out)
    fig.savefig(base + ".png", dpi=150)
    plt.close(fig)


def _parse_int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t]


def _parse_range(text: str) -> list[int]:
    if ":" in text:
        a, b = text.split(":")
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _parse_shape(text: str):
    from .partitions import YoungDiagram

    return YoungDiagram(tuple(int(t) for t in text.split(",") if t))


def _parse_gate(spec: str, n: int, d: int):
    """Named invariant unitaries: r+, r-, identity, exchange:i,j:theta."""
    from .blockops import identity_operator, embed_permutation, reflection_generator
    from .permutations import transposition

    if spec == "identity":
        return identity_operator(n, d)
    if spec in ("r+", "r-"):
        return reflection_generator(n, d, (0, 1, 2), spec[-1]).expm()
    if spec.startswith("exchange:"):
        _, pair, theta = spec.split(":")
        i, j = (int(t) - 1 for t in pair.split(","))
        swap = embed_permutation(n, d, transposition(n, i, j))
        return (1j * float(theta) * swap).expm()
    raise ValueError(f"unknown gate spec {spec!r}")


def _parse_ham(spec: str, d: int):
    """Named invariant 3-qudit Hamiltonians for the trace test."""
    from .blockops import identity_operator, embed_permutation, three_point_projector
    from .permutations import transposition

    if spec == "identity":
        return identity_operator(3, d)
    if spec == "sym-projector":
        return three_point_projector(3, d, (0, 1, 2), "sym")
    if spec == "antisym-projector":
        return three_point_projector(3, d, (0, 1, 2), "anti")
    if spec.startswith("swap:"):
        i, j = (int(t) - 1 for t in spec.split(":")[1].split(","))
        return embed_permutation(3, d, transposition(3, i, j))
    raise ValueError(f"unknown Hamiltonian spec {spec!r}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_partitions(args, cfg: RunConfig) -> int:
    from . import partitions as P

    if args.count:
        value = P.count_diagrams(args.n, args.d)
        _emit(cfg, {"n": args.n, "d": args.d, "count": value},
              [(args.n, args.d, value)], "n,d,count", "count")
        return 0
    if args.gap or args.ratio:
        gap = P.dimension_gap(args.n, args.k, args.d)
        payload = {"n": args.n, "k": args.k, "d": args.d, "gap": gap}
        row = [args.n, args.k, args.d, gap]
        header = "n,k,d,gap"
        if args.ratio:
            ratio = P.locality_ratio(args.n, args.k, args.d)
            payload["ratio"] = float(ratio)
            row.append(float(ratio))
            header += ",ratio"
        _emit(cfg, payload, [row], header, "gap")
        return 0
    if args.fig3 or args.table:
        ds = _parse_int_list(args.d_list)
        ks = _parse_range(args.k_range) if args.k_range else list(range(0, args.k_max + 1))
        rows = [(k, d, P.count_diagrams(k, d)) for d in ds for k in ks]
        schema = "fig3" if args.fig3 else "counts"
        _emit(cfg, {"rows": [list(r) for r in rows]}, rows, "k,d,count", schema)
        series = {
            f"d={d}": ([k for k in ks], [P.count_diagrams(k, d) for k in ks])
            for d in ds
        }
        _render_figure(cfg, "count", series)
        return 0
    if args.fig2:
        ds = _parse_int_list(args.d_list)
        n = args.n if args.n is not None else 10000
        if args.k_range:
            ks = [k for k in _parse_range(args.k_range) if 3 <= k <= n]
        else:
            ks = list(range(3, min(args.k_max, n) + 1, args.k_step))
        rows = []
        series = {}
        for d in ds:
            vals = [float(P.locality_ratio(n, k, d)) for k in ks]
            rows.extend((k, d, v) for k, v in zip(ks, vals))
            series[f"d={d}"] = (ks, vals)
        rows.sort(key=lambda r: (r[1], r[0]))
        _emit(cfg, {"n": n, "rows": [list(r) for r in rows]}, rows, "k,d,ratio", "fig2")
        _render_figure(cfg, "ratio", series)
        return 0
    if args.monotonicity:
        rep = P.check_monotonicity(args.d, args.k_max)
        payload = {
            "d": rep.d,
            "k_max": rep.k_max,
            "ok": rep.ok,
            "violations": list(rep.violations),
            "plateau_at": list(rep.plateau_at),
        }
        _emit(cfg, payload)
        return 0 if rep.ok else 1
    if args.facts:
        rep = P.check_branching_facts(args.m, args.d)
        payload = {
            "m": rep.m,
            "d": rep.d,
            "ok": rep.ok,
            "fact1_failures": [s.to_json() for s in rep.fact1_failures],
            "fact2_failures": [s.to_json() for s in rep.fact2_failures],
            "fact3_failures": [
                [a.to_json(), b.to_json()] for a, b in rep.fact3_failures
            ],
        }
        _emit(cfg, payload)
        return 0 if rep.ok else 1
    raise ValueError("choose one of --count/--gap/--ratio/--table/--fig2/--fig3/--monotonicity/--facts")


def cmd_rep(args, cfg: RunConfig) -> int:
    import numpy as np

    from . import symrep as R
    from .permutations import identity, parse_one_line

    shape = _parse_shape(args.shape)
    if args.intertwiner:
        other = _parse_shape(args.intertwiner)
        j, exists = R.find_twisted_intertwiner(shape, other)
        payload = {"shape": shape.to_json(), "other": other.to_json(), "exists": exists}
        rows = None
        if exists:
            payload["matrix"] = [[float(v) for v in row] for row in j]
            rows = [tuple(float(v) for v in row) for row in j]
        _emit(cfg, payload, rows, None, "intertwiner")
        return 0
    perm = (
        parse_one_line(args.perm, shape.n) if args.perm else identity(shape.n)
    )
    rep = R.build_irrep(shape)
    mat = R.rep_matrix(rep, perm)
    payload = {
        "shape": shape.to_json(),
        "perm": [p + 1 for p in perm],
        "dim": rep.dim,
        "matrix": [[float(v) for v in row] for row in mat],
        "character": float(np.trace(mat)),
    }
    _emit(cfg, payload, [tuple(float(v) for v in row) for row in mat], None, "repmatrix")
    return 0


def cmd_closure(args, cfg: RunConfig) -> int:
    from . import liealg as L
    from .blockops import local_generators

    basis = L.closure(
        local_generators(args.n, args.d, args.k), tol=cfg.tol, max_dim=cfg.max_dim
    )
    shapes = basis.shapes()
    sector = [
        L.check_sector_universality(basis, s) for s in shapes
    ]
    pairs = []
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            pairs.append(L.check_pair_independence(basis, shapes[i], shapes[j], seed=cfg.seed))
    payload = {
        "n": args.n,
        "d": args.d,
        "k": args.k,
        "dim": basis.dim,
        "center_dim": L.center_dimension(basis),
        "derived_dim": L.derived_dimension(basis),
        "closed": basis.closed,
        "per_sector": [
            {"shape": v.shape.to_json(), "m": v.m, "condA": v.ok} for v in sector
        ],
        "pairs": [
            {"shapes": [p.pair[0].to_json(), p.pair[1].to_json()], "verdict": p.status}
            for p in pairs
        ],
    }
    _emit(cfg, payload)
    return 0


def cmd_check(args, cfg: RunConfig) -> int:
    from . import semiuni as S

    if args.mode == "semiuni":
        rep = S.check_semiuniversality(
            args.n, args.d, args.k, tol=cfg.tol, max_dim=cfg.max_dim, seed=cfg.seed
        )
        rows = [
            ("sector", str(v.shape), v.m, "ok" if v.ok else "short")
            for v in rep.sector_table
        ] + [
            ("pair", f"{p.pair[0]}|{p.pair[1]}", p.rank if p.rank is not None else "-", p.status)
            for p in rep.pair_table
        ]
        _emit(cfg, rep.to_json(), rows, "kind,shapes,m_or_rank,verdict", "semiuni")
        verdict = rep.verdict
    elif args.mode == "vdet":
        gate = _parse_gate(args.gate, 3, args.d)
        v = S.check_two_local_membership(gate)
        _emit(cfg, {"mode": "vdet", "gate": args.gate, "member": v.member, "detail": v.detail})
        verdict = v.member
    elif args.mode == "trhc":
        ham = _parse_ham(args.ham, args.d)
        v = S.hamiltonian_two_local_reachable(ham)
        _emit(cfg, {"mode": "trhc", "ham": args.ham, "reachable": v.member, "detail": v.detail})
        verdict = v.member
    elif args.mode == "gate4":
        gate = _parse_gate(args.gate, 4, args.d)
        v = S.breaks_sector_correlation(gate)
        _emit(
            cfg,
            {
                "mode": "gate4",
                "gate": args.gate,
                "breaks": v.breaks,
                "phase_distance": v.phase_distance,
                "trace_abs": list(v.trace_abs),
                "trace_test": v.trace_test,
            },
        )
        verdict = v.breaks
    else:
        raise ValueError(f"unknown mode {args.mode!r}")
    if args.expect is not None:
        want = args.expect in ("pass", "true", "yes", "1")
        return 0 if verdict == want else 1
    return 0


def cmd_ancilla(args, cfg: RunConfig) -> int:
    from . import tensor as T

    if args.pair:
        rep = T.verify_ancilla_pair(args.pair, args.d)
        payload = {
            "pair": rep.which,
            "d": rep.d,
            "ok": rep.ok,
            "residuals": {
                "eigenvector": rep.eigvec_residual,
                "symmetric_killed": rep.sym_kill_residual,
                "antisymmetric_killed": rep.anti_kill_residual,
                "involution": rep.involution_residual,
            },
        }
        _emit(cfg, payload)
        return 0 if rep.ok else 1
    if args.wedge:
        rep = T.verify_wedge_eigen(args.d)
        payload = {
            "d": rep.d,
            "ok": rep.ok,
            "eigenvalues": rep.eigenvalues,
            "residuals": rep.residuals,
        }
        _emit(cfg, payload)
        return 0 if rep.ok else 1
    if args.lift:
        import numpy as np

        if args.ham == "identity":
            h = np.eye(args.d**args.nsys, dtype=complex)
        elif args.ham == "traceless-diag":
            size = args.d**args.nsys
            h = np.diag(np.arange(size) - (size - 1) / 2.0).astype(complex)
        elif args.ham == "swap" and args.nsys == 2:
            size = args.d**2
            h = np.zeros((size, size), dtype=complex)
            for a in range(args.d):
                for b in range(args.d):
                    h[b * args.d + a, a * args.d + b] = 1.0
        else:
            raise ValueError(f"unknown --ham {args.ham!r} for nsys={args.nsys}")
        rep = T.verify_centerless_lift(args.nsys, args.d, h, seed=cfg.seed)
        payload = {
            "nsys": rep.n_sys,
            "d": rep.d,
            "ham": args.ham,
            "centerless_ok": rep.centerless_ok,
            "invariant_ok": rep.invariant_ok,
            "center_traces": {k: float(v) for k, v in rep.center_traces.items()},
            "invariance_residual": rep.invariance_residual,
        }
        _emit(cfg, payload)
        return 0 if rep.centerless_ok else 1
    raise ValueError("choose one of --pair/--wedge/--lift")


def cmd_design(args, cfg: RunConfig) -> int:
    from . import designs as D

    if args.moments:
        rep = D.verify_moment_projectors(args.n)
        payload = {
            "n": rep.n,
            "ok": rep.ok,
            "table": [
                {
                    "shape": s.to_json(),
                    "transposition_sum": str(b),
                    "a0": str(a0),
                    "a1": str(a1),
                }
                for s, b, a0, a1 in rep.table
            ],
        }
        _emit(cfg, payload)
        return 0 if rep.ok else 1
    if args.witness:
        w = D.two_design_failure(args.n, args.d, tol=cfg.tol)
        payload = {
            "n": w.n,
            "d": w.d,
            "semi_universal": w.semi_universal,
            "correlated_pairs": [[a.to_json(), b.to_json()] for a, b in w.correlated_pairs],
        }
        _emit(cfg, payload)
        return 0
    ns = _parse_range(args.n_range) if args.n_range else [args.n]
    rows = []
    reports = []
    for n in ns:
        rep = D.design_order(n, args.d)
        reports.append(rep)
        rows.append((rep.n, rep.d, rep.third_min, rep.t_max, rep.matches_formula))
    payload = {
        "reports": [
            {
                "n": r.n,
                "d": r.d,
                "third_min": r.third_min,
                "third_min_shape": r.third_min_shape.to_json(),
                "t_max": r.t_max,
                "formula_applies": r.formula_applies,
                "matches_formula": r.matches_formula,
            }
            for r in reports
        ]
    }
    _emit(cfg, payload, rows, "n,d,third_min,t_max,matches_formula", "design")
    if len(reports) > 1:
        xs = [r.n for r in reports]
        _render_figure(
            cfg,
            "design",
            {
                "t_max": (xs, [r.t_max for r in reports]),
                "n(n-3)/2 - 1": (xs, [n * (n - 3) / 2 - 1 for n in xs]),
            },
        )
    failed = any(r.matches_formula is False for r in reports)
    return 1 if failed else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symcirc",
        description="Block decompositions, Lie closures and universality "
        "verdicts for SU(d)-invariant qudit circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--max-dim", type=int, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--format", choices=("json", "csv", "table"), default="json")
        p.add_argument("--no-plot", action="store_true",
                       help="skip the figure normally rendered next to --out")

    p = sub.add_parser("partitions", help="counting, gaps, ratios, figure data")
    common(p)
    p.add_argument("--count", action="store_true")
    p.add_argument("--gap", action="store_true")
    p.add_argument("--ratio", action="store_true")
    p.add_argument("--table", action="store_true")
    p.add_argument("--fig2", action="store_true", help="k,d,ratio data (log scan)")
    p.add_argument("--fig3", action="store_true", help="k,d,count data")
    p.add_argument("--monotonicity", action="store_true")
    p.add_argument("--facts", action="store_true")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--k-max", type=int, default=60)
    p.add_argument("--k-step", type=int, default=1)
    p.add_argument("--k-range", type=str, default=None, help="like 0:60; overrides --k-max")
    p.add_argument("--d-list", type=str, default="2,3,4")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("rep", help="irrep matrices, characters, intertwiners")
    common(p)
    p.add_argument("--shape", type=str, required=True)
    p.add_argument("--perm", type=str, default=None, help="1-based one-line notation")
    p.add_argument("--intertwiner", type=str, default=None,
                   help="second shape; solve for the sign-twisted intertwiner")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("closure", help="Lie closure report for k-local generators")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("check", help="universality verdicts")
    common(p)
    p.add_argument("--mode", choices=("semiuni", "vdet", "trhc", "gate4"), required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--gate", type=str, default="r+",
                   help="identity | r+ | r- | exchange:i,j:theta")
    p.add_argument("--ham", type=str, default="swap:1,2",
                   help="identity | swap:i,j | sym-projector | antisym-projector")
    p.add_argument("--expect", choices=("pass", "fail", "true", "false", "yes", "no", "1", "0"),
                   default=None, help="turn the verdict into an assertion (CI)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("ancilla", help="ancilla-state and projector verifications")
    common(p)
    p.add_argument("--pair", type=int, choices=(1, 2), default=None)
    p.add_argument("--wedge", action="store_true")
    p.add_argument("--lift", action="store_true",
                   help="centerless lift with three ancilla qudits")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--nsys", type=int, default=1)
    p.add_argument("--ham", type=str, default="identity",
                   help="identity | traceless-diag | swap (nsys=2)")
    p.set_defaults(func=cmd_ancilla)

    p = sub.add_parser("design", help="design-order bounds")
    common(p)
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n-range", type=str, default=None, help="like 9:14")
    p.add_argument("--moments", action="store_true",
                   help="projector identities for the two cheap sectors")
    p.add_argument("--witness", action="store_true",
                   help="correlated pairs witnessing 2-design failure of 2-local circuits")
    p.set_defaults(func=cmd_design)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            tol=args.tol,
            max_dim=args.max_dim,
            seed=args.seed,
            out=args.out,
            format=args.format,
            plot=not args.no_plot,
        )
        return args.func(args, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
