"""Command-line front end: ``tropica <command> ...``.

Exit status is 0 on success, 2 when the answer is a mathematically negative
result (degenerate system, independent family, failed identity) and 1 on
errors.  Every command prints plain text by default and a JSON object with
``"schema": 1`` under ``--format json``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import MonomialOverlap, NotAnIdentity, SizeGuard, TropicaError
from .fixtures import fixture_dir, fixtures, names
from .matrices import (
    Matrix,
    bideterminant,
    det,
    is_sign_singular,
    is_trop_singular,
    permanent,
)
from .polyid import (
    SYMBOLIC_LIMITS,
    amitsur_levitzki_numeric,
    build_identity,
    capelli_numeric,
    expand,
    strong_transfer_residual,
)
from .ranks import RANK_FIELDS, Unknown, gm_rank, rank_report
from .scalars import Ext, MaxPlus, Sym, bal, format_scalar, format_value, neg, pos, zero_of
from .systems import (
    Budget,
    cramer_solve_ext,
    cramer_solve_sym,
    gm_witness,
    radon_partition,
    tropical_cramer,
    trop_witness,
    two_sided_cramer,
    weak_witness,
)
from .textio import load_matrix, load_vector

SCHEMA = 1
EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


def _json_value(x):
    if isinstance(x, (MaxPlus, Sym, Ext)):
        return format_scalar(x)
    if isinstance(x, Fraction):
        return format_value(x)
    if isinstance(x, Unknown):
        return {"unknown": x.guard}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    return x


def _resolve(path: str) -> Path:
    """Paths under ``fixtures/`` fall back to the packaged fixture directory."""
    p = Path(path)
    if not p.exists() and p.parts and p.parts[0] == "fixtures":
        alt = fixture_dir().joinpath(*p.parts[1:])
        if alt.exists():
            return alt
    return p


def parse_matrix(path: str, semiring: str | None = None) -> Matrix:
    return load_matrix(_resolve(path), semiring)


def _vectors(A: Matrix, axis: str) -> list:
    src = A if axis == "rows" else A.T
    return [list(src.row(i)) for i in range(src.rows)]


class Output:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []
        self.data: dict = {"schema": SCHEMA}

    def line(self, text: str = ""):
        self.lines.append(text)

    def emit(self, stream):
        if self.fmt == "json":
            stream.write(json.dumps(_json_value(self.data), sort_keys=True) + "\n")
        else:
            stream.write("\n".join(self.lines) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_ranks(args, out: Output) -> int:
    A = parse_matrix(args.path, "rmax")
    only = set(args.only.split(",")) if args.only else None
    report = rank_report(A, slow=args.slow, threads=args.threads, only=only)
    out.data.update(command="ranks", shape=list(A.shape), ranks=report.to_dict(), violations=report.violations)
    width = max(len(k) for k in RANK_FIELDS)
    out.line(f"matrix {A.rows}x{A.cols}")
    for k in RANK_FIELDS:
        out.line(f"{k.ljust(width)}  {report.values[k]}")
    unknown = [k for k in RANK_FIELDS if isinstance(report.values[k], Unknown)]
    for k in unknown:
        out.line(f"# {k} unknown: {report.values[k].guard}")
    out.line("hasse: ok" if report.ok else "hasse: VIOLATED " + "; ".join(report.violations))
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_det(args, out: Output) -> int:
    A = parse_matrix(args.path, args.semiring)
    out.data.update(command="det", semiring=A.semiring, shape=list(A.shape))
    if A.semiring == "rmax":
        bd = bideterminant(A)
        info = {
            "det_plus": bd.plus,
            "det_minus": bd.minus,
            "permanent": permanent(A),
            "balanced": bd.balanced,
            "trop_singular": is_trop_singular(A),
            "sign_singular": is_sign_singular(A),
        }
    else:
        info = {"det": det(A)}
    out.data.update(info)
    for k, v in info.items():
        out.line(f"{k}: {_text(v)}")
    return EXIT_OK


def _text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (MaxPlus, Sym, Ext)):
        return format_scalar(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_text(x) for x in v)
    return str(v)


SOLVE_SEMIRING = {"sym": "smax", "ext": "te", "tropical": "rmax", "two_sided": "rmax"}


def cmd_solve(args, out: Output) -> int:
    sr = SOLVE_SEMIRING[args.mode]
    out.data.update(command="solve", mode=args.mode)
    if args.mode == "two_sided":
        if len(args.paths) != 4:
            raise TropicaError("two_sided needs A1 A2 b1 b2")
        A1, A2 = parse_matrix(args.paths[0], sr), parse_matrix(args.paths[1], sr)
        b1, b2 = (load_vector(_resolve(p), sr) for p in args.paths[2:])
        res = two_sided_cramer(A1, A2, b1, b2)
        return _solution(out, res.x, None if res.x is not None else res.report)
    if len(args.paths) != 2:
        raise TropicaError(f"{args.mode} needs A and b")
    A = parse_matrix(args.paths[0], sr)
    b = load_vector(_resolve(args.paths[1]), sr)
    if args.mode == "tropical":
        res = tropical_cramer(A, b)
        return _solution(out, res.x, res.degenerate)
    res = (cramer_solve_sym if args.mode == "sym" else cramer_solve_ext)(A, b)
    if not res.ok:
        out.data["cramer"] = res.data.get("cramer")
        return _solution(out, None, res.reason, cramer=res.data.get("cramer"))
    return _solution(out, res.x, None)


def _solution(out: Output, x, reason, cramer=None) -> int:
    if x is None:
        out.data.update(status="degenerate", reason=reason)
        out.line(f"degenerate: {reason}")
        if cramer is not None:
            out.line(f"cramer: {_text(cramer)}")
        return EXIT_NEGATIVE
    out.data.update(status="solved", x=list(x))
    out.line(f"x: {_text(x)}")
    return EXIT_OK


def cmd_witness(args, out: Output) -> int:
    A = parse_matrix(args.path, "rmax")
    vs = _vectors(A, args.axis)
    out.data.update(command="witness", kind=args.kind, axis=args.axis)
    budget = None if args.slow else Budget(2_000_000)
    if args.kind == "gm":
        w = gm_witness(vs, budget)
        if w is not None:
            out.data.update(status="dependent", I=list(w.I), J=list(w.J), coefficients=list(w.coefficients))
            out.line("dependent")
            out.line("I: " + " ".join(str(i + 1) for i in w.I))
            out.line("J: " + " ".join(str(j + 1) for j in w.J))
            out.line("coefficients: " + _text(w.coefficients))
            return EXIT_OK
    elif args.kind == "tropical":
        w = trop_witness(vs, budget)
        if w is not None:
            out.data.update(status="dependent", coefficients=list(w.coefficients))
            out.line("dependent")
            out.line("coefficients: " + _text(w.coefficients))
            return EXIT_OK
    else:
        w = weak_witness(vs)
        if w is not None:
            idx, coeffs = w
            out.data.update(status="dependent", index=idx, coefficients=list(coeffs))
            out.line("dependent")
            out.line(f"vector {idx + 1} = combination of the others")
            out.line("coefficients: " + _text(coeffs))
            return EXIT_OK
    out.data.update(status="independent")
    out.line("independent")
    return EXIT_NEGATIVE


def cmd_radon(args, out: Output) -> int:
    A = parse_matrix(args.path, "rmax")
    w = radon_partition(_vectors(A, "rows"))
    out.data.update(command="radon", I=list(w.I), J=list(w.J), coefficients=list(w.coefficients))
    out.line("I: " + " ".join(str(i + 1) for i in w.I))
    out.line("J: " + " ".join(str(j + 1) for j in w.J))
    out.line("coefficients: " + _text(w.coefficients))
    return EXIT_OK


def _random_scalar(rng: random.Random, semiring: str):
    if rng.random() < 0.15:
        return zero_of(semiring)
    v = Fraction(rng.randint(-6, 6))
    if semiring == "rmax":
        return MaxPlus(v)
    if semiring == "smax":
        return rng.choice((pos, neg, bal))(v)
    return Ext(rng.choice((1, 2)), v)


def random_matrix(rng: random.Random, n: int, semiring: str) -> Matrix:
    return Matrix([[_random_scalar(rng, semiring) for _ in range(n)] for _ in range(n)], semiring)


NUMERIC_KINDS = ("amitsur_levitzki", "capelli")


def numeric_identity(kind: str, n: int, trials: int, rng: random.Random, semiring: str) -> list[bool]:
    results = []
    for _ in range(trials):
        if kind == "amitsur_levitzki":
            mats = [random_matrix(rng, n, semiring) for _ in range(2 * n)]
            even, odd = amitsur_levitzki_numeric(mats)
        else:
            k = n * n + 1
            xs = [random_matrix(rng, n, semiring) for _ in range(k)]
            ys = [random_matrix(rng, n, semiring) for _ in range(k + 1)]
            even, odd = capelli_numeric(xs, ys)
        results.append(even == odd)
    return results


def cmd_identities(args, out: Output) -> int:
    kind, n = args.kind, args.size
    out.data.update(command="identities", kind=kind, size=n)
    numeric = args.numeric or (kind in NUMERIC_KINDS and n > SYMBOLIC_LIMITS[kind])
    if numeric:
        if kind not in NUMERIC_KINDS:
            raise SizeGuard(f"{kind} has no numeric check; symbolic limit is n <= {SYMBOLIC_LIMITS[kind]}")
        sr = args.semiring or "rmax"
        results = numeric_identity(kind, n, args.trials, random.Random(args.seed), sr)
        passed = all(results)
        out.data.update(mode="numeric", semiring=sr, trials=len(results), passed=passed)
        out.line(f"{kind} n={n} numeric over {sr}: {sum(results)}/{len(results)} trials equal")
        out.line("PASS" if passed else "FAIL")
        return EXIT_OK if passed else EXIT_NEGATIVE
    params = {}
    for key in ("p", "m", "r"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    ident = build_identity(kind, n, **params)
    parts, passed = [], True
    for part in ident.parts:
        ok = expand(part.lhs) == expand(part.rhs)
        passed &= ok
        # monomial counts of the minus-free sides P+ + Q- and P- + Q+
        left, right = (expand(side) for side in part.semiring_sides())
        entry = {"label": part.label, "lhs_monomials": len(left), "rhs_monomials": len(right), "equal": ok}
        line = f"[{part.label}] lhs {len(left)} monomials, rhs {len(right)} monomials: {'equal' if ok else 'DIFFER'}"
        if args.strong:
            try:
                r = strong_transfer_residual(part.p_plus, part.p_minus, part.q_plus, part.q_minus)
                entry["residual_monomials"] = len(r)
                line += f", R {len(r)} monomials"
            except (MonomialOverlap, NotAnIdentity) as exc:
                entry["residual"] = f"{type(exc).__name__}: {exc}"
                line += f", R unavailable ({type(exc).__name__})"
        parts.append(entry)
        out.line(line)
    out.data.update(mode="symbolic", variables=ident.nvars, parts=parts, passed=passed)
    out.lines.insert(0, f"{kind} n={n}: {ident.nvars} variables, {len(ident.parts)} scalar identities")
    if args.certificate:
        out.line(ident.certificate().rstrip("\n"))
        out.data["certificate"] = ident.certificate()
    out.line("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_NEGATIVE


def cmd_fixtures(args, out: Output) -> int:
    out.data["command"] = "fixtures"
    if not args.name:
        out.data["names"] = names()
        for name in names():
            out.line(name)
        return EXIT_OK
    M = fixtures(args.name, args.n)
    out.data["matrix"] = M.to_json()
    out.lines.append(M.to_text().rstrip("\n"))
    return EXIT_OK


def cmd_gm_search(args, out: Output) -> int:
    """Random search for a matrix whose row and column GM ranks differ."""
    rng = random.Random(args.seed)
    choices = [MaxPlus(-1), MaxPlus(0), MaxPlus.zero()]
    out.data.update(command="gm-search", rows=args.rows, cols=args.cols, samples=args.samples)
    for t in range(args.samples):
        A = Matrix([[rng.choice(choices) for _ in range(args.cols)] for _ in range(args.rows)])
        try:
            mr, mc = gm_rank(A, "rows", Budget(200_000)), gm_rank(A, "cols", Budget(200_000))
        except SizeGuard:
            continue
        if mr != mc:
            out.data.update(status="found", sample=t, matrix=A.to_json(), mr_GM=mr, mc_GM=mc)
            out.line(f"sample {t}: mr_GM={mr} mc_GM={mc}")
            out.lines.append(A.to_text().rstrip("\n"))
            return EXIT_OK
    out.data["status"] = "none found"
    out.line(f"no {args.rows}x{args.cols} sample out of {args.samples} separates mr_GM and mc_GM")
    return EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--semiring", choices=("rmax", "smax", "te"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--slow", action="store_true", help="lift the node budgets of witness searches")

    parser = argparse.ArgumentParser(prog="tropica", description="Exact tropical linear algebra.")
    parser.add_argument("--version", action="version", version=f"tropica {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ranks", parents=[common], help="all rank functions of a matrix")
    p.add_argument("path")
    p.add_argument("--only", help="comma-separated subset of rank names")
    p.set_defaults(func=cmd_ranks)

    p = sub.add_parser("det", parents=[common], help="determinant data of a square matrix")
    p.add_argument("path")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("solve", parents=[common], help="Cramer solvers")
    p.add_argument("--mode", choices=tuple(SOLVE_SEMIRING), required=True)
    p.add_argument("paths", nargs="+", help="A b, or A1 A2 b1 b2 for two_sided")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("witness", parents=[common], help="dependence witnesses")
    p.add_argument("path")
    p.add_argument("--kind", choices=("gm", "tropical", "weak"), default="gm")
    p.add_argument("--axis", choices=("rows", "cols"), default="rows")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("radon", parents=[common], help="Radon partition of the rows")
    p.add_argument("path")
    p.set_defaults(func=cmd_radon)

    p = sub.add_parser("identities", parents=[common], help="transfer-principle checks")
    p.add_argument("kind", choices=tuple(SYMBOLIC_LIMITS))
    p.add_argument("size", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--strong", action="store_true", help="also compute the common residual R")
    p.add_argument("--certificate", action="store_true", help="print the full monomial listing")
    p.add_argument("--numeric", action="store_true", help="random evaluation instead of expansion")
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("fixtures", parents=[common], help="list or print catalogue matrices")
    p.add_argument("name", nargs="?")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("gm-search", parents=[common], help="search for mr_GM != mc_GM")
    p.add_argument("--rows", type=int, default=3)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_gm_search)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        code = args.func(args, out)
    except TropicaError as exc:
        stderr.write(f"tropica {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    out.emit(stdout)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
