"""Command-line front end: family tables, d-invariant sweeps, torsion and verification suites."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .cyclotomic import CyclotomicNumber
from .diagrams import KanenobuParams, NotAKnot, kanenobu_white_graph
from .intmatrix import knot_determinant, smith_normal_form
from .invariants import casson_walker, d_invariant_profile, jones_polynomial, signature
from .obstructions import CuspMatrix, ShapeMismatch, cusp_report, surgery_obstruction, weight_one
from .presentations import (
    EmptyFamily,
    abelianize,
    cyclicity_criterion,
    enumerate_family,
    family_csv,
    family_rows,
    kanenobu_matrix,
    kanenobu_presentation,
    presentation_from_white_graph,
    same_relator,
)
from .torsion import (
    HypothesisViolation,
    NonCyclicHomology,
    fox_matrix,
    monotone_threshold,
    torsion_component,
    torsion_vector,
)

SCHEMA = "kanenobu-report/1"

EXIT_OK, EXIT_ERROR, EXIT_FAMILY, EXIT_VERIFY = 0, 1, 2, 3


def parse_range(text: str) -> range:
    """'A..B' inclusive."""
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kanenobu", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--p", type=int, default=0)
    common.add_argument("--q", type=int, default=1)
    common.add_argument("--p0", type=int, default=0)
    common.add_argument("--q0", type=int, default=1)
    common.add_argument("--p-range", type=parse_range, default=parse_range("-10..10"))
    common.add_argument("--divisor", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None)
    common.add_argument("--jobs", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("family", parents=[common], help="members of the family with cyclic H_1")
    sub.add_parser("dinv", parents=[common], help="d-invariant extremes along the family")
    sub.add_parser("torsion", parents=[common], help="torsion vector of K(n,p,q)")
    sub.add_parser("invariants", parents=[common], help="Jones, signature, lambda, weight one for K(n,p,q)")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("matrix", nargs="?", default=None, help="alternate cusp matrix file (verify cusp)")
    return parser


def _normalize_argv(argv):
    # allow "--p-range -30..-1" although the value starts with a dash
    out = []
    it = iter(argv)
    for a in it:
        if a == "--p-range":
            out.append(f"--p-range={next(it, '')}")
        else:
            out.append(a)
    return out


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))  # map keeps input order


def _emit(args, payload, csv_text=None):
    if args.format == "csv":
        if csv_text is None:
            raise SystemExit(f"{args.command} has no CSV output")
        text = csv_text
    else:
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_family(args) -> int:
    spec, members = enumerate_family(args.n, args.p0, args.q0, args.p_range)
    rows = family_rows(members)
    payload = {
        "command": "family",
        "n": args.n, "p0": args.p0, "q0": args.q0,
        "admissible_residues": sorted(spec.admissible_residues),
        "rows": [{**r, "det": str(r["det"]), "h1_order": str(r["h1_order"])} for r in rows],
    }
    _emit(args, payload, family_csv(rows))
    return EXIT_OK


def _dinv_row(job):
    n, p, q, lam = job
    k = KanenobuParams(n, p, q)
    prof = d_invariant_profile(k, Fraction(lam))
    plus, minus = prof.sign_candidates
    obs = surgery_obstruction(prof, prof.N)
    return {
        "n": n, "p": p, "q": q, "status": "ok", "lambda": str(prof.lam),
        "min_d": str(min(plus)), "max_d": str(max(plus)),
        "min_d_neg": str(min(minus)), "max_d_neg": str(max(minus)),
        "obstructed": obs.verdict == "obstructed",
    }


DINV_FIELDS = ["n", "p", "q", "status", "lambda", "min_d", "max_d", "min_d_neg", "max_d_neg", "obstructed"]


def cmd_dinv(args) -> int:
    spec, members = enumerate_family(args.n, args.p0, args.q0, args.p_range)
    s = args.p0 + args.q0
    admitted = {k.p for k in members}
    lam = str(casson_walker(members[0])) if members else None
    jobs = [(args.n, k.p, k.q, lam) for k in members]
    computed = dict(zip((j[1] for j in jobs), _pmap(_dinv_row, jobs, args.jobs)))
    rows = []
    for p in args.p_range:
        if p in admitted:
            rows.append(computed[p])
        else:
            rows.append({"n": args.n, "p": p, "q": s - p, "status": "skipped: noncyclic"})
    ok = [r for r in rows if r["status"] == "ok"]
    summary = {}
    for label, seq in (("increasing_p", ok), ("decreasing_p", ok[::-1])):
        ps = [r["p"] for r in seq]
        highs = [Fraction(r["max_d"]) for r in seq]
        lows = [Fraction(r["min_d"]) for r in seq]
        summary[label] = {"threshold_p": monotone_threshold(ps, highs, lows)} if len(ps) > 1 else {"threshold_p": None}
    payload = {"command": "dinv", "n": args.n, "p0": args.p0, "q0": args.q0, "rows": rows, "monotone": summary}
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=DINV_FIELDS, lineterminator="\n", restval="")
    w.writeheader()
    for r in rows:
        w.writerow({**r, "obstructed": str(r["obstructed"]).lower()} if "obstructed" in r else r)
    _emit(args, payload, buf.getvalue())
    return EXIT_OK


def cmd_torsion(args) -> int:
    k = KanenobuParams(args.n, args.p, args.q)
    tv = torsion_vector(k)
    payload = {"command": "torsion", "n": k.n, "p": k.p, "q": k.q, "torsion": tv.to_json(),
               "reversal_symmetric": tv.has_reversal_symmetry()}
    if args.divisor is not None:
        if args.divisor <= 1 or tv.N % args.divisor:
            raise ValueError(f"--divisor must be a divisor of {tv.N} greater than 1")
        comp, row = torsion_component(fox_matrix(kanenobu_presentation(k), anchor=3), args.divisor)
        payload["component"] = {"d": args.divisor, "value": comp.to_json(), "row": row}
    csv_text = "index,coefficient\n" + "".join(f"{i},{c}\n" for i, c in enumerate(tv.coeffs))
    _emit(args, payload, csv_text)
    return EXIT_OK


def cmd_invariants(args) -> int:
    k = KanenobuParams(args.n, args.p, args.q)
    m = kanenobu_matrix(k)
    st = smith_normal_form(m).structure
    payload = {
        "command": "invariants", "n": k.n, "p": k.p, "q": k.q,
        "det": str(knot_determinant(m)),
        "h1": st.to_json(),
        "jones": jones_polynomial(k).to_json(),
        "signature": signature(k),
        "lambda": str(casson_walker(k)),
        "weight_one": weight_one(k).to_json(),
    }
    _emit(args, payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites: each returns a list of (name, passed, detail)


def _samples(n):
    """Five (p, q) with cyclic H_1, from the family p + q = 1."""
    _, members = enumerate_family(n, 0, 1, range(-5, 6))
    return [(k.p, k.q) for k in members[:5]]


def suite_cusp(args):
    m = CuspMatrix.load(args.matrix)
    rep = cusp_report(m)
    return [
        ("row triple-sums vanish", all(s == 0 for s in rep["row_sums"]), str(rep["row_sums"])),
        ("shape parameters coincide at e^(i pi/3)", rep["shape_parameters_coincide"], ""),
        ("six angles of pi/3 sum to 2 pi", rep["edge_angle_sum_is_2pi"], ""),
    ]


def suite_foxmatrix(args):
    n = args.n
    d = 2 * n + 1
    z = CyclotomicNumber.zeta(d, 1)
    one = CyclotomicNumber.from_int(d, 1)
    zn = z ** (n + 1)
    out = []
    for p, q in _samples(n):
        k = KanenobuParams(n, p, q)
        fm = fox_matrix(kanenobu_presentation(k), anchor=3)
        phi = fm.under(d)
        c = lambda x: CyclotomicNumber.from_int(d, x)
        want = [
            [c(-p - 1) - zn, zn, c(p)],
            [one, c(-q) - (one - z ** -(n + 1)) / (one - z ** -1), c(0)],
            [c(p), c(0), one + zn - c(p)],
        ]
        got = [row[:3] for row in phi[:3]]
        out.append((f"phi(A) rows 1-3 at (n,p,q)=({n},{p},{q})", got == want, ""))
        aug = [[int(x) for x in r] for r in fm.augmented()]
        out.append((f"augmented Fox matrix equals M at ({n},{p},{q})", aug == kanenobu_matrix(k).tolist(), ""))
    return out


def suite_jones(args):
    n = args.n
    out = []
    for p, q in _samples(n):
        a = jones_polynomial(KanenobuParams(n, p, q))
        b = jones_polynomial(KanenobuParams(n, p + 1, q - 1))
        out.append((f"V(K({n},{p},{q})) = V(K({n},{p + 1},{q - 1}))", a == b, ""))
        out.append((f"|V(-1)| = {(2 * n + 1) ** 2} at ({n},{p},{q})", abs(a(-1)) == (2 * n + 1) ** 2, ""))
    return out


def suite_presentation(args):
    n = args.n
    out = []
    for p, q in _samples(n):
        k = KanenobuParams(n, p, q)
        got = presentation_from_white_graph(kanenobu_white_graph(k)).relators
        want = kanenobu_presentation(k).relators
        out.append((f"white-graph relators at ({n},{p},{q})", all(same_relator(a, b) for a, b in zip(got, want)), ""))
        out.append((f"abelianisation equals M at ({n},{p},{q})", abelianize(kanenobu_presentation(k)) == kanenobu_matrix(k), ""))
    return out


def suite_determinants(args):
    out = []
    for n in range(2, 7):
        bad = [(p, q) for p in range(-5, 6) for q in range(-5, 6)
               if knot_determinant(kanenobu_matrix(KanenobuParams(n, p, q))) != (2 * n + 1) ** 2]
        out.append((f"|det M| = (2n+1)^2 for n={n}", not bad, str(bad[:3])))
        bad_c = [(p, q) for p in range(-5, 6) for q in range(-5, 6) if not _cyclic_ok(n, p, q)]
        out.append((f"cyclicity criteria agree for n={n}", not bad_c, str(bad_c[:3])))
    return out


def _cyclic_ok(n, p, q):
    try:
        cyclicity_criterion(KanenobuParams(n, p, q))
    except AssertionError:
        return False
    return True


def suite_weight(args):
    out = []
    for n in range(2, 6):
        ok = True
        for p in range(-5, 6):
            for q in range(-5, 6):
                r = weight_one(KanenobuParams(n, p, q))
                ok &= (r.verdict == "proven") == (r.quotient_order == 1)
        out.append((f"weight-one reduction for n={n}", ok, ""))
    return out


SUITES = {
    "cusp": suite_cusp,
    "foxmatrix": suite_foxmatrix,
    "jones": suite_jones,
    "presentation": suite_presentation,
    "determinants": suite_determinants,
    "weight": suite_weight,
}


def cmd_verify(args) -> int:
    checks = SUITES[args.suite](args)
    passed = all(ok for _, ok, _ in checks)
    payload = {
        "command": "verify", "suite": args.suite, "passed": passed,
        "checks": [{"name": name, "passed": ok, "detail": detail} for name, ok, detail in checks],
    }
    csv_text = "name,passed\n" + "".join(f"\"{name}\",{str(ok).lower()}\n" for name, ok, _ in checks)
    _emit(args, payload, csv_text)
    return EXIT_OK if passed else EXIT_VERIFY


COMMANDS = {
    "family": cmd_family,
    "dinv": cmd_dinv,
    "torsion": cmd_torsion,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    argv = _normalize_argv(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except EmptyFamily as exc:
        print(f"empty family: {exc}", file=sys.stderr)
        return EXIT_FAMILY
    except (NonCyclicHomology, HypothesisViolation, NotAKnot, ShapeMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
