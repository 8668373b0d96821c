"""Command-line front end.

Subcommands: classify, invariants, reps, verify, fuzz.  Input arrays come
from a JSON file (--input) or from a named constructor (--family plus
parameter flags).  Output is deterministic JSON by default; --format
markdown renders human-oriented tables.  Exit codes: 0 success, 1 failed
verification or fuzz findings, 2 unusable input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import classifier, intertwiners, invariants, jsonio, verifier
from . import perm_array as pa
from . import representations as reps_mod
from .errors import PermQGError

FUZZ_MOD_RANGE = (0.1, 10.0)


def _parse_complex(text: str) -> complex:
    parts = str(text).split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _load_array(args) -> pa.PermArray:
    if args.input:
        if args.input == "-":
            doc = json.load(sys.stdin)
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        return pa.from_json_dict(doc, tolerance=args.tolerance)
    if args.family:
        params = {}
        if args.family in ("SUq3_inversions", "Uq2_cycles", "Uq2_example"):
            if args.q is None:
                raise PermQGError(f"constructor {args.family} needs --q")
            params["q"] = args.q
        if args.family == "Uq2_example":
            params["alpha"] = args.alpha
            params["beta"] = args.beta
        if args.family in ("DefSU", "DefAKM"):
            if args.p is None:
                raise PermQGError(f"constructor {args.family} needs --p")
            params["p"] = args.p
            params["m"] = args.m
        if args.family == "DefAKM":
            params["k"] = args.k
        arr = pa.named_array(args.family, **params)
        if args.tolerance is not None:
            arr = arr.with_tolerance(args.tolerance)
        return arr
    raise PermQGError("provide --input PATH or --family NAME with parameters")


def _emit(args, doc, markdown: str | None = None) -> None:
    if args.format == "markdown" and markdown is not None:
        print(markdown)
    else:
        print(jsonio.dumps(doc))


def _classification_markdown(result) -> str:
    lines = [f"family: {result.family}"]
    for name, value in result.params().items():
        lines.append(f"{name}: {value}")
    lines.append(f"nontrivial: {result.nontrivial}")
    if result.note:
        lines.append(f"note: {result.note}")
    if result.alias:
        lines.append(f"alias: {result.alias}")
    lines.append("trace:")
    for step in result.trace:
        lines.append(f"  - {step}")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    arr = _load_array(args)
    result = classifier.classify(arr)
    _emit(args, result.to_json_dict(), _classification_markdown(result))
    return 0


def cmd_invariants(args) -> int:
    arr = _load_array(args)
    report = invariants.compute_invariants(pa.normalize(arr))
    doc = report.to_json_dict()
    md = "\n".join(f"{key}: {value}" for key, value in sorted(doc.items()))
    _emit(args, doc, md)
    return 0


def family_bundle(result: classifier.Classification, arr: pa.PermArray):
    """Representations for a classified family plus the array they satisfy.

    The bundled representations verify against the canonical defining
    array of the family (included in the output), not necessarily against
    the raw input, which may differ from it by relabeling and scaling.
    """
    tol = arr.tolerance
    if result.family == "Torus":
        defining = pa.normalize(arr)
        bundle = [reps_mod.diagonal_rep()]
    elif result.family == "Uq2":
        q = result.q
        defining = pa.uq2_example(q, 1.0, 1.0, tolerance=tol)
        bundle = [reps_mod.uq2_one_dim(q)]
        if abs(q.imag) < tol and 0.0 < q.real < 1.0:
            bundle.append(reps_mod.uq2_fock_truncated(q.real, dim=20))
    elif result.family == "Apkm":
        p, k, m = result.p, result.k, result.m
        defining = pa.def_akm(p, k, m, tolerance=tol)
        bundle = [reps_mod.akm_irreps(p, k, m, "diag")]
        if (k + m) % 3 != 0:
            bundle.append(reps_mod.akm_irreps(p, k, m, "family2"))
            bundle.append(reps_mod.akm_irreps(p, k, m, "family3"))
        else:
            bundle.append(reps_mod.apm_torus_rep(p, m, "a"))
            bundle.append(reps_mod.apm_torus_rep(p, m, "b"))
        if k == m:
            g = reps_mod.SemidirectElement(1.0, 1.0, "x")
            bundle.append(reps_mod.semidirect_point_rep(g, pa.zeta_pow(-m)))
    else:  # SUpm
        p, m = result.p, result.m
        defining = pa.def_su(p, m, tolerance=tol)
        bundle = [reps_mod.diagonal_rep(meta={"family": "SUpm", "m": m})]
        if abs(p.imag) < tol and -1.0 < p.real < 0.0:
            # the two-block shift model embeds along the subgroup at -p
            fock = reps_mod.uq2_fock_truncated(-p.real, dim=20)
            meta = {**fock.meta, "family": "SUpm", "m": m, "embedded_from": "Uq2"}
            bundle.append(reps_mod.Representation(dim=fock.dim, blocks=fock.blocks, meta=meta))
    return defining, bundle


def cmd_reps(args) -> int:
    arr = _load_array(args)
    result = classifier.classify(arr)
    defining, bundle = family_bundle(result, arr)
    doc = {
        "classification": result.to_json_dict(),
        "defining_array": pa.to_json_dict(defining),
        "representations": [rep.to_json_dict() for rep in bundle],
    }
    md = _classification_markdown(result) + f"\nrepresentations: {len(bundle)}"
    _emit(args, doc, md)
    return 0


def cmd_verify(args) -> int:
    arr = _load_array(args)
    if args.rep:
        with open(args.rep, "r", encoding="utf-8") as fh:
            rep = reps_mod.representation_from_json(json.load(fh))
        report = verifier.run_all(rep, arr)
        _emit(args, report.to_json_dict(), report.to_markdown())
        return 0 if report.overall_pass else 1
    result = classifier.classify(arr)
    defining, bundle = family_bundle(result, arr)
    reports = [verifier.run_all(rep, defining) for rep in bundle]
    overall = all(r.overall_pass for r in reports)
    doc = {
        "family": result.family,
        "reports": [
            {"meta": rep.meta, **report.to_json_dict()}
            for rep, report in zip(bundle, reports)
        ],
        "overall_pass": overall,
    }
    md = "\n\n".join(
        f"### {rep.meta.get('label', '?')}\n" + report.to_markdown()
        for rep, report in zip(bundle, reports)
    )
    _emit(args, doc, md)
    return 0 if overall else 1


# ---------------------------------------------------------------------------
# Fuzzing
# ---------------------------------------------------------------------------

def _fuzz_battery(tolerance: float) -> list[tuple[str, pa.PermArray]]:
    """Named arrays reaching every classifier branch; uniform sampling alone
    never lands on the measure-zero branches."""
    battery = [("all_ones", pa.all_ones(tolerance))]
    for p in (2.0, 1.0 + 1.0j):
        for k in range(3):
            for m in range(3):
                battery.append((f"akm_p{p}_k{k}_m{m}", pa.def_akm(p, k, m, tolerance)))
    for p in (2.0j, 0.7, 1.0):
        for m in range(3):
            battery.append((f"su_p{p}_m{m}", pa.def_su(p, m, tolerance)))
    for q in (2.0, 0.5, 1.0 + 1.0j, -3.0):
        battery.append((f"uq2_q{q}", pa.uq2_example(q, 1.0, 1.0, tolerance)))
    for q in (0.5, 2.0):
        battery.append((f"su3inv_q{q}", pa.su3_inversions(q, tolerance)))
    battery.append(("uq2_cycles_q2", pa.uq2_cycles(2.0, tolerance)))
    return battery


def _fuzz_one(name: str, arr: pa.PermArray, rng: np.random.Generator) -> list[str]:
    failures = []
    tol_rel = 1e-10
    try:
        inv = invariants.compute_invariants(pa.normalize(arr))
    except PermQGError as exc:
        return [f"{name}: invariants failed: {exc}"]
    chars = inv.char_constants
    for (l, n), value in chars.items():
        recip = value * chars[(n, l)]
        if abs(recip - 1.0) > tol_rel * (1.0 + abs(recip)):
            failures.append(f"{name}: reciprocal identity fails at ({l},{n})")
    for n in (1, 2, 3):
        for l in (1, 2, 3):
            for j in (1, 2, 3):
                if len({n, l, j}) < 3:
                    continue
                lhs = chars[(n, l)] * chars[(l, j)]
                rhs = chars[(n, j)]
                if abs(lhs - rhs) > tol_rel * (1.0 + abs(rhs)):
                    failures.append(f"{name}: chain identity fails at ({n},{l},{j})")
    ops = intertwiners.build(arr)
    statics = intertwiners.check_static_identities(ops, invariants.compute_invariants(arr))
    if statics["p_offdiagonal"] != 0.0:
        failures.append(f"{name}: P has nonzero off-diagonal entries")
    if statics["gram_vs_modular"] > 1e-12 * (1.0 + max(invariants.modular_constants(arr))):
        failures.append(f"{name}: gram matrix is not diag(M)")
    if statics["q_range_in_span"] > 1e-12:
        failures.append(f"{name}: range of Q leaves span(x_k)")
    base = classifier.classify(arr)
    sigma = tuple(rng.permutation([1, 2, 3]).tolist())
    scale = complex(*rng.normal(size=2))
    if abs(scale) < 1e-3:
        scale = 1.0 + 0.0j
    moved = classifier.classify(pa.permute_and_scale(arr, sigma, scale))
    if moved.family != base.family:
        failures.append(
            f"{name}: family changed under relabel {sigma}: {base.family} -> {moved.family}")
    return failures


def cmd_fuzz(args) -> int:
    rng = np.random.default_rng(args.seed)
    tolerance = args.tolerance if args.tolerance is not None else pa.DEFAULT_TOLERANCE
    failures: list[str] = []
    checked = 0
    for name, arr in _fuzz_battery(tolerance):
        failures.extend(_fuzz_one(name, arr, rng))
        checked += 1
    for index in range(args.samples):
        arr = pa.random_array(rng, tolerance, FUZZ_MOD_RANGE)
        failures.extend(_fuzz_one(f"sample_{index}", arr, rng))
        checked += 1
    doc = {
        "seed": args.seed,
        "samples": args.samples,
        "arrays_checked": checked,
        "failures": failures,
        "pass": not failures,
    }
    md = f"checked {checked} arrays, {len(failures)} failures"
    _emit(args, doc, md)
    return 0 if not failures else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permqg")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", "-i", help="path to array JSON ('-' for stdin)")
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--format", choices=("json", "markdown"), default="json")
        p.add_argument("--family", help="named constructor: " + ", ".join(sorted(pa.NAMED_KINDS)))
        p.add_argument("--q", type=_parse_complex, default=None, help="RE,IM")
        p.add_argument("--p", type=_parse_complex, default=None, help="RE,IM")
        p.add_argument("--k", type=int, default=0)
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--alpha", type=_parse_complex, default=1.0 + 0.0j)
        p.add_argument("--beta", type=_parse_complex, default=1.0 + 0.0j)

    p_classify = sub.add_parser("classify", help="classify an array")
    common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_inv = sub.add_parser("invariants", help="invariants of an array")
    common(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_reps = sub.add_parser("reps", help="representation bundle for the classified family")
    common(p_reps)
    p_reps.set_defaults(func=cmd_reps)

    p_verify = sub.add_parser("verify", help="verify relations on a representation")
    common(p_verify)
    p_verify.add_argument("--rep", help="path to representation JSON; default: family bundle")
    p_verify.set_defaults(func=cmd_verify)

    p_fuzz = sub.add_parser("fuzz", help="seeded property fuzzing")
    common(p_fuzz)
    p_fuzz.add_argument("--samples", type=int, default=1000)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PermQGError, OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        sys.stderr.write(jsonio.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
