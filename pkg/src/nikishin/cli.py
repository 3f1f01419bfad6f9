"""Command line front end.

Commands
--------
moments          moments of one measure of a system
normality-scan   normality verdicts over all indices up to a total degree
identity-check   randomized checks of the determinant and spectral identities
zeros            zeros of one multiple orthogonal polynomial

Exit codes: 0 ok, 2 bad input or spec, 3 system build failure, 4 verdict
failure, 5 identity failure.
"""

import argparse
import ast
import io
import json
import math
import operator
import sys

import jsonschema
import numpy as np

from . import detkit, mop_solver, spectral
from .errors import (IndexConditionViolated, MixedParity, NikishinError, OrderExceeded,
                     WrongArity)
from .measure_core import (Arc, BranchCut, CircleMeasure, Interval, RealMeasure,
                           WeightSpec)
from .nikishin_builder import (GeneratorChainRL, GeneratorChainUC, SystemKind,
                               build_system, check_F_nonvanishing, flip_r2_rl,
                               flip_r2_uc)
from .precision import ctx, normal_threshold, set_dps

EXIT_OK, EXIT_SCHEMA, EXIT_BUILD, EXIT_VERDICT, EXIT_IDENTITY = 0, 2, 3, 4, 5

_number = {"type": ["number", "string"]}

SPEC_SCHEMA = {
    "type": "object",
    "required": ["kind", "generators"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["real", "circle"]},
        "generators": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["support", "weight"],
                "additionalProperties": False,
                "properties": {
                    "support": {"type": "array", "items": _number,
                                "minItems": 2, "maxItems": 2},
                    "weight": {
                        "type": "object",
                        "required": ["kind"],
                        "additionalProperties": False,
                        "properties": {
                            "kind": {"enum": ["uniform", "polynomial", "cosine", "custom"]},
                            "params": {"type": "object"},
                        },
                    },
                    "sign": {"enum": [1, -1]},
                },
            },
        },
        "branch_t0": {"oneOf": [_number, {"type": "null"}]},
        "quad_order": {"type": "integer", "minimum": 1},
        "touching_ok": {"type": "boolean"},
        "dps": {"type": "integer", "minimum": 15},
    },
}


class SpecError(Exception):
    """Raised for unreadable or schema-invalid spec files."""


# ---------------------------------------------------------------------------
# spec parsing

_ops = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_number(value):
    """Decimal number, or a decimal string possibly involving ``pi`` (``"2*pi"``)."""
    if isinstance(value, bool):
        raise SpecError(f"not a number: {value!r}")
    if isinstance(value, (int, float)):
        return ctx.mpf(repr(value)) if isinstance(value, float) else ctx.mpf(value)
    try:
        tree = ast.parse(str(value).strip(), mode="eval")
    except SyntaxError as exc:
        raise SpecError(f"not a number: {value!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return ctx.mpf(ast.get_source_segment(str(value).strip(), node) or node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return +ctx.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _ops:
            return _ops[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _ops:
            return _ops[type(node.op)](ev(node.operand))
        raise SpecError(f"not a number: {value!r}")

    return ev(tree)


def load_spec(path):
    """Read and validate a JSON system spec; raises SpecError."""
    try:
        with open(path) as fh:
            spec = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec {path}: {exc}") from exc
    errors = sorted(jsonschema.Draft7Validator(SPEC_SCHEMA).iter_errors(spec),
                    key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        missing = ""
        if e.validator == "required":
            field = e.message.split("'")[1]
            where = f"{where}/{field}" if where != "<root>" else field
            missing = " (missing)"
        raise SpecError(f"spec field {where}{missing}: {e.message}")
    return spec


def _weight(gen, i):
    w = gen["weight"]
    params = w.get("params", {})
    sign = gen.get("sign", 1)
    kind = w["kind"]
    try:
        if kind == "uniform":
            return WeightSpec.uniform(sign)
        if kind == "polynomial":
            return WeightSpec.polynomial([parse_number(c) for c in params["coeffs"]], sign)
        if kind == "cosine":
            return WeightSpec.cosine(float(parse_number(params.get("amplitude", 0))), sign)
        return WeightSpec.custom([float(parse_number(x)) for x in params["x"]],
                                 [float(parse_number(v)) for v in params["w"]], sign)
    except KeyError as exc:
        raise SpecError(f"spec field generators/{i}/weight/params/{exc.args[0]} (missing)") from exc


def build_from_spec(spec):
    """Build the NikishinSystem described by a validated spec dictionary."""
    if "dps" in spec:
        set_dps(spec["dps"])
    order = spec.get("quad_order", 200)
    touching = spec.get("touching_ok", False)
    sigmas = []
    for i, gen in enumerate(spec["generators"]):
        lo, hi = (parse_number(v) for v in gen["support"])
        weight = _weight(gen, i)
        if spec["kind"] == "real":
            sigmas.append(RealMeasure(Interval(lo, hi), weight, order=order))
        else:
            sigmas.append(CircleMeasure(Arc(lo, hi), weight, order=order))
    if spec["kind"] == "real":
        return build_system(GeneratorChainRL(sigmas, touching))
    t0 = spec.get("branch_t0")
    branch = None if t0 is None else BranchCut(parse_number(t0))
    return build_system(GeneratorChainUC(sigmas, branch, touching))


# ---------------------------------------------------------------------------
# formatting

def fmt(x):
    """17 significant digits; complex values as ``re+imj``."""
    if isinstance(x, (ctx.mpc, complex)):
        x = ctx.mpc(x)
        return f"{fmt(x.real)}{'-' if x.imag < 0 else '+'}{fmt(abs(x.imag))}j"
    f = float(x)
    if (f == 0 and x != 0) or math.isinf(f):
        # outside the double range
        return ctx.nstr(ctx.mpf(x), 17)
    return format(f, ".17g")


def _write_csv(rows, header, out):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(row) + "\n")
    text = buf.getvalue()
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

def cmd_moments(system, j, kmax, out=None):
    if not 1 <= j <= system.r:
        raise SpecError(f"measure index j={j} outside 1..{system.r}")
    mu = system.mus[j - 1]
    rows = []
    for k in range(kmax + 1):
        c = ctx.mpc(mu.moment(k))
        # parts below the rounding floor of int |x|**k d|mu| are reported as 0
        floor = normal_threshold(ctx.dps) * mu.abs_integrate(lambda x: abs(x) ** k)
        re, im = (v if abs(v) > floor else 0 for v in (c.real, c.imag))
        rows.append([str(k), fmt(re), fmt(im)])
    _write_csv(rows, ["k", "re", "im"], out)
    return EXIT_OK


def cmd_normality_scan(system, max_degree, mode, out=None):
    if max_degree > mop_solver.MAX_SCAN_DEGREE:
        raise SpecError(f"--max-degree is limited to {mop_solver.MAX_SCAN_DEGREE}")
    table = mop_solver.scan(system, max_total=max_degree, mode=mode)
    rows = []
    for row in table:
        v = row.verdict
        rows.append([str(row.index), fmt(v.det), fmt(float(v.scaled_min)), v.verdict.value,
                     "NA" if v.residual is None else fmt(v.residual), ";".join(row.labels)])
    _write_csv(rows, ["index", "det", "scaled_min", "verdict", "residual", "theorem_labels"], out)
    failed = (mop_solver.ScanMode(mode) is mop_solver.ScanMode.THEOREM
              and table.count("SINGULAR") > 0)
    return EXIT_VERDICT if failed else EXIT_OK


def cmd_zeros(system, index, out=None):
    n = mop_solver.MultiIndex.of(index)
    v = mop_solver.normality(system, n, solve=False)
    if not v.is_normal:
        print(f"index {n} is {v.verdict.value}", file=sys.stderr)
        return EXIT_VERDICT
    if system.kind is SystemKind.CIRCLE:
        poly = mop_solver.laurent_poly_uc(system, n)
    else:
        poly = mop_solver.type2_poly_rl(system, n)
    rows = [[fmt(z.real), fmt(z.imag)] for z in mop_solver.zeros(poly)]
    _write_csv(rows, ["re", "im"], out)
    return EXIT_OK


IDENTITIES = ("andreief", "cauchy-vandermonde", "stripping", "flip", "phase", "sign",
              "perturbation")
TOLERANCES = {"andreief": 1e-12, "cauchy-vandermonde": 1e-10, "stripping": 1e-9,
              "flip": 1e-8, "phase": detkit.PHASE_TOL, "perturbation": 1e-10}


def random_andreief_instance(rng, max_n=6, max_atoms=8):
    """Random (A, f, g, mu) with polynomial f, g and positive atoms in [0, 1]."""
    N = int(rng.integers(1, max_n + 1))
    M = int(rng.integers(0, N + 1))
    natoms = int(rng.integers(1, max_atoms + 1))
    mu = detkit.DiscreteMeasure(tuple(zip(rng.uniform(0, 1, natoms),
                                          rng.uniform(0.1, 1, natoms))))
    A = rng.uniform(-1, 1, (N - M, N))
    f = [np.polynomial.Polynomial(rng.uniform(-1, 1, 4)) for _ in range(M)]
    g = [np.polynomial.Polynomial(rng.uniform(-1, 1, 4)) for _ in range(N)]
    return A, f, g, mu


def andreief_deviation(rng):
    A, f, g, mu = random_andreief_instance(rng)
    lhs = detkit.andreief_lhs(A, f, g, mu)
    rhs = detkit.andreief_rhs(A, f, g, mu)
    return abs(lhs - rhs) / max(1.0, abs(lhs))


def random_cv_instance(rng, max_total=8, sep=1e-3):
    """Points t in [0, 1] and z in [2, 3] with pairwise separation >= sep."""
    n1 = int(rng.integers(0, max_total + 1))
    n2 = int(rng.integers(0, max_total - n1 + 1))
    if n1 + n2 == 0:
        n1 = 1

    def spaced(k, lo, hi):
        while True:
            x = np.sort(rng.uniform(lo, hi, k))
            if k < 2 or np.min(np.diff(x)) >= sep:
                return x

    return spaced(n1 + n2, 0, 1), spaced(n2, 2, 3), n1, n2


def cv_deviation(rng):
    t, z, n1, n2 = random_cv_instance(rng)
    closed = detkit.cauchy_vandermonde_closed(t, z, n1, n2)
    dense = ctx.det(detkit.cauchy_vandermonde_matrix(t, z, n1, n2, exact=True))
    return float(abs(closed - dense) / abs(dense))


def _exterior_point(rng, support, dist=0.5):
    lo, hi = float(support.lo), float(support.hi)
    while True:
        z = complex(rng.uniform(lo - 2, hi + 2), rng.uniform(-2, 2))
        if support.distance(z) >= dist:
            return z


def flip_deviation(system, kmax=10):
    """Largest relative error of the flipped system against an independent route."""
    if system.kind is SystemKind.REAL_LINE:
        flipped = flip_r2_rl(system)
        sigma2 = system.generators.sigmas[1]
        mu2 = system.mus[1]
        coeffs = spectral.jacobi_from_measure(sigma2, 2)
        b1, a1sq, c = coeffs.b[0], coeffs.a[0] ** 2, sigma2.mass

        def m_stripped(x):   # from 1/m = b1 - x - a1^2 m1 for sigma2 / c
            return (b1 - x - c / sigma2.cauchy(x)) / a1sq

        dens = [-(a1sq / c) * m_stripped(x) for x in mu2.nodes]
        worst = 0
        for k in range(kmax + 1):
            ref = ctx.fdot(mu2.masses, [d * x ** k for d, x in zip(dens, mu2.nodes)])
            worst = max(worst, abs(flipped.mus[1].moment(k) - ref) / abs(ref))
        return float(worst)
    flipped = flip_r2_uc(system)
    sigma2 = system.generators.sigmas[1]
    dev = spectral.reciprocal_F_check(sigma2, kmax)
    mu1, mu1t = system.mus[0], flipped.mus[1]
    for k in range(-kmax, kmax + 1):
        ref = mu1.moment(k)
        dev = max(dev, float(abs(mu1t.moment(k) - ref) / abs(mu1.mass)))
    return dev


def random_perturbation_case(rng, max_total=8):
    s = int(rng.integers(0, 3))
    while True:
        n1 = int(rng.integers(0, max_total + 1))
        n2 = int(rng.integers(0, max_total - n1 + 1))
        if n1 + n2 >= 1 and n1 <= n2 - s:
            break
    return (n1, n2), list(rng.uniform(-1, 1, s + 1))


def perturbation_deviation(system, rng):
    n, k = random_perturbation_case(rng)
    d, dt = mop_solver.perturbation_det_check(system, n, k)
    return float(abs(d - dt) / abs(d))


def cmd_identity_check(which, system=None, trials=100, seed=0, index=None, tolerance=None):
    rng = np.random.default_rng(seed)
    tol = dict(TOLERANCES)
    if tolerance is not None:
        tol[which] = tolerance
    extra = {}
    if which == "andreief":
        dev = max(andreief_deviation(rng) for _ in range(trials))
        ok = dev <= tol[which]
    elif which == "cauchy-vandermonde":
        dev = max(cv_deviation(rng) for _ in range(trials))
        ok = dev <= tol[which]
    else:
        if system is None:
            raise SpecError(f"identity {which} needs --spec")
        if which == "stripping":
            if system.kind is not SystemKind.REAL_LINE:
                raise SpecError("stripping needs a real-line spec")
            mu = system.mus[0]
            coeffs = spectral.jacobi_from_measure(mu, 40)
            dev = max(spectral.stripping_residual(mu, _exterior_point(rng, mu.support),
                                                  coeffs=coeffs)
                      for _ in range(trials))
            extra["b1"] = fmt(coeffs.b[0])
            extra["a1^2"] = fmt(coeffs.a[0] ** 2)
        elif which == "flip":
            if system.r != 2:
                raise SpecError("flip needs a spec with two generators")
            dev = flip_deviation(system)
        elif which == "perturbation":
            if system.r != 2 or system.kind is not SystemKind.REAL_LINE:
                raise SpecError("perturbation needs a real-line spec with two generators")
            dev = max(perturbation_deviation(system, rng) for _ in range(trials))
        elif which == "phase":
            if system.kind is not SystemKind.CIRCLE:
                raise SpecError("phase needs a circle spec")
            n = index or (3,) + (1,) * (system.r - 1)
            rep = detkit.phase_check_uc(system, n, trials, rng, tol["phase"])
            dev = rep.max_deviation
            extra["index"] = str(mop_solver.MultiIndex.of(n))
            extra["mean_phase"] = fmt(rep.mean_phase)
            extra["l_mod4"] = "UNRESOLVED" if rep.l_mod4 is None else str(rep.l_mod4)
            ok = rep.confirmed and rep.l_mod4 is not None
        elif which == "sign":
            if system.kind is not SystemKind.REAL_LINE:
                raise SpecError("sign needs a real-line spec")
            n = index or (2,) * system.r
            rep = detkit.sign_check_rl(system, n, trials, rng)
            extra["index"] = str(mop_solver.MultiIndex.of(n))
            extra["verdict"] = rep.verdict
            extra["sign"] = str(rep.sign)
            extra["min_scaled"] = fmt(rep.min_scaled)
            dev = 0.0 if rep.constant else 1.0
            ok = rep.constant
        if which not in ("phase", "sign"):
            ok = dev <= tol[which]
    print(f"identity,{which}")
    print(f"trials,{trials}")
    print(f"seed,{seed}")
    for key, val in extra.items():
        print(f"{key},{val}")
    print(f"max_deviation,{fmt(dev)}")
    if which in tol:
        print(f"tolerance,{fmt(tol[which])}")
    print(f"result,{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_IDENTITY


# ---------------------------------------------------------------------------
# entry point

def make_parser():
    p = argparse.ArgumentParser(prog="nikishin", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("moments", help="moments of mu_j")
    m.add_argument("--spec", required=True)
    m.add_argument("--j", type=int, default=1, help="measure number, from 1")
    m.add_argument("--kmax", type=int, default=4)
    m.add_argument("--out")

    s = sub.add_parser("normality-scan", help="verdicts for all indices up to a degree")
    s.add_argument("--spec", required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--mode", choices=[m_.value for m_ in mop_solver.ScanMode],
                   default="theorem")
    s.add_argument("--out")

    i = sub.add_parser("identity-check", help="randomized identity checks")
    i.add_argument("which", choices=IDENTITIES)
    i.add_argument("--spec")
    i.add_argument("--trials", type=int, default=100)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--index", help="multi-index for phase/sign, e.g. 3|1")
    i.add_argument("--tolerance", type=float,
                   help="override the per-identity tolerance (not used by sign)")

    z = sub.add_parser("zeros", help="zeros of the polynomial at an index")
    z.add_argument("--spec", required=True)
    z.add_argument("--index", required=True, help="multi-index, e.g. 2|1")
    z.add_argument("--out")
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    old_dps = ctx.dps
    try:
        spec = load_spec(args.spec) if getattr(args, "spec", None) else None
        try:
            system = build_from_spec(spec) if spec is not None else None
        except SpecError:
            raise
        except (NikishinError, ValueError, ArithmeticError) as exc:
            print(f"build error: {exc}", file=sys.stderr)
            return EXIT_BUILD
        if args.command == "moments":
            return cmd_moments(system, args.j, args.kmax, args.out)
        if args.command == "normality-scan":
            return cmd_normality_scan(system, args.max_degree, args.mode, args.out)
        if args.command == "zeros":
            return cmd_zeros(system, args.index, args.out)
        index = mop_solver.MultiIndex.of(args.index).parts if args.index else None
        return cmd_identity_check(args.which, system, args.trials, args.seed, index,
                                  args.tolerance)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (MixedParity, WrongArity, IndexConditionViolated, OrderExceeded) as exc:
        print(f"invalid index: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    finally:
        ctx.dps = old_dps


if __name__ == "__main__":
    sys.exit(main())
