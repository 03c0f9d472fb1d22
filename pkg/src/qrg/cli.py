"""Command line entry point.

Exit codes: 0 all checks passed (or query answered), 1 assertion or
domain failure, 2 usage or parse error.  Every emitted object carries
"schema": "qrg/1"; field order is deterministic.  Randomized commands
take --seed; verification suites fall back to pinned seeds so repeated
runs are bit-identical.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import chars, constructions, covering, engine, gf, unitgeom
from .errors import CapExceeded, ParseError
from .groupspec import build_group, parse_spec
from .permutations import Permutation, cycle_string, parse_cycles

SCHEMA = "qrg/1"
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# Pinned seeds for suite reproducibility.
SUITE_SEEDS = {
    "mustexp": 20260817,
    "axioms": 20260818,
    "mixing": 20260819,
    "jordan": 20260821,
}

EPS_GRID = [Fraction(k, 10) for k in range(1, 20)]


def _emit(obj: dict, fmt: str):
    if fmt == "tsv":
        for key, value in obj.items():
            if not isinstance(value, str):
                value = json.dumps(value)
            print(f"{key}\t{value}")
    else:
        print(json.dumps(obj))


def _report(command: str, **fields) -> dict:
    out = {"schema": SCHEMA, "command": command}
    out.update(fields)
    return out


def _cap_order(args) -> int:
    if args.cap_order is not None:
        return args.cap_order
    env = os.environ.get("QRG_CAP_ORDER")
    if env:
        return int(env)
    return engine.DEFAULT_ORDER_CAP


def _build(args) -> engine.GroupTable:
    return build_group(parse_spec(args.groupspec), cap=_cap_order(args))


def _parse_element(g: engine.GroupTable, text: str) -> int:
    if text.startswith("idx:"):
        idx = int(text[4:])
        if not 0 <= idx < g.order:
            raise ValueError(f"element index {idx} out of range for order {g.order}")
        return idx
    if text.startswith("mat:"):
        return g.index_of(gf.parse_matrix(text))
    if g.kind != "perm":
        raise ValueError(
            "cycle notation addresses permutation groups; use idx:<k> or mat:..."
        )
    return g.index_of(parse_cycles(text, degree=g.degree))


def _parse_m(text: str):
    if text == "inf":
        return math.inf
    return int(text)


def _add_common(sub):
    sub.add_argument("--json", dest="fmt", action="store_const", const="json")
    sub.add_argument("--tsv", dest="fmt", action="store_const", const="tsv")
    sub.add_argument("--cap-order", type=int, default=None,
                     help="group enumeration cap (env QRG_CAP_ORDER)")
    sub.add_argument("--cap-width", type=int, default=engine.WIDTH_ORDER_CAP,
                     help="cap for commutator-width element sets")
    sub.set_defaults(fmt="json")


def cmd_analyze(args) -> int:
    g = _build(args)
    classes = g.classes
    cos = engine.cosocle(g)
    if g.order == 1:
        degree = None
        index = None
    else:
        try:
            degree = chars.quasirandom_degree(g, cap=args.cap_degree)
        except CapExceeded:
            degree = None
        try:
            index = chars.min_normal_index(g)
        except engine.ClassCapExceeded:
            index = None
    _emit(_report(
        "analyze",
        spec=g.label,
        order=g.order,
        num_classes=len(classes),
        class_sizes=[c.size for c in classes],
        is_perfect=engine.is_perfect(g),
        cosocle_order=cos.order,
        cosocle_num_classes=cos.num_classes,
        quasirandom_degree=degree,
        min_normal_index=index,
    ), args.fmt)
    return EXIT_PASS


def cmd_covering(args) -> int:
    g = _build(args)
    x = _parse_element(g, args.element)
    if args.K is None:
        if args.mod_cosocle:
            q = engine.quotient(g, engine.cosocle(g))
            target, xt = q, int(q.proj[x])
        else:
            target, xt = g, x
        rep = covering.covering_number(
            target, xt, symmetric=args.symmetric, max_k=args.max_k
        )
        _emit(_report(
            "covering",
            spec=g.label,
            element=args.element,
            mod_cosocle=args.mod_cosocle,
            symmetric=rep.symmetric,
            K=rep.K,
            property_holds=rep.property_holds,
            reason=rep.reason,
            growth_trace=[[k, c] for k, c in rep.growth_trace],
        ), args.fmt)
        return EXIT_PASS
    m = _parse_m(args.m)
    if args.mod_cosocle:
        holds = covering.covering_mod(
            g, engine.cosocle(g), x, args.K, m, symmetric=args.symmetric
        )
    else:
        holds = covering.covering_property(g, x, args.K, m, symmetric=args.symmetric)
    _emit(_report(
        "covering",
        spec=g.label,
        element=args.element,
        mod_cosocle=args.mod_cosocle,
        symmetric=args.symmetric,
        K=args.K,
        m="inf" if m == math.inf else m,
        holds=holds,
    ), args.fmt)
    return EXIT_PASS if holds else EXIT_FAIL


def cmd_degree(args) -> int:
    g = _build(args)
    report = chars.character_degrees(g, cap=args.cap_degree)
    d = chars.quasirandom_degree(g, cap=args.cap_degree)
    _emit(_report(
        "degree",
        spec=g.label,
        order=g.order,
        degrees=list(report.degrees),
        quasirandom_degree=None if d == math.inf else d,
        sum_of_squares=sum(x * x for x in report.degrees),
    ), args.fmt)
    return EXIT_PASS


def cmd_jordan(args) -> int:
    if args.matrix is not None:
        m = gf.parse_matrix(args.matrix)
        value = gf.jordan_length(m)
        _emit(_report(
            "jordan",
            matrix=gf.matrix_literal(m),
            n=m.n,
            p=m.field.p,
            jordan_length=gf.format_rational(value),
        ), args.fmt)
        return EXIT_PASS
    if args.n is None or args.p is None or args.q is None or args.field is None:
        raise ParseError("jordan needs either --matrix or all of --n --p --q --field")
    field = gf.PrimeField(args.field)
    value = constructions.jordan_of_sigma(args.n, args.p, args.q, field)
    a, b = constructions.solve_two_prime(args.n, args.p, args.q)
    _emit(_report(
        "jordan",
        n=args.n,
        p=args.p,
        q=args.q,
        field=args.field,
        a=a,
        b=b,
        jordan_length=gf.format_rational(value),
        cycle_bound=gf.format_rational(Fraction(args.n - (a + b), args.n)),
    ), args.fmt)
    return EXIT_PASS


def cmd_construct(args) -> int:
    if args.what == "sigma":
        sigma = constructions.brenner_sigma(args.n, args.p, args.q)
        a, b = constructions.solve_two_prime(args.n, args.p, args.q)
        ct = sigma.cycle_type()
        fields = {
            "n": args.n, "p": args.p, "q": args.q, "a": a, "b": b,
            "sigma": cycle_string(sigma),
            "cycle_type": list(ct.lengths),
            "even": ct.is_even,
            "fixed_point_free": sigma.is_fixed_point_free(),
        }
        if args.field is not None:
            value = constructions.jordan_of_sigma(
                args.n, args.p, args.q, gf.PrimeField(args.field)
            )
            fields["field"] = args.field
            fields["jordan_length"] = gf.format_rational(value)
        _emit(_report("construct", **fields), args.fmt)
        return EXIT_PASS
    perm = parse_cycles(args.perm)
    m = constructions.double_embed(perm, args.pad, gf.PrimeField(args.field))
    fields = {
        "perm": cycle_string(perm),
        "pad": args.pad,
        "field": args.field,
        "size": m.n,
        "matrix": gf.matrix_literal(m),
    }
    if args.pad == 0:
        fields["preserves_symplectic_form"] = constructions.symplectic_check(m)
    _emit(_report("construct", **fields), args.fmt)
    return EXIT_PASS


def cmd_mixing(args) -> int:
    g = _build(args)
    alpha = Fraction(args.alpha)
    size_frac = alpha * g.order
    if size_frac.denominator != 1 or not 0 < size_frac.numerator <= g.order:
        raise ValueError(f"alpha {args.alpha} does not give an integer subset size")
    size = size_frac.numerator
    rng = np.random.default_rng(args.seed)
    passed = 0
    for trial in range(args.trials):
        subset = rng.choice(g.order, size=size, replace=False)
        rep = chars.gowers_mixing(g, subset, args.eps1, args.eps2)
        passed += rep.passes
        _emit(_report(
            "mixing",
            spec=g.label,
            trial=trial,
            good_x_count=rep.good_x_count,
            threshold_pairs=rep.threshold_pairs,
            passes=rep.passes,
        ), args.fmt)
    _emit(_report(
        "mixing-summary",
        spec=g.label,
        alpha=str(alpha),
        eps1=args.eps1,
        eps2=args.eps2,
        seed=args.seed,
        trials=args.trials,
        passed_trials=passed,
    ), args.fmt)
    return EXIT_PASS


def _closed_form_m(eps: Fraction) -> int:
    """Least m with 2 sin(pi/m) < eps via m > pi/asin(eps/2).

    Integer crossings happen only at eps = 2 (m = 2) and eps = 1 (m = 6),
    where the strict inequality pushes one step further.
    """
    if eps == 2:
        return 3
    if eps == 1:
        return 7
    return math.floor(math.pi / math.asin(float(eps) / 2.0)) + 1


def _suite_brenner(args):
    for spec_text, cyc in (
        ("A6", "(1 2 3)(4 5 6)"),
        ("A7", "(1 2 3)(4 5)(6 7)"),
        ("A8", "(1 2 3 4)(5 6 7 8)"),
    ):
        g = build_group(parse_spec(spec_text))
        x = g.index_of(parse_cycles(cyc, degree=g.degree))
        rep = covering.covering_number(g, x)
        yield (
            f"{spec_text} sigma covering number at most 4",
            rep.K is not None and rep.K <= 4,
            {"K": rep.K},
        )
        full = covering.kfold_product(covering.class_of_element(g, x), 4).is_full()
        yield (f"{spec_text} 4-fold class product is the whole group", full, {})


def _suite_bcc(args):
    for spec_text in ("SL2:5", "SL2:7"):
        g = build_group(parse_spec(spec_text))
        reps = [c.rep for c in g.classes]
        checked = 0
        witnesses = 0
        violations = 0
        for x in reps:
            for y in reps:
                for k1 in (1, 2, 3):
                    for k2 in (1, 2, 3):
                        for m1 in (1, 2, 3):
                            for m2 in (1, 2, 3):
                                rep = covering.verify_cosocle_inflation(
                                    g, x, y, k1, m1, k2, m2
                                )
                                checked += 1
                                if rep.mod_holds:
                                    witnesses += 1
                                    if not rep.lifted_holds:
                                        violations += 1
        yield (
            f"{spec_text} inflation x{3 * engine.cosocle(g).num_classes - 2} "
            "lifts every mod-cosocle witness",
            violations == 0 and witnesses > 0,
            {"checked": checked, "witnesses": witnesses, "violations": violations},
        )


def _suite_packing(args):
    grid = [Fraction(str(args.eps))] if args.eps is not None else EPS_GRID
    for eps in grid:
        got = unitgeom.packing_threshold(1, eps).m
        want = _closed_form_m(eps)
        yield (f"packing D=1 eps={eps}", got == want, {"m": got, "closed_form": want})


def _suite_mustexp(args):
    d = args.D or 3
    samples = args.samples or 1000
    seed = args.seed if args.seed is not None else SUITE_SEEDS["mustexp"]
    rng = np.random.default_rng(seed)
    found = 0
    floored = 0
    for _ in range(samples):
        while True:
            u = unitgeom.haar_unitary(d, rng)
            angles = np.abs(np.angle(np.linalg.eigvals(u.entries)))
            if angles.max() >= 1e-4:
                break
            floored += 1
        if unitgeom.power_length_witness(u) is not None:
            found += 1
    yield (
        f"mustexp D={d}: all {samples} samples exceed sqrt(2) within 1e6 powers",
        found == samples,
        {"found": found, "samples": samples, "angle_floor_rejections": floored,
         "seed": seed},
    )


def _suite_axioms(args):
    dims = [args.D] if args.D is not None else [1, 2, 3, 4]
    samples = args.samples or 1000
    base = args.seed if args.seed is not None else SUITE_SEEDS["axioms"]
    for d in dims:
        rep = unitgeom.length_axioms_check(samples, d, seed=base + d)
        yield (
            f"length axioms D={d} max violation below 1e-9",
            rep.passed,
            {"max_violation": rep.max_violation},
        )


def _suite_mixing(args):
    trials = args.trials or 100
    seed = args.seed if args.seed is not None else SUITE_SEEDS["mixing"]
    rng = np.random.default_rng(seed)
    rates = {}
    for spec_text in ("SL2:5", "SL2:11"):
        g = build_group(parse_spec(spec_text))
        size = g.order // 2
        passed = 0
        for _ in range(trials):
            subset = rng.choice(g.order, size=size, replace=False)
            passed += chars.gowers_mixing(g, subset, Fraction(1, 10), Fraction(1, 10)).passes
        rates[spec_text] = passed
    yield (
        f"SL2:11 mixing passes at least 95% of {trials} trials",
        rates["SL2:11"] * 100 >= 95 * trials,
        {"passed": rates["SL2:11"], "trials": trials, "seed": seed},
    )
    yield (
        "pass rate non-decreasing from SL2:5 to SL2:11",
        rates["SL2:11"] >= rates["SL2:5"],
        {"SL2:5": rates["SL2:5"], "SL2:11": rates["SL2:11"]},
    )


def _random_invertible(rng, n: int, field: gf.PrimeField) -> gf.FFMatrix:
    while True:
        entries = rng.integers(0, field.p, size=(n, n))
        if gf.ff_det(entries.astype(np.int64), field.p) != 0:
            return gf.FFMatrix(field, entries)


def _suite_jordan(args):
    samples = args.samples or 1000
    seed = args.seed if args.seed is not None else SUITE_SEEDS["jordan"]
    rng = np.random.default_rng(seed)
    fields = [gf.PrimeField(p) for p in (2, 3, 5, 7)]

    worst = None
    axiom_failures = 0
    for _ in range(samples):
        field = fields[rng.integers(len(fields))]
        n = int(rng.integers(1, 7))
        a = _random_invertible(rng, n, field)
        b = _random_invertible(rng, n, field)
        la = gf.jordan_length(a)
        ok = (
            la >= 0
            and gf.jordan_length(a.inverse()) == la
            and gf.jordan_length(b * a * b.inverse()) == la
            and gf.jordan_length(a * b) <= la + gf.jordan_length(b)
        )
        axiom_failures += not ok
    yield (
        f"jordan pseudo-length axioms exact on {samples} samples",
        axiom_failures == 0,
        {"failures": axiom_failures, "seed": seed},
    )

    sum_failures = 0
    for _ in range(samples):
        field = fields[rng.integers(len(fields))]
        n1 = int(rng.integers(1, 7))
        n2 = int(rng.integers(1, 7))
        a = _random_invertible(rng, n1, field)
        b = _random_invertible(rng, n2, field)
        lhs = gf.jordan_length(gf.direct_sum(a, b))
        rhs = (n1 * gf.jordan_length(a) + n2 * gf.jordan_length(b)) / (n1 + n2)
        sum_failures += not lhs >= rhs
    yield (
        f"jordan direct-sum lower bound exact on {samples} pairs",
        sum_failures == 0,
        {"failures": sum_failures},
    )

    perm_failures = 0
    checked = 0
    perm_fields = [gf.PrimeField(p) for p in (2, 3, 5)]
    for n in range(2, 9):
        for images in itertools.permutations(range(n)):
            perm = Permutation(images)
            bound = Fraction(n - len(perm.cycles(include_fixed=True)), n)
            for field in perm_fields:
                checked += 1
                if gf.jordan_length(constructions.perm_matrix(perm, field)) < bound:
                    perm_failures += 1
    yield (
        "permutation matrices meet the (n-k)/n bound for degree <= 8",
        perm_failures == 0,
        {"checked": checked, "failures": perm_failures},
    )


def _suite_preservation(args):
    a5 = build_group(parse_spec("A5"))
    x = a5.index_of(parse_cycles("(1 2 3 4 5)", degree=5))
    params = (2, 4, 2, 4)
    base = covering.double_covering_feasible(a5, x, x, *params)
    yield ("A5 witness pair has [(2,4),(2,4)]", base, {})

    ok = covering.verify_product_preservation([(a5, x, x), (a5, x, x)], *params)
    yield ("parameters transfer to A5 x A5", ok, {})

    prod = engine.direct_product(a5, a5)
    sub = engine.normal_subgroup_from_elements(prod, list(range(a5.order)))
    q = engine.quotient(prod, sub)
    xt = covering.product_witness_index([a5, a5], [x, x])
    back = covering.double_covering_feasible(
        q, int(q.proj[xt]), int(q.proj[xt]), *params
    )
    yield ("parameters survive the quotient back to A5", back, {"quotient_order": q.order})


_SUITES = {
    "brenner": _suite_brenner,
    "bcc": _suite_bcc,
    "packing": _suite_packing,
    "mustexp": _suite_mustexp,
    "axioms": _suite_axioms,
    "mixing": _suite_mixing,
    "jordan": _suite_jordan,
    "preservation": _suite_preservation,
}


def cmd_verify(args) -> int:
    failed = 0
    total = 0
    for name, ok, detail in _SUITES[args.suite](args):
        total += 1
        failed += not ok
        line = {"schema": SCHEMA, "suite": args.suite, "assertion": name, "pass": bool(ok)}
        line.update(detail)
        _emit(line, args.fmt)
    _emit({
        "schema": SCHEMA,
        "suite": args.suite,
        "assertions": total,
        "failed": failed,
    }, args.fmt)
    return EXIT_PASS if failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qrg",
        description="Covering numbers, character degrees, and length functions "
        "for small finite groups.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="order, classes, cosocle, D(G)")
    p.add_argument("groupspec")
    p.add_argument("--cap-degree", type=int, default=chars.DEGREE_ORDER_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("covering", help="covering numbers and properties")
    p.add_argument("groupspec")
    p.add_argument("--element", required=True,
                   help="cycles, mat:p=..:[..], or idx:<k>")
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--m", default="1", help="power range, integer or 'inf'")
    p.add_argument("--mod-cosocle", action="store_true")
    p.add_argument("--max-k", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_covering)

    p = subs.add_parser("degree", help="irreducible character degrees")
    p.add_argument("groupspec")
    p.add_argument("--cap-degree", type=int, default=chars.DEGREE_ORDER_CAP)
    _add_common(p)
    p.set_defaults(func=cmd_degree)

    p = subs.add_parser("jordan", help="Jordan length of a matrix or witness")
    p.add_argument("--matrix", default=None, help="mat:p=<prime>:[[..],..]")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--field", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_jordan)

    p = subs.add_parser("construct", help="explicit witnesses and embeddings")
    what = p.add_subparsers(dest="what", required=True)
    ps = what.add_parser("sigma")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--q", type=int, required=True)
    ps.add_argument("--field", type=int, default=None)
    _add_common(ps)
    ps.set_defaults(func=cmd_construct, what="sigma")
    pe = what.add_parser("embed")
    pe.add_argument("--perm", required=True, help='cycles with degree, e.g. "(1 2 3) degree=3"')
    pe.add_argument("--pad", type=int, choices=(0, 1, 2), required=True)
    pe.add_argument("--field", type=int, required=True)
    _add_common(pe)
    pe.set_defaults(func=cmd_construct, what="embed")

    p = subs.add_parser("mixing", help="Gowers mixing trials")
    p.add_argument("groupspec")
    p.add_argument("--alpha", required=True, help="subset density, e.g. 1/2")
    p.add_argument("--eps1", type=float, required=True)
    p.add_argument("--eps2", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_mixing)

    p = subs.add_parser("verify", help="named verification suites")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--D", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _emit({"schema": SCHEMA, "error": "parse", "message": str(exc)}, "json")
        return EXIT_USAGE
    except (
        CapExceeded,
        chars.NoSuitablePrime,
        engine.MixedCarriers,
        ValueError,
        ArithmeticError,
        KeyError,
    ) as exc:
        _emit({
            "schema": SCHEMA,
            "error": type(exc).__name__,
            "message": str(exc),
        }, "json")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
