"""Command-line front end: instance registry and verification suites.

Suites emit one JSON line per check (deterministic order; timing only with
--timing so that default output is byte-stable) and exit 0 exactly when no
check failed.  Sampled checks over infinite instances always report
``sampled-pass``, never plain ``pass``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .actions import (
    adjoint_action,
    fixed_points,
    trivial_action,
    verify_module_algebra,
)
from .aqg import (
    classify_type,
    cointegral_solution_dim,
    double_dual_matching,
    find_cointegral,
    finite_dual,
    make_aqg,
    verify_integral,
    verify_mha_isomorphism,
)
from .duality import (
    bismash_faithful,
    delta_coaction,
    dual_action,
    duality_isomorphism,
    empirical_duality_check,
    fixed_point_theorem_check,
    coaction_to_action,
    rl_condition_check,
    verify_coaction,
    w_conjugation,
)
from .elements import Element
from .errors import MHopfError, UnknownInstance
from .instances import (
    canonical_pair,
    get_group,
    grading_action,
    group_algebra,
    function_algebra,
    scalar_algebra,
    translation_action,
)
from .mha import RegularMHA, find_local_units, verify_mha_axioms
from .pairing import (
    anti_isomorphism,
    heisenberg_check,
    pair_of_aqg,
    rank_one_realization,
    scalar_fixed_points_check,
    verify_pairing,
)
from .reports import CheckResult, Report
from .smash import (
    algebras_match,
    group_crossed_product_oracle,
    smash,
    verify_pi_relations,
)
from .serialize import action_from_json, instance_from_json, load_json, parse_instance_id

SUITES = ("axioms", "integrals", "actions", "smash", "pairing", "duality", "sweedler", "all")


def _instances_for_group(gname: str):
    g = get_group(gname)
    return g, [function_algebra(g), group_algebra(g)]


def build_suite(suite: str, args) -> list:
    """Deterministic [(check-index, name, thunk)] list for the suite."""
    checks: list = []

    def add(name, thunk):
        checks.append((len(checks), name, thunk))

    if args.instance:
        if args.instance.endswith(".json"):
            h = instance_from_json(load_json(args.instance))
        else:
            h = parse_instance_id(args.instance)
            if not isinstance(h, RegularMHA):
                raise UnknownInstance(
                    f"{args.instance!r} is a plain algebra; axiom suites need a Hopf-type instance"
                )
        add(f"axioms[{h.name}]", lambda h=h: verify_mha_axioms(h, sample_range=args.sample_range))
        return checks

    gname = args.group
    g, mhas = _instances_for_group(gname)
    finite = g.is_finite

    if suite in ("axioms", "all"):
        for h in mhas:
            add(
                f"axioms[{h.name}]",
                lambda h=h: verify_mha_axioms(h, sample_range=args.sample_range),
            )
        if finite:
            for h in mhas:
                add(
                    f"axioms[dual({h.name})]",
                    lambda h=h: verify_mha_axioms(finite_dual(make_aqg(h)).base),
                )
        for h in mhas:
            add(
                f"local-units[{h.name}]",
                lambda h=h: _local_units_report(h, args.seed, finite),
            )

    if suite in ("integrals", "all"):
        for h in mhas:
            if finite or h.integral_oracle is not None:
                add(
                    f"integrals[{h.name}]",
                    lambda h=h: verify_integral(
                        make_aqg(h), sample_range=args.sample_range
                    ),
                )
        if finite:
            for h in mhas:
                add(f"cointegral[{h.name}]", lambda h=h: _cointegral_report(h))
                add(f"classify[{h.name}]", lambda h=h: _classify_report(h))
                add(
                    f"double-dual[{h.name}]",
                    lambda h=h: _double_dual_report(make_aqg(h)),
                )

    if suite in ("actions", "all"):
        add(
            f"action[translation({gname})]",
            lambda: verify_module_algebra(
                translation_action(g), sample_range=args.sample_range
            ),
        )
        add(
            f"action[grading({gname})]",
            lambda: verify_module_algebra(
                grading_action(g), sample_range=args.sample_range
            ),
        )
        add(
            f"action[adjoint(C[{gname}])]",
            lambda: verify_module_algebra(
                adjoint_action(group_algebra(g)), sample_range=args.sample_range
            ),
        )
        if finite:
            add(f"fixed-points[{gname}]", lambda: _fixed_point_report(g))

    if suite in ("smash", "all"):
        add(f"smash[K({gname})#C[{gname}]]", lambda: _smash_report(g, args))

    if suite in ("pairing", "all"):
        add(
            f"pairing[{gname}]",
            lambda: verify_pairing(canonical_pair(g), sample_range=args.sample_range),
        )
        add(
            f"heisenberg[{gname}]",
            lambda: heisenberg_check(canonical_pair(g), sample_range=args.sample_range),
        )
        add(f"anti-isomorphism[{gname}]", lambda: anti_isomorphism(canonical_pair(g))[3])
        if finite:
            add(
                f"scalar-fixed-points[{gname}]",
                lambda: scalar_fixed_points_check(canonical_pair(g)),
            )
            add(
                f"rank-one[C[{gname}]]",
                lambda: rank_one_realization(pair_of_aqg(make_aqg(group_algebra(g)))),
            )

    if suite in ("duality", "all"):
        if finite:
            add(f"duality[K({gname}),C[{gname}]]", lambda: _duality_report(g))
            add(f"coaction[{gname}]", lambda: _coaction_report(g))
        else:
            add(f"w-conjugation[{gname}]", lambda: _w_sampled_report(g, args))

    if suite in ("sweedler", "all"):
        for h in mhas:
            add(
                f"sweedler-confluence[{h.name}]",
                lambda h=h: _confluence_report(h, args.seed),
            )

    return checks


# -- report builders -----------------------------------------------------------


def _local_units_report(h: RegularMHA, seed: int, finite: bool) -> Report:
    import random

    rng = random.Random(seed)
    rep = Report(instance=h.name)
    keys = h.algebra.sample_keys(5)
    witness = None
    idempotent_ok = True
    discrete = h.meta.get("kind") == "function_algebra"
    for _ in range(100):
        items = [
            Element.basis(h.domain, rng.choice(keys))
            + Element.basis(h.domain, rng.choice(keys))
            for _ in range(rng.randint(1, 3))
        ]
        sides = ["left", "right"] + (["two_sided"] if h.meta.get("aqg") else [])
        for side in sides:
            e = find_local_units(h, items, side)
            for a in items:
                if side in ("left", "two_sided") and h.algebra.mul(e, a) != a:
                    witness = (side, [str(a) for a in items])
                if side in ("right", "two_sided") and h.algebra.mul(a, e) != a:
                    witness = (side, [str(a) for a in items])
            if discrete and side == "two_sided":
                if h.algebra.mul(e, e) != e:
                    idempotent_ok = False
        if witness:
            break
    status = "pass" if finite else "sampled-pass"
    rep.add("local-units-randomized", witness is None, status, witness)
    if discrete:
        rep.add("discrete-type-idempotent", idempotent_ok, status)
    return rep


def _cointegral_report(h: RegularMHA) -> Report:
    rep = Report(instance=h.name)
    co = find_cointegral(h, "left")
    rep.add("cointegral-exists", co is not None, "pass")
    rep.add("cointegral-unique", cointegral_solution_dim(h, "left") == 1, "pass")
    if co is not None:
        ok = all(
            h.algebra.mul(h.algebra.basis_element(k), co.value)
            == co.value.scale(h.counit_key(k))
            for k in h.algebra.basis
        )
        rep.add("cointegral-defining-identity", ok, "pass")
    return rep


def _classify_report(h: RegularMHA) -> Report:
    rep = Report(instance=h.name)
    kind = classify_type(h)
    rep.add(f"classify:{kind}", kind in ("discrete", "compact", "both"), "pass", kind)
    return rep


def _double_dual_report(g) -> Report:
    gdd, match = double_dual_matching(g)
    return verify_mha_isomorphism(g.base, gdd.base, match)


def _fixed_point_report(g) -> Report:
    rep = Report(instance=f"fixed[{g.name}]")
    adj = adjoint_action(group_algebra(g))
    verify_module_algebra(adj)
    fp = fixed_points(adj, "in_R")
    # conjugacy-class sums span the fixed points of the adjoint action
    n_classes = len({_conj_class(g, k) for k in g.elements})
    rep.add("adjoint-fixed-dim", len(fp) == n_classes, "pass", (len(fp), n_classes))
    return rep


def _conj_class(g, k):
    return frozenset(
        g.multiply(g.multiply(p, k), g.invert(p)) for p in g.elements
    )


def _smash_report(g, args) -> Report:
    from .smash import recertify

    tr = translation_action(g)
    verify_module_algebra(tr)
    verify_mode = args.verify if args.verify else ("full" if g.is_finite else "sampled")
    s = smash(tr, verify=verify_mode, seed=args.seed)
    if args.recheck_certificates:
        recertify(s, verify_mode, args.seed)
    rep = Report(instance=s.algebra.name)
    rep.extend(s.certificates)
    rep.extend(verify_pi_relations(s))
    if g.is_finite:
        oracle = group_crossed_product_oracle(
            g, tr.ralg, lambda q, x: tr.act(Element.basis(tr.mha.domain, q), x)
        )
        w = algebras_match(oracle, s.algebra, lambda k: (k[1], k[0]))
        rep.add("twisted-convolution-oracle", w is None, "pass", w)
    return rep


def _duality_report(g) -> Report:
    rep = Report(instance=f"duality[{g.name}]")
    gA = make_aqg(group_algebra(g))
    pd = pair_of_aqg(gA)
    tr = translation_action(g)
    verify_module_algebra(tr)
    s = smash(tr)
    d = dual_action(pd, s)
    rep.add("dual-action-certified", True, "pass")
    rep.extend(fixed_point_theorem_check(d))
    rep.extend(w_conjugation(d))
    rep.add("bismash-faithful", bismash_faithful(d), "pass")
    iso = duality_isomorphism(d)
    rep.extend(iso.report)
    return rep


def _coaction_report(g) -> Report:
    rep = Report(instance=f"coaction[{g.name}]")
    p = canonical_pair(g)
    co = delta_coaction(p.B)
    rep.extend(verify_coaction(co))
    induced = coaction_to_action(co, p)
    witness = None
    from .pairing import pairing_action

    pa = pairing_action(p, "AonB")
    for ka in p.A.algebra.basis:
        for kb in p.B.algebra.basis:
            a = Element.basis(p.A.domain, ka)
            b = Element.basis(p.B.domain, kb)
            if induced.act(a, b) != pa.act(a, b):
                witness = (ka, kb)
                break
        if witness:
            break
    rep.add("induced-action-is-pairing-action", witness is None, "pass", witness)
    rep.extend(rl_condition_check(p))
    verify_module_algebra(induced)
    rep.extend(empirical_duality_check(p, induced))
    return rep


def _w_sampled_report(g, args) -> Report:
    tr = translation_action(g)
    verify_module_algebra(tr, sample_range=args.sample_range)
    s = smash(tr, verify="sampled", seed=args.seed)
    p = canonical_pair(g)
    rep = Report(instance=f"w[{g.name}]")
    rep.extend(s.certificates)
    from .duality import DualAction
    from .actions import ActionSpec

    def act(b, u):
        from .elements import add_into

        acc = {}
        for (kx, ka), c in u.coeffs.items():
            img = p.act_BonA(b, Element.basis(p.A.domain, ka))
            for kq, cq in img.coeffs.items():
                add_into(acc, (kx, kq), c * cq)
        return Element(s.algebra.domain, acc, _canon=True)

    def witness(v):
        alegs = sorted({ka for (_, ka) in v.coeffs})
        e = p.b_unit_for([Element.basis(p.A.domain, k) for k in alegs])
        return [(e, v)]

    spec = ActionSpec.build(
        p.B, s.algebra, act, witness=witness, rule="dual-action",
        name=f"dual({s.algebra.name})",
    )
    d = DualAction(p, s, spec)
    rep.extend(w_conjugation(d, sample_range=args.sample_range))
    return rep


def _confluence_report(h: RegularMHA, seed: int) -> Report:
    import random

    from .errors import UncoveredLeg
    from .scalars import sc
    from .sweedler import ConstLeg, DeltaLeg, SweedlerExpr, sweedler_eval

    rng = random.Random(seed)
    rep = Report(instance=h.name)
    keys = h.algebra.sample_keys(4)

    def relem():
        return Element.basis(h.domain, rng.choice(keys))

    witness = None
    grounded = 0
    for i in range(200):
        n = rng.randint(2, 4)
        legs = []
        budget = 1
        for _ in range(n):
            unary = rng.choice(["id", "id", "S", "Sinv", "eps"])
            if unary == "eps":
                legs.append(
                    DeltaLeg(unary="eps", right=relem() if rng.random() < 0.5 else None)
                )
                continue
            covered = rng.random() < 0.8 or budget == 0
            if not covered:
                budget -= 1
                legs.append(DeltaLeg(unary=unary))
            else:
                left = relem() if rng.random() < 0.6 else None
                right = relem() if (left is None or rng.random() < 0.4) else None
                if left is None and right is None:
                    right = relem()
                legs.append(DeltaLeg(unary=unary, left=left, right=right))
            if rng.random() < 0.2:
                legs.append(ConstLeg(relem()))
        if not any(isinstance(l, DeltaLeg) and l.unary != "eps" for l in legs):
            legs.append(DeltaLeg(right=relem()))
        src = relem() + relem().scale(sc(2))
        expr = SweedlerExpr(src, tuple(legs))
        try:
            a = sweedler_eval(h, expr, "lr")
        except UncoveredLeg:
            continue
        b = sweedler_eval(h, expr, "rl")
        grounded += 1
        if a != b:
            witness = i
            break
    status = "pass" if h.algebra.is_finite else "sampled-pass"
    rep.add("sweedler-confluence", witness is None and grounded > 0, status, witness)
    return rep


# -- suite runner -----------------------------------------------------------------


def run_suite(suite: str, args) -> tuple[Report, int]:
    checks = build_suite(suite, args)
    results: list[Report | None] = [None] * len(checks)

    def run_one(item):
        idx, name, thunk = item
        t0 = time.perf_counter()
        try:
            rep = thunk()
        except MHopfError as ex:
            rep = Report(instance=name)
            rep.entries.append(
                CheckResult(name, type(ex).__name__, "fail", str(ex))
            )
        elapsed = time.perf_counter() - t0
        for e in rep.entries:
            if e.elapsed is None:
                e.elapsed = elapsed
        return idx, name, rep

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            for idx, name, rep in pool.map(run_one, checks):
                results[idx] = (name, rep)
    else:
        for item in checks:
            idx, name, rep = run_one(item)
            results[idx] = (name, rep)

    merged = Report()
    for name, rep in results:
        for e in rep.entries:
            e.check = f"{name}:{e.check}"
            merged.entries.append(e)
    return merged, (0 if merged.ok else 1)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mhopf",
        description="Exact verification suites for regular multiplier Hopf "
        "algebras, their actions, smash products and duality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", choices=SUITES)
    run.add_argument("--group", default="Z2", help="builtin group id (Z1..Z4, S3, Z)")
    run.add_argument("--instance", help="instance file (.json) or builtin id")
    run.add_argument("--sample-range", type=int, default=5)
    run.add_argument("--verify", choices=["full", "sampled"], default=None)
    run.add_argument("--json", action="store_true")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--timing", action="store_true")
    run.add_argument("--jobs", type=int, default=1)
    run.add_argument(
        "--recheck-certificates",
        action="store_true",
        help="force reconstruction of cached construction certificates",
    )

    sm = sub.add_parser("smash", help="build a smash product from an action description")
    sm.add_argument("--action", required=True, help="action description (.json)")
    sm.add_argument("--verify", choices=["full", "sampled"], default="full")
    sm.add_argument("--json", action="store_true")
    sm.add_argument("--seed", type=int, default=0)

    pr = sub.add_parser("pair", help="build and verify a canonical dual pair")
    pr.add_argument("--group", required=True)
    pr.add_argument("--verify", action="store_true")
    pr.add_argument("--sample-range", type=int, default=5)
    pr.add_argument("--json", action="store_true")

    du = sub.add_parser("duality", help="run the duality theorem on an instance")
    du.add_argument("--R", required=True, help="action description (.json) or builtin rule id")
    du.add_argument("--A", required=True, help="algebraic quantum group id (e.g. C[S3])")
    du.add_argument("--json", action="store_true")

    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            report, code = run_suite(args.suite, args)
            _emit(report, args)
            return code
        if args.command == "smash":
            return _cmd_smash(args)
        if args.command == "pair":
            return _cmd_pair(args)
        if args.command == "duality":
            return _cmd_duality(args)
    except MHopfError as ex:
        print(f"error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 2
    return 0


def _emit(report: Report, args) -> None:
    if getattr(args, "json", False):
        print(report.to_jsonl(timing=getattr(args, "timing", False)))
    else:
        print(report.summary())
        n_fail = len(report.failures())
        total = len(report.entries)
        print(f"{total - n_fail}/{total} checks passed")


def _cmd_smash(args) -> int:
    spec = action_from_json(load_json(args.action))
    rep = verify_module_algebra(spec)
    if not rep.ok:
        _emit(rep, args)
        return 1
    s = smash(spec, verify=args.verify, seed=args.seed)
    payload = {
        "domain": s.algebra.domain,
        "dimension": s.algebra.dim if s.algebra.is_finite else None,
        "structure_constants": [
            [list(map(_key_json, k1)), list(map(_key_json, k2)),
             [[_key_json(list(k)), *c.to_tuple()] for k, c in s.algebra.mul_basis(k1, k2).items()]]
            for k1 in (s.algebra.basis or [])
            for k2 in (s.algebra.basis or [])
        ] if s.algebra.is_finite and s.algebra.dim <= 16 else "omitted (large)",
        "certificates": [json.loads(e.to_json()) for e in s.certificates.entries],
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(s.certificates.summary())
    return 0 if s.certificates.ok else 1


def _key_json(k):
    from .serialize import key_to_json

    return key_to_json(k)


def _cmd_pair(args) -> int:
    p = canonical_pair(get_group(args.group))
    rep = Report(instance=p.name)
    if args.verify:
        rep.extend(verify_pairing(p, sample_range=args.sample_range))
        rep.extend(heisenberg_check(p, sample_range=args.sample_range))
    else:
        rep.add("constructed", True, "pass")
    _emit(rep, args)
    return 0 if rep.ok else 1


def _cmd_duality(args) -> int:
    if args.R.endswith(".json"):
        spec = action_from_json(load_json(args.R))
    elif args.R == "trivial":
        h = parse_instance_id(args.A)
        spec = trivial_action(h, scalar_algebra())
    else:
        spec = action_from_json({"algebra_id": args.A, "rule": args.R})
    h = parse_instance_id(args.A)
    if not isinstance(h, RegularMHA):
        raise UnknownInstance(f"{args.A!r} is not a Hopf-type instance")
    if spec.mha.domain != h.domain:
        raise UnknownInstance(
            f"action is over {spec.mha.domain!r}, not {args.A!r}"
        )
    rep = verify_module_algebra(spec)
    if not rep.ok:
        _emit(rep, args)
        return 1
    pd = pair_of_aqg(make_aqg(h))
    s = smash(spec)
    d = dual_action(pd, s)
    iso = duality_isomorphism(d)
    out = Report(instance=f"duality({s.algebra.name})")
    out.extend(iso.report)
    out.extend(fixed_point_theorem_check(d))
    _emit(out, args)
    return 0 if out.ok else 1


if __name__ == "__main__":
    sys.exit(main())
