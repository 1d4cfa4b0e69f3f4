"""Command-line front end: ``critperiods <command> scenario.json [flags]``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Any, Callable

from .characters import canonical_cm_type, chi_from_psi
from .critical import (TwistData, build_interval_twist, critical_integers,
                       critical_integers_oracle, has_critical_values, lemma_r_value,
                       r_index, r_index_oracle, section5_twist, section5_weight)
from .errors import NotInTopInterval, PeriodCalcError
from .groups.brauer import (brauer_decompose, descent_data_from_decomposition,
                            frobenius_check)
from .groups.characters import trivial
from .periods.derive import (VerificationReport, c_plus_motive_expr, compare,
                             critical_range_above, deligne_period_expr, main_theorem_lhs,
                             p_chi_cm_form, p_chi_expr, rhs_chain, setup, theorem_bound,
                             verify_main_theorem)
from .periods.expression import PeriodExpression
from .periods.latex import to_latex
from .periods.potential import verify_potentially_automorphic
from .periods.quadratic import verify_qj, verify_qj_lvalue, verify_telescoping
from .periods.rewrite import normalize
from .scenario import Scenario, ScenarioError, descent_data, group_from, load

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Outcome:
    def __init__(self, report: dict[str, Any], ok: bool = True,
                 lines: list[str] | None = None, tex: list[str] | None = None):
        self.report = report
        self.ok = ok
        self.lines = lines or []
        self.tex = tex or []


def _rng(v: range) -> dict[str, Any]:
    return {"min": v.start, "max": v.stop - 1, "values": list(v)} if len(v) else \
        {"min": None, "max": None, "values": []}


def _twist(S: Scenario) -> TwistData:
    M = S.motive()
    chi = S.chars.get("chi")
    if chi is None:
        chi = chi_from_psi(S.character("psi"))
    Phi = S.Phi if S.Phi is not None else canonical_cm_type(chi)
    return TwistData(M, chi, Phi)


def _expr_report(expr: PeriodExpression, latex: bool) -> dict[str, Any]:
    out = {"terms": expr.terms(), "ambiguity": expr.ambiguity.names()}
    if latex:
        out["latex"] = to_latex(expr)
    return out


def _verification(rep: VerificationReport, latex: bool, extra: dict | None = None) -> Outcome:
    data = rep.to_json()
    if latex:
        data["latex"] = {k: to_latex(getattr(rep, k)) for k in ("lhs_normal", "rhs_normal")
                         if getattr(rep, k) is not None}
    data.update(extra or {})
    lines = [f"verdict: {rep.verdict}"]
    for key in ("lhs_normal", "rhs_normal", "residual"):
        x = getattr(rep, key)
        if x is not None:
            lines.append(f"{key:>10}: {' * '.join(x.terms()) or '1'}")
    lines.append(f"{'ambiguity':>10}: {rep.ambiguity}")
    lines += [f"      note: {n}" for n in rep.notes]
    tex = list(data.get("latex", {}).values()) if latex else []
    return Outcome(data, rep.passed, lines, tex)


# commands

def cmd_critical_set(S: Scenario, args) -> Outcome:
    T = _twist(S)
    phi = S.get("phi", T.M.distinguished_phi)
    oracle = critical_integers_oracle(T, phi)
    report: dict[str, Any] = {"twist": T.label, "phi": phi, "oracle": _rng(oracle)}
    try:
        formula = critical_integers(T, phi)
        report["formula"] = _rng(formula)
        report["agree"] = list(formula) == list(oracle)
    except NotInTopInterval as exc:
        report["formula"] = None
        report["note"] = str(exc)
    vals = report["oracle"]["values"]
    lines = [f"critical integers of {T.label}: "
             + (f"{vals[0]}..{vals[-1]}" if vals else "none")]
    if "agree" in report:
        lines.append(f"formula and Hodge-type oracle agree: {report['agree']}")
    return Outcome(report, report.get("agree", True), lines)


def cmd_r_index(S: Scenario, args) -> Outcome:
    T = _twist(S)
    rows = []
    ok = has_critical_values(T)
    if ok:
        for s in T.M.K.embeddings:
            for f in T.M.E.embeddings:
                r, ro = r_index(T, s, f), r_index_oracle(T, s, f)
                rows.append({"sigma": s, "phi": f, "r": r, "oracle": ro})
                ok = ok and r == ro
    lines = [f"{'sigma':>8} {'phi':>5} {'r':>3} {'scan':>5}"]
    lines += [f"{x['sigma']:>8} {x['phi']:>5} {x['r']:>3} {x['oracle']:>5}" for x in rows]
    if not rows:
        lines = [f"{T.label} has no critical values"]
    return Outcome({"twist": T.label, "has_critical_values": has_critical_values(T),
                    "rows": rows}, ok, lines)


def cmd_build_twist(S: Scenario, args) -> Outcome:
    M = S.motive()
    Phi = S.cm_type()
    r = args.r if args.r is not None else S.need("r")
    phi = args.phi or S.get("phi", M.distinguished_phi)
    chi = build_interval_twist(M, Phi, r, phi, S.get("w0"))
    T = TwistData(M, chi, Phi)
    crit = has_critical_values(T)
    idx = {s: r_index(T, s, phi) for s in M.K.embeddings} if crit else {}
    want = lemma_r_value(M.rank, r)
    ok = crit and all(v == want for v in idx.values())
    report = {"character": chi.label, "weight": chi.weight,
              "infinity": dict(chi.infinity), "has_critical_values": crit,
              "r_index": idx, "expected_r_index": want, "lemma_holds": ok}
    lines = [f"{chi.label}: weight {chi.weight}",
             "  infinity type: " + ", ".join(f"{t}={v}" for t, v in chi.infinity),
             f"  r-index {idx} (expected {want})"]
    return Outcome(report, ok, lines)


def cmd_build_s5(S: Scenario, args) -> Outcome:
    M = S.motive()
    Phi = S.cm_type()
    r = args.r if args.r is not None else S.need("r")
    w0 = S.get("w0") or section5_weight(M.rank)
    T = section5_twist(M, Phi, r, w0)
    crit = list(critical_integers_oracle(T))
    want = (M.rank + w0) // 2
    report = {"character": T.chi.label, "w0": w0, "infinity": dict(T.chi.infinity),
              "critical_set": crit, "expected": [want], "singleton": crit == [want]}
    lines = [f"{T.chi.label}: w0={w0}, critical set {crit} (expected [{want}])"]
    return Outcome(report, crit == [want], lines)


def cmd_period_expr(S: Scenario, args) -> Outcome:
    kind = args.kind
    if kind is None:
        kind = "rhs" if "psi" in S.chars and S.get("k") is not None else "motive"
    if kind in ("rhs", "lhs", "stated"):
        M, psi, k = S.motive(), S.character("psi"), S.need("k")
        if kind == "rhs":
            expr = normalize(rhs_chain(setup(M, psi, k)))
        elif kind == "lhs":
            expr = main_theorem_lhs(M, psi, k)
        else:
            from .periods.derive import rhs_stated_form
            expr = normalize(rhs_stated_form(M, psi, k))
    elif kind == "local":
        T = _twist(S)
        expr = deligne_period_expr(T, S.need("sigma"), S.get("phi", T.M.distinguished_phi))
    elif kind == "pchi":
        T = _twist(S)
        r = args.r if args.r is not None else S.need("r")
        expr = p_chi_expr(T.chi, r, T.Phi, T.rank, T.M.n_plus)
        if args.normalize:
            expr = normalize(expr)
        cm = normalize(p_chi_cm_form(T.chi, r, T.Phi, T.rank))
        rep = _expr_report(expr, args.latex)
        rep["cm_form"] = _expr_report(cm, args.latex)
        return Outcome(rep, True, [_text(expr), "CM form: " + _text(cm)],
                       [to_latex(expr), to_latex(cm)] if args.latex else [])
    else:
        T = _twist(S)
        expr = c_plus_motive_expr(T, S.get("phi", T.M.distinguished_phi))
    if args.normalize and kind in ("local", "motive"):
        expr = normalize(expr)
    rep = _expr_report(expr, args.latex)
    rep["kind"] = kind
    return Outcome(rep, True, [_text(expr)], [to_latex(expr)] if args.latex else [])


def _text(expr: PeriodExpression) -> str:
    return " * ".join(expr.terms()) + f"   ~ {expr.ambiguity}" if expr.exps else \
        f"1   ~ {expr.ambiguity}"


def _mutate(rep: VerificationReport, spec: dict, bound) -> VerificationReport:
    side = spec.get("side", "rhs")
    target = getattr(rep, f"{side}_normal")
    if target is None:
        return rep
    gen = next((g for g in target.exps if g.text() == spec["generator"]), None)
    if gen is None:
        raise ScenarioError("/mutate/generator",
                            f"no generator {spec['generator']!r} in the {side} normal form")
    changed = target.times(gen, spec.get("delta", 1))
    lhs, rhs = (changed, rep.rhs_normal) if side == "lhs" else (rep.lhs_normal, changed)
    out = compare(lhs, rhs, bound, rep.notes + [f"mutated {side}: {gen.text()}"])
    return out


def cmd_verify_main(S: Scenario, args) -> Outcome:
    if S.get("random") is not None:
        return _random_main(S, args)
    M, psi = S.motive(), S.character("psi")
    k = S.get("k")
    ks = [k] if k is not None else critical_range_above(M, psi)
    if not ks:
        return Outcome({"verdict": "FAIL", "notes": ["no critical k > w + n"]}, False,
                       ["verdict: FAIL (no critical k > w + n)"])
    outs = []
    for kk in ks:
        rep = verify_main_theorem(M, psi, kk)
        if S.get("mutate"):
            rep = _mutate(rep, S.get("mutate"), theorem_bound(M, psi))
        outs.append((kk, _verification(rep, args.latex, {"k": kk})))
    if len(outs) == 1:
        return outs[0][1]
    lines = []
    for kk, o in outs:
        lines += [f"k = {kk}"] + ["  " + x for x in o.lines]
    return Outcome({"runs": [o.report for _, o in outs]}, all(o.ok for _, o in outs), lines,
                   [t for _, o in outs for t in o.tex])


def _random_main(S: Scenario, args) -> Outcome:
    from .sampling import random_main_instance
    spec = S.get("random")
    rng = random.Random(args.seed)
    count = spec.get("count", 50)
    fails = []
    runs = 0
    for i in range(count):
        n = rng.randint(1, spec.get("max_rank", 8))
        d = rng.randint(1, spec.get("max_degree", 3))
        inst = random_main_instance(rng, n, d, rng.randint(1, 2))
        for k in inst.ks:
            runs += 1
            rep = verify_main_theorem(inst.M, inst.psi, k)
            if not rep.passed:
                fails.append({"instance": i, "n": n, "degree": d, "k": k, "notes": rep.notes})
    lines = [f"random instances: {count}, checks: {runs}, failures: {len(fails)} (seed {args.seed})"]
    return Outcome({"instances": count, "checks": runs, "failures": fails, "seed": args.seed},
                   not fails, lines)


def cmd_verify_potential(S: Scenario, args) -> Outcome:
    M, psi = S.motive(), S.character("psi")
    data, dec = descent_data(S)
    k = S.get("k")
    if k is None:
        ks = critical_range_above(M, psi)
        if not ks:
            raise ScenarioError("/k", "no critical k > w + n; give k explicitly")
        k = ks[0]
    rep = verify_potentially_automorphic(M, psi, k, data)
    extra = {"k": k, "descent": [vars(d) for d in data]}
    if dec is not None:
        extra["group"] = dec.group.name
    return _verification(rep, args.latex, extra)


def cmd_qj(S: Scenario, args) -> Outcome:
    M, Phi = S.motive(), S.cm_type()
    phi = args.phi or S.get("phi", M.distinguished_phi)
    js = [S.get("j")] if S.get("j") is not None else list(range(1, (M.rank + 1) // 2))
    runs, ok, lines = [], True, []
    for j in js:
        q = verify_qj(M, phi, j, Phi, S.get("w0"))
        tel = verify_telescoping(M, phi, j, Phi, S.get("w0"))
        row = {"j": j, "quotient": q.to_json(), "telescoping": tel.verdict}
        ok = ok and q.passed and tel.passed
        lines.append(f"j={j}: quotient {q.verdict}, telescoping {tel.verdict}")
        if args.lvalue:
            try:
                lv = verify_qj_lvalue(M, j, Phi)
                row["lvalue"] = lv.to_json()
                ok = ok and lv.passed
                lines.append(f"      L-value form {lv.verdict}" +
                             "".join(f"; {n}" for n in lv.notes))
            except PeriodCalcError as exc:
                row["lvalue"] = {"verdict": "N/A", "notes": [str(exc)]}
                lines.append(f"      L-value form not available: {exc}")
        runs.append(row)
    return Outcome({"runs": runs}, ok, lines)


def cmd_brauer(S: Scenario, args) -> Outcome:
    G = group_from(S)
    dec = brauer_decompose(G)
    combo = dec.combination()
    cert = {
        "combination_on_classes": [str(v) for v in combo.values],
        "equals_trivial": combo == trivial(G),
        "all_solvable": all(G.is_solvable(H) for H, _ in dec.terms),
        "degree_identity": dec.degree_identity(),
        "frobenius_reciprocity": frobenius_check(G),
    }
    data = descent_data_from_decomposition(dec, 1)
    report = {"group": G.name, "order": G.order, "solvable": G.is_solvable(),
              "terms": dec.describe(), "certificate": cert,
              "descent_over_Q": [vars(d) for d in data], "notes": dec.notes}
    ok = dec.verify() and cert["degree_identity"] == 1
    lines = [f"{G.name} (order {G.order}), solvable: {G.is_solvable()}"]
    lines += [f"  {t['multiplicity']:+d} x Ind from a subgroup of order {t['order']} "
              f"(index {t['index']})" for t in report["terms"]]
    lines.append(f"  sum equals 1_G: {cert['equals_trivial']}; "
                 f"degree identity: {cert['degree_identity']}")
    return Outcome(report, ok, lines)


COMMANDS: dict[str, Callable[[Scenario, Any], Outcome]] = {
    "critical-set": cmd_critical_set,
    "r-index": cmd_r_index,
    "build-twist": cmd_build_twist,
    "build-s5": cmd_build_s5,
    "period-expr": cmd_period_expr,
    "verify-main": cmd_verify_main,
    "verify-potential": cmd_verify_potential,
    "qj": cmd_qj,
    "brauer": cmd_brauer,
}


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="critperiods",
                                description="Period calculus for twisted regular motives.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("scenario", help="JSON or TOML scenario file")
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.add_argument("--latex", action="store_true", help="include LaTeX renderings")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
        sp.add_argument("--out", type=Path, help="directory for report.json and .tex output")
        if name in ("build-twist", "build-s5", "period-expr"):
            sp.add_argument("--r", type=int)
        if name in ("build-twist", "qj"):
            sp.add_argument("--phi")
        if name == "period-expr":
            sp.add_argument("--kind", choices=["motive", "local", "pchi", "rhs", "lhs", "stated"])
            sp.add_argument("--normalize", action="store_true",
                            help="normalize local, motive and P(chi) expressions")
        if name == "qj":
            sp.add_argument("--lvalue", action="store_true",
                            help="also check the L-value form (even rank)")
    return p


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=str)


def main(argv: list[str] | None = None) -> int:
    args = parser().parse_args(argv)
    try:
        S = load(args.scenario)
        out = COMMANDS[args.command](S, args)
    except ScenarioError as exc:
        print(_dump({"error": exc.message, "pointer": exc.pointer}), file=sys.stderr)
        return EXIT_INPUT
    except PeriodCalcError as exc:
        print(_dump({"error": str(exc), "type": type(exc).__name__, "pointer": "/"}),
              file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(_dump(out.report))
    else:
        print("\n".join(out.lines))
        if args.latex:
            print("\n".join(out.tex))
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.json").write_text(_dump(out.report) + "\n")
        if out.tex:
            (args.out / f"{args.command}.tex").write_text("\n".join(out.tex) + "\n")
    return EXIT_OK if out.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
