"""Command line front end.

    quottaut run CONFIG [--format json|table|latex] [--policy strict|generic] [--output PATH]
    quottaut verify [--max-dim N] [--max-k N] [--seed S]
    quottaut geometry info --genus G --rank R --d D [--space quot|flag|sym]
    quottaut oracle verify [--max-dim N] [--max-k N]

Exit status: 0 success (NotCovered and conjectural results included),
1 internal invariant failure, 2 config or validation error, 3 cohomology
that the strict policy cannot resolve.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable

from . import formulas, geometry, oracle
from .curve import BundleClass, CohPolicy, CurveModel, canonical, structure_sheaf
from .errors import AmbiguousCohomology, PreconditionViolated
from .gradedspace import GradedDim, evaluate, ext_power, gen_binomial, poincare_string, sym_power

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_POLICY = 0, 1, 2, 3

QUERY_KINDS = (
    "sym-coh",
    "quot-coh",
    "quot-ext",
    "vanishing",
    "conjecture",
    "functor",
    "twisted-coh",
    "twisted-ext",
    "geometry",
    "consistency",
    "oracle-verify",
)

COHOMOLOGICAL = "cohomological"


class ConfigError(Exception):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class InvariantFailure(Exception):
    def __init__(self, message: str, index: int | None = None, detail: Any = None):
        super().__init__(message)
        self.index = index
        self.detail = detail


@dataclass
class Config:
    curve: CurveModel
    bundles: dict[str, BundleClass]
    policy: CohPolicy
    queries: list[dict]
    e_label: str = "E"

    def bundle(self, label: Any, index: int) -> BundleClass:
        if not isinstance(label, str):
            raise ConfigError(f"bundle reference must be a label string, got {label!r}", index)
        if label in self.bundles:
            return self.bundles[label]
        if label in ("O", "O_C"):
            return structure_sheaf()
        if label in ("K", "K_C"):
            return canonical(self.curve)
        raise ConfigError(f"undefined bundle label {label!r}", index)


def load_config(path: str | Path, policy_override: str | None = None) -> Config:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return parse_config(raw, policy_override)


def parse_config(raw: Any, policy_override: str | None = None) -> Config:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - {"curve", "bundles", "policy", "queries", "E"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    curve_raw = raw.get("curve")
    if not isinstance(curve_raw, dict) or "genus" not in curve_raw:
        raise ConfigError("config needs curve: {genus: int}")
    try:
        curve = CurveModel(curve_raw["genus"])
    except PreconditionViolated as exc:
        raise ConfigError(str(exc)) from None
    policy_name = policy_override or raw.get("policy", "strict")
    try:
        policy = CohPolicy(policy_name)
    except ValueError:
        raise ConfigError(f"policy must be 'strict' or 'generic', got {policy_name!r}") from None
    bundles: dict[str, BundleClass] = {}
    for entry in raw.get("bundles", []):
        if not isinstance(entry, dict):
            raise ConfigError(f"bundle entry must be an object, got {entry!r}")
        try:
            b = BundleClass.from_json(entry)
        except (PreconditionViolated, TypeError, ValueError) as exc:
            raise ConfigError(f"bad bundle {entry!r}: {exc}") from None
        if b.label in bundles:
            raise ConfigError(f"bundle label {b.label!r} defined more than once")
        bundles[b.label] = b
    queries = raw.get("queries", [])
    if not isinstance(queries, list):
        raise ConfigError("queries must be a list")
    e_label = raw.get("E", "E")
    return Config(curve, bundles, policy, queries, e_label)


# query preparation: validate everything, return a thunk producing the result body


def _int(params: dict, key: str, index: int, default: Any = None, minimum: int | None = None) -> int:
    if key not in params:
        if default is None:
            raise ConfigError(f"missing parameter {key!r}", index)
        return default
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"parameter {key!r} must be an integer, got {value!r}", index)
    if minimum is not None and value < minimum:
        raise ConfigError(f"parameter {key!r} must be >= {minimum}, got {value}", index)
    return value


def _context(cfg: Config, params: dict, index: int) -> formulas.QuotContext:
    e = cfg.bundle(params.get("E", cfg.e_label), index)
    d = _int(params, "d", index, minimum=1)
    try:
        return formulas.QuotContext(cfg.curve, e, d, cfg.policy)
    except PreconditionViolated as exc:
        raise ConfigError(str(exc), index) from None


def _factors(cfg: Config, params: dict, index: int) -> list[tuple[BundleClass, int]]:
    raw = params.get("factors")
    if not isinstance(raw, list):
        raise ConfigError("parameter 'factors' must be a list of [label, k] pairs", index)
    out = []
    for item in raw:
        if not isinstance(item, list) or len(item) != 2 or isinstance(item[1], bool) or not isinstance(item[1], int):
            raise ConfigError(f"bad factor {item!r}; expected [label, k]", index)
        out.append((cfg.bundle(item[0], index), item[1]))
    return out


def _report_body(report: formulas.PredictionReport) -> dict:
    body = report.to_json()
    body["grading"] = COHOMOLOGICAL
    return body


def _verdict_body(verdict: formulas.Verdict) -> dict:
    return {
        "verdict": verdict.to_json(),
        "status": verdict.status.value,
        "citation": verdict.citation,
        "generic_tainted": verdict.generic_tainted,
        "grading": COHOMOLOGICAL,
    }


def _prepare(cfg: Config, query: Any, index: int) -> Callable[[], dict]:
    if not isinstance(query, dict):
        raise ConfigError("query must be an object", index)
    kind = query.get("kind")
    if kind not in QUERY_KINDS:
        raise ConfigError(f"unknown query kind {kind!r}; expected one of {', '.join(QUERY_KINDS)}", index)
    c, policy = cfg.curve, cfg.policy

    if kind == "sym-coh":
        f = cfg.bundle(query.get("bundle"), index)
        d = _int(query, "d", index, minimum=1)
        return lambda: _report_body(formulas.sym_product_taut_coh(c, f, d, policy))

    if kind == "quot-coh":
        ctx = _context(cfg, query, index)
        f = cfg.bundle(query.get("bundle"), index)
        return lambda: _report_body(formulas.quot_taut_coh(ctx, f))

    if kind == "quot-ext":
        ctx = _context(cfg, query, index)
        f, g = cfg.bundle(query.get("F"), index), cfg.bundle(query.get("G"), index)
        return lambda: _report_body(formulas.quot_ext(ctx, f, g))

    if kind == "vanishing":
        ctx = _context(cfg, query, index)
        factors = _factors(cfg, query, index)
        twist = cfg.bundle(query["twist"], index) if "twist" in query else None
        _check(lambda: formulas.check_factors(ctx, factors), index)
        if twist is not None:
            _check(lambda: formulas.require_line(twist, "twist"), index)
            return lambda: _verdict_body(formulas.twisted_quot_vanishing(ctx, factors, twist))
        return lambda: _verdict_body(formulas.dual_vanishing(ctx, factors))

    if kind == "conjecture":
        ctx = _context(cfg, query, index)
        l_bundle = cfg.bundle(query.get("L"), index)
        wedge_l = _int(query, "l", index)
        factors = _factors(cfg, {"factors": query.get("factors", [])}, index)
        _check(lambda: _validate_conjecture(ctx, l_bundle, wedge_l, factors), index)
        return lambda: _report_body(formulas.conjecture_rhs(ctx, l_bundle, wedge_l, factors))

    if kind == "functor":
        ctx = _context(cfg, query, index)
        try:
            v = GradedDim.from_json(query.get("value", {}))
        except (ValueError, TypeError, AttributeError) as exc:
            raise ConfigError(f"bad GradedDim literal: {exc}", index) from None

        def run_functor():
            value = formulas.functor_composition(ctx, v)
            return _report_body(formulas.PredictionReport(value, formulas.Status.PROVEN, formulas.CITE_FUNCTOR))

        return run_functor

    if kind == "twisted-coh":
        space = query.get("space", "quot")
        m = cfg.bundle(query.get("M"), index)
        _check(lambda: formulas.require_line(m, "M"), index)
        f = cfg.bundle(query["F"], index) if "F" in query else None
        if space == "sym":
            d = _int(query, "d", index, minimum=1)
            return lambda: _report_body(formulas.twisted_sym_coh(c, f, m, d, policy))
        if space != "quot":
            raise ConfigError(f"space must be 'quot' or 'sym', got {space!r}", index)
        if f is None:
            raise ConfigError("twisted-coh on the Quot scheme needs F", index)
        ctx = _context(cfg, query, index)
        return lambda: _report_body(formulas.twisted_quot(ctx, "coh", f=f, m=m))

    if kind == "twisted-ext":
        ctx = _context(cfg, query, index)
        f, g = cfg.bundle(query.get("F"), index), cfg.bundle(query.get("G"), index)
        k_tw, m_tw = cfg.bundle(query.get("K", "O_C"), index), cfg.bundle(query.get("M", "O_C"), index)
        _check(lambda: (formulas.require_line(k_tw, "K"), formulas.require_line(m_tw, "M")), index)
        return lambda: _report_body(formulas.twisted_quot(ctx, "ext", f=f, k_tw=k_tw, g=g, m_tw=m_tw))

    if kind == "geometry":
        space = query.get("space", "quot")
        d = _int(query, "d", index, minimum=0)
        if space == "sym":
            info = geometry.sym_info(c, d)
        elif space in ("quot", "flag"):
            e = cfg.bundle(query.get("E", cfg.e_label), index)
            info = geometry.quot_info(e, d) if space == "quot" else geometry.flag_info(c, e, d)
        else:
            raise ConfigError(f"space must be quot, flag or sym, got {space!r}", index)
        return lambda: {"space": info.to_json(), "status": "proven", "citation": info.citation,
                        "generic_tainted": False, "grading": geometry.TOPOLOGICAL}

    if kind == "consistency":
        genera = query.get("genera", [0, 1, 2])
        ranks = query.get("ranks", [2, 3])
        d_max = _int(query, "d_max", index, default=4, minimum=1)
        lo, hi = query.get("degrees", [-2, 6])
        if not all(isinstance(x, int) and x >= 0 for x in genera) or not all(isinstance(x, int) and x >= 2 for x in ranks):
            raise ConfigError("genera must be >= 0 and ranks >= 2", index)

        def run_sweep():
            report = formulas.consistency_sweep(genera, ranks, d_max, tuple(range(lo, hi + 1)), policy=policy)
            if not report.ok:
                raise InvariantFailure("consistency sweep failed", index, report.failures[0].to_json())
            return {"sweep": report.to_json(), "status": "proven",
                    "citation": "conjectural formula specialises to the proven cases",
                    "generic_tainted": policy is CohPolicy.GENERIC, "grading": COHOMOLOGICAL}

        return run_sweep

    # oracle-verify
    max_dim = _int(query, "max_dim", index, default=5, minimum=0)
    max_k = _int(query, "max_k", index, default=5, minimum=0)
    if max_dim > oracle.MAX_ELEMENTS or max_k > oracle.MAX_K:
        raise ConfigError(f"oracle bounds exceed the guard ({oracle.MAX_ELEMENTS} elements, k <= {oracle.MAX_K})", index)

    def run_oracle():
        checks, mismatches = oracle.equivalence_sweep(max_dim, max_k)
        if mismatches:
            raise InvariantFailure("oracle mismatch", index, mismatches[0].to_json())
        return {"oracle": {"checks": checks, "mismatches": 0}, "status": "proven",
                "citation": "series powers agree with monomial enumeration",
                "generic_tainted": False, "grading": COHOMOLOGICAL}

    return run_oracle


def _check(fn: Callable, index: int) -> None:
    try:
        fn()
    except PreconditionViolated as exc:
        raise ConfigError(str(exc), index) from None


def _validate_conjecture(ctx, l_bundle, wedge_l, factors) -> None:
    formulas.require_line(l_bundle, "L")
    if not len(factors) < ctx.rank_e:
        raise PreconditionViolated(f"number of factors m = {len(factors)} must be < rk E = {ctx.rank_e}")
    if not 0 <= wedge_l <= ctx.d:
        raise PreconditionViolated(f"l = {wedge_l} outside [0, d = {ctx.d}]")
    for m, k in factors:
        formulas.require_line(m, "M_i")
        if not 0 <= k <= ctx.d:
            raise PreconditionViolated(f"k_i = {k} outside [0, d = {ctx.d}]")


def execute(cfg: Config) -> list[dict]:
    thunks = [(_prepare(cfg, q, i), q, i) for i, q in enumerate(cfg.queries)]
    results = []
    for thunk, query, index in thunks:
        try:
            body = thunk()
        except AmbiguousCohomology as exc:
            exc.index = index
            raise
        except PreconditionViolated as exc:
            raise ConfigError(str(exc), index) from None
        except InvariantFailure:
            raise
        results.append({"index": index, "kind": query["kind"], "query": query, **body})
    return results


# rendering


def _value_of(result: dict) -> GradedDim | None:
    if "value" in result:
        return GradedDim.from_json(result["value"])
    if "space" in result and result["space"]["poincare"] is not None:
        return GradedDim.from_json(result["space"]["poincare"])
    if "verdict" in result and result["verdict"]["witness"] is not None:
        return GradedDim.from_json(result["verdict"]["witness"])
    return None


def _summary(result: dict) -> str:
    if "verdict" in result:
        return result["verdict"]["kind"]
    if "sweep" in result:
        s = result["sweep"]
        return f"{s['passed']}/{s['checks']} passed, {s['skipped']} skipped"
    if "oracle" in result:
        return f"{result['oracle']['checks']} checks, 0 mismatches"
    if "space" in result:
        return f"dim {result['space']['dimension']}"
    return ""


def render_json(results: list[dict], timestamps: bool = False) -> str:
    doc: dict[str, Any] = {"results": results}
    if timestamps:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat()
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def render_table(results: list[dict]) -> str:
    rows = [("#", "kind", "value", "euler", "total", "status", "grading", "note")]
    for r in results:
        v = _value_of(r)
        rows.append((
            str(r["index"]),
            r["kind"],
            poincare_string(v) if v is not None else "-",
            str(evaluate(v, "euler")) if v is not None else "-",
            str(evaluate(v, "total")) if v is not None else "-",
            r["status"],
            r["grading"],
            (_summary(r) + (" [generic]" if r.get("generic_tainted") else "")).strip(),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def render_latex(results: list[dict]) -> str:
    lines = [r"\begin{tabular}{rllrrl}", r"\# & query & Poincar\'e polynomial & $\chi$ & total & status \\", r"\hline"]
    for r in results:
        v = _value_of(r)
        poly = f"${poincare_string(v)}$" if v is not None else _summary(r)
        euler = str(evaluate(v, "euler")) if v is not None else "--"
        total = str(evaluate(v, "total")) if v is not None else "--"
        lines.append(f"{r['index']} & {r['kind']} & {poly} & {euler} & {total} & {r['status']} \\\\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


RENDERERS = {"json": render_json, "table": render_table, "latex": render_latex}


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str, index: int | None = None, detail: Any = None) -> None:
    payload = {"error": kind, "message": message, "query_index": index}
    if detail is not None:
        payload["counterexample"] = detail
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config, args.policy)
        results = execute(cfg)
    except ConfigError as exc:
        _error("ConfigError", str(exc), exc.index)
        return EXIT_CONFIG
    except AmbiguousCohomology as exc:
        index = getattr(exc, "index", None)
        _error("AmbiguousCohomology", str(exc), index)
        return EXIT_POLICY
    except InvariantFailure as exc:
        _error("InvariantFailure", str(exc), exc.index, exc.detail)
        return EXIT_INVARIANT
    if args.format == "json":
        text = render_json(results, args.timestamps)
    else:
        text = RENDERERS[args.format](results)
    _emit(text, args.output)
    return EXIT_OK


def euler_identity_checks(seed: int, samples: int, max_k: int):
    """Seeded random check of chi(S^k V) and chi(wedge^k V) against generalized binomials."""
    rng = random.Random(seed)
    checks = 0
    for _ in range(samples):
        size = rng.randint(0, 6)
        v = GradedDim({})
        for _ in range(size):
            v = v + GradedDim({rng.randint(-3, 3): 1})
        x = evaluate(v, "euler")
        for k in range(max_k + 1):
            checks += 2
            if evaluate(sym_power(v, k), "euler") != gen_binomial(x + k - 1, k):
                return checks, {"op": "sym_power", "value": v.to_json(), "k": k}
            if evaluate(ext_power(v, k), "euler") != gen_binomial(x, k):
                return checks, {"op": "ext_power", "value": v.to_json(), "k": k}
    return checks, None


def _bounds(args) -> str | None:
    if not 0 <= args.max_dim <= oracle.MAX_ELEMENTS or not 0 <= args.max_k <= oracle.MAX_K:
        return f"bounds must satisfy 0 <= max-dim <= {oracle.MAX_ELEMENTS}, 0 <= max-k <= {oracle.MAX_K}"
    return None


def cmd_verify(args) -> int:
    problem = _bounds(args)
    if problem:
        _error("ConfigError", problem)
        return EXIT_CONFIG
    total = 0
    n, mismatches = oracle.equivalence_sweep(args.max_dim, args.max_k)
    total += n
    print(f"oracle equivalence: {n} checks, {len(mismatches)} failed")
    if mismatches:
        print(json.dumps({"counterexample": mismatches[0].to_json()}, sort_keys=True))
        return EXIT_INVARIANT
    n, bad = euler_identity_checks(args.seed, args.samples, args.max_k)
    total += n
    print(f"euler binomial identities (seed {args.seed}): {n} checks, {0 if bad is None else 1} failed")
    if bad is not None:
        print(json.dumps({"counterexample": bad}, sort_keys=True))
        return EXIT_INVARIANT
    if not args.skip_consistency:
        report = formulas.consistency_sweep()
        total += len(report.checks)
        print(f"consistency sweep: {len(report.checks)} checks, {len(report.failures)} failed, {report.skipped} skipped")
        if not report.ok:
            print(json.dumps({"counterexample": report.failures[0].to_json()}, sort_keys=True))
            return EXIT_INVARIANT
    print(f"all {total} checks passed")
    return EXIT_OK


def cmd_oracle_verify(args) -> int:
    problem = _bounds(args)
    if problem:
        _error("ConfigError", problem)
        return EXIT_CONFIG
    n, mismatches = oracle.equivalence_sweep(args.max_dim, args.max_k)
    if mismatches:
        print(json.dumps({"counterexample": mismatches[0].to_json()}, sort_keys=True))
        return EXIT_INVARIANT
    print(f"all {n} checks passed")
    return EXIT_OK


def cmd_geometry_info(args) -> int:
    try:
        c = CurveModel(args.genus)
        e = BundleClass("E", args.rank, args.degree)
        if args.space == "quot":
            info = geometry.quot_info(e, args.d)
        elif args.space == "flag":
            info = geometry.flag_info(c, e, args.d)
        else:
            info = geometry.sym_info(c, args.d)
    except PreconditionViolated as exc:
        _error("ConfigError", str(exc))
        return EXIT_CONFIG
    _emit(json.dumps(info.to_json(), sort_keys=True, indent=2) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quottaut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="evaluate the queries in a JSON config")
    run.add_argument("config")
    run.add_argument("--format", choices=sorted(RENDERERS), default="json")
    run.add_argument("--policy", choices=[p.value for p in CohPolicy], default=None)
    run.add_argument("--output", default=None)
    run.add_argument("--timestamps", action="store_true")
    run.set_defaults(func=cmd_run)

    def add_bounds(p):
        p.add_argument("--max-dim", type=int, default=5)
        p.add_argument("--max-k", type=int, default=5)

    verify = sub.add_parser("verify", help="oracle, Euler and consistency self-checks")
    add_bounds(verify)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--samples", type=int, default=500)
    verify.add_argument("--skip-consistency", action="store_true")
    verify.set_defaults(func=cmd_verify)

    geo = sub.add_parser("geometry", help="dimension and Betti numbers")
    geo_sub = geo.add_subparsers(dest="geometry_command", required=True)
    info = geo_sub.add_parser("info")
    info.add_argument("--genus", type=int, default=0)
    info.add_argument("--rank", type=int, default=2)
    info.add_argument("--degree", type=int, default=0)
    info.add_argument("--d", type=int, required=True)
    info.add_argument("--space", choices=["quot", "flag", "sym"], default="flag")
    info.add_argument("--output", default=None)
    info.set_defaults(func=cmd_geometry_info)

    orc = sub.add_parser("oracle", help="brute-force oracle")
    orc_sub = orc.add_subparsers(dest="oracle_command", required=True)
    ov = orc_sub.add_parser("verify")
    add_bounds(ov)
    ov.set_defaults(func=cmd_oracle_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
