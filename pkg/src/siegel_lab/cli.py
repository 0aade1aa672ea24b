"""Command-line front end: ``siegel-lab <subcommand> [options]``.

Every subcommand writes one deterministic report (JSON by default) that
embeds the full run configuration.  Exit codes: 0 success, 1 an asserted
invariant failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .arith import euler_phi, memory_cap, set_memory_cap, sieve_primes
from .errors import SiegelLabError
from .goldbach import Variant
from .report import normalize, to_csv, to_json, to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
_GLOBAL_KEYS = ("format", "out", "jobs", "memory_cap")


@dataclass
class RunConfig:
    subcommand: str
    params: dict
    format: str = "json"
    out: Optional[str] = None
    jobs: int = 1
    memory_cap: int = field(default_factory=memory_cap)


@dataclass
class Outcome:
    """What a subcommand hands back: the report body, optional CSV rows and a pass flag."""

    result: dict
    rows: Optional[list] = None
    passed: bool = True
    failures: list = field(default_factory=list)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing helpers

def int_range(text: str) -> list[int]:
    """'7', '3..20' or '3,5,7' (mixable: '3..5,9')."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..", 1)
                a, b = int(a), int(b)
                if a > b:
                    raise ValueError
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r} (use N, A..B or A,B,C)") from None
    return out


def sigma_interval(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad interval {text!r} (use LO:HI)") from None
    if not 0 < lo < hi:
        raise argparse.ArgumentTypeError("need 0 < LO < HI")
    return lo, hi


def positive_int(text: str) -> int:
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def real_number(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be finite")
    return v


def exponent_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.strip("[]").split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r} (use e.g. 1,0)") from None


def _character(args):
    """The character named by --disc D, or --q Q with --chi exponents."""
    from .characters import DirichletCharacter, kronecker_character, unit_group

    if getattr(args, "disc", None) is not None:
        return kronecker_character(args.disc)
    if getattr(args, "chi", None) is None:
        raise UsageError("give --disc D or --q Q --chi E1,E2,...")
    return DirichletCharacter(unit_group(args.q), args.chi)


# ---------------------------------------------------------------- subcommands

def cmd_characters(args, cfg) -> Outcome:
    from .characters import enumerate_characters

    rows = []
    for chi in enumerate_characters(args.q):
        if args.real and not chi.is_real:
            continue
        if args.primitive and not chi.is_primitive:
            continue
        rows.append({"label": chi.label, "order": chi.order, "parity": chi.parity,
                     "conductor": chi.conductor, "real": chi.is_real, "primitive": chi.is_primitive,
                     "principal": chi.is_principal})
    group = rows and enumerate_characters(args.q)[0].group
    return Outcome({"q": args.q, "phi": euler_phi(args.q), "generators": list(group.generators) if group else [],
                    "orders": list(group.orders) if group else [], "count": len(rows), "characters": rows}, rows)


def cmd_ramanujan(args, cfg) -> Outcome:
    from .characters import ramanujan_sum, ramanujan_sum_direct

    ks = args.k if args.k else list(range(1, args.q + 1))
    rows, worst = [], 0.0
    for k in ks:
        c = ramanujan_sum(args.q, k)
        d = ramanujan_sum_direct(args.q, k)
        worst = max(worst, abs(c - d))
        rows.append({"k": k, "closed_form": c, "direct": d})
    ok = worst <= args.tol
    return Outcome({"q": args.q, "values": rows, "max_deviation": worst, "tolerance": args.tol}, rows, ok,
                   [] if ok else [f"closed form deviates from direct sum by {worst:g}"])


def cmd_gauss(args, cfg) -> Outcome:
    from .characters import gauss_sum, gauss_sums_all, primitive_characters

    chars = [_character(args)] if (args.chi is not None or args.disc is not None) else primitive_characters(args.q)
    rows, worst = [], 0.0
    for chi in chars:
        q = chi.modulus
        tau = gauss_sums_all(chi)
        t1 = gauss_sum(chi, 1)
        row = {"character": chi.label, "primitive": chi.is_primitive, "tau1": t1, "abs_tau1": abs(t1),
               "sqrt_q": math.sqrt(q)}
        if chi.is_primitive:
            dev = abs(abs(t1) - math.sqrt(q))
            for k in range(q):
                want = (chi.values[k].conjugate() * t1) if math.gcd(k, q) == 1 else 0.0
                dev = max(dev, abs(tau[k] - want))
            row["law_deviation"] = dev
            worst = max(worst, dev)
        if args.k is not None:
            row["tau_k"] = gauss_sum(chi, args.k)
        rows.append(row)
    ok = worst <= args.tol
    return Outcome({"q": args.q if args.q else chars[0].modulus, "sums": rows, "max_law_deviation": worst,
                    "tolerance": args.tol}, rows, ok, [] if ok else [f"Gauss-sum law deviation {worst:g}"])


def cmd_lvalue(args, cfg) -> Outcome:
    from .lfunction import evaluate_L

    chi = _character(args)
    rows = []
    for s in args.sigma:
        r = evaluate_L(chi, s, args.tol)
        rows.append({"sigma": s, "value": r.value, "N": r.N, "tail_bound": r.tail_bound, "abel_order": r.abel_order})
    return Outcome({"character": chi.label, "conductor": chi.conductor, "values": rows, "tol": args.tol}, rows)


def _fundamental(discs):
    from .quadforms import is_fundamental_discriminant

    return [d for d in discs if is_fundamental_discriminant(d)]


def _scan_disc(task):
    from .characters import kronecker_character
    from .lfunction import scan_real_zeros

    d, lo, hi, step, refine = task
    return scan_real_zeros(kronecker_character(d), lo, hi, step, refine).as_dict()


def cmd_zeros(args, cfg) -> Outcome:
    from .lfunction import scan_real_zeros
    from .parallel import parallel_map

    lo, hi = args.sigma
    if args.disc is None:
        rep = scan_real_zeros(_character(args), lo, hi, args.step, args.refine_tol).as_dict()
        return Outcome(rep, rep["zeros"])
    discs = _fundamental(args.disc)
    reports = parallel_map(_scan_disc, [(d, lo, hi, args.step, args.refine_tol) for d in discs], cfg.jobs, 4)
    zeros = [dict(z, discriminant=d) for d, rep in zip(discs, reports) for z in rep["zeros"]]
    return Outcome({"discriminants": discs, "scans": len(discs), "sigma": [lo, hi], "step": args.step,
                    "refine_tol": args.refine_tol, "zeros": zeros}, zeros)


def cmd_bounds(args, cfg) -> Outcome:
    from .lfunction import bounds_report

    rep = bounds_report(_character(args))
    d = rep.as_dict()
    return Outcome(d, d["rows"])


def cmd_classno(args, cfg) -> Outcome:
    from .quadforms import class_number_formula_check, enumerate_reduced_forms, is_fundamental

    rows, failures = [], []
    qs = args.q if len(args.q) == 1 else [q for q in args.q if q >= 3 and q % 4 in (0, 3)]
    for q in qs:
        data = enumerate_reduced_forms(q)
        row = {"q": q, "h": data.h, "w": data.w, "R": data.R, "fundamental": is_fundamental(q)}
        if len(qs) == 1:
            row["forms"] = [[f.a, f.b, f.c] for f in data.forms]
        if is_fundamental(q):
            chk = class_number_formula_check(q)
            row.update(L_direct=chk.L_direct, L_formula=chk.L_formula, diff=chk.diff)
            if abs(chk.diff) > args.tol:
                failures.append(f"class number formula off by {chk.diff:g} at q = {q}")
        rows.append(row)
    return Outcome({"classes": rows, "tolerance": args.tol}, rows, not failures, failures)


def cmd_goldfeld(args, cfg) -> Outcome:
    from .quadforms import goldfeld_comparator

    return Outcome(asdict(goldfeld_comparator(args.q, args.beta)))


def cmd_goldbach(args, cfg) -> Outcome:
    from .goldbach import goldbach_count, hl_ratio

    top = max(args.n)
    need = top if args.x is None else min(top, math.floor(args.x))
    table = sieve_primes(max(need, 2))
    rows = []
    for n in args.n:
        g = goldbach_count(n, Variant(args.variant), table, args.x)
        row = {"n": n, "count": g.count, "variant": g.variant}
        if n % 2 == 0 and n >= 4 and args.variant == Variant.ALL.value:
            row["hl_ratio"] = hl_ratio(n, table)
        rows.append(row)
    return Outcome({"variant": args.variant, "x": args.x, "counts": rows}, rows)


def cmd_whle_audit(args, cfg) -> Outcome:
    from .goldbach import goldbach_counts_upto, whle_audit

    x = args.x
    if len(args.q) > 1:
        table = sieve_primes(math.floor(x))
        counts = goldbach_counts_upto(math.floor(x), Variant.CAPPED, table, x=x)
        reps = [whle_audit(q, x, args.delta, counts=counts) for q in args.q]
    else:
        reps = [whle_audit(args.q[0], x, args.delta)]
    dicts = [r.as_dict() for r in reps]
    failures = [f"q = {r.q}: {r.exception_count} exceptions > allowance {r.allowance}" for r in reps if not r.verdict]
    rows = [{k: v for k, v in d.items() if k != "exceptions"} for d in dicts]
    body = dicts[0] if len(dicts) == 1 else {"audits": dicts}
    return Outcome(body, rows, not failures, failures)


def cmd_sum_s(args, cfg) -> Outcome:
    from .theorem_lab import explicit_decomposition

    chi = _character(args) if args.beta is not None else None
    table = sieve_primes(max(2, math.floor(args.x)))
    d = explicit_decomposition(args.q, args.x, chi, args.beta, table, fold=not args.no_fold)
    failures = []
    if abs(d.S_imag_residual) > 1e-6 * (1 + abs(d.S_direct)):
        failures.append(f"imaginary residual {d.S_imag_residual:g} is not negligible")
    if d.S_folded is not None and abs(d.S_direct - d.S_folded) > 1e-9 * max(1.0, d.S_folded):
        failures.append(f"fold identity violated: direct {d.S_direct!r} vs folded {d.S_folded!r}")
    res = d.as_dict()
    res["character"] = chi.label if chi else None
    return Outcome(res, None, not failures, failures)


def cmd_identities(args, cfg) -> Outcome:
    from .theorem_lab import step2_identities

    results = [step2_identities(q) for q in args.q]
    rows = [{"q": r.q, **r.deviations, "passed": r.passes(args.tol)} for r in results]
    failures = [f"Step-2 identities fail at q = {r['q']}" for r in rows if not r["passed"]]
    if len(results) == 1:
        body = dict(results[0].as_dict(), passed=not failures)
    else:
        body = {"identities": rows}
    body["tolerance_per_q"] = args.tol
    return Outcome(body, rows, not failures, failures)


def cmd_step3(args, cfg) -> Outcome:
    from .theorem_lab import step3_audit

    a = step3_audit(args.q, args.x, args.delta, args.beta, args.c3, args.ctilde, args.C, args.c1)
    return Outcome(a.as_dict())


def cmd_eligibility(args, cfg) -> Outcome:
    from .theorem_lab import eligible_modulus

    rows = [eligible_modulus(q).as_dict() for q in args.q]
    body = rows[0] if len(rows) == 1 else {"moduli": rows}
    return Outcome(body, rows)


def cmd_pnt_ap(args, cfg) -> Outcome:
    from .lfunction import pnt_ap_residual

    chi = _character(args) if args.beta is not None else None
    table = sieve_primes(max(2, math.floor(args.x)))
    residues = args.a if args.a else [a for a in range(1, args.q + 1) if math.gcd(a, args.q) == 1]
    rows = [asdict(pnt_ap_residual(args.x, args.q, a, chi, args.beta, table)) for a in residues]
    for r in rows:
        r["relative_residual"] = r["residual"] / r["main_term"]
    return Outcome({"q": args.q, "x": args.x, "residues": rows}, rows)


def cmd_verify_all(args, cfg) -> Outcome:
    from . import acceptance

    skip = [s for item in args.skip for s in item.split(",") if s]
    selected = acceptance.select(skip)
    ctx = acceptance.Context(jobs=cfg.jobs, faults=args.inject_fault)

    def progress(r):
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.id:2d} {r.name}: {r.summary}", file=sys.stderr, flush=True)

    results = acceptance.run_criteria(selected, ctx, serialize=to_json, progress=progress)
    failures = [f"criterion {r.id} ({r.name})" for r in results if not r.passed]
    rows = [{"id": r.id, "name": r.name, "passed": r.passed, "summary": r.summary} for r in results]
    body = {"criteria": [r.as_dict() for r in results], "passed": not failures, "failed": failures,
            "skipped": sorted(skip)}
    return Outcome(body, rows, not failures, failures)


# ---------------------------------------------------------------- parser

def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = p.add_argument_group("report options")
    g.add_argument("--format", choices=("json", "csv", "text"), default=d("json"), help="report format (default json)")
    g.add_argument("--out", default=d(None), help="write the report here instead of stdout")
    g.add_argument("--jobs", type=positive_int, default=d(1), help="worker processes for parallel sweeps")
    g.add_argument("--memory-cap", type=positive_int, default=d(None), help="largest sieve limit allowed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="siegel-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    sub.required = True

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        _add_globals(p, suppress=True)
        p.set_defaults(func=func)
        return p

    def char_opts(p, q_required=False):
        p.add_argument("--q", type=positive_int, required=q_required, help="modulus")
        p.add_argument("--chi", type=exponent_list, help="exponents on the unit-group generators, e.g. 1,0")
        p.add_argument("--disc", type=int, help="use the Kronecker character of this discriminant")

    p = add("characters", cmd_characters, "enumerate Dirichlet characters mod q")
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--real", action="store_true", help="only real characters")
    p.add_argument("--primitive", action="store_true", help="only primitive characters")

    p = add("ramanujan", cmd_ramanujan, "Ramanujan sums c_q(k), closed form against the direct sum")
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--k", type=int_range, help="k values (default 1..q)")
    p.add_argument("--tol", type=real_number, default=1e-8)

    p = add("gauss", cmd_gauss, "Gauss sums of primitive characters and their laws")
    char_opts(p)
    p.add_argument("--k", type=int)
    p.add_argument("--tol", type=real_number, default=1e-8)

    p = add("lvalue", cmd_lvalue, "L(sigma, chi) on the real segment (0, 2]")
    char_opts(p)
    p.add_argument("--sigma", type=real_number, nargs="+", default=[1.0])
    p.add_argument("--tol", type=real_number, default=1e-10)

    p = add("zeros", cmd_zeros, "scan for real zeros of real L-functions")
    p.add_argument("--q", type=positive_int, help="modulus (with --chi)")
    p.add_argument("--chi", type=exponent_list, help="exponents on the unit-group generators")
    p.add_argument("--disc", type=int_range, help="discriminant range, e.g. -300..-3 (non-fundamental skipped)")
    p.add_argument("--sigma", type=sigma_interval, default=(0.5, 0.999))
    p.add_argument("--step", type=real_number, default=1e-3)
    p.add_argument("--refine-tol", type=real_number, default=1e-12)

    p = add("bounds", cmd_bounds, "literature lower/upper bounds for L(1, chi) against the computed value")
    char_opts(p)

    p = add("classno", cmd_classno, "reduced forms, h(-q), R_q and the class number formula")
    p.add_argument("--q", type=int_range, required=True)
    p.add_argument("--tol", type=real_number, default=1e-6)

    p = add("goldfeld", cmd_goldfeld, "1 - beta against (6/pi^2) L(1, chi) / R_q")
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--beta", type=real_number, required=True)

    p = add("goldbach", cmd_goldbach, "ordered Goldbach counts g(n)")
    p.add_argument("--n", type=int_range, required=True)
    p.add_argument("--variant", choices=[v.value for v in Variant],
                   default="all-primes")
    p.add_argument("--x", type=real_number, help="prime cap for the exclude-2-cap-x variant")

    p = add("whle-audit", cmd_whle_audit, "weak Hardy-Littlewood audit on even multiples of q in (x/2, x]")
    p.add_argument("--q", type=int_range, required=True)
    p.add_argument("--x", type=real_number, required=True)
    p.add_argument("--delta", type=real_number, default=0.5)

    p = add("sum-s", cmd_sum_s, "S directly, folded, and against its main terms")
    char_opts(p, q_required=True)
    p.add_argument("--x", type=real_number, required=True)
    p.add_argument("--beta", type=real_number, help="hypothetical exceptional zero (needs a character)")
    p.add_argument("--no-fold", action="store_true", help="skip the Goldbach fold")

    p = add("identities", cmd_identities, "the four Step-2 identities")
    p.add_argument("--q", type=int_range, required=True)
    p.add_argument("--tol", type=real_number, default=1e-8, help="allowed deviation per unit of q")

    p = add("step3", cmd_step3, "what-if audit of the closing inequality chain")
    p.add_argument("--q", type=positive_int, required=True)
    p.add_argument("--x", type=real_number, required=True)
    p.add_argument("--delta", type=real_number, required=True)
    p.add_argument("--beta", type=real_number, required=True)
    p.add_argument("--c3", type=real_number)
    p.add_argument("--ctilde", type=real_number, default=1.0)
    p.add_argument("--C", type=real_number, default=1.0)
    p.add_argument("--c1", type=real_number, default=1.0)

    p = add("eligibility", cmd_eligibility, "qualifying divisors and odd real character count")
    p.add_argument("--q", type=int_range, required=True)

    p = add("pnt-ap", cmd_pnt_ap, "pi(x; q, a) against li(x)/phi(q)")
    char_opts(p, q_required=True)
    p.add_argument("--x", type=real_number, required=True)
    p.add_argument("--a", type=int_range, help="residues (default all reduced residues)")
    p.add_argument("--beta", type=real_number, help="hypothetical exceptional zero (needs a character)")

    p = add("verify-all", cmd_verify_all, "run the full acceptance suite")
    p.add_argument("--skip", action="append", default=[], help="criterion id, name or tag to skip (repeatable)")
    p.add_argument("--inject-fault", action="append", default=[], choices=("c2",),
                   help="deliberately corrupt a quantity to exercise failure reporting")
    return parser


def _config(args) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in _GLOBAL_KEYS + ("func", "subcommand")}
    return RunConfig(args.subcommand, params, args.format, args.out, args.jobs,
                     args.memory_cap if args.memory_cap is not None else memory_cap())


def render(cfg: RunConfig, out: Outcome) -> str:
    report = {"config": asdict(cfg), "result": out.result, "passed": out.passed, "failures": out.failures}
    if cfg.format == "json":
        return to_json(report)
    if cfg.format == "csv":
        return to_csv(out.rows if out.rows is not None else [normalize(out.result)])
    return to_text({"subcommand": cfg.subcommand, "passed": out.passed, "failures": out.failures,
                    **({} if out.rows else normalize(out.result))}, out.rows)


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn '--disc -300..-3' into '--disc=-300..-3' so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt and re.match(r"^-\d", nxt):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    prev_cap = memory_cap()
    if args.memory_cap is not None:
        set_memory_cap(args.memory_cap)
    cfg = _config(args)
    try:
        outcome = args.func(args, cfg)
        text = render(cfg, outcome)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"siegel-lab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SiegelLabError, ValueError) as e:
        print(f"siegel-lab: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_memory_cap(prev_cap)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for f in outcome.failures:
        print(f"siegel-lab: FAILED: {f}", file=sys.stderr)
    return EXIT_OK if outcome.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())
