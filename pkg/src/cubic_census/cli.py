"""Command-line front end: subcommands, the worker pool and the acceptance suite.

Module Information:
    - Filename: cli.py
    - Module: cli
    - Location: src/cubic_census/

Exit codes:
    - 0: success
    - 1: an acceptance check failed or any CubicCensusError
    - 2: a budget ran out (partial outputs are still written, marked ``"partial": true``)
"""

#####################################
# Imports At the Top
#####################################

from __future__ import annotations

import argparse
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from pathlib import Path
import tempfile

from . import census as census_mod
from .config import RunConfig, load_config
from .errors import AcceptanceError, BudgetExceededError, CubicCensusError, DomainError
from .ffpoly import PolyFq, ResidueRing, get_field, primes_of_degree
from .forms import NONZERO_TYPES, count_maximal_mod_P2
from .fourier import max_closed_deviation, nu
from .infinity import SigmaClass, c2_closed, c2_star_from_integrals, eval_C2, fine_classes
from .onelevel import D_L_explicit, D_L_from_zeros, check_fourier_pair, family_average, fejer_pair, trivial_bound
from .predict import (
    C2_star,
    c_S,
    c1_split,
    collapse_element,
    d_P,
    euler_collapse_product,
    main_coefficient,
    onelevel_inequality,
    predict_split,
    predict_total,
    secondary_table,
    secondary_assembly_check,
    x_P,
)
from .qsixth import QSixth, SecondaryElem
from .reports import ReportTable, plot_counts, write_json, write_jsonl
from .utils_logger import get_logger, init_logger
from .zeta import l_polynomial, prime_count_A, rh_check, trace_coeffs, trace_coeffs_from_primes, weil_bound_ok

LOGGER = get_logger(__name__)

DESK_QS = (5, 7)
DESK_CENSUS_MS = (4, 6, 8)

#####################################
# Worker pool
#####################################


@contextmanager
def worker_map(threads: int) -> Iterator[Callable]:
    """An order-preserving map over ``threads`` processes (the builtin map for one)."""
    if threads <= 1:
        yield map
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield pool.map


#####################################
# Subcommands
#####################################


def _require_M(cfg: RunConfig) -> int:  # noqa: N802
    if cfg.M is None:
        raise DomainError("this subcommand needs --M")
    return cfg.M


def _bounds(cfg: RunConfig, M: int) -> census_mod.EnumBounds:  # noqa: N803
    base = census_mod.EnumBounds.for_exponent(M, cfg.margin, cfg.budget)
    return replace(base, deg_a=cfg.deg_a if cfg.deg_a is not None else base.deg_a, deg_b=cfg.deg_b if cfg.deg_b is not None else base.deg_b)


def run_census(cfg: RunConfig, M: int, threads: int | None = None, out: Path | None = None) -> census_mod.CensusResult:  # noqa: N803
    """Census at (q, M), writing records, counts and the candidate log under ``out``."""
    out = out or cfg.out
    log_path = out / f"candidates_q{cfg.q}_M{M}.jsonl"
    partial_error = None
    with worker_map(threads or cfg.threads) as mapper:
        try:
            result = census_mod.enumerate_fields(cfg.q, M, _bounds(cfg, M), mapper=mapper, log_path=log_path, seed=cfg.seed)
        except BudgetExceededError as exc:
            result, partial_error = exc.partial, exc
    write_jsonl(out / f"census_q{cfg.q}_M{M}.jsonl", [rec.to_json() for rec in result.fields])
    rows = [{"q": cfg.q, "M": M, "conditions": "", "count": result.count, **result.summary()}]
    conditions = cfg.parsed_conditions()
    if conditions:
        label = ";".join(cfg.conditions)
        rows.append({"q": cfg.q, "M": M, "conditions": label, "count": census_mod.count_fields_split(result, conditions)})
    for P in primes_of_degree(cfg.q, 1):
        for stype, n in census_mod.field_counts_by_type(result, P).items():
            rows.append({"q": cfg.q, "M": M, "conditions": f"{P}={stype.value}", "count": n})
    ReportTable.from_records(rows).to_csv(out / f"counts_q{cfg.q}_M{M}.csv")
    write_json(out / f"census_summary_q{cfg.q}_M{M}.json", result.summary())
    if partial_error is not None:
        raise partial_error
    return result


def cmd_tables(cfg: RunConfig) -> int:
    q = cfg.q
    rows = [
        {"sigma": s.value, "ell_mod3": ell, "exact": repr(c2_closed(s, ell, q)), "value": float(c2_closed(s, ell, q))}
        for s in NONZERO_TYPES
        for ell in range(3)
    ]
    ReportTable.from_records(rows).to_csv(cfg.out / f"c2_table_q{q}.csv")
    star = [{"k_mod3": k, "exact": repr(C2_star(k, q)), "value": float(C2_star(k, q))} for k in range(3)]
    ReportTable.from_records(star).to_csv(cfg.out / f"c2_star_q{q}.csv")
    ReportTable.from_records(secondary_table(q)).to_csv(cfg.out / f"secondary_q{q}.csv")
    assembly = [
        {"M_mod3": m, "lhs": float(lhs), "table": float(tab), "rhs": float(rhs), "exact_match": lhs == tab == rhs}
        for m, lhs, tab, rhs in secondary_assembly_check(q)
    ]
    ReportTable.from_records(assembly).to_csv(cfg.out / f"assembly_q{q}.csv")
    return 0


def cmd_c2_integrate(cfg: RunConfig) -> int:
    rows, ok = [], True
    for stype in NONZERO_TYPES:
        for ell in range(3):
            integrated = eval_C2(SigmaClass(stype), ell, cfg.q)
            closed = c2_closed(stype, ell, cfg.q)
            ok &= integrated == closed
            rows.append(
                {"sigma": stype.value, "ell_mod3": ell, "integrated": repr(integrated), "closed": repr(closed), "value": float(integrated), "match": integrated == closed}
            )
    ReportTable.from_records(rows).to_csv(cfg.out / f"c2_integrate_q{cfg.q}.csv")
    if not ok:
        raise AcceptanceError("integrated C₂ differs from the closed table")
    return 0


def _nu_identities(P: PolyFq) -> tuple[bool, bool]:  # noqa: N803
    """Ratio identity for every type and the local-factor identity for the unramified ones."""
    q, norm = P.field.q, Fraction(P.norm())
    ratio_ok, local_ok = True, True
    for stype in NONZERO_TYPES:
        nu1 = nu(1, stype, P)
        ratio_ok &= nu1 / (1 - norm**-2 - norm**-3 + norm**-5) == c_S(stype, P) * x_P(P)
        if stype.is_unramified:
            nu2 = nu(2, stype, P)
            lhs = SecondaryElem.phi(q, 0, nu1 - nu2) + SecondaryElem.phi(q, -4 * P.deg, QSixth.power(q, 4 * P.deg) * nu2)
            local_ok &= lhs == d_P(stype, P) * (1 - 1 / norm)
    return ratio_ok, local_ok


def cmd_fourier_check(cfg: RunConfig) -> int:
    rows = []
    primes = [P for P, _ in cfg.parsed_conditions()] or primes_of_degree(cfg.q, 1)
    for P in primes:
        ring = ResidueRing(P)
        ratio_ok, local_ok = _nu_identities(P)
        rows.append(
            {
                "prime": repr(P),
                "omega_dev": max_closed_deviation(ring, P),
                "omega_tilde_dev": max_closed_deviation(ring, P, tilde=True),
                "nu_ratio_ok": ratio_ok,
                "nu_local_ok": local_ok,
            }
        )
    ReportTable.from_records(rows).to_csv(cfg.out / f"fourier_q{cfg.q}.csv")
    bad = [r for r in rows if max(r["omega_dev"], r["omega_tilde_dev"]) > cfg.fourier_tol or not (r["nu_ratio_ok"] and r["nu_local_ok"])]
    if bad:
        raise AcceptanceError(f"Fourier check failed at {[r['prime'] for r in bad]}")
    return 0


def _orbit_counts(cfg: RunConfig) -> None:
    """Form-orbit counts at |Disc| = q^ℓ for --sigma, or for every σ-class."""
    sigmas = [SigmaClass.parse(cfg.sigma)] if cfg.sigma else fine_classes(cfg.q)
    bounds = census_mod.EnumBounds(0, 0, cfg.margin, cfg.budget)
    rows = [asdict(census_mod.enumerate_form_orbits(cfg.q, cfg.ell, sig, bounds)) for sig in sigmas]
    ReportTable.from_records(rows).to_csv(cfg.out / f"orbits_q{cfg.q}_ell{cfg.ell}.csv")


def cmd_census(cfg: RunConfig) -> int:
    if cfg.ell is None and cfg.M is None:
        raise DomainError("census needs --M (fields) or --ell (form orbits)")
    if cfg.ell is not None:
        _orbit_counts(cfg)
    if cfg.M is not None:
        run_census(cfg, cfg.M)
    return 0


def cmd_zeta(cfg: RunConfig) -> int:
    result = run_census(cfg, _require_M(cfg))
    records = []
    for rec in result.fields:
        lp = l_polynomial(rec)
        records.append({"M": rec.M, "g": lp.g, "e": list(lp.e), "rh_deviation": rh_check(lp), "sigma": rec.sigma.label})
    write_jsonl(cfg.out / f"zeta_q{cfg.q}_M{result.M}.jsonl", records)
    return 0


def cmd_onelevel(cfg: RunConfig) -> int:
    result = run_census(cfg, _require_M(cfg))
    tf = fejer_pair(cfg.supp)
    check_fourier_pair(tf, [0.0, cfg.supp / 3, cfg.supp / 2, cfg.supp], cfg.quadrature_tol)
    report = family_average(result, tf)
    ReportTable.from_records([report.as_row()]).to_csv(cfg.out / f"onelevel_q{cfg.q}_M{result.M}.csv")
    if report.max_method_gap > cfg.onelevel_tol or not report.bound_ok:
        raise AcceptanceError(f"one-level identities failed: gap {report.max_method_gap:.3g}, bound_ok={report.bound_ok}")
    return 0


def cmd_predict(cfg: RunConfig) -> int:
    conditions = cfg.parsed_conditions()
    ms = [cfg.M] if cfg.M is not None else list(range(4, 13, 2))
    rows = []
    for M in ms:  # noqa: N806
        result = predict_split(cfg.q, M, conditions) if conditions else predict_total(cfg.q, M)
        rows.append(result.as_record())
    table = ReportTable.from_records(rows)
    table.df["conditions"] = table.df["conditions"].astype(str)
    table.to_csv(cfg.out / f"predict_q{cfg.q}.csv")
    return 0


#####################################
# verify
#####################################


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict[str, object]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _check(checks: list[Check], name: str, fn: Callable[[], tuple[bool, str]]) -> None:
    try:
        passed, detail = fn()
    except BudgetExceededError:
        raise
    except CubicCensusError as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    LOGGER.info(f"verify: {name}: {'PASS' if passed else 'FAIL'} ({detail})")
    checks.append(Check(name, passed, detail))


def _verify_fourier(cfg: RunConfig) -> tuple[bool, str]:
    worst = 0.0
    for q in DESK_QS:
        for P in primes_of_degree(q, 1):
            ring = ResidueRing(P)
            worst = max(worst, max_closed_deviation(ring, P), max_closed_deviation(ring, P, tilde=True))
    return worst < cfg.fourier_tol, f"max deviation {worst:.3e}"


def _verify_maximal_count(cfg: RunConfig) -> tuple[bool, str]:
    q = 5
    fq = get_field(q)
    count = count_maximal_mod_P2(fq, primes_of_degree(q, 1)[0])
    expected = q**8 - q**6 - q**5 + q**3
    return count == expected, f"{count} vs {expected}"


def _verify_c2(cfg: RunConfig) -> tuple[bool, str]:
    bad = [
        f"q={q} {s.value} ell={ell}"
        for q in DESK_QS
        for s in NONZERO_TYPES
        for ell in range(3)
        if eval_C2(SigmaClass(s), ell, q) != c2_closed(s, ell, q)
    ]
    return not bad, "all 15 entries exact" if not bad else ", ".join(bad)


def _verify_c2_star(cfg: RunConfig) -> tuple[bool, str]:
    bad = [f"q={q} k={k}" for q in DESK_QS for k in range(3) if c2_star_from_integrals(k, q) != C2_star(k, q)]
    return not bad, "σ-sum matches q+3+q⁻¹ and the other rows" if not bad else ", ".join(bad)


def _verify_nu(cfg: RunConfig) -> tuple[bool, str]:
    failures = []
    for q in DESK_QS:
        for P in primes_of_degree(q, 1):
            ratio_ok, local_ok = _nu_identities(P)
            if not (ratio_ok and local_ok):
                failures.append(f"q={q} P={P} ratio={ratio_ok} local={local_ok}")
    return not failures, "ratio and local-factor identities exact" if not failures else "; ".join(failures)


def _verify_zeta(censuses: dict[int, census_mod.CensusResult], cfg: RunConfig) -> tuple[bool, str]:
    fe_bad, rh_worst, trace_worst, weil_bad = 0, 0.0, 0.0, 0
    for result in censuses.values():
        for rec in result.fields:
            lp = l_polynomial(rec)
            fe_bad += not lp.functional_equation_ok()
            rh_worst = max(rh_worst, rh_check(lp))
            weil_bad += not weil_bound_ok(lp, prime_count_A(rec, 1))
            if lp.g:
                n_max = lp.g + 3
                trace_worst = max(trace_worst, trace_coeffs(lp, n_max).max_gap(trace_coeffs_from_primes(rec, n_max)))
    ok = fe_bad == 0 and weil_bad == 0 and rh_worst < cfg.zeta_tol and trace_worst < cfg.zeta_tol
    return ok, f"functional equation failures {fe_bad}, Weil failures {weil_bad}, RH {rh_worst:.2e}, trace gap {trace_worst:.2e}"


def _verify_onelevel(censuses: dict[int, census_mod.CensusResult], cfg: RunConfig) -> tuple[bool, str]:
    tf = fejer_pair(cfg.supp)
    quad = check_fourier_pair(tf, [0.0, cfg.supp / 2], cfg.quadrature_tol)
    worst, bound_ok, gaps = 0.0, True, []
    for M, result in censuses.items():  # noqa: N806
        if result.count == 0:
            continue
        for rec in result.fields:
            lp = l_polynomial(rec)
            z = D_L_from_zeros(lp, tf)
            worst = max(worst, abs(z - D_L_explicit(rec, tf)))
            bound_ok &= abs(z) <= trivial_bound(lp, tf) + 1e-9
        report = family_average(result, tf)
        gaps.append(f"M={M}: gap {report.gap:+.4f}")
    return worst < cfg.onelevel_tol and bound_ok, f"method gap {worst:.2e}, quadrature {quad:.1e}, " + ", ".join(gaps)


def _verify_counts(censuses: dict[int, census_mod.CensusResult], cfg: RunConfig) -> tuple[bool, str]:
    rows = []
    for M, result in sorted(censuses.items()):  # noqa: N806
        pred = predict_total(cfg.q, M)
        rows.append({"M": M, "count": result.count, "main": pred.main, "combined": pred.combined, "band": pred.error_band, "stable": result.stable})
    frame = ReportTable.from_records(rows).get_df()
    ReportTable(frame).to_csv(cfg.out / f"counting_comparison_q{cfg.q}.csv")
    plot_counts(frame, cfg.out / f"counting_comparison_q{cfg.q}.png")
    last = rows[-1]
    improved = abs(last["count"] - last["combined"]) < abs(last["count"] - last["main"])
    detail = "; ".join(f"M={r['M']}: count={r['count']} main={r['main']:.2f} main+sec={r['combined']:.2f} band={r['band']:.1f}" for r in rows)
    return improved, detail


def _verify_partition(censuses: dict[int, census_mod.CensusResult], cfg: RunConfig) -> tuple[bool, str]:
    bad = []
    for M, result in censuses.items():  # noqa: N806
        for d in (1, 2):
            for P in primes_of_degree(cfg.q, d):
                if sum(census_mod.field_counts_by_type(result, P).values()) != result.count:
                    bad.append(f"M={M} P={P}")
    for d in (1, 2):
        P = primes_of_degree(cfg.q, d)[0]
        norm = Fraction(P.norm())
        if sum(c_S(s, P) for s in NONZERO_TYPES) != 1 + 1 / norm + 1 / norm**2:
            bad.append(f"c_S sum at degree {d}")
        if sum(c1_split(P, s) for s in NONZERO_TYPES) != main_coefficient(cfg.q):
            bad.append(f"C₁ partition at degree {d}")
    return not bad, "exact" if not bad else ", ".join(bad)


def _verify_collapse(cfg: RunConfig) -> tuple[bool, str]:
    q = cfg.q
    product = euler_collapse_product(q, 8)
    target = collapse_element(q)
    shifts = set(product.shifts()) | set(target.shifts())
    worst = max(abs(float(product.coefficient(n) - target.coefficient(n))) for n in shifts)
    return worst < q**-4, f"max coefficient gap {worst:.2e}"


def _verify_inequality(cfg: RunConfig) -> tuple[bool, str]:
    bad = []
    for q in DESK_QS:
        for d in range(1, 5):
            P = primes_of_degree(q, d)[0]
            for M in (6, 4, 8):  # noqa: N806
                res = onelevel_inequality(P, M)
                if not (res.negative and res.bracket > 0):
                    bad.append(f"q={q} deg={d} M={M}")
    return not bad, "negative with positive bracket everywhere" if not bad else ", ".join(bad)


def _census_bytes(cfg: RunConfig, M: int, threads: int) -> bytes:  # noqa: N803
    with tempfile.TemporaryDirectory() as tmp:
        run_census(cfg, M, threads=threads, out=Path(tmp))
        return (Path(tmp) / f"census_q{cfg.q}_M{M}.jsonl").read_bytes()


def cmd_verify(cfg: RunConfig) -> int:
    checks: list[Check] = []
    _check(checks, "fourier_exactness", lambda: _verify_fourier(cfg))
    _check(checks, "maximality_euler_factor", lambda: _verify_maximal_count(cfg))
    _check(checks, "c2_table", lambda: _verify_c2(cfg))
    _check(checks, "c2_star_assembly", lambda: _verify_c2_star(cfg))
    _check(checks, "nu_identities", lambda: _verify_nu(cfg))
    ms = [cfg.M] if cfg.M is not None else list(DESK_CENSUS_MS)
    censuses = {M: run_census(cfg, M) for M in ms}
    _check(checks, "zeta_end_to_end", lambda: _verify_zeta(censuses, cfg))
    _check(checks, "onelevel_identity", lambda: _verify_onelevel(censuses, cfg))
    _check(checks, "counting_comparison", lambda: _verify_counts(censuses, cfg))
    _check(checks, "splitting_partition", lambda: _verify_partition(censuses, cfg))
    _check(checks, "euler_collapse", lambda: _verify_collapse(cfg))
    _check(checks, "onelevel_inequality", lambda: _verify_inequality(cfg))
    thread_counts = (1, 4, 8)
    _check(
        checks,
        "determinism",
        lambda: (len({_census_bytes(cfg, ms[-1], t) for t in thread_counts}) == 1, f"threads {thread_counts}"),
    )
    passed = all(c.passed for c in checks)
    write_json(cfg.out / "verify.json", {"q": cfg.q, "seed": cfg.seed, "passed": passed, "checks": [c.as_dict() for c in checks]})
    LOGGER.info(f"verify: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return 0 if passed else 1


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "tables": cmd_tables,
    "fourier-check": cmd_fourier_check,
    "c2-integrate": cmd_c2_integrate,
    "census": cmd_census,
    "zeta": cmd_zeta,
    "onelevel": cmd_onelevel,
    "predict": cmd_predict,
    "verify": cmd_verify,
}

#####################################
# Argument parsing
#####################################


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML file with a [cubic_census] table")
    common.add_argument("--q", type=int)
    common.add_argument("--M", type=int, dest="M")
    common.add_argument("--ell", type=int)
    common.add_argument("--sigma")
    common.add_argument("--prime", action="append", default=[], help="condition prime, e.g. 'T+1'; pairs with --split")
    common.add_argument("--split", action="append", default=[], help="splitting type, e.g. '(111)'")
    common.add_argument("--boundsA", type=int, dest="deg_a")
    common.add_argument("--boundsB", type=int, dest="deg_b")
    common.add_argument("--margin", type=int)
    common.add_argument("--budget", type=int)
    common.add_argument("--supp", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--out", type=Path)
    common.add_argument("--log-level", default="INFO")

    parser = argparse.ArgumentParser(prog="cubic-census", description="Counting cubic extensions of F_q(T).")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if len(args.prime) != len(args.split):
        raise DomainError("every --prime needs a matching --split")
    overrides = {
        key: getattr(args, key)
        for key in ("q", "M", "ell", "sigma", "deg_a", "deg_b", "margin", "budget", "supp", "tol", "seed", "threads", "out")
    }
    if args.prime:
        overrides["conditions"] = tuple(f"{p}={s}" for p, s in zip(args.prime, args.split, strict=True))
    return load_config(args.config, overrides=overrides)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse, configure, dispatch and translate errors into exit codes."""
    parser = build_parser()
    args = parser.parse_args(argv)
    init_logger(level=args.log_level)
    try:
        cfg = config_from_args(args)
        LOGGER.info(f"cubic-census {args.command}: q={cfg.q}, M={cfg.M}, threads={cfg.threads}, seed={cfg.seed}")
        return COMMANDS[args.command](cfg)
    except BudgetExceededError as exc:
        LOGGER.error(f"Budget exhausted: {exc}; partial outputs written.")
        return 2
    except CubicCensusError as exc:
        LOGGER.error(f"{type(exc).__name__}: {exc}")
        return 1


#####################################
# List all exports
#####################################

__all__ = ["worker_map", "run_census", "COMMANDS", "build_parser", "config_from_args", "run"]
