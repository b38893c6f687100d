"""Command-line front end: read model/job JSON, run analyses, emit JSON or CSV."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from . import analysis, serialize, zeta
from .errors import InvalidInput, SyncZetaError, TorsionUndefined
from .models import (CirclePower, CountSequence, FiniteMaps, HomologyData, SIntegerPair, ToralPair,
                     generate_counts)
from .padic import growth_exact_s_integer
from .serialize import SCHEMA_ID, cplx, fnum, ints, poly_json, rat

DEFAULT_N = 64


def _float_text(x: float) -> str:
    text = f"{x:.15g}"
    return text if any(ch in text for ch in ".en") else text + ".0"


def emit_series_csv(c: CountSequence, path) -> None:
    """Write n,count,root_n rows; root_n is blank where the count is zero."""
    counts = c.require_tame()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "count", "root_n"])
        for n, cn in enumerate(counts, start=1):
            root = "" if cn == 0 else _float_text(analysis._root(abs(cn), n))
            w.writerow([n, str(cn), root])


# ---------------------------------------------------------------------------
# per-analysis encoders
# ---------------------------------------------------------------------------

def _zeta_json(rep: zeta.ZetaReport) -> dict:
    out = {"form": rep.form_kind, "verdict": rep.verdict}
    if rep.rational is not None:
        out["rational"] = poly_json(rep.rational)
    if isinstance(rep.form, zeta.CycleProduct):
        p, q, holds = zeta.functional_equation_check(rep.form)
        out["cycles"] = [[l, m] for l, m in rep.form.cycles]
        out["functional_equation"] = {"p": p, "q": q, "holds": holds}
    if isinstance(rep.form, zeta.ResidueData):
        rd = rep.form
        out["residue"] = {
            "L": rd.period,
            "n0": rd.preperiod,
            "residues": [cplx(x) for x in rd.residues],
            "A": [fnum(a) for a in rd.A],
            "A_exact": None if rd.A_exact is None else [rat(a) for a in rd.A_exact],
            "B": [fnum(b) for b in rd.B],
            "Q": [rat(x) for x in rd.Q],
            "R": [rat(x) for x in rd.R],
        }
    if rep.form_kind == "SeriesOnly":
        out["series_head"] = [rat(x) for x in rep.series.coeffs[:9]]
    return out


def _exact_growth(model) -> Optional[Fraction]:
    try:
        if isinstance(model, CirclePower):
            return Fraction(max(abs(model.d_alpha), abs(model.d_beta)))
        if isinstance(model, SIntegerPair):
            return growth_exact_s_integer(model)
        if isinstance(model, ToralPair):
            return analysis.growth_exact_toral(model.A, model.B)
    except (SyncZetaError, ValueError):
        return None
    return None


def _trichotomy_json(t: analysis.TrichotomyVerdict) -> dict:
    cert = {"bound": t.certificate.get("bound"), "factors": [
        {"factor": ints(f["factor"]), "ratio_poly": ints(f["ratio_poly"]),
         "ratio_root_of_unity_order": f["ratio_root_of_unity_order"],
         "factor_divides_unity_order": f["factor_divides_unity_order"]}
        for f in t.certificate.get("factors", [])]}
    return {
        "case": t.case,
        "period": t.period,
        "values": [fnum(v) for v in t.values],
        "bound": t.bound,
        "lambda_max": fnum(t.spectral.lambda_max),
        "pairs": [[chi, cplx(lam)] for chi, lam in t.spectral.pairs],
        "certificate": cert,
    }


def _torsion_json(h: HomologyData, turns) -> dict:
    f = analysis.lefschetz_zeta(h)
    rep = analysis.torsion_report(h, ())
    taus = []
    for t in turns:
        lam = analysis.unit_circle_point(t)
        entry = {"turn": rat(t), "lambda": cplx(lam)}
        try:
            value, ex = analysis.torsion_special_value(h, lam)
            entry.update(value=fnum(value), exact=None if ex is None else rat(ex))
        except TorsionUndefined as e:
            entry.update(value=None, exact=None, undefined=str(e))
        taus.append(entry)
    return {"lefschetz_zeta": poly_json(f), "p": rep.p, "r": rep.r, "tau": taus}


def run_analyses(model, analyses, n_max: int = DEFAULT_N, order: Optional[int] = None,
                 torsion_turns=("1/2", "1/4")) -> dict:
    results = {}
    counts = None
    if not isinstance(model, HomologyData):
        counts = generate_counts(model, n_max)
    elif set(analyses) - {"torsion"}:
        raise InvalidInput("homology data supports only the torsion analysis")
    for name in analyses:
        if name == "torsion":
            if not isinstance(model, HomologyData):
                raise InvalidInput("torsion needs HomologyData")
            results["torsion"] = _torsion_json(model, [Fraction(t) for t in torsion_turns])
        elif name == "counts":
            results["counts"] = {"counts": [None if x is None else str(x) for x in counts.counts]}
        elif name == "zeta":
            results["zeta"] = _zeta_json(zeta.zeta_report(counts, order=order))
        elif name == "classify":
            rep = zeta.classify(counts, order=order)
            out = {"verdict": rep.verdict, "witnesses": [{"p": p} for p, _ in rep.witnesses]}
            if rep.rational is not None:
                out["rational"] = poly_json(rep.rational)
            results["classify"] = out
        elif name == "growth":
            g = analysis.growth_estimate(counts, _exact_growth(model))
            results["growth"] = {"upper": fnum(g.upper), "lower": fnum(g.lower), "window": list(g.window),
                                 "exact": None if g.exact is None else rat(g.exact),
                                 "zeros": list(g.zeros), "degenerate": g.degenerate}
        elif name == "congruence":
            r = analysis.gauss_congruence_check(counts, n_max)
            results["congruence"] = {"n_max": r.n_max, "failures": [[n, str(x)] for n, x in r.failures],
                                     "euler_failures": [[p, k, str(x)] for p, k, x in r.euler_failures]}
        elif name == "trichotomy":
            results["trichotomy"] = _trichotomy_json(analysis.trichotomy_classify(counts))
        elif name == "entropy":
            if not isinstance(model, ToralPair):
                raise InvalidInput("entropy needs a ToralPair")
            s, h, ok = analysis.entropy_cross_check(model.A, model.B, n_max)
            results["entropy"] = {"s_infty": fnum(s), "exp_h": fnum(h), "agree": ok}
        else:
            raise InvalidInput(f"unknown analysis {name}")
    return results


def error_json(err: SyncZetaError) -> dict:
    return {"schema": SCHEMA_ID, "error": err.to_json()}


def run_job(job: dict, order: Optional[int] = None) -> tuple[int, dict]:
    """(exit code, report) for one job object."""
    try:
        serialize.validate(job, serialize.JOB_SCHEMA)
        model = serialize.model_from_json(job["model"])
        n_max = job.get("n_max", DEFAULT_N)
        order = order or job.get("order")
        results = run_analyses(model, job["analyses"], n_max, order,
                               job.get("torsion_samples", ("1/2", "1/4")))
        report = {"schema": SCHEMA_ID, "model": serialize.model_to_json(model), "n_max": n_max,
                  "results": results}
        out = job.get("output")
        if out:
            if out.get("format", "json") == "csv":
                emit_series_csv(generate_counts(model, n_max), out["path"])
            else:
                with open(out["path"], "w") as fh:
                    fh.write(serialize.dumps(report))
        return 0, report
    except SyncZetaError as e:
        return e.exit_code, error_json(e)


def _run_job_star(args):
    return run_job(*args)


# ---------------------------------------------------------------------------
# argparse
# ---------------------------------------------------------------------------

def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path}: invalid JSON ({e})")


def _emit(obj) -> None:
    sys.stdout.write(serialize.dumps(obj))


def cmd_run(args) -> int:
    doc = _load(args.job)
    if isinstance(doc, dict) and "jobs" in doc:
        serialize.validate(doc, serialize.BATCH_SCHEMA)
        work = [(j, args.order) for j in doc["jobs"]]
        if args.workers > 1:
            with ProcessPoolExecutor(args.workers) as pool:
                outcomes = list(pool.map(_run_job_star, work))
        else:
            outcomes = [run_job(*w) for w in work]
        _emit({"schema": SCHEMA_ID, "reports": [r for _, r in outcomes]})
        return max((code for code, _ in outcomes), default=0)
    code, report = run_job(doc, args.order)
    _emit(report)
    return code


def _model_cmd(args, analyses) -> int:
    model = serialize.model_from_json(_load(args.model))
    results = run_analyses(model, analyses, args.n, args.order)
    _emit({"schema": SCHEMA_ID, "model": serialize.model_to_json(model), "n_max": args.n, "results": results})
    return 0


def cmd_counts(args) -> int:
    if args.csv:
        model = serialize.model_from_json(_load(args.model))
        emit_series_csv(generate_counts(model, args.n), args.csv)
    return _model_cmd(args, ["counts"])


def cmd_classify(args) -> int:
    return _model_cmd(args, ["classify"])


def cmd_congruence(args) -> int:
    return _model_cmd(args, ["congruence"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="synczeta", description="Synchronization zeta function workbench.")
    parser.add_argument("--order", type=int, default=None, help="series order (default: n_max)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a job file (single job or {\"jobs\": [...]})")
    p.add_argument("job")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_run)

    for name, func, default_n, help_ in (
        ("counts", cmd_counts, DEFAULT_N, "synchronization counts"),
        ("classify", cmd_classify, DEFAULT_N, "rational / natural boundary / algebraic verdict"),
        ("congruence", cmd_congruence, 60, "Gauss and Euler congruences"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("model")
        p.add_argument("--n", type=int, default=default_n)
        if name == "counts":
            p.add_argument("--csv", default=None, help="also write n,count,root_n CSV here")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SyncZetaError as e:
        _emit(error_json(e))
        return e.exit_code
    except OSError as e:
        _emit({"schema": SCHEMA_ID, "error": {"type": type(e).__name__, "message": str(e)}})
        return 1


if __name__ == "__main__":
    sys.exit(main())
