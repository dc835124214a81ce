"""Command-line front end: job parsing, cached dispatch, stable reports.

Reports are canonical JSON (or a text rendering of the same data) and are
byte-identical across runs with the same job and seed.  Results are cached
content-addressed under a key derived from the job and engine version.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import Poly, RatFun
from .errors import FlagHGError, UsageError
from .fixedlocus import (block_decomposition, canonical_roots,
                         euler_class_closed_form, euler_class_from_ledger,
                         normal_ledger, torus_fixed_points)
from .mirror import grassmannian_hg_term, hori_vafa_verify, integral_Id
from .pushforward import (DEFAULT_COSET_BUDGET, ab_integrate,
                          integrate_to_point, lam_vector, tableau_tower)
from .tableaux import (FlagSpec, component_dimension,
                       enumerate_general_components, enumerate_tableaux,
                       general_component_dimension, hquot_dimension)

COMMANDS = ("tableaux", "euler", "integral", "hg", "hori-vafa",
            "oracle-compare")


@dataclass
class JobSpec:
    command: str
    spec: FlagSpec
    max_degree: int
    lambda_seed: int
    coset_budget: int
    output_format: str
    explain: bool
    cache_dir: str | None

    def identity(self) -> dict:
        """The cache identity: everything but presentation options."""
        return {
            "command": self.command,
            "spec": self.spec.to_json(),
            "max_degree": self.max_degree,
            "lambda_seed": self.lambda_seed,
            "coset_budget": self.coset_budget,
            "explain": self.explain,
        }

    def to_json(self) -> dict:
        out = self.identity()
        out["output_format"] = self.output_format
        return out


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects a comma-separated integer list")


def parse_job(argv, env=None) -> JobSpec:
    """Validate command-line arguments into a JobSpec."""
    env = dict(env or {})
    parser = argparse.ArgumentParser(prog="flaghg", add_help=True)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--ranks", type=str, required=True)
    parser.add_argument("--degrees", type=str, default=None)
    parser.add_argument("--max-degree", type=int, default=1)
    parser.add_argument("--lambda-seed", type=int, default=0)
    parser.add_argument("--coset-budget", type=int,
                        default=DEFAULT_COSET_BUDGET)
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--explain", action="store_true")
    parser.add_argument("--cache-dir", type=str, default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit:
        raise UsageError("bad command line")
    ranks = _parse_int_list(args.ranks, "--ranks")
    if args.degrees is None:
        degrees = (0,) * len(ranks)
    else:
        degrees = _parse_int_list(args.degrees, "--degrees")
    if any(ranks[i] >= ranks[i + 1] for i in range(len(ranks) - 1)):
        raise UsageError("ranks must be strictly increasing")
    if ranks and ranks[-1] >= args.n:
        raise UsageError("ranks must be smaller than n")
    if not ranks or ranks[0] < 1:
        raise UsageError("ranks must be positive")
    if len(degrees) != len(ranks):
        raise UsageError("degrees must match ranks in length")
    if any(d < 0 for d in degrees):
        raise UsageError("degrees must be non-negative")
    try:
        spec = FlagSpec(args.n, ranks, degrees)
    except ValueError as exc:
        raise UsageError(str(exc))
    cache_dir = args.cache_dir or env.get("FLAGHG_CACHE")
    return JobSpec(
        command=args.command,
        spec=spec,
        max_degree=args.max_degree,
        lambda_seed=args.lambda_seed,
        coset_budget=args.coset_budget,
        output_format="json" if args.json else "text",
        explain=args.explain,
        cache_dir=cache_dir,
    )


def _run_tableaux(job: JobSpec) -> dict:
    spec = job.spec
    rows = []
    for t in enumerate_tableaux(spec):
        entry = {
            "alpha": [list(r) for r in t.rows],
            "dimension": component_dimension(t),
        }
        if job.explain:
            entry["normal_ledger"] = normal_ledger(t).to_json()
        rows.append(entry)
    out = {
        "hquot_dimension": hquot_dimension(spec),
        "count": len(rows),
        "tableaux": rows,
    }
    if job.explain:
        general = enumerate_general_components(spec)
        out["general_components"] = {
            "count": len(general),
            "entries": [
                {
                    "alpha": [list(r) for r in t.rows],
                    "beta": [list(r) for r in t.beta_rows],
                    "dimension": general_component_dimension(t),
                }
                for t in general
            ],
        }
    return out


def _run_euler(job: JobSpec) -> dict:
    spec = job.spec
    rows = []
    for t in enumerate_tableaux(spec):
        ledger = normal_ledger(t)
        roots = canonical_roots(block_decomposition(t))
        via_ledger = euler_class_from_ledger(ledger, roots)
        via_closed = euler_class_closed_form(t, roots)
        if via_ledger != via_closed:
            raise FlagHGError(
                f"Euler class routes disagree on {t.rows}")
        entry = {
            "alpha": [list(r) for r in t.rows],
            "codimension": hquot_dimension(spec) - component_dimension(t),
            "euler_class": via_ledger.to_json(),
        }
        if job.explain:
            entry["normal_ledger"] = ledger.to_json()
        rows.append(entry)
    return {"count": len(rows), "classes": rows}


def _run_integral(job: JobSpec) -> dict:
    result = integral_Id(job.spec, lambda_seed=job.lambda_seed,
                         budget=job.coset_budget)
    data = result.to_json()
    out = {
        "value": result.value.to_text(),
        "t_poly": data["t_poly"],
    }
    if job.explain:
        out["per_tableau"] = data["per_tableau"]
        out["ledgers"] = {
            repr([list(r) for r in t.rows]): normal_ledger(t).to_json()
            for t, _ in result.per_tableau
        }
    return out


def _run_hg(job: JobSpec) -> dict:
    spec = job.spec
    if spec.levels != 1:
        raise UsageError("hg requires a Grassmannian (a single rank)")
    terms = []
    for d in range(job.max_degree + 1):
        cls = grassmannian_hg_term(spec.n, spec.ranks[0], d,
                                   job.coset_budget)
        terms.append({"d": d, "class": cls.to_json()})
    return {"schema": "flaghg/hgseries-v1", "spec": spec.to_json(),
            "truncation": job.max_degree, "terms": terms}


def _run_hori_vafa(job: JobSpec) -> dict:
    spec = job.spec
    if spec.levels != 1 or spec.ranks[0] < 2:
        raise UsageError("hori-vafa requires a Grassmannian with rank >= 2")
    report = hori_vafa_verify(spec.n, spec.ranks[0], job.max_degree,
                              lambda_seed=job.lambda_seed,
                              budget=job.coset_budget)
    return report.to_json()


def _run_oracle_compare(job: JobSpec) -> dict:
    import random

    from .algebra import y
    from .pushforward import complete_homogeneous
    from .tableaux import block_decomposition as blocks_of

    spec = job.spec
    lam = lam_vector(spec.n, job.lambda_seed)
    rows = []
    all_equal = True
    for index, t in enumerate(enumerate_tableaux(spec)):
        blocks = blocks_of(t)
        rng = random.Random(job.lambda_seed * 7919 + index)
        cases = []
        dim = component_dimension(t)
        for trial in range(3):
            p = Poly.const(1)
            degree = 0
            for i in range(1, blocks.levels + 1):
                for j in range(1, blocks.K(i) + 1):
                    block_vars = [
                        y(i, j, k)
                        for k in range(1, blocks.m(i, j) + 1)
                    ]
                    k = rng.randint(0, max(0, min(2, dim - degree)))
                    degree += k
                    p = p * complete_homogeneous(k, block_vars)
            f = RatFun.from_poly(p)
            via_oracle = ab_integrate(t, f, lam, seed=job.lambda_seed,
                                      check_symmetry=False)
            via_tower = integrate_to_point(f, tableau_tower(t),
                                           job.coset_budget)
            equal = via_oracle == via_tower
            all_equal = all_equal and equal
            cases.append({
                "trial": trial,
                "integrand": p.to_text(),
                "oracle": via_oracle.to_text(),
                "tower": via_tower.to_text(),
                "equal": equal,
            })
        rows.append({
            "alpha": [list(r) for r in t.rows],
            "cases": cases,
        })
    return {"all_equal": all_equal, "tableaux": rows}


_RUNNERS = {
    "tableaux": _run_tableaux,
    "euler": _run_euler,
    "integral": _run_integral,
    "hg": _run_hg,
    "hori-vafa": _run_hori_vafa,
    "oracle-compare": _run_oracle_compare,
}


def _canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def cache_key(job: JobSpec) -> str:
    payload = {"job": job.identity(), "engine": __version__}
    return hashlib.sha256(_canonical_json(payload).encode()).hexdigest()


def _default_cache_dir() -> Path:
    return Path.home() / ".cache" / "flaghg"


def run_and_report(job: JobSpec) -> dict:
    """Dispatch a job through the cache and assemble the report."""
    key = cache_key(job)
    cache_dir = Path(job.cache_dir) if job.cache_dir else _default_cache_dir()
    cache_file = cache_dir / f"{key}.json"
    results = None
    cache_status = "miss"
    warning = None
    if cache_file.exists():
        try:
            stored = json.loads(cache_file.read_text())
            if stored.get("key") != key:
                raise ValueError("key mismatch")
            results = stored["results"]
            cache_status = "hit"
        except (ValueError, KeyError, json.JSONDecodeError):
            results = None
            warning = "cache entry was corrupt and has been bypassed"
    if results is None:
        results = _RUNNERS[job.command](job)
        try:
            cache_dir.mkdir(parents=True, exist_ok=True)
            cache_file.write_text(
                _canonical_json({"key": key, "results": results}))
        except OSError:
            warning = "cache directory is not writable"
    provenance = {
        "engine_version": __version__,
        "seed": job.lambda_seed,
        "routes": _routes_for(job.command),
        "work": _work_counters(job),
        "cache": {"key": key, "status": cache_status},
    }
    if warning:
        provenance["warning"] = warning
    return {
        "schema": "flaghg/report-v1",
        "job": job.to_json(),
        "results": results,
        "provenance": provenance,
    }


def _routes_for(command: str) -> list[str]:
    return {
        "tableaux": ["enumeration"],
        "euler": ["ledger", "closed-form"],
        "integral": ["fixed-point-oracle"],
        "hg": ["tableau-sum", "simplified-display"],
        "hori-vafa": ["tableau-sum", "simplified-display",
                      "antisymmetrization"],
        "oracle-compare": ["fixed-point-oracle", "fibration-tower"],
    }[command]


def _work_counters(job: JobSpec) -> dict:
    tableaux = enumerate_tableaux(job.spec)
    return {
        "tableaux": len(tableaux),
        "fixed_points": sum(len(torus_fixed_points(t)) for t in tableaux),
    }


def _render_text(report: dict) -> str:
    lines = []
    job = report["job"]
    lines.append(f"flaghg {job['command']} "
                 f"n={job['spec']['n']} ranks={job['spec']['ranks']} "
                 f"degrees={job['spec']['degrees']}")
    lines.append(f"seed={job['lambda_seed']} "
                 f"cache={report['provenance']['cache']['status']}")
    results = report["results"]

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k in sorted(value):
                v = value[k]
                if isinstance(v, (dict, list)):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {item}")

    walk(results, 1)
    return "\n".join(lines) + "\n"


def format_report(report: dict, output_format: str) -> str:
    if output_format == "json":
        return _canonical_json(report) + "\n"
    return _render_text(report)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        job = parse_job(argv, os.environ)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        report = run_and_report(job)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FlagHGError as exc:
        print(f"computation error [{job.command}]: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(format_report(report, job.output_format))
    if job.command == "hori-vafa" and not report["results"]["ok"]:
        return 3
    if job.command == "oracle-compare" and not report["results"]["all_equal"]:
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
