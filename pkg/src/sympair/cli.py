"""Command-line front end.

Usage:
    sympair construct --q 7 --k 3 --m 4
    sympair verify    --q 8 --k 5 --m 6
    sympair spectrum  --q 7 --k 3 --m 4 --format csv
    sympair census    --q 9 --m 6
    sympair sweep     --config grid.cfg --jobs 8 --out summary.json

Exit codes: 0 when every check passes, 1 on a mathematical mismatch,
2 on bad arguments.  Results go to stdout (or --out); progress goes to
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional

from .construction import (
    CodeSpec,
    generator_matrix,
    is_mds_pair,
    layout,
    make_spec,
    root_spec,
    theoretical_dp,
)
from .errors import ParameterError
from .finite_field import Field, field_from_order, prime_power
from .spectrum import (
    DEFAULT_ENUM_CEILING,
    class_census,
    closed_form,
    compare_distributions,
    distribution_csv,
    min_weight_codeword,
    pair_weight_distribution,
    sanity_problems,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

DEFAULT_Q_LIST = (5, 7, 8, 9, 11, 13)
DEFAULT_K_RANGE = (3, 4)


class UsageError(ParameterError):
    pass


def dumps(obj) -> str:
    # map keys are pre-ordered by the emitters (numeric maps ascending)
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _field(args) -> Field:
    if args.q is not None:
        if args.p is not None or args.e is not None:
            p, e = prime_power(args.q)
            if (args.p is not None and args.p != p) or (args.e is not None and args.e != e):
                raise UsageError(f"--q {args.q} contradicts --p/--e")
        return field_from_order(args.q)
    if args.p is None:
        raise UsageError("give the field as --q or as --p [--e]")
    return field_from_order(args.p ** (args.e or 1))


def _int_list(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected a comma separated list of integers, got {text!r}") from None


def _spec(args) -> CodeSpec:
    return make_spec(
        _field(args),
        args.k,
        args.m,
        args.beta1,
        args.beta2,
        _int_list(args.alphas),
    )


def layout_json(spec: CodeSpec) -> list[dict]:
    return [{"index": p.index, "tag": p.tag, "value": p.value} for p in layout(spec)]


# -- commands ------------------------------------------------------------------


def cmd_construct(args) -> int:
    spec = _spec(args)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["position", "tag", "index", "value"] + [f"x^{i}" for i in range(spec.k)])
        gen = generator_matrix(spec)
        for pos, p in enumerate(layout(spec)):
            w.writerow([pos + 1, p.tag, p.index, p.value] + [row[pos] for row in gen])
        _emit(buf.getvalue(), args.out)
    else:
        doc = {
            "generator_matrix": generator_matrix(spec),
            "layout": layout_json(spec),
            "spec": spec.to_json(),
        }
        _emit(dumps(doc), args.out)
    return EXIT_OK


def verify_spec(spec: CodeSpec, jobs, ceiling) -> dict:
    dist = pair_weight_distribution(spec, jobs=jobs, ceiling=ceiling)
    dp = dist.min_nonzero_weight
    theory = theoretical_dp(spec)
    bound = spec.n - spec.k + 2
    ok = dp == theory == bound and is_mds_pair(spec, dp)
    return {"dp": dp, "mds": ok, "n_minus_k_plus_2": bound, "ok": ok, "theory": theory}


def cmd_verify(args) -> int:
    spec = _spec(args)
    res = verify_spec(spec, args.jobs, args.ceiling)
    if not res["ok"]:
        msg, word, w = min_weight_codeword(spec, args.ceiling)
        res["witness"] = {"codeword": word, "message": list(msg.coeffs), "weight": w}
    if args.format == "json":
        _emit(dumps({"result": res, "spec": spec.to_json()}), args.out)
    else:
        mark = "✓ MDS" if res["ok"] else "✗ MISMATCH"
        line = f"d_p={res['dp']} = theory={res['theory']} = n-k+2={res['n_minus_k_plus_2']} {mark}\n"
        if not res["ok"]:
            line += f"witness: {res['witness']}\n"
        _emit(line, args.out)
    return EXIT_OK if res["ok"] else EXIT_MISMATCH


def spectrum_report(spec: CodeSpec, jobs, ceiling) -> dict:
    dist = pair_weight_distribution(spec, jobs=jobs, ceiling=ceiling)
    closed = closed_form(spec)
    problems = sanity_problems(spec, dist)
    report = {"enumerated": dist, "closed_form": closed, "sanity": problems, "diff": None}
    if closed is not None:
        report["diff"] = compare_distributions(dist, closed, spec)
    report["ok"] = not problems and (report["diff"] is None or report["diff"].empty)
    return report


def cmd_spectrum(args) -> int:
    spec = _spec(args)
    rep = spectrum_report(spec, args.jobs, args.ceiling)
    if args.format == "csv":
        _emit(distribution_csv(rep["enumerated"], rep["closed_form"]), args.out)
    else:
        doc = {
            "closed_form": rep["closed_form"].to_json() if rep["closed_form"] else None,
            "diff": rep["diff"].to_json() if rep["diff"] else None,
            "enumerated": rep["enumerated"].to_json(),
            "ok": rep["ok"],
            "sanity": rep["sanity"],
            "spec": spec.to_json(),
        }
        _emit(dumps(doc), args.out)
    if rep["diff"] is not None and not rep["diff"].empty:
        _log(f"closed form differs from enumeration at weights {sorted(rep['diff'].deltas)}")
    return EXIT_OK if rep["ok"] else EXIT_MISMATCH


def cmd_census(args) -> int:
    spec = root_spec(_field(args), args.m, args.beta1, args.beta2, _int_list(args.alphas))
    table = class_census(spec, args.ceiling)
    if args.format == "csv":
        _emit(table.to_csv(), args.out)
    else:
        doc = table.to_json()
        doc["spec"] = {key: v for key, v in spec.to_json().items() if key not in ("k", "m1", "n", "t")}
        _emit(dumps(doc), args.out)
    return EXIT_OK if table.ok else EXIT_MISMATCH


# -- sweep ----------------------------------------------------------------------


@dataclass
class SweepConfig:
    q_list: list = dc_field(default_factory=lambda: list(DEFAULT_Q_LIST))
    k_range: tuple = DEFAULT_K_RANGE
    m_policy: object = "all-valid"  # or an explicit list of m values
    ceiling: int = DEFAULT_ENUM_CEILING
    output: Optional[str] = None
    format: str = "json"
    jobs: Optional[int] = None

    def cases(self) -> list[tuple[int, int, int]]:
        out = []
        for q in self.q_list:
            for k in range(self.k_range[0], self.k_range[1] + 1):
                ms = range(k + 1, q - 1) if self.m_policy == "all-valid" else self.m_policy
                for m in ms:
                    if not (3 <= k < m <= q - 2):
                        raise UsageError(f"(q={q}, k={k}, m={m}) violates 3 <= k < m <= q-2")
                    out.append((q, k, m))
        return out


def _parse_range(text: str) -> tuple[int, int]:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return int(lo), int(hi)
    v = int(text)
    return v, v


def load_sweep_config(path: Optional[str]) -> SweepConfig:
    """Read a ``key = value`` file.  Unknown keys are rejected; ``#`` starts a comment."""
    cfg = SweepConfig()
    if path is None:
        return cfg
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "q_list":
                cfg.q_list = _int_list(value)
            elif key == "k_range":
                cfg.k_range = _parse_range(value)
            elif key == "m_policy":
                cfg.m_policy = "all-valid" if value == "all-valid" else _int_list(value)
            elif key == "ceiling":
                cfg.ceiling = int(value)
            elif key == "output":
                cfg.output = value or None
            elif key == "format":
                if value not in ("json", "csv"):
                    raise UsageError(f"{path}:{lineno}: format must be json or csv")
                cfg.format = value
            elif key == "jobs":
                cfg.jobs = None if value == "auto" else int(value)
            else:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        except UsageError:
            raise
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return cfg


SWEEP_COLUMNS = [
    "q", "k", "m", "n", "dp", "theory", "mds", "spectrum", "census", "pass",
]


def run_sweep(cfg: SweepConfig) -> tuple[dict, list[tuple[int, int, int]]]:
    cases = cfg.cases()
    if not cases:
        raise UsageError("the sweep grid is empty")
    rows, failures = [], []
    census_cache: dict[tuple[int, int], bool] = {}
    for q, k, m in cases:
        _log(f"sweep: q={q} k={k} m={m}")
        spec = make_spec(q, k, m)
        rep = spectrum_report(spec, cfg.jobs, cfg.ceiling)
        dist = rep["enumerated"]
        dp = dist.min_nonzero_weight
        theory = theoretical_dp(spec)
        mds = dp == theory == spec.n - spec.k + 2 and is_mds_pair(spec, dp)
        if rep["diff"] is None:
            spectrum = "sanity-ok" if not rep["sanity"] else "sanity-fail"
        else:
            spectrum = "match" if rep["diff"].empty else "mismatch"
        if (q, m) not in census_cache:
            census_cache[(q, m)] = class_census(root_spec(q, m), cfg.ceiling).ok
        census = census_cache[(q, m)]
        passed = mds and rep["ok"] and census
        if not passed:
            failures.append((q, k, m))
        rows.append(
            {
                "census": census,
                "dp": dp,
                "k": k,
                "m": m,
                "mds": mds,
                "n": spec.n,
                "pass": passed,
                "q": q,
                "spectrum": spectrum,
                "theory": theory,
            }
        )
    summary = {
        "cases": rows,
        "failures": [list(f) for f in failures],
        "ok": not failures,
    }
    return summary, failures


def sweep_csv(summary: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in summary["cases"]:
        w.writerow([row[c] for c in SWEEP_COLUMNS])
    return buf.getvalue()


def cmd_sweep(args) -> int:
    cfg = load_sweep_config(args.config)
    if args.jobs is not None:
        cfg.jobs = args.jobs
    if args.out is not None:
        cfg.output = args.out
    if args.format is not None:
        cfg.format = args.format
    if args.ceiling is not None:
        cfg.ceiling = args.ceiling
    summary, failures = run_sweep(cfg)
    text = sweep_csv(summary) if cfg.format == "csv" else dumps(summary)
    _emit(text, cfg.output)
    if failures:
        _log("failing cases: " + ", ".join(f"(q={q}, k={k}, m={m})" for q, k, m in failures))
        return EXIT_MISMATCH
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------


def _jobs(text: str) -> Optional[int]:
    if text == "auto":
        return None
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("--jobs must be >= 1 or 'auto'")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympair", description="Symbol-pair MDS evaluation codes: construction and verification."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def code_args(p: argparse.ArgumentParser, need_k: bool = True) -> None:
        p.add_argument("--q", type=int, help="field order (prime power)")
        p.add_argument("--p", type=int, help="field characteristic")
        p.add_argument("--e", type=int, help="extension degree")
        if need_k:
            p.add_argument("--k", type=int, required=True, help="dimension")
        p.add_argument("--m", type=int, required=True, help="number of alpha points")
        p.add_argument("--beta1", type=int)
        p.add_argument("--beta2", type=int)
        p.add_argument("--alphas", help="comma separated canonical encodings")

    def io_args(p: argparse.ArgumentParser, default_format: Optional[str]) -> None:
        p.add_argument("--format", choices=("json", "csv"), default=default_format)
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--ceiling", type=int, default=DEFAULT_ENUM_CEILING, help="max q^k to enumerate")
        p.add_argument("--jobs", type=_jobs, default=None, help="worker processes or 'auto'")

    p = sub.add_parser("construct", help="print the code parameters, layout and generator matrix")
    code_args(p)
    io_args(p, "json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exhaustive minimum pair distance vs. the MDS value")
    code_args(p)
    io_args(p, None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="pair-weight distribution, with closed form for k in {3,4}")
    code_args(p)
    io_args(p, "json")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("census", help="root-class cardinalities vs. closed forms")
    code_args(p, need_k=False)
    io_args(p, "json")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("sweep", help="verify + spectrum + census over a parameter grid")
    p.add_argument("--config", help="key = value file (q_list, k_range, m_policy, ceiling, output, format, jobs)")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out")
    p.add_argument("--ceiling", type=int, default=None)
    p.add_argument("--jobs", type=_jobs, default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "ceiling", None) is not None and args.ceiling < 1:
        _log("error: --ceiling must be positive")
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParameterError as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
