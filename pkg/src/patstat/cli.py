"""``patstat`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Permutations and patterns are quoted, space-separated, 1-based
(``--pattern "1 3 2"``).  Every JSON document carries ``"schema": "patstat/1"``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__, _json
from .asymptotics import c_k, delta_bound, delta_bound_by_overlap, identity_row, janson_sweep
from .counting import count_fast, count_naive
from .moments import (BRUTE_FORCE_MAX_N, DEFAULT_MAX_K, PatternTooLong, brute_force_moments,
                      exact_moments, expectation, variance_polynomial)
from .montecarlo import SimConfig, Standardization, simulate
from .perm import PermutationError, parse_permutation, read_permutations

COUNT_MAX_K = 12


class UsageError(Exception):
    """Bad or missing parameters; maps to exit code 2."""


# defaults applied after the --config file, so the file can override them
DEFAULTS: dict[str, dict[str, Any]] = {
    "count": {"method": "auto"},
    "identities": {"k_min": 2},
    "janson": {"m": 3, "n_start": 100, "doublings": 6, "sigma": "exact"},
    "simulate": {"workers": 1, "std": "exact", "bins": 60},
}
REQUIRED: dict[str, tuple[str, ...]] = {
    "count": ("pattern",),
    "expect": ("n",),
    "var": ("pattern", "n"),
    "var-poly": ("pattern",),
    "verify-oracle": ("pattern", "max_n"),
    "ck": ("k",),
    "identities": ("k",),
    "delta": ("n", "k"),
    "janson": ("pattern",),
    "simulate": ("pattern", "n", "samples", "seed"),
}


def _pattern(text: str):
    try:
        q = parse_permutation(text)
    except PermutationError as exc:
        raise UsageError(f"bad pattern {text!r}: {exc}") from exc
    if len(q) == 0:
        raise UsageError("pattern must be non-empty")
    return q


def _emit(obj: Any, fmt: str) -> str:
    text = _json.dumps(obj) if fmt == "json" else _table(obj)
    sys.stdout.write(text)
    return text


def _cell(v: Any) -> str:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return v["num"] if v["den"] == "1" else f"{v['num']}/{v['den']}"
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return str(v)


def _table(obj: Any) -> str:
    rows = obj.get("rows") if isinstance(obj, dict) else None
    lines = []
    if isinstance(obj, dict):
        for key, v in obj.items():
            if key != "rows":
                lines.append(f"{key:<20} {_cell(v)}")
    if rows:
        keys = list(rows[0])
        cells = [[_cell(r[c]) for c in keys] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(keys)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(keys, widths)))
        lines.extend("  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


def cmd_count(a) -> int:
    q = _pattern(a.pattern)
    if len(q) > COUNT_MAX_K:
        raise UsageError(f"pattern length {len(q)} exceeds the cap {COUNT_MAX_K}")
    counter = count_naive if a.method == "naive" else count_fast
    if a.perm is not None:
        source = [a.perm]
    elif a.input and a.input != "-":
        source = Path(a.input).read_text().splitlines()
    else:
        source = sys.stdin.read().splitlines()
    out = []
    try:
        for _, p in read_permutations(source):
            out.append(str(counter(p, q).count))
    except PermutationError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write("".join(line + "\n" for line in out))
    return 0


def cmd_expect(a) -> int:
    if a.k is None and a.pattern is None:
        raise UsageError("expect needs --k or --pattern")
    k = a.k if a.k is not None else len(_pattern(a.pattern))
    if k < 1 or a.n < 0:
        raise UsageError("need k >= 1 and n >= 0")
    _emit({"schema": _json.SCHEMA, "n": a.n, "k": k, "mean": _json.rational(expectation(a.n, k))}, a.format)
    return 0


def _max_k(a) -> int:
    return a.max_k if a.max_k is not None else DEFAULT_MAX_K


def cmd_var(a) -> int:
    if a.n < 0:
        raise UsageError("n must be non-negative")
    report = exact_moments(a.n, _pattern(a.pattern), max_k=_max_k(a))
    _emit(report.to_json(), a.format)
    return 0


def cmd_var_poly(a) -> int:
    _emit(variance_polynomial(_pattern(a.pattern), max_k=_max_k(a)).to_json(), a.format)
    return 0


def cmd_verify_oracle(a) -> int:
    q = _pattern(a.pattern)
    if not 0 <= a.max_n <= BRUTE_FORCE_MAX_N:
        raise UsageError(f"--max-n must be in 0..{BRUTE_FORCE_MAX_N}")
    rows = []
    for n in range(len(q), a.max_n + 1):
        closed = exact_moments(n, q, max_k=_max_k(a))
        brute = brute_force_moments(n, q)
        ok = closed.mean == brute.mean and closed.variance == brute.variance
        rows.append({"n": n, "closed_form": _json.rational(closed.variance),
                     "brute_force": _json.rational(brute.variance), "match": ok})
        if not ok:
            _emit({"schema": _json.SCHEMA, "pattern": list(q.values), "ok": False,
                   "first_mismatch": rows[-1]}, a.format)
            return 1
    _emit({"schema": _json.SCHEMA, "pattern": list(q.values), "ok": True, "rows": rows}, a.format)
    return 0


def cmd_ck(a) -> int:
    if a.k < 1:
        raise UsageError("--k must be at least 1")
    _emit({"schema": _json.SCHEMA, "k": a.k, "c_k": _json.rational(c_k(a.k)),
           "c_k_float": float(c_k(a.k))}, a.format)
    return 0


def cmd_identities(a) -> int:
    if a.k < 2 or a.k_min < 2 or a.k_min > a.k:
        raise UsageError("need 2 <= --k-min <= --k")
    rows = [identity_row(k) for k in range(a.k_min, a.k + 1)]
    ok = all(r["ok"] for r in rows)
    _emit({"schema": _json.SCHEMA, "ok": ok, "rows": rows}, a.format)
    return 0 if ok else 1


def cmd_delta(a) -> int:
    if not 1 <= a.k <= a.n:
        raise UsageError("need n >= k >= 1")
    _emit({"schema": _json.SCHEMA, "n": a.n, "k": a.k,
           "delta_bound": str(delta_bound(a.n, a.k)),
           "sum_by_overlap": str(delta_bound_by_overlap(a.n, a.k))}, a.format)
    return 0


def cmd_janson(a) -> int:
    q = _pattern(a.pattern)
    if a.m < 1 or a.n_start < len(q) or a.doublings < 1:
        raise UsageError("need --m >= 1, --n-start >= k and --doublings >= 1")
    if len(q) < 2:
        raise UsageError("the variance is zero for patterns of length 1")
    sweep = janson_sweep(len(q), a.m, a.n_start, a.doublings, a.sigma, q=q)
    obj = sweep.to_json()
    obj["pattern"] = list(q.values)
    obj["sigma_source"] = a.sigma
    obj["rows"] = obj.pop("points")
    _emit(obj, a.format)
    return 0


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def cmd_simulate(a) -> int:
    q = _pattern(a.pattern)
    std = Standardization.EXACT if a.std == "exact" else Standardization.EMPIRICAL
    if std is Standardization.EXACT and len(q) > DEFAULT_MAX_K:
        raise UsageError(f"k={len(q)} exceeds the exact-moment cap {DEFAULT_MAX_K}; "
                         "rerun with --std empirical")
    try:
        cfg = SimConfig(q, a.n, a.samples, a.seed, a.workers, std, a.bins)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    summary = simulate(cfg)
    text = _emit(summary.to_json(), a.format)
    outputs: dict[str, str] = {}
    if a.json_out:
        Path(a.json_out).write_text(_json.dumps(summary.to_json()))
        outputs[a.json_out] = _sha256(Path(a.json_out).read_bytes())
    if a.hist_out:
        Path(a.hist_out).write_text(summary.histogram_csv())
        outputs[a.hist_out] = _sha256(Path(a.hist_out).read_bytes())
    if outputs:
        manifest = {
            "schema": _json.SCHEMA,
            "tool": "patstat",
            "version": __version__,
            "subcommand": "simulate",
            "parameters": {"pattern": list(q.values), "n": a.n, "samples": a.samples,
                           "seed": a.seed, "workers": a.workers, "std": a.std, "bins": a.bins},
            "seed": a.seed,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "stdout_sha256": _sha256(text.encode()),
            "outputs": outputs,
        }
        first = Path(next(iter(outputs)))
        first.with_name(first.name + ".manifest.json").write_text(_json.dumps(manifest))
    return 0


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "count": cmd_count, "expect": cmd_expect, "var": cmd_var, "var-poly": cmd_var_poly,
    "verify-oracle": cmd_verify_oracle, "ck": cmd_ck, "identities": cmd_identities,
    "delta": cmd_delta, "janson": cmd_janson, "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patstat", description="Pattern counts in random permutations: exact moments, "
        "asymptotic constants and Monte Carlo normality checks.")
    parser.add_argument("--version", action="version", version=f"patstat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--config", help="JSON file supplying any option; explicit flags win")
        p.add_argument("--format", choices=("json", "table"), default="json")
        return p

    p = add("count", "Occurrences of a pattern q in permutations p: the number of "
            "subsequences order-isomorphic to q (pattern containment).")
    p.add_argument("--pattern", help='pattern, e.g. "1 3 2"')
    p.add_argument("--perm", help='one permutation, e.g. "2 3 1"')
    p.add_argument("--input", help="file with one permutation per line ('-' for stdin)")
    p.add_argument("--method", choices=("auto", "naive", "fast"))

    p = add("expect", "Mean of X_{n,q}: C(n,k)/k!, since each indicator X_{n,i} has mean 1/k!.")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--pattern")

    for name, text in (
        ("var", "Exact mean and variance of X_{n,q}, which grows like n^(2k-1)."),
        ("var-poly", "Var(X_{n,q}) as exact coefficients of C(n,k) and C(n,2k-j): the "
                     "expansion of the variance over ordered pairs of subwords."),
    ):
        p = add(name, text)
        p.add_argument("--pattern")
        if name == "var":
            p.add_argument("--n", type=int)
        p.add_argument("--max-k", type=int, help=f"raise the exact-moment cap (default {DEFAULT_MAX_K})")

    p = add("verify-oracle", "Check the closed-form variance of X_{n,q} against brute force "
            "over all n! permutations (uniform random permutation model).")
    p.add_argument("--pattern")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-k", type=int)

    p = add("ck", "c_k = S_k/(2k-1)!^2 - k^2/k!^4, the n^(2k-1) variance coefficient for monotone q.")
    p.add_argument("--k", type=int)

    p = add("identities", "Vandermonde sum, Cauchy-Schwarz gap for S_k, c_k > 0 and the "
            "-k^2/k!^4 coefficient of the disjoint-pair term, for k-min..k.")
    p.add_argument("--k", type=int, help="largest k")
    p.add_argument("--k-min", type=int)

    p = add("delta", "Dependency-graph maximum degree bound C(n,k) - C(n-k,k) - 1.")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)

    p = add("janson", "Janson dependency criterion ratio N_n Delta_n^(m-1) (A_n/sigma_n)^m "
            "over n = n_start * 2^i, with its fitted log-log slope.")
    p.add_argument("--pattern")
    p.add_argument("--m", type=int)
    p.add_argument("--n-start", type=int)
    p.add_argument("--doublings", type=int)
    p.add_argument("--sigma", choices=("exact", "scaling"))

    p = add("simulate", "Monte Carlo check of asymptotic normality of X_{n,q}: standardized "
            "counts (X - E X)/sqrt(Var X) against N(0,1).")
    p.add_argument("--pattern")
    p.add_argument("--n", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--std", choices=("exact", "empirical"))
    p.add_argument("--bins", type=int)
    p.add_argument("--hist-out", help="write the histogram as CSV")
    p.add_argument("--json-out", help="also write the summary JSON to this file")

    for action in sub.choices.values():
        for opt in action._actions:
            if opt.dest not in ("help", "format", "config"):
                opt.default = None
    return parser


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    cmd = args.command
    values = vars(args)
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(config, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in config.items():
            dest = key.replace("-", "_")
            if dest not in values:
                raise UsageError(f"unknown option {key!r} in config for {cmd}")
            if values[dest] is None:
                values[dest] = value
    for key, value in DEFAULTS.get(cmd, {}).items():
        if values.get(key) is None:
            values[key] = value
    missing = [k for k in REQUIRED[cmd] if values.get(k) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m.replace("_", "-") for m in missing))
    return args


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](_resolve(args))
    except (UsageError, PatternTooLong, PermutationError) as exc:
        print(f"patstat {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
