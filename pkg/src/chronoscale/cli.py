"""Config-driven verification harness.

Subcommands::

    chronoscale verify  --config run.json   run every check in the config
    chronoscale sweep   --config sweep.json run the config across a parameter grid
    chronoscale examples [--config ex.json] evaluate the worked discrete examples
    chronoscale report  --config rows.json  re-render a saved JSON report

Exit status is 0 when every inequality holds, 1 when any is violated and 2
on malformed input (including points off the time-scale grid).
"""
from __future__ import annotations

import argparse
import copy
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .discrete import ExampleName, example_suite
from .functions import parse_function_spec
from .monotone import PiecewiseFn, PiecewiseMode, make_monotone, make_piecewise
from .scalars import (
    DEFAULT_TOLERANCE,
    EXACT,
    ScalarMode,
    format_number,
    parse_number,
    read_number,
)
from .timescale import NotInScaleError, TimeScale
from .young import (
    VARIANTS,
    Variant,
    YoungContext,
    inverse_free_sandwich,
    legendre_pair,
    piecewise_real_sandwich,
    piecewise_sandwich,
    sandwich_bounds,
    two_point_bound,
    young_check,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
COLUMNS = ("check", "inputs", "lower", "middle", "upper", "holds", "equality", "regime")
FORMATS = ("csv", "json", "table")
MAX_EXHAUSTIVE = 250_000

# Added to every computed middle value. Only tests touch this, to drive the
# violation path; configs and flags cannot reach it.
_MIDDLE_PERTURBATION = 0


class ConfigError(ValueError):
    """The run configuration is malformed or inconsistent."""


@dataclass(frozen=True)
class ReportRow:
    check: str
    inputs: str
    lower: object
    middle: object
    upper: object
    holds: Optional[bool]
    equality: str
    regime: str

    @property
    def is_error(self) -> bool:
        return self.holds is None

    def fields(self) -> list:
        holds = "error" if self.holds is None else ("true" if self.holds else "false")
        return [
            self.check, self.inputs,
            format_number(self.lower), format_number(self.middle), format_number(self.upper),
            holds, self.equality, self.regime,
        ]


def _equality_label(lower: bool, upper: bool) -> str:
    return {(False, False): "none", (True, False): "lower", (False, True): "upper", (True, True): "both"}[
        (bool(lower), bool(upper))
    ]


def _inputs(**kw) -> str:
    return ";".join(f"{k}={format_number(v)}" for k, v in kw.items())


def _error_row(check: str, inputs: str, regime: str) -> ReportRow:
    return ReportRow(check, inputs, None, None, None, None, "", regime)


# configuration ------------------------------------------------------------------


@dataclass
class RunConfig:
    scale: TimeScale
    function: object
    checks: list
    mode: ScalarMode
    format: str = "csv"


def _mode_from(raw: dict, exact_flag: bool, tolerance: Optional[float]) -> Optional[ScalarMode]:
    regime = raw.get("regime", "auto")
    if regime not in ("auto", "exact", "approx"):
        raise ConfigError(f"unknown regime {regime!r}")
    tol = tolerance if tolerance is not None else raw.get("tolerance", DEFAULT_TOLERANCE)
    if exact_flag or regime == "exact":
        return EXACT
    if regime == "approx" or tolerance is not None or "tolerance" in raw:
        return ScalarMode(False, float(tol))
    return None


def _build_function(spec, scale: TimeScale, direction):
    if isinstance(spec, dict) and "piecewise" in spec:
        body = spec["piecewise"]
        knots = [parse_number(k) for k in body["knots"]]
        built = [parse_function_spec(p) for p in body["pieces"]]
        mode = body.get("mode", "scale_continuous")
        real = PiecewiseMode(mode) is PiecewiseMode.REAL_JUMPS
        return make_piecewise(
            knots, [b.func for b in built], mode,
            scale=None if real else scale,
            inverses=[b.inverse for b in built],
        )
    fs = parse_function_spec(spec)
    return make_monotone(fs.func, direction, scale, inverse=fs.inverse)


def load_config(raw: dict, exact_flag: bool = False, tolerance: Optional[float] = None) -> RunConfig:
    """Validate a config document and build its scale and function."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    try:
        scale = TimeScale.from_json(raw["scale"])
        if "window" in raw:
            lo, hi = (parse_number(v) for v in raw["window"])
            scale = scale.window(lo, hi)
        function = _build_function(raw["function"], scale, raw.get("direction"))
    except KeyError as exc:
        raise ConfigError(f"config is missing {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    checks = raw.get("checks", [])
    if not isinstance(checks, list):
        raise ConfigError("checks must be a list")
    checks = [{"type": c} if isinstance(c, str) else dict(c) for c in checks]
    for c in checks:
        if c.get("type") not in _CHECKS:
            raise ConfigError(f"unknown check {c.get('type')!r}")
    mode = _mode_from(raw, exact_flag, tolerance)
    if mode is not None and mode.exact:
        fns = function.pieces if isinstance(function, PiecewiseFn) else [function]
        if not all(f.is_exact for f in fns):
            raise ConfigError("exact regime needs a discrete rational scale and rational values")
    fmt = raw.get("format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"unknown format {fmt!r}")
    return RunConfig(scale, function, checks, mode, fmt)


# checks -----------------------------------------------------------------------
#
# Each check expands into a list of zero-argument tasks; tasks are evaluated
# (possibly in parallel) and their rows concatenated in task order.


def _points(check: dict, key: str, default):
    if key in check:
        return [parse_number(v) for v in check[key]]
    if default is None:
        raise ConfigError(f"check {check['type']!r} needs an explicit {key!r} list on a non-discrete scale")
    return list(default)


def _context(cfg: RunConfig, cache: dict) -> YoungContext:
    if isinstance(cfg.function, PiecewiseFn):
        raise ConfigError("this check needs a single monotone function")
    if "ctx" not in cache:
        cache["ctx"] = YoungContext(cfg.function, cfg.mode)
    return cache["ctx"]


def _grids(ctx: YoungContext):
    if ctx.T.is_discrete:
        return ctx.T.points(), ctx.Timage.points()
    return None, None


def _guard(check: dict, *sizes):
    total = 1
    for s in sizes:
        total *= s
    if total > MAX_EXHAUSTIVE:
        raise ConfigError(f"check {check['type']!r} would expand to {total} rows; give explicit point lists")


def _perturbed(value):
    return value + _MIDDLE_PERTURBATION if _MIDDLE_PERTURBATION else value


def _safe(check_name: str, inputs: str, regime: str, body: Callable) -> Callable:
    def task():
        try:
            return body()
        except (NotInScaleError, ValueError, ZeroDivisionError, KeyError):
            return _error_row(check_name, inputs, regime)

    return task


def _young_tasks(cfg, check, cache):
    ctx = _context(cfg, cache)
    pts, ys = _grids(ctx)
    a_list, b_list = _points(check, "a", pts), _points(check, "b", ys)
    _guard(check, len(a_list), len(b_list))
    regime = ctx.mode.name

    def row(a, b):
        inputs = _inputs(a=a, b=b)

        def body():
            value, _, equality = young_check(ctx, a, b)
            value = _perturbed(value)
            if ctx.increasing:
                lower, upper, holds = 0, None, ctx.mode.leq(0, value)
                eq = _equality_label(equality, False)
            else:
                lower, upper, holds = None, 0, ctx.mode.leq(value, 0)
                eq = _equality_label(False, equality)
            return ReportRow("young", inputs, lower, value, upper, holds, eq, regime)

        return _safe("young", inputs, regime, body)

    return [row(a, b) for a in a_list for b in b_list]


def _report_row(name, inputs, rep, regime) -> ReportRow:
    middle = _perturbed(rep.middle)
    rep_holds = replace(rep, middle=middle).holds
    return ReportRow(
        name, inputs, rep.lower, middle, rep.upper, rep_holds,
        _equality_label(rep.equality_lower, rep.equality_upper), regime,
    )


def _variants(check) -> list:
    v = check.get("variant", "rho_rho")
    if v == "all":
        return list(VARIANTS)
    try:
        return [Variant(v)]
    except ValueError:
        raise ConfigError(f"unknown variant {v!r}") from None


def _sandwich_tasks(cfg, check, cache):
    ctx = _context(cfg, cache)
    pts, ys = _grids(ctx)
    a_list, ah_list = _points(check, "a", pts), _points(check, "a_hat", pts)
    b_list, bh_list = _points(check, "b", ys), _points(check, "b_hat", ys)
    variants = _variants(check)
    _guard(check, len(a_list), len(ah_list), len(b_list), len(bh_list), len(variants))
    regime = ctx.mode.name

    def row(a, ah, b, bh, v):
        inputs = _inputs(a=a, a_hat=ah, b=b, b_hat=bh) + f";variant={v.value}"
        return _safe("sandwich", inputs, regime,
                     lambda: _report_row("sandwich", inputs, sandwich_bounds(ctx, a, ah, b, bh, v), regime))

    return [row(*q, v) for q in itertools.product(a_list, ah_list, b_list, bh_list) for v in variants]


def _lemma22_tasks(cfg, check, cache):
    ctx = _context(cfg, cache)
    pts, ys = _grids(ctx)
    a_list, al_list = _points(check, "a", pts), _points(check, "alpha", pts)
    b_list, be_list = _points(check, "b", ys), _points(check, "beta", ys)
    _guard(check, len(a_list), len(al_list), len(b_list), len(be_list))
    regime = ctx.mode.name

    def row(a, b, al, be):
        inputs = _inputs(a=a, b=b, alpha=al, beta=be)

        def body():
            res = two_point_bound(ctx, a, b, al, be)
            lhs = _perturbed(res.lhs)
            if ctx.increasing:
                return ReportRow("lemma22", inputs, res.rhs, lhs, None, ctx.mode.leq(res.rhs, lhs),
                                 _equality_label(res.equality, False), regime)
            return ReportRow("lemma22", inputs, None, lhs, res.rhs, ctx.mode.leq(lhs, res.rhs),
                             _equality_label(False, res.equality), regime)

        return _safe("lemma22", inputs, regime, body)

    return [row(a, b, al, be) for a in a_list for b in b_list for al in al_list for be in be_list]


def _legendre_tasks(cfg, check, cache):
    ctx = _context(cfg, cache)
    pts, ys = _grids(ctx)
    a_list, b_list = _points(check, "a", pts), _points(check, "b", ys)
    _guard(check, len(a_list), len(b_list))
    g_anchor = parse_number(check.get("g_anchor", 0))
    g, g_star = legendre_pair(ctx, g_anchor)
    regime = ctx.mode.name

    def row(a, b):
        inputs = _inputs(a=a, b=b, g_anchor=g_anchor)

        def body():
            rep = sandwich_bounds(ctx, a, ctx.alpha1, b, ctx.beta1)
            middle = g(a) + g_star(b) - ctx.point(a) * ctx.image_point(b)
            rep = replace(rep, middle=middle)
            return _report_row("legendre", inputs, rep, regime)

        return _safe("legendre", inputs, regime, body)

    return [row(a, b) for a in a_list for b in b_list]


def _inverse_free_tasks(cfg, check, cache):
    ctx = _context(cfg, cache)
    pts, _ = _grids(ctx)
    lists = [_points(check, k, pts) for k in ("a", "a_hat", "alpha", "alpha_hat")]
    _guard(check, *map(len, lists))
    regime = ctx.mode.name

    def row(a, ah, al, alh):
        inputs = _inputs(a=a, a_hat=ah, alpha=al, alpha_hat=alh)
        return _safe("inverse_free", inputs, regime,
                     lambda: _report_row("inverse_free", inputs, inverse_free_sandwich(ctx, a, ah, al, alh), regime))

    return [row(*q) for q in itertools.product(*lists)]


def _piecewise_tasks(cfg, check, cache):
    pf = cfg.function
    if not isinstance(pf, PiecewiseFn):
        raise ConfigError("piecewise check needs a piecewise function")
    real = pf.mode is PiecewiseMode.REAL_JUMPS
    first, last = pf.pieces[0], pf.pieces[-1]
    default_first = None if real or not first.image.is_discrete else first.image.points()
    default_last = None if real or not last.image.is_discrete else last.image.points()
    b1_list = _points(check, "b_first", default_first)
    bm_list = _points(check, "b_last", default_last)
    _guard(check, len(b1_list), len(bm_list))
    run = piecewise_real_sandwich if real else piecewise_sandwich

    def row(b1, bm):
        inputs = _inputs(b_first=b1, b_last=bm)

        def body():
            rep = run(pf, b1, bm)
            return _report_row("piecewise", inputs, rep, rep.regime.name)

        return _safe("piecewise", inputs, "approx" if real else "exact", body)

    return [row(b1, bm) for b1 in b1_list for bm in bm_list]


def _example_rows(name, params) -> list:
    try:
        rows = example_suite(name, params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    label = ExampleName(name).value
    out = []
    for r in rows:
        mid = _perturbed(r.mid)
        holds = r.regime.leq(r.lhs, mid) and r.regime.leq(mid, r.rhs)
        inputs = ";".join(f"{k}={format_number(v)}" for k, v in r.instance.items())
        out.append(ReportRow(f"examples:{label}", inputs, r.lhs, mid, r.rhs, holds,
                             "both" if r.equality else "none", r.regime.name))
    return out


def _parse_example_params(check: dict) -> dict:
    params = {k: parse_number(v) for k, v in check.get("params", {}).items() if k != "range"}
    if "range" in check.get("params", {}):
        lo, hi = check["params"]["range"]
        params["range"] = (int(lo), int(hi))
    return params


def _examples_tasks(cfg, check, cache):
    name = check.get("name")
    try:
        ExampleName(name)
    except ValueError:
        raise ConfigError(f"unknown example {name!r}") from None
    params = _parse_example_params(check)
    return [lambda: _example_rows(name, params)]


_CHECKS = {
    "young": _young_tasks,
    "sandwich": _sandwich_tasks,
    "lemma22": _lemma22_tasks,
    "legendre": _legendre_tasks,
    "inverse_free": _inverse_free_tasks,
    "piecewise": _piecewise_tasks,
    "examples": _examples_tasks,
}


def _evaluate(tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        results = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    rows = []
    for r in results:
        rows.extend(r if isinstance(r, list) else [r])
    return rows


def run_checks(cfg: RunConfig, jobs: int = 1) -> list:
    cache: dict = {}
    tasks = []
    for check in cfg.checks:
        tasks.extend(_CHECKS[check["type"]](cfg, check, cache))
    return _evaluate(tasks, jobs)


def exit_status(rows) -> int:
    if any(r.is_error for r in rows):
        return EXIT_INPUT
    if any(not r.holds for r in rows):
        return EXIT_VIOLATION
    return EXIT_OK


def run_verify(raw: dict, jobs: int = 1, exact: bool = False, tolerance: Optional[float] = None):
    """Run a config; returns ``(exit status, rows)``."""
    cfg = load_config(raw, exact, tolerance)
    rows = run_checks(cfg, jobs)
    return exit_status(rows), rows


def _set_path(doc, path: str, value):
    keys = path.split(".")
    node = doc
    for k in keys[:-1]:
        node = node[int(k)] if isinstance(node, list) else node.setdefault(k, {})
    last = keys[-1]
    if isinstance(node, list):
        node[int(last)] = value
    else:
        node[last] = value


def grid_points(grid: dict) -> list:
    """Cross product of the grid, keys in sorted order, values in listed order."""
    if not isinstance(grid, dict):
        raise ConfigError("grid must be an object of parameter lists")
    if not grid or any(len(v) == 0 for v in grid.values()):
        return []
    keys = sorted(grid)
    return [dict(zip(keys, combo)) for combo in itertools.product(*(grid[k] for k in keys))]


def run_sweep(raw: dict, jobs: int = 1, exact: bool = False, tolerance: Optional[float] = None):
    """Run the base config once per grid point.

    Grid keys are dotted paths into the config (``checks.0.params.B``);
    each row's inputs are prefixed with the grid assignment, written as
    ``path=value``.
    """
    if "grid" not in raw:
        raise ConfigError("sweep config needs a 'grid'")
    base = {k: v for k, v in raw.items() if k != "grid"}
    rows = []
    for point in grid_points(raw["grid"]):
        doc = copy.deepcopy(base)
        try:
            for path, value in point.items():
                _set_path(doc, path, value)
        except (KeyError, IndexError, ValueError, TypeError) as exc:
            raise ConfigError(f"bad grid path: {exc}") from None
        prefix = ";".join(f"{k}={_grid_value(v)}" for k, v in point.items())
        _, sub = run_verify(doc, jobs, exact, tolerance)
        rows.extend(_prefixed(r, prefix) for r in sub)
    return exit_status(rows), rows


def _grid_value(value) -> str:
    try:
        return format_number(parse_number(value))
    except (TypeError, ValueError):
        return json.dumps(value, sort_keys=True)


def _prefixed(row: ReportRow, prefix: str) -> ReportRow:
    return ReportRow(row.check, f"{prefix};{row.inputs}", row.lower, row.middle, row.upper,
                     row.holds, row.equality, row.regime)


DEFAULT_EXAMPLES = [
    {"name": "FallingFactorial", "params": {"k": 2}},
    {"name": "GeometricB", "params": {"B": 2}},
    {"name": "LegendreB", "params": {"B": 2}},
    {"name": "SineK", "params": {"k": 2}},
    {"name": "BinomialK", "params": {"k": 2}},
]


def run_examples(raw: Optional[dict] = None, jobs: int = 1):
    """Evaluate the worked examples listed in ``raw["examples"]`` (or the defaults)."""
    entries = DEFAULT_EXAMPLES if not raw else raw.get("examples", DEFAULT_EXAMPLES)
    tasks = []
    for e in entries:
        name = e.get("name")
        try:
            ExampleName(name)
        except ValueError:
            raise ConfigError(f"unknown example {name!r}") from None
        params = _parse_example_params(e)
        tasks.append(lambda name=name, params=params: _example_rows(name, params))
    rows = _evaluate(tasks, jobs)
    return exit_status(rows), rows


# rendering ---------------------------------------------------------------------


def render_report(rows, fmt: str) -> bytes:
    """CSV, JSON (array of row objects) or an aligned text table."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in rows:
            writer.writerow(r.fields())
        return buf.getvalue().encode()
    if fmt == "json":
        docs = [dict(zip(COLUMNS, r.fields())) for r in rows]
        return (json.dumps(docs, indent=1) + "\n").encode()
    if fmt == "table":
        table = [list(COLUMNS)] + [r.fields() for r in rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(COLUMNS))]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip() for line in table]
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data) -> list:
    """Inverse of the JSON rendering."""
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    rows = []
    for d in data:
        exact = d["regime"] == "exact"
        holds = {"true": True, "false": False, "error": None}[d["holds"]]
        rows.append(ReportRow(
            d["check"], d["inputs"],
            read_number(d["lower"], exact), read_number(d["middle"], exact), read_number(d["upper"], exact),
            holds, d["equality"], d["regime"],
        ))
    return rows


# command line -----------------------------------------------------------------


def _jobs(value: Optional[int]) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("CHRONOSCALE_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"CHRONOSCALE_JOBS must be an integer, got {env!r}") from None
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chronoscale", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("verify", "run the checks in a config"),
        ("sweep", "run a config across a parameter grid"),
        ("examples", "evaluate the worked discrete examples"),
        ("report", "re-render a saved JSON report"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=name in ("verify", "sweep", "report"), help="JSON file")
        p.add_argument("--format", choices=FORMATS, help="output format (default: config or csv)")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--tolerance", type=float, help="tolerance for the approximate regime")
        p.add_argument("--exact", action="store_true", help="require exact rational arithmetic")
        p.add_argument("--jobs", type=int, help="parallel workers (default: $CHRONOSCALE_JOBS or 1)")
    return parser


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        jobs = _jobs(args.jobs)
        raw = _read_json(args.config) if args.config else None
        if args.tolerance is not None and not args.tolerance > 0:
            raise ConfigError("--tolerance must be positive")
        if args.command == "verify":
            status, rows = run_verify(raw, jobs, args.exact, args.tolerance)
        elif args.command == "sweep":
            status, rows = run_sweep(raw, jobs, args.exact, args.tolerance)
        elif args.command == "examples":
            status, rows = run_examples(raw, jobs)
        else:
            try:
                rows = parse_report(raw)
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"not a saved report: {exc}") from None
            status = exit_status(rows)
        fmt = args.format or (raw.get("format", "csv") if isinstance(raw, dict) else "csv")
        if fmt not in FORMATS:
            raise ConfigError(f"unknown format {fmt!r}")
        payload = render_report(rows, fmt)
    except ConfigError as exc:
        print(f"chronoscale: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    for r in rows:
        if r.is_error:
            print(f"chronoscale: {r.check} failed on {r.inputs}: point off grid or outside the window",
                  file=sys.stderr)
    return status
