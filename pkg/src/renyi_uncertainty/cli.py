"""Command-line front end.

    renyi-uncertainty verify xp      --state g.json --alpha 2 --dx 0.5 --dp 0.5
    renyi-uncertainty verify xp-cont --state g.json --alpha 2
    renyi-uncertainty verify angle   --state a.json --alpha 3 --bins 16
    renyi-uncertainty verify nlevel  --state n.json --alpha 3
    renyi-uncertainty scan     --family gaussian_width --range 0.3 3 --points 101 --dx 1 --dp 1
    renyi-uncertainty minimize --family gaussian_width --range 0.3 3 --seed 42 --budget 200
    renyi-uncertainty batch manifest.json
    renyi-uncertainty report stored_report.json

Exit status: 0 success, 1 an inequality reported unsatisfied (or an anomaly),
2 usage or validation error.

State files are JSON objects with a ``kind`` field:

* ``gaussian``: ``x0``, ``p0``, ``sigma``
* ``hermite``: ``coeffs`` as ``[[re, im], ...]``, optional ``sigma``
* ``angular``: ``m_min``, ``coeffs``, ``nonneg_only``
* ``mixture``: ``components``: ``[{"weight": w, "state": {...}}, ...]``
* ``nlevel``: ``amps``

Grid-based kinds accept ``hbar`` and ``grid`` (``x_min``, ``x_max``,
``n_points``); command-line ``--hbar`` and ``--grid-*`` flags override them.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import bounds
from .errors import AnomalyError, DomainError, ValidationError
from .nlevel import NLevelState
from .sharpness import FamilySpec, minimize_gap, param_names, scan_gap
from .states import DEFAULT_GRID, AngularState, GridSpec, MixedState, make_gaussian, make_hermite_superposition

MAX_N_LEVEL = 4096
STATE_KINDS = ("gaussian", "hermite", "angular", "mixture", "nlevel")
VERIFY_KINDS = ("xp", "xp-cont", "angle", "nlevel")
SUMMARY_HEADER = ["command", "params", "lhs", "rhs", "gap", "satisfied"]


class UsageError(Exception):
    pass


# -- state specs ---------------------------------------------------------------------


def _complex(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValidationError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v))


def _grid_from(d, override):
    if override is not None:
        return override
    if "grid" in d:
        g = d["grid"]
        return GridSpec(g["x_min"], g["x_max"], g["n_points"])
    return DEFAULT_GRID


def build_state(d: dict, grid: Optional[GridSpec] = None, hbar: Optional[float] = None):
    """Turn a state-spec mapping into a state object."""
    if not isinstance(d, dict) or d.get("kind") not in STATE_KINDS:
        raise ValidationError(f"state spec needs 'kind' in {STATE_KINDS}")
    kind = d["kind"]
    try:
        if kind == "nlevel":
            amps = [_complex(a) for a in d["amps"]]
            if len(amps) > MAX_N_LEVEL:
                raise ValidationError(f"N is capped at {MAX_N_LEVEL}")
            return NLevelState(amps)
        if kind == "angular":
            return AngularState([_complex(c) for c in d["coeffs"]], int(d.get("m_min", 0)),
                                bool(d.get("nonneg_only", False)))
        g = _grid_from(d, grid)
        hb = float(hbar if hbar is not None else d.get("hbar", 1.0))
        if kind == "gaussian":
            return make_gaussian(float(d.get("x0", 0.0)), float(d.get("p0", 0.0)), float(d["sigma"]), g, hb)
        if kind == "hermite":
            sigma = d.get("sigma")
            return make_hermite_superposition([_complex(c) for c in d["coeffs"]], g, hb,
                                              None if sigma is None else float(sigma))
        comps = []
        for c in d["components"]:
            sub = dict(c["state"])
            if sub.get("kind") not in ("gaussian", "hermite"):
                raise ValidationError("mixture components must be gaussian or hermite states")
            comps.append((float(c["weight"]), build_state(sub, g, hb)))
        return MixedState(tuple(comps))
    except KeyError as exc:
        raise ValidationError(f"{kind} state spec is missing field {exc}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"malformed {kind} state spec: {exc}") from exc


def load_state_spec(source, base_dir="."):
    """``source`` is a path (relative to ``base_dir``) or an inline mapping."""
    if isinstance(source, dict):
        return source
    if not isinstance(source, str):
        raise ValidationError("state must be a file path or an inline object")
    path = source if os.path.isabs(source) else os.path.join(base_dir, source)
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read state spec {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state spec {path} is not valid JSON: {exc}") from exc


# -- run configuration -------------------------------------------------------------------


@dataclass
class RunConfig:
    command: str
    state: Optional[object] = None
    alpha: Optional[float] = None
    s: Optional[float] = None
    dx: Optional[float] = None
    dp: Optional[float] = None
    offset_x: float = 0.0
    offset_p: float = 0.0
    dphi: Optional[float] = None
    bins: Optional[int] = None
    continuous: bool = False
    swap: bool = False
    hbar: Optional[float] = None
    grid: Optional[dict] = None
    family: Optional[str] = None
    ranges: Optional[list] = None
    degree: int = 0
    points: int = 101
    seed: int = 0
    budget: int = 200
    log_base: str = "e"
    base_dir: str = field(default=".", repr=False)

    FIELDS = ("command", "state", "alpha", "s", "dx", "dp", "offset_x", "offset_p", "dphi", "bins",
              "continuous", "swap", "hbar", "grid", "family", "ranges", "degree", "points", "seed",
              "budget", "log_base")

    @classmethod
    def from_record(cls, rec: dict, base_dir="."):
        if not isinstance(rec, dict):
            raise ValidationError("manifest entries must be objects")
        unknown = set(rec) - set(cls.FIELDS)
        if unknown:
            raise ValidationError(f"unknown run fields {sorted(unknown)}")
        if "command" not in rec:
            raise ValidationError("run entry lacks 'command'")
        return cls(**rec, base_dir=base_dir)

    def grid_spec(self):
        if self.grid is None:
            return None
        try:
            return GridSpec(self.grid["x_min"], self.grid["x_max"], self.grid["n_points"])
        except KeyError as exc:
            raise ValidationError(f"grid override lacks {exc}") from exc

    def verb(self):
        parts = self.command.split()
        if parts[0] == "verify" and len(parts) == 2 and parts[1] in VERIFY_KINDS:
            return parts[1]
        if len(parts) == 1 and parts[0] in ("scan", "minimize"):
            return parts[0]
        raise ValidationError(f"unknown command {self.command!r}")

    def prepare(self):
        """Validate everything and return a zero-argument callable that runs it."""
        verb = self.verb()
        if self.log_base not in ("e", "2"):
            raise ValidationError("log base must be 'e' or '2'")
        if verb in ("scan", "minimize"):
            return self._prepare_family(verb)
        if self.state is None:
            raise ValidationError(f"verify {verb} needs a state")
        state = build_state(load_state_spec(self.state, self.base_dir), self.grid_spec(), self.hbar)
        order = self._order()
        if verb in ("xp", "xp-cont"):
            if not isinstance(state, (MixedState,)) and not hasattr(state, "grid"):
                raise ValidationError(f"verify {verb} needs a gaussian, hermite or mixture state")
            if isinstance(state, (AngularState, NLevelState)):
                raise ValidationError(f"verify {verb} needs a gaussian, hermite or mixture state")
            if verb == "xp":
                self._need("dx", "dp")
                if order[0] == "s":
                    bounds.bound_xp_symmetrized(order[1], self.dx, self.dp, state.hbar)
                    return lambda: bounds.verify_xp_symmetrized(state, order[1], self.dx, self.dp,
                                                                self.offset_x, self.offset_p)
                bounds.bound_xp_binned(order[1], self.dx, self.dp, state.hbar)
                return lambda: bounds.verify_xp(state, order[1], self.dx, self.dp, self.offset_x,
                                                self.offset_p, swap=self.swap)
            if order[0] == "s":
                raise ValidationError("verify xp-cont takes --alpha")
            bounds.bound_xp_continuous(order[1])
            return lambda: bounds.verify_xp_continuous(state, order[1], swap=self.swap)
        if verb == "angle":
            if not isinstance(state, AngularState):
                raise ValidationError("verify angle needs an angular state")
            if self.continuous:
                if order[0] == "s":
                    raise ValidationError("the continuous angle relation takes --alpha")
                bounds.conjugate_order(order[1])
                return lambda: bounds.verify_angle_continuous(state, order[1])
            dphi = self._dphi()
            if order[0] == "s":
                return lambda: bounds.verify_angle_symmetrized(state, order[1], dphi)
            bounds.conjugate_order(order[1])
            return lambda: bounds.verify_angle(state, order[1], dphi)
        if not isinstance(state, NLevelState):
            raise ValidationError("verify nlevel needs an nlevel state")
        if order[0] == "s":
            raise ValidationError("verify nlevel takes --alpha")
        bounds.conjugate_order(order[1])
        return lambda: bounds.verify_nlevel(state, order[1])

    def _order(self):
        if (self.alpha is None) == (self.s is None):
            raise ValidationError("give exactly one of alpha or s")
        if self.s is not None:
            if not -1 < self.s < 1:
                raise DomainError(f"s must lie in (-1, 1), got {self.s}")
            return ("s", float(self.s))
        if not self.alpha > 0.5:
            raise DomainError(f"alpha must exceed 1/2, got {self.alpha}")
        return ("alpha", float(self.alpha))

    def _need(self, *names):
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ValidationError(f"{self.command} needs {', '.join(missing)}")

    def _dphi(self):
        if (self.dphi is None) == (self.bins is None):
            raise ValidationError("give exactly one of dphi or bins")
        if self.bins is not None:
            if int(self.bins) != self.bins or self.bins < 1:
                raise DomainError("bins must be a positive integer")
            return 2 * math.pi / int(self.bins)
        bounds.angular_bins(self.dphi)
        bounds.bound_angle(self.dphi)
        return float(self.dphi)

    def _prepare_family(self, verb):
        self._need("family", "ranges", "dx", "dp")
        alpha = self.alpha if self.alpha is not None else 1.0
        if not alpha > 0.5:
            raise DomainError(f"alpha must exceed 1/2, got {alpha}")
        spec = FamilySpec(self.family, tuple(tuple(r) for r in self.ranges), alpha=alpha, dx=self.dx,
                          dp=self.dp, hbar=self.hbar or 1.0, offset_x=self.offset_x,
                          offset_p=self.offset_p, degree=self.degree, grid=self.grid_spec())
        bounds.bound_xp_binned(alpha, self.dx, self.dp, spec.hbar)
        if verb == "scan":
            if int(self.points) != self.points or self.points < 1:
                raise ValidationError("points must be a positive integer")
            return lambda: (spec, scan_gap(spec, int(self.points)))
        if int(self.budget) != self.budget or self.budget < 50:
            raise ValidationError("budget must be an integer >= 50")
        return lambda: (spec, minimize_gap(spec, int(self.seed), int(self.budget)))


# -- output ----------------------------------------------------------------------------------


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.15g}"
    return str(v)


def _params_text(params):
    return ";".join(f"{k}={_fmt(params[k])}" for k in sorted(params))


def summary_row(command, result):
    if isinstance(result, bounds.BoundReport):
        return [command, _params_text(result.params), _fmt(result.lhs), _fmt(result.rhs),
                _fmt(result.gap), _fmt(result.satisfied)]
    spec, gap = result
    params = {k: v for k, v in spec.to_dict().items() if k not in ("grid", "ranges")}
    params["best"] = "/".join(_fmt(v) for v in gap.best_params)
    return [command, _params_text(params), "", "", _fmt(gap.best_gap),
            _fmt(gap.best_gap >= -bounds.TOL)]


def _ok(result):
    if isinstance(result, bounds.BoundReport):
        return result.satisfied
    return result[1].best_gap >= -bounds.TOL


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def render(result, fmt, log_base, command):
    if isinstance(result, bounds.BoundReport):
        rep = result.in_base(2) if log_base == "2" else result
        if fmt == "json":
            return rep.to_json() + "\n"
        return _csv([SUMMARY_HEADER, summary_row(command, rep)])
    spec, gap = result
    if fmt == "json":
        d = gap.to_dict()
        d["family"] = spec.to_dict()
        return json.dumps(d, indent=2) + "\n"
    buf = io.StringIO()
    gap.write_trace_csv(buf, param_names(spec))
    return buf.getvalue()


def _csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def format_report_table(report: bounds.BoundReport) -> str:
    """Aligned two-column view of a stored report."""
    rows = [
        ("lhs_p", f"{report.lhs_p.value:.15g}  (order {report.lhs_p.order:.15g}, {report.lhs_p.kind})"),
        ("lhs_x", f"{report.lhs_x.value:.15g}  (order {report.lhs_x.order:.15g}, {report.lhs_x.kind})"),
        ("lhs", f"{report.lhs:.15g}"),
        ("rhs", f"{report.rhs:.15g}"),
        ("gap", f"{report.gap:.15g}"),
        ("satisfied", _fmt(report.satisfied)),
        ("saturated", _fmt(report.saturated)),
    ]
    rows += [(f"params.{k}", _fmt(v)) for k, v in report.params.items()]
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


# -- entry points ------------------------------------------------------------------------------


def _add_common(p, family=False):
    p.add_argument("--alpha", type=float)
    p.add_argument("--hbar", type=float)
    p.add_argument("--grid-min", type=float)
    p.add_argument("--grid-max", type=float)
    p.add_argument("--grid-n", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o")
    p.add_argument("--log-base", choices=("e", "2"), default="e")


def build_parser():
    parser = argparse.ArgumentParser(prog="renyi-uncertainty",
                                     description="Verify Rényi-entropy uncertainty relations.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    verify = sub.add_parser("verify", help="check one relation for one state")
    vsub = verify.add_subparsers(dest="kind", required=True)
    for kind in VERIFY_KINDS:
        p = vsub.add_parser(kind)
        p.add_argument("--state", required=True)
        _add_common(p)
        if kind in ("xp", "angle"):
            p.add_argument("--s", type=float, help="use symmetrized entropies of parameter s")
        if kind == "xp":
            p.add_argument("--dx", type=float, required=True)
            p.add_argument("--dp", type=float, required=True)
            p.add_argument("--offset-x", type=float, default=0.0)
            p.add_argument("--offset-p", type=float, default=0.0)
        if kind in ("xp", "xp-cont"):
            p.add_argument("--swap", action="store_true", help="use alpha on the position side")
        if kind == "angle":
            p.add_argument("--dphi", type=float)
            p.add_argument("--bins", type=int)
            p.add_argument("--continuous", action="store_true")

    for name in ("scan", "minimize"):
        p = sub.add_parser(name)
        p.add_argument("--family", required=True, choices=("gaussian_width", "hermite_coeffs"))
        p.add_argument("--range", dest="ranges", nargs=2, type=float, action="append", required=True,
                       metavar=("LO", "HI"))
        p.add_argument("--degree", type=int, default=0)
        p.add_argument("--dx", type=float, required=True)
        p.add_argument("--dp", type=float, required=True)
        p.add_argument("--offset-x", type=float, default=0.0)
        p.add_argument("--offset-p", type=float, default=0.0)
        _add_common(p)
        if name == "scan":
            p.add_argument("--points", type=int, default=101)
        else:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--budget", type=int, default=200)

    p = sub.add_parser("batch", help="run a JSON manifest of runs, write a CSV summary")
    p.add_argument("manifest")
    p.add_argument("--output", "-o")

    p = sub.add_parser("report", help="pretty-print a stored JSON report")
    p.add_argument("path")
    return parser


def _config_from_args(ns):
    grid = None
    if any(v is not None for v in (ns.grid_min, ns.grid_max, ns.grid_n)):
        if None in (ns.grid_min, ns.grid_max, ns.grid_n):
            raise ValidationError("grid override needs --grid-min, --grid-max and --grid-n")
        grid = {"x_min": ns.grid_min, "x_max": ns.grid_max, "n_points": ns.grid_n}
    command = f"verify {ns.kind}" if ns.cmd == "verify" else ns.cmd
    kw = {k: getattr(ns, k) for k in RunConfig.FIELDS if k not in ("command", "grid") and hasattr(ns, k)}
    kw = {k: v for k, v in kw.items() if v is not None}
    if ns.cmd == "verify":
        kw["state"] = ns.state
    return RunConfig(command=command, grid=grid, **kw)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if ns.cmd == "batch":
            return batch(ns.manifest, ns.output)
        if ns.cmd == "report":
            with open(ns.path) as fh:
                rep = bounds.BoundReport.from_json(fh.read())
            sys.stdout.write(format_report_table(rep))
            return 0
        cfg = _config_from_args(ns)
        job = cfg.prepare()
    except (ValidationError, DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = job()
    except AnomalyError as exc:
        print(f"anomaly: {exc}\n{json.dumps(exc.diagnostics, indent=2)}", file=sys.stderr)
        return 1
    except (ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(render(result, ns.format, ns.log_base, cfg.command), ns.output)
    return 0 if _ok(result) else 1


def batch(manifest_path, output=None) -> int:
    """Validate every manifest entry, then run them in order; CSV summary out."""
    try:
        with open(manifest_path) as fh:
            records = json.load(fh)
        if not isinstance(records, list):
            raise ValidationError("manifest must be a JSON array of runs")
        base = os.path.dirname(os.path.abspath(manifest_path))
        configs = [RunConfig.from_record(r, base) for r in records]
        jobs = []
        for i, cfg in enumerate(configs):
            try:
                jobs.append(cfg.prepare())
            except (ValidationError, DomainError, TypeError) as exc:
                raise ValidationError(f"manifest entry {i}: {exc}") from exc
    except (ValidationError, DomainError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = [SUMMARY_HEADER]
    all_ok = True
    for cfg, job in zip(configs, jobs):
        try:
            result = job()
        except AnomalyError as exc:
            print(f"anomaly in {cfg.command}: {exc}", file=sys.stderr)
            rows.append([cfg.command, "", "", "", "", "false"])
            all_ok = False
            continue
        if cfg.log_base == "2" and isinstance(result, bounds.BoundReport):
            result = result.in_base(2)
        rows.append(summary_row(cfg.command, result))
        all_ok &= bool(_ok(result))
    _write(_csv(rows), output)
    return 0 if all_ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
