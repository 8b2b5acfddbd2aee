"""Command-line front end.

``cylplate compute`` evaluates the exact, PFA and asymptotic results on
a grid of separations and temperatures and writes one row per
(point, method) as CSV or JSON.  ``cylplate fit`` extracts the
first-order coefficient ``c`` in ``leading * (1 + c eps)`` from such a
table.

A run can also be described by a flat ``key = value`` file passed with
``--config``; command-line flags override it.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import math
import sys
from dataclasses import dataclass, field, replace

from . import asymptotics as asy
from . import exact
from . import pfa
from .errors import CasimirError
from .geometry import BoundaryCondition, CylinderPlate, NumericsConfig
from .specfun import riemann_zeta

CSV_FIELDS = ["a", "r", "L", "T", "eps", "aT", "rT", "bc", "method", "energy", "force",
              "ratio_to_pfa", "mmax_used", "lmax_used", "delta", "status"]
METHODS = ("exact", "pfa", "asymptotic")
EXIT_OK, EXIT_COMPUTE, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    """Invalid run description."""


@dataclass(frozen=True)
class RunSpec:
    a: tuple[float, ...]
    r: float
    length_l: float = 1.0
    temperatures: tuple[float, ...] = (0.0,)
    bc: BoundaryCondition = BoundaryCondition.DIRICHLET
    methods: tuple[str, ...] = ("exact", "pfa")
    regime: str = "auto"
    variant: asy.Variant = asy.Variant.RESIDUE_FIRST
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    fmt: str = "csv"
    out: str | None = None

    def __post_init__(self):
        if not self.methods:
            raise ConfigError("at least one method is required")
        bad = [m for m in self.methods if m not in METHODS]
        if bad:
            raise ConfigError(f"unknown method(s): {', '.join(bad)}")
        for name, seq in (("a", self.a), ("temperature", self.temperatures)):
            if not seq:
                raise ConfigError(f"empty {name} list")
            if len(seq) > 1 and any(y <= x for x, y in zip(seq, seq[1:])):
                raise ConfigError(f"{name} sweep must be strictly increasing")
        if len(self.temperatures) > 1 and self.temperatures[0] <= 0:
            raise ConfigError("temperature sweep values must be positive")
        if self.regime not in ("auto", "zero", "medium", "high"):
            raise ConfigError(f"unknown regime {self.regime!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")

    def systems(self):
        for a in self.a:
            for T in self.temperatures:
                yield CylinderPlate(a, self.r, self.length_l, T)


# ---------------------------------------------------------------------------
# row computation

def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _base_row(sys_, bc, method):
    diag = asy.regime_diagnostics(sys_)
    return {"a": sys_.a, "r": sys_.r, "L": sys_.length_l, "T": sys_.T, "eps": diag["eps"],
            "aT": diag["aT"], "rT": diag["rT"], "bc": bc.value, "method": method,
            "energy": None, "force": None, "ratio_to_pfa": None, "mmax_used": None,
            "lmax_used": None, "delta": None, "status": "ok"}


def _pfa_row(sys_, spec):
    row = _base_row(sys_, spec.bc, "pfa")
    n = len(spec.bc.scalar_parts)
    row["energy"] = n * pfa.pfa_energy(sys_)
    row["force"] = n * pfa.pfa_force(sys_)
    return row


def _exact_row(sys_, spec):
    row = _base_row(sys_, spec.bc, "exact")
    cfg = spec.numerics
    if sys_.T == 0:
        e, rep_e = exact.energy_zero_t(sys_, spec.bc, cfg)
    else:
        e, rep_e = exact.energy_finite_t(sys_, spec.bc, cfg)
    f, rep_f = exact.force_exact(sys_, spec.bc, cfg=cfg)
    rep = rep_e.merge(rep_f)
    row.update(energy=e, force=f, mmax_used=rep.m_max_used, lmax_used=rep.l_max_used,
               delta=rep.last_doubling_delta)
    if not rep.converged:
        row["status"] = "not_converged"
    return row


def _asymptotic_row(sys_, spec):
    row = _base_row(sys_, spec.bc, "asymptotic")
    if spec.regime == "auto":
        regime = asy.regime_diagnostics(sys_)["regime"]
    else:
        regime = asy.Regime(spec.regime)
    bc = spec.bc
    if regime is asy.Regime.HIGH_T:
        e = asy.high_t_classical(sys_, bc, asy.Order.FIRST_ORDER, spec.variant, asy.Quantity.ENERGY).value
        f = asy.high_t_classical(sys_, bc, asy.Order.FIRST_ORDER, spec.variant, asy.Quantity.FORCE).value
    else:
        e = asy.zero_t_energy(sys_, bc).value
        f = asy.zero_t_force(sys_, bc).value
        if regime is asy.Regime.MEDIUM_T:
            e += (asy.medium_t_thermal_correction(sys_, asy.Quantity.ENERGY, bc=bc).value
                  + asy.medium_t_first_order(sys_, bc, asy.Quantity.ENERGY).value)
            f += (asy.medium_t_thermal_correction(sys_, asy.Quantity.FORCE, bc=bc).value
                  + asy.medium_t_first_order(sys_, bc, asy.Quantity.FORCE).value)
    row.update(energy=e, force=f, status=f"ok:{regime.value}")
    return row


_ROW_FUNCS = {"exact": _exact_row, "pfa": _pfa_row, "asymptotic": _asymptotic_row}


def compute_rows(spec: RunSpec) -> list[dict]:
    """All rows of a run, in (a, T, method) input order.

    A failure in one method/point is recorded in that row's status and
    does not stop the run.  ``ratio_to_pfa`` is the energy ratio and is
    only filled when the PFA row for the same point succeeded.
    """
    rows = []
    for sys_ in spec.systems():
        point = []
        for method in spec.methods:
            try:
                row = _ROW_FUNCS[method](sys_, spec)
            except (CasimirError, ArithmeticError, ValueError) as exc:
                row = _base_row(sys_, spec.bc, method)
                row["status"] = f"failed: {type(exc).__name__}: {exc}"
            point.append(row)
        ref = next((r for r in point if r["method"] == "pfa" and r["energy"] is not None), None)
        for row in point:
            if ref is not None and row is not ref and row["energy"] is not None:
                row["ratio_to_pfa"] = row["energy"] / ref["energy"]
        rows.extend(point)
    return rows


def row_failed(row) -> bool:
    return row["status"].startswith("failed")


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in rows:
        w.writerow([_fmt(row[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def _json_value(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "null"
    if isinstance(x, (int, float)):
        return _fmt(x)
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_json(rows) -> str:
    # written by hand so numbers carry exactly the CSV digits
    lines = []
    for row in rows:
        items = ", ".join(f'"{k}": {_json_value(row[k])}' for k in CSV_FIELDS)
        lines.append("  {" + items + "}")
    return "[\n" + ",\n".join(lines) + "\n]\n"


def read_rows(path) -> list[dict]:
    """Load a CSV table written by ``compute``; numeric fields become floats."""
    out = []
    with open(path, newline="") as fh:
        for raw in csv.DictReader(fh):
            row = dict(raw)
            for k in ("a", "r", "L", "T", "eps", "aT", "rT", "energy", "force", "ratio_to_pfa", "delta"):
                row[k] = float(row[k]) if row.get(k) not in (None, "") else None
            out.append(row)
    return out


def run(spec: RunSpec, stream=None) -> int:
    rows = compute_rows(spec)
    text = to_csv(rows) if spec.fmt == "csv" else to_json(rows)
    if spec.out:
        with open(spec.out, "w", newline="") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)
    if rows and all(row_failed(r) for r in rows):
        return EXIT_COMPUTE
    return EXIT_OK


# ---------------------------------------------------------------------------
# coefficient fit

@dataclass(frozen=True)
class FitResult:
    c: float
    stderr: float
    quadratic: float | None = None
    n: int = 0


def leading_term(row, quantity: str = "energy", kind: str = "zero") -> float:
    """PFA leading term for a row: ``kind`` is ``zero`` or ``classical``."""
    a, r, L, T = row["a"], row["r"], row["L"], row["T"]
    n = len(BoundaryCondition.parse(row.get("bc", "dirichlet")).scalar_parts)
    s2 = math.sqrt(2.0)
    if kind == "zero":
        if quantity == "energy":
            v = -math.pi ** 3 * L * math.sqrt(r) / (1920.0 * s2 * a ** 2.5)
        else:
            v = -math.pi ** 3 * L * math.sqrt(r) / (768.0 * s2 * a ** 3.5)
    elif kind == "classical":
        z3 = riemann_zeta(3.0)
        if quantity == "energy":
            v = -z3 * L * T * math.sqrt(r) / (16.0 * s2 * a ** 1.5)
        else:
            v = -3.0 * z3 * L * T * math.sqrt(r) / (32.0 * s2 * a ** 2.5)
    else:
        raise ValueError(f"unknown leading term {kind!r}")
    return n * v


def fit_correction(rows, quantity: str = "energy", kind: str = "zero",
                   leading=None, quadratic: bool = False) -> FitResult:
    """Least-squares ``c`` in ``value = leading * (1 + c eps [+ d eps^2])``.

    ``leading`` may be a callable ``row -> float``; by default the PFA
    leading term selected by ``quantity`` and ``kind`` is used.
    """
    rows = [r for r in rows if r.get(quantity) is not None]
    if len(rows) < 3:
        raise ValueError("need at least three rows with values")
    lead = leading or (lambda row: leading_term(row, quantity, kind))
    eps = [r["eps"] for r in rows]
    if max(eps) == min(eps):
        raise ValueError("degenerate fit: all rows have the same eps")
    y = [r[quantity] / lead(r) - 1.0 for r in rows]
    n = len(rows)
    if not quadratic:
        see = math.fsum(e * e for e in eps)
        c = math.fsum(e * v for e, v in zip(eps, y)) / see
        resid = math.fsum((v - c * e) ** 2 for e, v in zip(eps, y))
        stderr = math.sqrt(resid / (n - 1) / see) if n > 1 else math.inf
        return FitResult(c, stderr, None, n)
    # y = c eps + d eps^2 via the 2x2 normal equations
    s2 = math.fsum(e ** 2 for e in eps)
    s3 = math.fsum(e ** 3 for e in eps)
    s4 = math.fsum(e ** 4 for e in eps)
    t1 = math.fsum(e * v for e, v in zip(eps, y))
    t2 = math.fsum(e * e * v for e, v in zip(eps, y))
    det = s2 * s4 - s3 * s3
    if det == 0:
        raise ValueError("degenerate quadratic fit")
    c = (t1 * s4 - t2 * s3) / det
    d = (s2 * t2 - s3 * t1) / det
    resid = math.fsum((v - c * e - d * e * e) ** 2 for e, v in zip(eps, y))
    dof = n - 2
    stderr = math.sqrt(resid / dof * s4 / det) if dof > 0 else math.inf
    return FitResult(c, stderr, d, n)


# ---------------------------------------------------------------------------
# argument handling

def _floats(text):
    text = str(text).strip().strip("[]")
    try:
        return tuple(float(t) for t in text.replace(";", ",").split(",") if t.strip())
    except ValueError:
        raise ConfigError(f"cannot parse number list {text!r}") from None


def _float(text, name):
    try:
        return float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: cannot parse {text!r} as a number") from None


def _int(text, name):
    try:
        return int(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{name}: cannot parse {text!r} as an integer") from None


_CONFIG_KEYS = {"a", "a_sweep", "r", "length", "temperature", "t_sweep", "bc", "methods",
                "regime", "variant", "mmax", "lmax", "rel_tol", "format", "out"}


def load_config(path) -> dict:
    """Read a flat ``key = value`` file; ``#`` starts a comment."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    try:
        with open(path) as fh:
            parser.read_string("[run]\n" + fh.read(), source=str(path))
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for key, value in parser.items("run"):
        key = key.replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        out[key] = value.strip().strip('"').strip("'")
    return out


def spec_from_args(ns) -> RunSpec:
    values = load_config(ns.config) if ns.config else {}
    for key in _CONFIG_KEYS:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    if "a_sweep" in values and "a" in values:
        raise ConfigError("give either a or a_sweep, not both")
    if "t_sweep" in values and "temperature" in values:
        raise ConfigError("give either temperature or t_sweep, not both")
    if "a_sweep" in values:
        a = _floats(values["a_sweep"])
    elif "a" in values:
        a = (_float(values["a"], "a"),)
    else:
        raise ConfigError("separation a is required")
    if "r" not in values:
        raise ConfigError("radius r is required")
    if "t_sweep" in values:
        temps = _floats(values["t_sweep"])
    else:
        temps = (_float(values.get("temperature", 0.0), "temperature"),)
    try:
        bc = BoundaryCondition.parse(values.get("bc", "dirichlet"))
        variant = asy.Variant(values.get("variant", "residue-first"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    methods = tuple(m.strip() for m in str(values.get("methods", "exact,pfa")).split(",") if m.strip())
    cfg = NumericsConfig()
    if "mmax" in values:
        cfg = replace(cfg, m_max=_int(values["mmax"], "mmax"))
    if "lmax" in values:
        cfg = replace(cfg, l_max=_int(values["lmax"], "lmax"))
    if "rel_tol" in values:
        cfg = replace(cfg, rel_tol=_float(values["rel_tol"], "rel_tol"))
    try:
        for x in a:
            CylinderPlate(x, _float(values["r"], "r"), _float(values.get("length", 1.0), "length"), 0.0)
        if any(t < 0 for t in temps):
            raise ConfigError("temperatures must be non-negative")
        return RunSpec(a=a, r=_float(values["r"], "r"),
                       length_l=_float(values.get("length", 1.0), "length"),
                       temperatures=temps, bc=bc, methods=methods,
                       regime=str(values.get("regime", "auto")), variant=variant,
                       numerics=cfg, fmt=str(values.get("format", "csv")), out=values.get("out"))
    except CasimirError as exc:
        raise ConfigError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cylplate", description="Cylinder-plate Casimir energy and force.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("compute", help="evaluate methods on a parameter grid")
    c.add_argument("--config", help="flat key = value run file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--a", dest="a")
    g.add_argument("--a-sweep", dest="a_sweep", help="comma-separated separations")
    c.add_argument("--r", dest="r")
    c.add_argument("--length", dest="length")
    t = c.add_mutually_exclusive_group()
    t.add_argument("--temperature", dest="temperature")
    t.add_argument("--t-sweep", dest="t_sweep", help="comma-separated temperatures")
    c.add_argument("--bc", choices=[b.value for b in BoundaryCondition])
    c.add_argument("--methods", help="comma-separated subset of exact,pfa,asymptotic")
    c.add_argument("--regime", choices=["auto", "zero", "medium", "high"])
    c.add_argument("--variant", choices=[v.value for v in asy.Variant])
    c.add_argument("--mmax", help="fixed matrix truncation (disables doubling)")
    c.add_argument("--lmax", help="Matsubara cutoff")
    c.add_argument("--rel-tol", dest="rel_tol")
    c.add_argument("--format", dest="format", choices=["csv", "json"])
    c.add_argument("--out")

    f = sub.add_parser("fit", help="fit leading*(1 + c eps) to a CSV table")
    f.add_argument("--input", required=True)
    f.add_argument("--method", default="exact")
    f.add_argument("--quantity", choices=["energy", "force"], default="energy")
    f.add_argument("--leading", choices=["zero", "classical"], default="zero")
    f.add_argument("--quadratic", action="store_true", help="include an eps^2 term")
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.command == "compute":
        try:
            spec = spec_from_args(ns)
        except ConfigError as exc:
            print(f"cylplate: config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        return run(spec)

    try:
        rows = [r for r in read_rows(ns.input)
                if r["method"] == ns.method and not row_failed(r)]
        res = fit_correction(rows, ns.quantity, ns.leading, quadratic=ns.quadratic)
    except OSError as exc:
        print(f"cylplate: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, KeyError) as exc:
        print(f"cylplate: fit failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    line = f"c = {_fmt(res.c)} +/- {_fmt(res.stderr)} (n = {res.n})"
    if res.quadratic is not None:
        line += f", eps^2 coefficient {_fmt(res.quadratic)}"
    print(line)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
