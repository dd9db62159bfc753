"""Command-line driver: JSON config in, CSV/JSON report out.

Exit codes: 0 success, 1 config or I/O error, 2 a hypothesis or dispatch failure.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import math
import sys
from fractions import Fraction

import jsonschema

from . import besov as bv
from .bandlimited import FamilySpec, Spectrum
from .lznorm import lz_norm
from .nikolskii import classify, nikolskii_bound, probe_sharpness, sweep, verify_inequality
from .rearrange import StepFunction, rearrange
from .spaces import INF, HypothesisError, LogPair, SpaceParams, TrivialSpaceError

COMMANDS = ("norm", "rearrange", "classify", "bound", "verify", "sweep", "probe", "besov-shift", "besov-verify")

_EXPONENT = {"oneOf": [{"type": "number"}, {"type": "string", "pattern": r"^(inf|-?\d+(/\d+)?)$"}]}
_PAIR = {"type": "array", "items": _EXPONENT, "minItems": 2, "maxItems": 2}
_SPACE = {
    "type": "object",
    "properties": {"p": _EXPONENT, "b": _EXPONENT, "A": _PAIR},
    "required": ["p", "b"],
    "additionalProperties": False,
}
_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 1, "maxItems": 2}

CONFIG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "command": {"enum": list(COMMANDS)},
        "source": _SPACE,
        "target": _SPACE,
        "function": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["step", "family"]},
                "values": {"type": "array", "items": {"type": "number"}, "minItems": 1},
                "measures": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1},
                "omega": {"type": "number", "exclusiveMinimum": 0},
            },
            "required": ["kind"],
        },
        "spectrum": {"type": "array", "minItems": 1, "items": {"type": "array", "items": _POINT, "minItems": 2, "maxItems": 2}},
        "mu": {"type": "number", "exclusiveMinimum": 0},
        "dim": {"type": "integer", "minimum": 1, "maximum": 2},
        "family": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kind": {"enum": ["sinc-power", "random"]},
                "m": {"type": "integer", "minimum": 1},
                "oversample": {"type": "number", "exclusiveMinimum": 1},
                "tail_tol": {"type": "number", "exclusiveMinimum": 0},
                "period_scale": {"type": "number", "exclusiveMinimum": 0},
                "grid_points": {"type": "integer", "minimum": 8},
                "dim": {"type": "integer", "minimum": 1, "maximum": 2},
                "inner": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
            },
        },
        "sweep": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"omegas": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1}},
            "required": ["omegas"],
        },
        "probe": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "budget": {"type": "integer", "minimum": 0},
                "period": {"type": "number", "exclusiveMinimum": 0},
                "grid_points": {"type": "integer", "minimum": 8},
            },
        },
        "besov": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "corollary": {"enum": list(bv.COROLLARIES)},
                "n": {"type": "integer", "minimum": 1},
                "sigma": _EXPONENT,
                "gamma": {"oneOf": [_EXPONENT, _PAIR]},
                "u": _EXPONENT,
                "count": {"type": "integer", "minimum": 1},
                "shift_sigma": {"type": "boolean"},
                "check": {"type": "boolean"},
            },
            "required": ["corollary"],
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"path": {"type": "string"}, "format": {"enum": ["csv", "json"]}},
        },
        "seed": {"type": "integer", "minimum": 0},
    },
}


class ConfigError(Exception):
    pass


def validate_config(cfg: dict) -> None:
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(str(x) for x in e.absolute_path) or "<root>"
        raise ConfigError(f"config error at {where}: {e.message}") from None


def _exp(x):
    if isinstance(x, str):
        return INF if x == "inf" else Fraction(x)
    return x


def _space(d) -> SpaceParams:
    return SpaceParams(_exp(d["p"]), _exp(d["b"]), LogPair(*(_exp(a) for a in d.get("A", (0, 0)))))


def _need(cfg, *keys):
    for k in keys:
        if k not in cfg:
            raise ConfigError(f"command {cfg['command']!r} needs {k!r}")


def _spectrum(cfg):
    if "spectrum" in cfg:
        return Spectrum(tuple((tuple(lo), tuple(hi)) for lo, hi in cfg["spectrum"]))
    if "mu" in cfg:
        return cfg["mu"]
    raise ConfigError(f"command {cfg['command']!r} needs 'spectrum' or 'mu'")


def _family(cfg) -> FamilySpec:
    return FamilySpec(**cfg.get("family", {}))


def _function(cfg):
    _need(cfg, "function")
    fd = cfg["function"]
    if fd["kind"] == "step":
        if "values" not in fd or "measures" not in fd:
            raise ConfigError("a step function needs 'values' and 'measures'")
        return StepFunction(fd["values"], fd["measures"])
    if "omega" not in fd:
        raise ConfigError("a family function needs 'omega'")
    return _family(cfg).member(fd["omega"], cfg.get("seed", 0), spaces=tuple(_space(cfg[k]) for k in ("source", "target") if k in cfg) or ((1, 1),))


def _bound_fields(b) -> dict:
    return {
        "theorem_id": b.theorem_id,
        "base_measure": float(b.base_measure),
        "power_exp": float(b.power_exponent),
        "log_exp_0": float(b.log_exponents.alpha0),
        "log_exp_inf": float(b.log_exponents.alpha_inf),
        "loglog_exp_0": float(b.loglog_exponents.alpha0),
        "loglog_exp_inf": float(b.loglog_exponents.alpha_inf),
        "value": float(b.value),
        "requires_bounded": b.requires_bounded,
    }


def _besov_fields(bp) -> dict:
    g = bp.gamma
    out = {"sigma": float(bp.sigma)}
    if isinstance(g, LogPair):
        out.update(gamma_0=float(g.alpha0), gamma_inf=float(g.alpha_inf))
    else:
        out["gamma"] = float(g)
    out.update(u=float(bp.u), p=float(bp.base.p), b=float(bp.base.b), alpha_0=float(bp.base.A.alpha0), alpha_inf=float(bp.base.A.alpha_inf))
    return out


def _target_smoothness(cfg, base):
    b = cfg["besov"]
    g = b.get("gamma", 0)
    g = LogPair(*(_exp(x) for x in g)) if isinstance(g, list) else _exp(g)
    return bv.BesovParams(_exp(b.get("sigma", 0)), g, _exp(b.get("u", 2)), base)


def execute(cfg: dict) -> tuple[list[dict], dict]:
    """Run the configured command; returns (rows, summary)."""
    cmd = cfg.get("command")
    if cmd is None:
        raise ConfigError("no command given")
    seed = cfg.get("seed", 0)
    if cmd == "norm":
        _need(cfg, "target")
        f = _function(cfg)
        fs = rearrange(f) if isinstance(f, StepFunction) else rearrange(f.samples.abs())
        r = lz_norm(fs, _space(cfg["target"]))
        row = {"value": r.value, "method": r.method, "est_rel_error": r.est_rel_error}
        return [row], row
    if cmd == "rearrange":
        f = _function(cfg)
        fs = rearrange(f) if isinstance(f, StepFunction) else rearrange(f.samples.abs())
        rows = [{"value": v, "measure": m} for v, m in fs.pieces]
        return rows, {"pieces": len(rows), "total_measure": fs.total_measure}
    if cmd == "classify":
        _need(cfg, "source")
        s = _space(cfg["source"])
        c = classify(s.p, s.b, s.A)
        row = {"class": c.tag, "rho": c.rho if c.rho is not None else ""}
        return [row], row
    if cmd == "bound":
        _need(cfg, "source", "target")
        dim = len(cfg["spectrum"][0][0]) if "spectrum" in cfg else cfg.get("dim", 1)
        b = nikolskii_bound(_space(cfg["source"]), _space(cfg["target"]), _spectrum(cfg), dim)
        row = _bound_fields(b)
        return [row], row
    if cmd == "verify":
        _need(cfg, "source", "target", "function")
        if cfg["function"]["kind"] != "family":
            raise ConfigError("verify needs a family function")
        r = verify_inequality(_function(cfg), _space(cfg["source"]), _space(cfg["target"]))
        row = {"lhs": r.lhs, "rhs": r.rhs, "source_norm": r.source_norm, "ratio": r.ratio, **_bound_fields(r.bound)}
        return [row], row
    if cmd == "sweep":
        _need(cfg, "source", "target", "sweep")
        res = sweep(_family(cfg), cfg["sweep"]["omegas"], _space(cfg["source"]), _space(cfg["target"]), seed)
        rows = []
        for r in res.rows:
            bf = _bound_fields(r.bound)
            rows.append({
                "omega": r.omega, "mu_omega": r.mu_omega, "lhs": r.lhs, "rhs": r.rhs, "ratio": r.ratio,
                "theorem_id": bf["theorem_id"], "power_exp": bf["power_exp"],
                "log_exp_0": bf["log_exp_0"], "log_exp_inf": bf["log_exp_inf"],
                "loglog_exp_0": bf["loglog_exp_0"], "loglog_exp_inf": bf["loglog_exp_inf"],
                "slope": res.slope,
            })
        return rows, {"slope": res.slope, "points": len(rows)}
    if cmd == "probe":
        _need(cfg, "source", "target", "spectrum")
        p = cfg.get("probe", {})
        res = probe_sharpness(_space(cfg["source"]), _space(cfg["target"]), _spectrum(cfg), p.get("budget", 100), seed, p.get("period"), p.get("grid_points", 512))
        rows = [{"step": i, "best_ratio": r} for i, r in enumerate(res.history)]
        return rows, {"best_ratio": res.best_ratio}
    if cmd == "besov-shift":
        _need(cfg, "source", "target", "besov")
        b = cfg["besov"]
        tgt = _space(cfg["target"])
        out = bv.embedding_shift(b["corollary"], _space(cfg["source"]), tgt, b.get("n", 1), _target_smoothness(cfg, tgt), b.get("check", True))
        row = _besov_fields(out)
        return [row], row
    if cmd == "besov-verify":
        _need(cfg, "source", "target", "besov", "sweep")
        b = cfg["besov"]
        tgt = _space(cfg["target"])
        rep = bv.verify_embedding(
            b["corollary"], _family(cfg), b.get("count", 1), seed, _space(cfg["source"]), tgt,
            _target_smoothness(cfg, tgt), cfg["sweep"]["omegas"], b.get("shift_sigma", True),
        )
        rows = [{"index": r.index, "seed": r.seed, "omega": r.omega, "target_norm": r.target_norm, "source_norm": r.source_norm, "ratio": r.ratio} for r in rep.rows]
        return rows, {"spread": rep.spread, "slope": rep.slope}
    raise ConfigError(f"unknown command {cmd!r}")


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    header = list(rows[0])
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(r.get(k, "")) for k in header])
    return buf.getvalue()


def _json_safe(x):
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return x


def to_json(cfg: dict, rows: list[dict], summary: dict) -> str:
    return json.dumps({"config": cfg, "summary": _json_safe(summary), "rows": _json_safe(rows)}, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lzkit", description="Lorentz-Zygmund norms, Nikol'skii bound factors and Besov embedding checks.")
    ap.add_argument("command", nargs="?", choices=COMMANDS, help="overrides the config's command")
    ap.add_argument("--config", help="JSON config file")
    ap.add_argument("--output", help="report path (default: stdout)")
    ap.add_argument("--format", choices=("csv", "json"), help="report format (default csv)")
    ap.add_argument("--seed", type=int, help="overrides the config's seed")
    ap.add_argument("--quiet", action="store_true", help="no summary on stderr")
    return ap


def load_config(args) -> dict:
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    cfg = copy.deepcopy(cfg)
    if args.command:
        cfg["command"] = args.command
    if args.seed is not None:
        cfg["seed"] = args.seed
    out = dict(cfg.get("output", {}))
    if args.output:
        out["path"] = args.output
    if args.format:
        out["format"] = args.format
    if out:
        cfg["output"] = out
    validate_config(cfg)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
        rows, summary = execute(cfg)
        out = cfg.get("output", {})
        text = to_json(cfg, rows, summary) if out.get("format", "csv") == "json" else to_csv(rows)
        if out.get("path"):
            try:
                with open(out["path"], "w", newline="") as fh:
                    fh.write(text)
            except OSError as e:
                raise ConfigError(f"cannot write report: {e}") from None
        else:
            sys.stdout.write(text)
    except (HypothesisError, TrivialSpaceError) as e:
        print(f"lzkit: {e}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, TypeError) as e:
        print(f"lzkit: {e}", file=sys.stderr)
        return 1
    if not args.quiet:
        print("lzkit: " + ", ".join(f"{k}={_cell(v)}" for k, v in summary.items()), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
