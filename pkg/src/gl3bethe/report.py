"""Run configuration and machine-readable verification reports.

A run is described by a `RunConfig` (chain parameters, tolerances, master
seed, requested suites, output path and format).  Executing the suites
produces one `CheckRecord` per certified statement; `VerificationReport`
assembles the records with a config echo, summary counts, and per-suite
wall-clock timing.

Serialized formats:

* json-report: one JSON document, schema field "schema": 1, stable key
  order (insertion order of this module), floats in shortest round-trip
  form, complex values as [re, im] pairs.  Timing lives in its own
  "timing" subtree so determinism comparisons can drop it.
* csv-summary: header ``suite,check,residual,tolerance,verdict``.
* human-text: one line per check plus a summary.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field

__all__ = [
    "ConfigError",
    "RunConfig",
    "CheckRecord",
    "VerificationReport",
    "parse_complex",
    "param_hash",
]

SCHEMA_VERSION = 1

FORMATS = ("json-report", "csv-summary", "human-text")


class ConfigError(ValueError):
    """Invalid run configuration."""


def parse_complex(value) -> complex:
    """Parse a complex parameter from config/CLI text.

    Accepts numbers, [re, im] pairs, and strings in mathematician's notation
    with either i or j ("0.4+0.1i", "i", "-2.5").
    """
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        text = value.strip().replace(" ", "").replace("i", "j").replace("I", "j")
        try:
            return complex(text)
        except ValueError as exc:
            raise ConfigError(f"cannot parse complex value {value!r}") from exc
    raise ConfigError(f"cannot parse complex value {value!r}")


def _cx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def param_hash(*objs) -> str:
    """Short stable hash of check parameters, for report provenance."""
    text = repr(tuple(_canon(o) for o in objs))
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _canon(obj):
    if isinstance(obj, complex):
        return ("c", repr(obj.real), repr(obj.imag))
    if isinstance(obj, float):
        return ("f", repr(obj))
    if isinstance(obj, (list, tuple)):
        return tuple(_canon(o) for o in obj)
    if isinstance(obj, dict):
        return tuple(sorted((k, _canon(v)) for k, v in obj.items()))
    return obj


@dataclass
class RunConfig:
    """Validated run parameters; defaults match the reference configuration."""

    length: int = 2
    xi: str | list = "random"
    kappa: complex = 0.4 + 0.1j
    beta: complex = 0.7 - 0.2j
    c: complex = 1.0 + 0.0j
    phi: complex = 1.1 - 0.3j
    seed: int = 42
    suites: tuple[str, ...] = ("all",)
    tol_relative: float = 1e-9
    tol_solver: float = 1e-12
    tol_eigen: float = 1e-8
    output: str | None = None
    format: str = "json-report"

    def validate(self, known_suites) -> None:
        if not 1 <= int(self.length) <= 6:
            raise ConfigError(f"chain length {self.length} outside the supported range 1..6")
        if self.kappa == 1:
            raise ConfigError("kappa = 1 is rejected: the minimal twist needs 1 - kappa != 0")
        if self.kappa == 0:
            raise ConfigError("kappa must be nonzero")
        if self.beta == 0:
            raise ConfigError("beta must be nonzero")
        if self.c == 0:
            raise ConfigError("the coupling constant c must be nonzero")
        if self.phi == 0:
            raise ConfigError("phi must be nonzero")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}; choose from {FORMATS}")
        for t in (self.tol_relative, self.tol_solver, self.tol_eigen):
            if not t > 0:
                raise ConfigError("tolerances must be positive")
        for s in self.suites:
            if s not in known_suites and s != "all":
                raise ConfigError(f"unknown suite {s!r}; see `gl3bethe list`")
        if not isinstance(self.xi, str):
            if len(self.xi) != int(self.length):
                raise ConfigError(f"need {self.length} inhomogeneities, got {len(self.xi)}")
        elif self.xi != "random":
            raise ConfigError(f"xi must be a list of points or \"random\", got {self.xi!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        data = dict(data)
        kwargs = {}
        chain = data.pop("chain", {})
        if not isinstance(chain, dict):
            raise ConfigError("config field \"chain\" must be an object")
        if "L" in chain:
            kwargs["length"] = int(chain.pop("L"))
        xi = chain.pop("xi", "random")
        kwargs["xi"] = xi if isinstance(xi, str) else [parse_complex(x) for x in xi]
        for name in ("kappa", "beta", "c", "phi"):
            if name in chain:
                kwargs[name] = parse_complex(chain.pop(name))
        if chain:
            raise ConfigError(f"unknown chain fields: {sorted(chain)}")

        tols = data.pop("tolerances", {})
        if not isinstance(tols, dict):
            raise ConfigError("config field \"tolerances\" must be an object")
        for src, dst in (("relative", "tol_relative"), ("solver", "tol_solver"), ("eigen", "tol_eigen")):
            if src in tols:
                kwargs[dst] = float(tols.pop(src))
        if tols:
            raise ConfigError(f"unknown tolerance fields: {sorted(tols)}")

        if "seeds" in data:
            kwargs["seed"] = int(data.pop("seeds"))
        if "seed" in data:
            kwargs["seed"] = int(data.pop("seed"))
        if "suites" in data:
            suites = data.pop("suites")
            if isinstance(suites, str):
                suites = [suites]
            kwargs["suites"] = tuple(str(s) for s in suites)
        if "output" in data:
            kwargs["output"] = data.pop("output")
        if "format" in data:
            kwargs["format"] = str(data.pop("format"))
        if data:
            raise ConfigError(f"unknown config fields: {sorted(data)}")
        return cls(**kwargs)

    def echo(self) -> dict:
        return {
            "chain": {
                "L": int(self.length),
                "xi": "random" if isinstance(self.xi, str) else [_cx(parse_complex(x)) for x in self.xi],
                "kappa": _cx(self.kappa),
                "beta": _cx(self.beta),
                "c": _cx(self.c),
                "phi": _cx(self.phi),
            },
            "tolerances": {
                "relative": self.tol_relative,
                "solver": self.tol_solver,
                "eigen": self.tol_eigen,
            },
            "seed": int(self.seed),
            "suites": list(self.suites),
            "format": self.format,
        }


@dataclass
class CheckRecord:
    suite: str
    name: str
    anchor: str
    params_hash: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.name,
            "anchor": self.anchor,
            "params_hash": self.params_hash,
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "verdict": "pass" if self.passed else "fail",
        }


@dataclass
class VerificationReport:
    config: RunConfig
    checks: list[CheckRecord] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def n_fail(self) -> int:
        return len(self.checks) - self.n_pass

    @property
    def passed(self) -> bool:
        return self.n_fail == 0 and len(self.checks) > 0

    def as_dict(self, include_timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "config": self.config.echo(),
            "checks": [c.as_dict() for c in self.checks],
            "summary": {
                "checks": len(self.checks),
                "passed": self.n_pass,
                "failed": self.n_fail,
                "verdict": "pass" if self.passed else "fail",
            },
        }
        if include_timing:
            out["timing"] = {k: float(v) for k, v in self.timing.items()}
        return out

    def to_json(self, include_timing: bool = True) -> str:
        return json.dumps(self.as_dict(include_timing), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "check", "residual", "tolerance", "verdict"])
        for c in self.checks:
            writer.writerow([c.suite, c.name, repr(float(c.residual)), repr(float(c.tolerance)),
                             "pass" if c.passed else "fail"])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        width = max((len(f"{c.suite}/{c.name}") for c in self.checks), default=20)
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            lines.append(f"[{mark}] {f'{c.suite}/{c.name}':<{width}}  residual {c.residual:.3e}  tol {c.tolerance:.1e}")
        lines.append("")
        lines.append(f"{len(self.checks)} checks: {self.n_pass} passed, {self.n_fail} failed "
                     f"-> {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        if self.config.format == "csv-summary":
            return self.to_csv()
        if self.config.format == "human-text":
            return self.to_text()
        return self.to_json()
