"""Configuration-driven verification runner.

Executes the registered checks of the selected suites with seeded
randomness and emits a machine-readable report.  Each check samples random
instances, evaluates a margin (nonnegative means the claim held, with its
tolerance already folded in), and keeps the worst case as a replayable
witness.  Determinism: the random stream of a trial depends only on
(seed, check id, trial index), so adding checks never perturbs others.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

import numpy as np

from normlab.dyadic import MAX_LEVEL, DyadicStepFunction

FORMAT_VERSION = 1

#: Paper constants under test, addressable for mutation experiments via
#: ``SuiteConfig.overrides``.
CONSTANTS = {
    # lambda * |{M(f) > lambda}| <= C * int |f|
    "maximal_weak_type": 1.0,
    # |{M(f) > 2 lambda}| <= C / lambda * int_{|f| > lambda} |f|
    "modified_weak_type": 1.0,
    # lambda * |{S(f) > lambda}| <= C * int |f|
    "square_weak_type": 3.0,
    # int M(f)^p <= (base^p * p/(p-1)) * int |f|^p
    "maximal_lp_base": 2.0,
    # multiplier on p/(p-1); negate to break the bound everywhere
    "maximal_lp_sign": 1.0,
    # two-sided band (relative) for golden empirical ratios
    "golden_band": 0.05,
}

_SUITES = ("core", "duality", "operators", "interpolation", "dyadic", "seqspace")


@dataclass(frozen=True)
class SuiteConfig:
    suites: tuple = ("all",)
    seed: int = 42
    dims: tuple = (2, 4, 8, 16)
    levels: tuple = (2, 4, 8)
    p_grid: tuple = (1.0, 1.5, 2.0, 3.0, float("inf"))
    trials: int = 200
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(d < 1 for d in self.dims):
            raise ValueError("dims must be >= 1")
        if any(not 0 <= l <= MAX_LEVEL for l in self.levels):
            raise ValueError(f"levels must lie in [0, {MAX_LEVEL}]")
        bad = [s for s in self.suites if s != "all" and s not in _SUITES]
        if bad:
            raise ValueError(f"unknown suites: {bad}")

    def selected_suites(self) -> tuple:
        if "all" in self.suites:
            return _SUITES
        return tuple(s for s in _SUITES if s in self.suites)


@dataclass
class RunContext:
    config: SuiteConfig
    constants: dict
    goldens: dict


@dataclass(frozen=True)
class Check:
    """A registered verification item.

    ``sample`` draws one payload from a seeded generator; ``evaluate``
    returns the margin of that payload (>= 0 means pass).  ``trials``
    fixes the count for exhaustive or pinned checks; None follows the
    config.  Pinned checks also ignore the config seed so that golden
    comparisons stay reproducible.
    """

    check_id: str
    suite: str
    anchor: str
    sample: Callable[[np.random.Generator, RunContext], dict]
    evaluate: Callable[[dict, RunContext], float]
    trials: int | None = None
    pinned: bool = False


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    trials: int
    worst_margin: float
    passed: bool
    witness: dict | None
    error: str | None = None


def load_goldens() -> dict:
    try:
        text = (
            resources.files("normlab").joinpath("data/golden_ratios.json").read_text()
        )
    except FileNotFoundError:
        return {}
    return json.loads(text)


# -- payload (de)serialization ------------------------------------------


def encode_payload(payload: dict) -> dict:
    out = {}
    for key, value in payload.items():
        if isinstance(value, DyadicStepFunction):
            out[key] = {"__step__": value.serialize()}
        elif isinstance(value, np.ndarray):
            if np.iscomplexobj(value):
                out[key] = {
                    "__array_c__": [value.real.tolist(), value.imag.tolist()]
                }
            else:
                out[key] = {"__array__": value.tolist()}
        elif isinstance(value, complex):
            out[key] = {"__complex__": [value.real, value.imag]}
        elif isinstance(value, (np.floating, np.integer)):
            out[key] = value.item()
        elif isinstance(value, (str, int, float, bool)) or value is None:
            out[key] = value
        elif isinstance(value, (list, tuple)):
            out[key] = list(value)
        else:
            raise TypeError(f"cannot serialize payload field {key!r}: {type(value)}")
    return out


def decode_payload(data: dict) -> dict:
    out = {}
    for key, value in data.items():
        if isinstance(value, dict) and "__step__" in value:
            out[key] = DyadicStepFunction.deserialize(value["__step__"])
        elif isinstance(value, dict) and "__array__" in value:
            out[key] = np.array(value["__array__"], dtype=np.float64)
        elif isinstance(value, dict) and "__array_c__" in value:
            re, im = value["__array_c__"]
            out[key] = np.array(re, dtype=np.float64) + 1j * np.array(
                im, dtype=np.float64
            )
        elif isinstance(value, dict) and "__complex__" in value:
            out[key] = complex(*value["__complex__"])
        else:
            out[key] = value
    return out


# -- execution -----------------------------------------------------------


def trial_rng(seed: int, check_id: str, trial: int) -> np.random.Generator:
    digest = hashlib.sha256(f"{seed}:{check_id}:{trial}".encode()).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))


def run_check(check: Check, ctx: RunContext) -> CheckRecord:
    seed = 0 if check.pinned else ctx.config.seed
    n_trials = check.trials if check.trials is not None else ctx.config.trials
    worst = np.inf
    worst_payload: dict | None = None
    for trial in range(n_trials):
        rng = trial_rng(seed, check.check_id, trial)
        try:
            payload = check.sample(rng, ctx)
        except Exception as exc:  # sampler bug or config conflict
            return CheckRecord(
                check.check_id, check.anchor, trial, -np.inf, False, None,
                error=f"sampling failed: {exc!r}",
            )
        try:
            margin = float(check.evaluate(payload, ctx))
        except Exception as exc:
            return CheckRecord(
                check.check_id, check.anchor, trial + 1, -np.inf, False,
                encode_payload(payload), error=f"evaluation raised: {exc!r}",
            )
        if margin < worst:
            worst = margin
            worst_payload = payload
    witness = encode_payload(worst_payload) if worst_payload is not None else None
    return CheckRecord(
        check.check_id, check.anchor, n_trials, float(worst), worst >= 0.0, witness
    )


@dataclass
class Report:
    format_version: int
    config: dict
    records: list[CheckRecord]
    wall_time_seconds: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        checks = {}
        for r in sorted(self.records, key=lambda r: r.check_id):
            checks[r.check_id] = {
                "anchor": r.anchor,
                "trials": r.trials,
                "worst_margin": r.worst_margin,
                "passed": r.passed,
                "witness": r.witness,
                "error": r.error,
            }
        return {
            "format_version": self.format_version,
            "config": self.config,
            "checks": checks,
            "summary": {
                "total": len(self.records),
                "passed": sum(r.passed for r in self.records),
                "failed": sum(not r.passed for r in self.records),
            },
            "wall_time_seconds": self.wall_time_seconds,
        }

    def to_text(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _config_echo(config: SuiteConfig) -> dict:
    return {
        "suites": list(config.suites),
        "seed": config.seed,
        "dims": list(config.dims),
        "levels": list(config.levels),
        "p_grid": ["inf" if np.isinf(p) else p for p in config.p_grid],
        "trials": config.trials,
        "overrides": dict(config.overrides),
    }


def run(config: SuiteConfig) -> Report:
    """Execute every registered check of the selected suites."""
    from normlab.checks import build_registry

    constants = dict(CONSTANTS)
    constants.update(config.overrides)
    ctx = RunContext(config=config, constants=constants, goldens=load_goldens())
    selected = set(config.selected_suites())
    checks = [c for c in build_registry() if c.suite in selected]

    start = time.perf_counter()
    workers = int(os.environ.get("VERIFY_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda c: run_check(c, ctx), checks))
    else:
        records = [run_check(c, ctx) for c in checks]
    elapsed = time.perf_counter() - start
    records.sort(key=lambda r: r.check_id)
    return Report(FORMAT_VERSION, _config_echo(config), records, elapsed)


# -- witnesses and replay -------------------------------------------------


def write_witness(path: str, record: CheckRecord, constants: dict) -> None:
    blob = {
        "format_version": FORMAT_VERSION,
        "check_id": record.check_id,
        "payload": record.witness,
        "constants": constants,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(blob, fh, indent=2, sort_keys=True)
        fh.write("\n")


def replay(witness_path: str) -> CheckRecord:
    """Re-run exactly one check on the serialized inputs of a witness."""
    from normlab.checks import build_registry

    with open(witness_path, encoding="utf-8") as fh:
        blob = json.load(fh)
    if blob.get("format_version") != FORMAT_VERSION:
        raise ValueError("unsupported witness format version")
    check_id = blob["check_id"]
    matches = [c for c in build_registry() if c.check_id == check_id]
    if not matches:
        raise ValueError(f"unknown check id {check_id!r}")
    check = matches[0]
    constants = dict(CONSTANTS)
    constants.update(blob.get("constants") or {})
    ctx = RunContext(SuiteConfig(), constants, load_goldens())
    payload = decode_payload(blob["payload"])
    margin = float(check.evaluate(payload, ctx))
    return CheckRecord(
        check_id, check.anchor, 1, margin, margin >= 0.0, blob["payload"]
    )
