"""Suite execution and report (de)serialization."""
from __future__ import annotations

import json
import math
import os
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .checks import REGISTRY, SUITES
from .errors import UsageError

VERSION = "1.0"
BATCH = 2500
SEED_MASK = (1 << 64) - 1
ALL_SUITES = SUITES + ("all",)


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    samples: int = 10_000
    seed: int = 42
    tol_shallow: float = 1e-9
    tol_deep: float = 1e-6
    jobs: Optional[int] = 1  # None means auto
    format: str = "json"

    def validate(self):
        if self.suite not in ALL_SUITES:
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(ALL_SUITES)}")
        if not isinstance(self.samples, (int, np.integer)) or self.samples < 1:
            raise UsageError(f"samples must be a positive integer, got {self.samples!r}")
        if not (self.tol_shallow > 0 and self.tol_deep > 0):
            raise UsageError("tolerances must be positive")
        if self.jobs is not None and self.jobs < 1:
            raise UsageError("jobs must be >= 1")
        if self.format not in ("json", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        return self

    def echo(self):
        d = asdict(self)
        d["jobs"] = "auto" if self.jobs is None else self.jobs
        return d


@dataclass
class CheckResult:
    id: str
    anchor: str
    samples: int
    max_defect: Optional[float]
    tol: float
    pass_: bool
    wall_time: float = 0.0
    error: Optional[str] = None

    def to_dict(self):
        d = {"id": self.id, "anchor": self.anchor, "samples": self.samples,
             "max_defect": self.max_defect, "tol": self.tol, "pass": self.pass_,
             "wall_time": self.wall_time}
        if self.error is not None:
            d["error"] = self.error
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["id"], d["anchor"], d["samples"], d["max_defect"], d["tol"], d["pass"],
                   d.get("wall_time", 0.0), d.get("error"))


@dataclass
class Report:
    seed: int
    config: dict
    checks: list = field(default_factory=list)
    version: str = VERSION

    @property
    def passed(self):
        return all(c.pass_ for c in self.checks)

    def to_dict(self):
        return {"version": self.version, "seed": self.seed, "config": self.config,
                "checks": [c.to_dict() for c in self.checks], "pass": self.passed}

    @classmethod
    def from_dict(cls, d):
        r = cls(d["seed"], d["config"], [CheckResult.from_dict(c) for c in d["checks"]], d["version"])
        if r.passed != d["pass"]:
            raise ValueError("report 'pass' field disagrees with its checks")
        return r

    def canonical(self):
        """Dict form without wall times, for determinism comparisons."""
        d = self.to_dict()
        for c in d["checks"]:
            c.pop("wall_time")
        return d

    def defects(self):
        return {c.id: c.max_defect for c in self.checks}


def sub_seed(seed, check_id, batch=0):
    """Per-check, per-batch seed; depends only on the master seed, the id and the batch index."""
    ss = np.random.SeedSequence([int(seed) & SEED_MASK, zlib.crc32(check_id.encode()), batch])
    return int(ss.generate_state(1, np.uint64)[0])


def batches(samples):
    sizes = [BATCH] * (samples // BATCH)
    if samples % BATCH:
        sizes.append(samples % BATCH)
    return sizes


def checks_for(suite):
    if suite == "all":
        return list(REGISTRY.values())
    return [c for c in REGISTRY.values() if c.suite == suite]


def _run_batch(check, size, seed):
    t = time.perf_counter()
    try:
        d = float(check.fn(size, seed))
        return d, None, time.perf_counter() - t
    except Exception as e:  # reported, not raised
        return None, f"{type(e).__name__}: {e}", time.perf_counter() - t


def run_suite(cfg: SuiteConfig) -> Report:
    cfg.validate()
    selected = checks_for(cfg.suite)
    tasks = [(c, size, sub_seed(cfg.seed, c.id, b))
             for c in selected for b, size in enumerate(batches(cfg.samples))]
    jobs = cfg.jobs or os.cpu_count() or 1
    if jobs == 1:
        outs = [_run_batch(*t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(lambda t: _run_batch(*t), tasks))

    folded = {}
    for (c, _, _), (d, err, wt) in zip(tasks, outs):
        cur = folded.setdefault(c.id, [0.0, None, 0.0])
        if err is not None and cur[1] is None:
            cur[1] = err
        if d is not None and cur[0] is not None:
            cur[0] = d if math.isnan(d) else max(cur[0], d)
        cur[2] += wt

    results = []
    for c in selected:
        d, err, wt = folded[c.id]
        tol = c.tol(cfg.tol_shallow, cfg.tol_deep)
        if err is not None:
            results.append(CheckResult(c.id, c.anchor, cfg.samples, None, tol, False, wt, err))
        else:
            results.append(CheckResult(c.id, c.anchor, cfg.samples, d, tol, bool(d <= tol), wt))
    return Report(cfg.seed, cfg.echo(), results)


def emit_report(r: Report, format="json") -> bytes:
    if format == "json":
        return (json.dumps(r.to_dict(), indent=2, ensure_ascii=False) + "\n").encode()
    if format == "text":
        lines = []
        for c in r.checks:
            status = "PASS" if c.pass_ else "FAIL"
            defect = "ERROR" if c.max_defect is None else f"{c.max_defect:.3e}"
            line = f"{status}  {c.id}  max={defect}  tol={c.tol:.1e}  ({c.anchor})"
            if c.error:
                line += f"  [{c.error}]"
            lines.append(line)
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  overall  {len(r.checks)} checks  seed={r.seed}")
        return ("\n".join(lines) + "\n").encode()
    raise UsageError(f"unknown format {format!r}")


def parse_report(data) -> Report:
    if isinstance(data, bytes):
        data = data.decode()
    return Report.from_dict(json.loads(data))
