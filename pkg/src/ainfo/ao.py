"""Configuration and trace records shared by every AO solver."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["AOConfig", "AOTrace", "Init", "Termination", "read_trace_csv"]

DEFAULT_TOL = 1e-11
DEFAULT_MAX_ITER = 10**6
MONOTONE_SLACK = 1e-12


class Init(enum.Enum):
    """Starting point of an AO run.

    ``UNIFORM`` and ``UNIFORM_JOINT`` agree wherever only an input
    distribution is needed (the x-marginal of the uniform joint is uniform).
    """

    UNIFORM = "uniform"
    UNIFORM_JOINT = "uniform-joint"
    INPUT_TIMES_CHANNEL = "input-times-channel"
    CUSTOM = "custom"


class Termination(enum.Enum):
    TOLERANCE = "tolerance"
    MAX_ITERATIONS = "max-iterations"
    NON_FINITE = "non-finite"


_STATUS = {0: Termination.TOLERANCE, 1: Termination.MAX_ITERATIONS, 2: Termination.NON_FINITE}


@dataclass(frozen=True)
class AOConfig:
    """Stopping rule and starting point for an AO run.

    A run stops once two consecutive cycle objectives differ by at most
    ``tolerance`` nats, or after ``max_iterations`` cycles.  ``custom_init``
    is only read with ``Init.CUSTOM``; its meaning (input distribution,
    surrogate channel or surrogate joint) depends on the solver.
    """

    tolerance: float = DEFAULT_TOL
    max_iterations: int = DEFAULT_MAX_ITER
    initialization: Init = Init.UNIFORM
    custom_init: np.ndarray | None = field(default=None, compare=False)
    record_trace: bool = True

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if int(self.max_iterations) < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        object.__setattr__(self, "max_iterations", int(self.max_iterations))
        init = Init(self.initialization)
        object.__setattr__(self, "initialization", init)
        if init is Init.CUSTOM and self.custom_init is None:
            raise ValueError("Init.CUSTOM needs custom_init")


@dataclass(frozen=True)
class AOTrace:
    """Per-cycle objective values of one AO run.

    ``objectives[k - 1]`` is the objective after cycle ``k``.  ``direction``
    is ``+1`` for maximizing solvers and ``-1`` for minimizing ones.
    """

    objectives: np.ndarray
    terminated_by: Termination
    direction: int

    @classmethod
    def from_kernel(cls, objectives, status: int, direction: int) -> "AOTrace":
        arr = np.asarray(objectives, dtype=np.float64)
        arr.setflags(write=False)
        return cls(arr, _STATUS[int(status)], direction)

    @property
    def iterations(self) -> int:
        return int(self.objectives.shape[0])

    @property
    def final_value(self) -> float:
        return float(self.objectives[-1])

    @property
    def converged(self) -> bool:
        return self.terminated_by is Termination.TOLERANCE

    @property
    def deltas(self) -> np.ndarray:
        return np.diff(self.objectives)

    def violations(self, slack: float = MONOTONE_SLACK) -> np.ndarray:
        """Indices k (1-based cycle numbers) where monotonicity breaks."""
        bad = self.direction * self.deltas < -slack
        return np.flatnonzero(bad) + 2

    def is_monotone(self, slack: float = MONOTONE_SLACK) -> bool:
        return self.violations(slack).size == 0

    def write_csv(self, path) -> None:
        """Write ``k,objective,delta`` rows; delta is empty for k = 1."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", "objective", "delta"])
            prev = None
            for k, f in enumerate(self.objectives, start=1):
                w.writerow([k, repr(float(f)), "" if prev is None else repr(float(f - prev))])
                prev = f


def read_trace_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read a trace CSV back as ``(objectives, deltas)``; the first delta is NaN."""
    ks, objs, deltas = [], [], []
    with open(path, newline="") as fh:
        r = csv.DictReader(fh)
        if r.fieldnames != ["k", "objective", "delta"]:
            raise ValueError(f"unexpected trace header {r.fieldnames}")
        for row in r:
            ks.append(int(row["k"]))
            objs.append(float(row["objective"]))
            deltas.append(float(row["delta"]) if row["delta"] else np.nan)
    if ks != list(range(1, len(ks) + 1)):
        raise ValueError("trace rows are not numbered 1..N")
    return np.array(objs), np.array(deltas)
