"""Path verification and sampled estimates of the order of instability."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import kernels
from .motion import STEP_FRACTION, SampledPath, diameter
from .tables import PlannerTable

ENDPOINT_TOL = 1e-9
MAX_LISTED = 10


@dataclass(frozen=True)
class Failure:
    kind: str
    frame: int
    pair: tuple[int, int] | None
    value: float
    limit: float

    def describe(self) -> str:
        where = f"frame {self.frame}"
        if self.pair is not None:
            where += f", particles {self.pair[0]} and {self.pair[1]}"
        return f"{self.kind}: {where}: {self.value:.6g} (limit {self.limit:.6g})"


@dataclass
class VerifyReport:
    ok: bool
    min_distance: float
    min_frame: int
    min_pair: tuple[int, int]
    max_step: float
    step_bound: float
    endpoint_error: float
    failures: list[Failure] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "min_distance": self.min_distance,
            "min_frame": self.min_frame,
            "min_pair": list(self.min_pair),
            "max_step": self.max_step,
            "step_bound": self.step_bound,
            "endpoint_error": self.endpoint_error,
            "failures": [f.describe() for f in self.failures],
        }

    def render(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        lines = [f"{head} min distance {self.min_distance:.6g} at frame {self.min_frame} "
                 f"(particles {self.min_pair[0]}, {self.min_pair[1]}); max step {self.max_step:.6g}"]
        lines += ["  " + f.describe() for f in self.failures]
        return "\n".join(lines) + "\n"


def verify_path(path: SampledPath, margin: float, start=None, goal=None,
                step_bound: float | None = None) -> VerifyReport:
    """Check endpoints, clearance ``>= margin`` on every frame and the per-frame step bound.

    ``start``/``goal`` default to the ones recorded in the path, then to its end frames.
    The default step bound is ``STEP_FRACTION`` of the larger endpoint diameter.
    """
    frames = path.frames
    failures: list[Failure] = []
    T = len(frames)
    if T == 0:
        return VerifyReport(False, 0.0, 0, (0, 0), 0.0, 0.0, float("inf"),
                            [Failure("empty path", 0, None, 0, 1)])
    times = np.asarray(path.times, dtype=float)
    if len(times) != T:
        failures.append(Failure("time/frame count mismatch", 0, None, len(times), T))
    elif times[0] != 0 or times[-1] != 1 or np.any(np.diff(times) <= 0):
        bad = int(np.flatnonzero(np.diff(times) <= 0)[0] + 1) if np.any(np.diff(times) <= 0) else 0
        failures.append(Failure("times not increasing from 0 to 1", bad, None, float(times[bad]), 1.0))

    start = path.start if start is None else np.asarray(start)
    goal = path.goal if goal is None else np.asarray(goal)
    start = frames[0] if start is None else start
    goal = frames[-1] if goal is None else goal
    e0 = float(np.abs(frames[0] - start).max())
    e1 = float(np.abs(frames[-1] - goal).max())
    if e0 > ENDPOINT_TOL:
        failures.append(Failure("start mismatch", 0, None, e0, ENDPOINT_TOL))
    if e1 > ENDPOINT_TOL:
        failures.append(Failure("goal mismatch", T - 1, None, e1, ENDPOINT_TOL))

    xy = np.ascontiguousarray(path.xy())
    mins, first, second = kernels.frame_distances(xy)
    mins = np.asarray(mins)
    k = int(np.argmin(mins)) if path.n > 1 else 0
    for f in np.flatnonzero(mins < margin)[:MAX_LISTED]:
        failures.append(Failure("collision", int(f), (int(first[f]), int(second[f])),
                                float(mins[f]), margin))

    if step_bound is None:
        step_bound = STEP_FRACTION * max(diameter(start), diameter(goal))
    steps = np.asarray(kernels.frame_steps(xy))
    max_step = float(steps.max()) if len(steps) else 0.0
    for f in np.flatnonzero(steps > step_bound)[:MAX_LISTED]:
        failures.append(Failure("step too large", int(f) + 1, None, float(steps[f]), step_bound))

    return VerifyReport(
        ok=not failures,
        min_distance=float(mins[k]) if path.n > 1 else float("inf"),
        min_frame=k,
        min_pair=(int(first[k]), int(second[k])),
        max_step=max_step,
        step_bound=float(step_bound),
        endpoint_error=max(e0, e1),
        failures=failures,
    )


def _stack(states):
    if isinstance(states[0], tuple):
        return tuple(_stack([s[i] for s in states]) for i in range(len(states[0])))
    return np.array(states)


def instability_estimate(table: PlannerTable, probes, eps: float, trials: int, seed: int = 0) -> int:
    """Largest number of distinct domains seen near any probe pair (a lower estimate)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    rng = np.random.default_rng(seed)
    best = 0
    for a, b in probes:
        seen = {table.classify(a, b)}
        if trials > 0:
            pairs = [table.perturb(a, b, eps, rng) for _ in range(trials)]
            seen.update(int(d) for d in table.classify_batch(_stack([p[0] for p in pairs]),
                                                             _stack([p[1] for p in pairs])))
        best = max(best, len(seen))
    return best
