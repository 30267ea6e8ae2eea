"""Planners for ordered particles in the plane.

Configurations are complex arrays of shape ``(n,)`` (batches: ``(N, n)``).  Two and
three particles are planned through the charts

    (z1, z2)      -> z1, d = z2 - z1               in C x C*
    (z1, z2, z3)  -> z1, (u, v) = (w2 / w3, w3)    in C x (C - {0,1}) x C*

with ``w_k = z_k - z1``; the translation ``z1`` always moves along a straight line.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .paths import straight
from .tables import PlannerError, PlannerTable, planner_cstar, planner_mstar, product_combine

DEFAULT_FRAMES = 256
STEP_FRACTION = 0.01
MAX_REFINE_ROUNDS = 40


def as_configuration(points, n: int | None = None) -> np.ndarray:
    """Accept ``[[x, y], ...]``, complex sequences or real sequences (points on the x-axis)."""
    arr = np.asarray(points)
    if arr.ndim == 2 and arr.shape[1] == 2 and not np.iscomplexobj(arr):
        z = arr[:, 0].astype(float) + 1j * arr[:, 1].astype(float)
    elif arr.ndim == 1:
        z = arr.astype(complex)
    else:
        raise PlannerError("a configuration is a list of [x, y] points")
    if n is not None and len(z) != n:
        raise PlannerError(f"expected {n} points, got {len(z)}")
    if not np.all(np.isfinite(z)):
        raise PlannerError("non-finite coordinates")
    if min_distance(z) <= 0:
        raise PlannerError("coincident points in configuration")
    return z


def min_distance(z: np.ndarray) -> float:
    z = np.asarray(z)
    if len(z) < 2:
        return math.inf
    i, j = np.triu_indices(len(z), 1)
    return float(np.abs(z[i] - z[j]).min())


def diameter(z: np.ndarray) -> float:
    z = np.asarray(z)
    i, j = np.triu_indices(len(z), 1)
    return float(np.abs(z[i] - z[j]).max()) if len(i) else 0.0


class ChartPath:
    def __init__(self, translation, inner, inverse):
        self.translation = translation
        self.inner = inner
        self.inverse = inverse

    def __call__(self, t) -> np.ndarray:
        return self.inverse(self.translation(t), self.inner(t))


@dataclass(frozen=True)
class ConfigTable(PlannerTable):
    """A table on configurations, pulled back from ``inner`` through a chart."""

    n: int
    inner: PlannerTable
    forward: Callable
    inverse: Callable
    label: str

    @property
    def names(self):
        return self.inner.names

    def chart(self, z):
        z = np.asarray(z, dtype=complex)
        return self.forward(z)

    def membership(self, a, b):
        _, sa = self.chart(np.atleast_2d(a))
        _, sb = self.chart(np.atleast_2d(b))
        return self.inner.membership(sa, sb)

    def classify(self, a, b) -> int:
        return int(self.classify_batch(np.atleast_2d(a), np.atleast_2d(b))[0])

    def rule(self, a, b):
        ta, sa = self.chart(a)
        tb, sb = self.chart(b)
        return ChartPath(straight(complex(ta), complex(tb)), self.inner.rule(sa, sb), self.inverse)

    def perturb(self, a, b, size, rng):
        """Perturb in chart coordinates, shrinking until every particle moves at most ``size``."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        ta, sa = self.chart(a)
        tb, sb = self.chart(b)
        s = size
        for _ in range(60):
            pa, pb = self.inner.perturb(sa, sb, s, rng)
            shift = 0.25 * s * (rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1))
            na = self.inverse(ta + shift, pa)
            nb = self.inverse(tb + shift, pb)
            if max(np.abs(na - a).max(), np.abs(nb - b).max()) <= size:
                return na, nb
            s *= 0.5
        return a.copy(), b.copy()


def _forward2(z):
    return z[..., 0], z[..., 1] - z[..., 0]


def _inverse2(t, d):
    t = np.asarray(t)
    return np.stack([t, t + d], axis=-1)


def _forward3(z):
    w2 = z[..., 1] - z[..., 0]
    w3 = z[..., 2] - z[..., 0]
    return z[..., 0], (w2 / w3, w3)


def _inverse3(t, uv):
    u, v = uv
    t = np.asarray(t)
    return np.stack([t, t + u * v, t + v], axis=-1)


@lru_cache(maxsize=None)
def table2() -> ConfigTable:
    return ConfigTable(2, planner_cstar(), _forward2, _inverse2, "plan2")


@lru_cache(maxsize=None)
def table3() -> ConfigTable:
    return ConfigTable(3, product_combine(planner_mstar(), planner_cstar()), _forward3, _inverse3, "plan3")


@dataclass
class SampledPath:
    n: int
    times: np.ndarray
    frames: np.ndarray  # (T, n) complex
    domain: int
    planner: str
    domain_name: str | None = None
    start: np.ndarray | None = None
    goal: np.ndarray | None = None
    optimal: bool = True
    extra: dict = field(default_factory=dict)

    def xy(self) -> np.ndarray:
        """Frames as a ``(T, n, 2)`` float array."""
        return np.stack([self.frames.real, self.frames.imag], axis=-1)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "times": [float(t) for t in self.times],
            "frames": _points_list(self.frames),
            "domain": self.domain,
            "planner": self.planner,
        }
        if self.domain_name is not None:
            out["domain_name"] = self.domain_name
        if self.start is not None:
            out["start"] = _points_list(self.start[None])[0]
        if self.goal is not None:
            out["goal"] = _points_list(self.goal[None])[0]
        if not self.optimal:
            out["optimal"] = False
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> "SampledPath":
        try:
            frames = np.asarray(data["frames"], dtype=float)
            n = int(data["n"])
            if frames.ndim != 3 or frames.shape[1:] != (n, 2):
                raise PlannerError("frames must have shape (T, n, 2)")
            z = frames[..., 0] + 1j * frames[..., 1]
            opt = lambda key: (None if key not in data else  # noqa: E731
                               np.asarray(data[key], float) @ np.array([1, 1j]))
            return cls(n=n, times=np.asarray(data["times"], dtype=float), frames=z,
                       domain=int(data.get("domain", 0)), planner=str(data.get("planner", "")),
                       domain_name=data.get("domain_name"), start=opt("start"), goal=opt("goal"),
                       optimal=bool(data.get("optimal", True)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, PlannerError):
                raise
            raise PlannerError(f"malformed path JSON: {exc}") from None


def _points_list(frames: np.ndarray) -> list:
    return [[[float(p.real), float(p.imag)] for p in frame] for frame in frames]


def sample(path: Callable, start, goal, frames: int = DEFAULT_FRAMES):
    """Sample ``path`` on ``frames`` uniform times, then bisect until steps are small.

    Every consecutive pair of frames ends up moving each particle by less than
    ``STEP_FRACTION`` times the larger configuration diameter.
    """
    if frames < 2:
        raise PlannerError("need at least 2 frames")
    bound = STEP_FRACTION * max(diameter(start), diameter(goal))
    times = np.linspace(0.0, 1.0, frames)
    values = np.asarray(path(times))
    for _ in range(MAX_REFINE_ROUNDS):
        steps = np.abs(np.diff(values, axis=0)).max(axis=1)
        bad = np.flatnonzero(steps >= bound)
        if len(bad) == 0:
            break
        mids = 0.5 * (times[bad] + times[bad + 1])
        new = np.asarray(path(mids))
        times = np.insert(times, bad + 1, mids)
        values = np.insert(values, bad + 1, new, axis=0)
    else:
        raise PlannerError("adaptive sampling did not converge")
    values[0] = start
    values[-1] = goal
    return times, values


def _plan_with(table: ConfigTable, start, goal, frames: int) -> SampledPath:
    a = as_configuration(start, table.n)
    b = as_configuration(goal, table.n)
    domain = table.classify(a, b)
    times, values = sample(table.rule(a, b), a, b, frames)
    return SampledPath(n=table.n, times=times, frames=values, domain=domain, planner=table.label,
                       domain_name=table.names[domain - 1], start=a, goal=b)


def plan2(start, goal, frames: int = DEFAULT_FRAMES) -> SampledPath:
    return _plan_with(table2(), start, goal, frames)


def plan3(start, goal, frames: int = DEFAULT_FRAMES) -> SampledPath:
    return _plan_with(table3(), start, goal, frames)


# --- baseline -------------------------------------------------------------

ANGLE_GRID = 360


def _projection_gap(z: np.ndarray, theta: float) -> float:
    x = np.sort((z * np.exp(-1j * theta)).real)
    return float(np.diff(x).min())


def choose_direction(a: np.ndarray, b: np.ndarray) -> float:
    """Grid angle maximising the smaller of the two minimal projection gaps."""
    best, best_gap = 0.0, -1.0
    for k in range(ANGLE_GRID):
        theta = math.pi * k / ANGLE_GRID
        gap = min(_projection_gap(a, theta), _projection_gap(b, theta))
        if gap > best_gap:
            best, best_gap = theta, gap
    if best_gap <= 0:
        raise PlannerError("no direction separates the projections")
    return best


class KeyframePath:
    """Linear interpolation between keyframes, time shared by largest displacement."""

    def __init__(self, keys: list[np.ndarray]):
        self.keys = np.array(keys)
        moves = np.abs(np.diff(self.keys, axis=0)).max(axis=1)
        total = moves.sum()
        self.cum = np.concatenate([[0.0], np.cumsum(moves)]) / total if total > 0 else None

    def __call__(self, t):
        t = np.clip(np.asarray(t, dtype=float), 0, 1)
        if self.cum is None:
            return np.repeat(self.keys[:1], len(t), axis=0)
        k = np.clip(np.searchsorted(self.cum, t, side="right") - 1, 0, len(self.keys) - 2)
        span = self.cum[k + 1] - self.cum[k]
        s = np.where(span > 0, (t - self.cum[k]) / np.where(span > 0, span, 1), 1.0)
        return self.keys[k] + s[:, None] * (self.keys[k + 1] - self.keys[k])


def plan_baseline(n: int, start, goal, frames: int = DEFAULT_FRAMES) -> SampledPath:
    """Non-optimal planner for any ``n``: line up, swap in lanes, line up, unfold."""
    if n < 2:
        raise PlannerError("baseline planner needs n >= 2")
    a = as_configuration(start, n)
    b = as_configuration(goal, n)
    theta = choose_direction(a, b)
    rot = np.exp(-1j * theta)
    ra, rb = a * rot, b * rot
    both = np.concatenate([ra, rb])
    spacing = max(diameter(a), diameter(b)) / max(n - 1, 1)
    x0 = both.real.mean() - 0.5 * spacing * (n - 1)
    y0 = both.imag.mean()
    slots = x0 + spacing * np.arange(n)

    def lined_up(r):
        line = np.empty(n, dtype=complex)
        line[np.argsort(r.real, kind="stable")] = slots + 1j * y0
        return line

    la, lb = lined_up(ra), lined_up(rb)
    lane = 1j * spacing * (np.arange(n) + 1)
    keys = [ra, la, la + lane, lb + lane, lb, rb]
    path = KeyframePath([k / rot for k in keys])
    times, values = sample(path, a, b, frames)
    return SampledPath(n=n, times=times, frames=values, domain=1, planner="baseline",
                       domain_name="baseline", start=a, goal=b, optimal=False)
