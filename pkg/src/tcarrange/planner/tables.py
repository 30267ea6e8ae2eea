"""Planner tables: partitioned local domains, each with a continuous rule.

A table works on *states*.  For the punctured-plane primitives a state is a complex
number; for a product table it is a tuple of factor states.  Membership is
vectorised: ``membership(a, b)`` takes batches of states (numpy arrays, or tuples of
arrays for products) and returns a boolean array of shape ``(k, N)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from .paths import Arc, PiecewisePath, Segment, straight

INCIDENCE_TOL = 1e-12


class PlannerError(ValueError):
    pass


def _popcount(masks: np.ndarray) -> np.ndarray:
    out = np.zeros(masks.shape, dtype=np.int64)
    m = masks.copy()
    while np.any(m):
        out += m & 1
        m >>= 1
    return out


class PlannerTable:
    names: tuple[str, ...]

    @property
    def domain_count(self) -> int:
        return len(self.names)

    def membership(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def rule(self, a, b):
        raise NotImplementedError

    def perturb(self, a, b, size: float, rng: np.random.Generator):
        raise NotImplementedError

    def classify_batch(self, a, b) -> np.ndarray:
        """1-based domain ordinal per pair; raises if the partition property fails."""
        mem = self.membership(a, b)
        hits = mem.sum(axis=0)
        if np.any(hits != 1):
            bad = int(np.flatnonzero(hits != 1)[0])
            raise PlannerError(f"pair {bad} lies in {int(hits[bad])} domains")
        return mem.argmax(axis=0) + 1

    def classify(self, a, b) -> int:
        return int(self.classify_batch(_batch1(a), _batch1(b))[0])

    def plan(self, a, b):
        """``(domain ordinal, path)`` for one pair."""
        return self.classify(a, b), self.rule(a, b)


def _batch1(state):
    if isinstance(state, tuple):
        return tuple(_batch1(s) for s in state)
    return np.atleast_1d(np.asarray(state))


@dataclass(frozen=True)
class PuncturedPlane(PlannerTable):
    """Segment/detour planner on the plane minus finitely many collinear-free punctures.

    Domain ``i`` (1-based) holds the pairs whose closed segment meets ``i - 1``
    punctures.  The rule runs along the segment and replaces each blocked stretch by a
    counterclockwise semicircle about the puncture of radius
    ``min(|a - p|, |b - p|, cap) / 2``.
    """

    punctures: tuple[complex, ...]
    prefix: str
    cap: float = math.inf

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"{self.prefix}{i + 1}" for i in range(len(self.punctures) + 1))

    def check(self, z) -> None:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if not np.all(np.isfinite(z)):
            raise PlannerError("non-finite state")
        for p in self.punctures:
            if np.any(z == p):
                raise PlannerError(f"state on the puncture {p}")

    def incidence(self, a, b) -> np.ndarray:
        return kernels.segment_incidence(
            np.ascontiguousarray(a, dtype=complex), np.ascontiguousarray(b, dtype=complex),
            np.asarray(self.punctures, dtype=complex), INCIDENCE_TOL)

    def membership(self, a, b) -> np.ndarray:
        self.check(a)
        self.check(b)
        counts = _popcount(self.incidence(np.atleast_1d(a), np.atleast_1d(b)))
        return np.stack([counts == i for i in range(self.domain_count)])

    def blocking(self, a: complex, b: complex) -> list[complex]:
        mask = int(self.incidence(np.array([a]), np.array([b]))[0])
        hit = [p for k, p in enumerate(self.punctures) if mask >> k & 1]
        d = b - a
        return sorted(hit, key=lambda p: ((p - a) * d.conjugate()).real)

    def rule(self, a, b) -> PiecewisePath:
        a, b = complex(a), complex(b)
        self.check([a, b])
        blocked = self.blocking(a, b)
        if not blocked:
            return straight(a, b)
        d = b - a
        u = d / abs(d)
        pieces = []
        cur = a
        for p in blocked:
            rho = 0.5 * min(abs(a - p), abs(b - p), self.cap)
            foot = a + ((p - a) * d.conjugate()).real / abs(d) * u
            entry, exit_ = foot - rho * u, foot + rho * u
            pieces.append(Segment(cur, entry))
            pieces.append(Arc(p, entry, exit_))
            cur = exit_
        pieces.append(Segment(cur, b))
        return PiecewisePath(pieces, a, b)

    def perturb(self, a, b, size, rng):
        """Perturb keeping incidence with a random subset of the blocking punctures.

        Lower domains are thin sets, so uniform noise would never reach them; choosing
        the stratum first lets the sampler visit every domain whose closure holds the
        pair.
        """
        a, b = complex(a), complex(b)
        keep = [p for p in self.blocking(a, b) if rng.random() < 0.5]
        if not keep:
            return a + size * _disc(rng), b + size * _disc(rng)
        if len(keep) == 1:
            p = keep[0]
            reach = max(abs(a - p), abs(b - p))
            s = size / (3 * reach)
            rot = np.exp(1j * s * rng.uniform(-1, 1))
            return (p + (a - p) * (1 + s * rng.uniform(-1, 1)) * rot,
                    p + (b - p) * (1 + s * rng.uniform(-1, 1)) * rot)
        e = (keep[1] - keep[0]) / abs(keep[1] - keep[0])
        return a + size * rng.uniform(-1, 1) * e, b + size * rng.uniform(-1, 1) * e


def _disc(rng) -> complex:
    r = math.sqrt(rng.random())
    return r * complex(np.exp(2j * math.pi * rng.random()))


def planner_cstar() -> PuncturedPlane:
    return PuncturedPlane((0j,), "G")


def planner_mstar() -> PuncturedPlane:
    return PuncturedPlane((0j, 1 + 0j), "F", cap=0.25)


class ProductPath:
    def __init__(self, left, right):
        self.left = left
        self.right = right

    def __call__(self, t):
        return self.left(t), self.right(t)


@dataclass(frozen=True)
class ProductTable(PlannerTable):
    """``W_l`` is the union of ``F_i x G_j`` over ``i + j = l``, for ``l = 2 .. k1 + k2``."""

    left: PlannerTable
    right: PlannerTable

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"W{l}" for l in range(2, self.left.domain_count + self.right.domain_count + 1))

    def membership(self, a, b) -> np.ndarray:
        ml = self.left.membership(a[0], b[0])
        mr = self.right.membership(a[1], b[1])
        out = np.zeros((self.domain_count,) + ml.shape[1:], dtype=bool)
        for i in range(ml.shape[0]):
            for j in range(mr.shape[0]):
                out[i + j] |= ml[i] & mr[j]
        return out

    def rule(self, a, b):
        return ProductPath(self.left.rule(a[0], b[0]), self.right.rule(a[1], b[1]))

    def perturb(self, a, b, size, rng):
        la, lb = self.left.perturb(a[0], b[0], size, rng)
        ra, rb = self.right.perturb(a[1], b[1], size, rng)
        return (la, ra), (lb, rb)


def product_combine(p: PlannerTable, q: PlannerTable) -> ProductTable:
    return ProductTable(p, q)
