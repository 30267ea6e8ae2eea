"""Central hyperplane arrangements and their matroid.

Hyperplanes are stored in the order they were given; that order is the ground-set
order used by every broken-circuit and nbc computation downstream.  Subsets of the
ground set are passed around as sorted tuples of indices; internally they are
bitmasks.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg

MAX_GROUND_SET = 24
GENERIC_RETRY_CAP = 10000

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class ArrangementError(ValueError):
    """Raised for invalid arrangement input.  ``code`` is a stable machine-readable tag."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def parse_rational(text) -> Fraction:
    """Parse ``[sign]digits[/digits]``; plain JSON integers are accepted too."""
    if isinstance(text, bool):
        raise ArrangementError("malformed_rational", f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ArrangementError("malformed_rational", f"not a rational: {text!r}")
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ArrangementError("malformed_rational", f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Flat:
    indices: tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class Flag:
    """Chain of flats ``X_1 < X_2 < ... < X_p`` with ``rank(X_i) = i``."""

    flats: tuple[Flat, ...]

    def __len__(self):
        return len(self.flats)


@dataclass(frozen=True, eq=False)
class Arrangement:
    ambient_dim: int
    labels: tuple[str, ...]
    normals: tuple[tuple[Fraction, ...], ...]
    name: str = ""
    _rows: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    # rank per subset bitmask; values never change once written
    _rank_cache: dict = field(init=False, repr=False, default_factory=dict)
    _circuit_cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ArrangementError("dimension_mismatch", "ambient_dim must be positive")
        if len(self.labels) != len(self.normals):
            raise ArrangementError("dimension_mismatch", "labels and normals differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ArrangementError("duplicate_label", "hyperplane labels must be unique")
        if len(self.labels) > MAX_GROUND_SET:
            raise ArrangementError(
                "too_large", f"at most {MAX_GROUND_SET} hyperplanes are supported"
            )
        for label, v in zip(self.labels, self.normals):
            if len(v) != self.ambient_dim:
                raise ArrangementError(
                    "dimension_mismatch",
                    f"normal of {label} has length {len(v)}, expected {self.ambient_dim}",
                )
            if all(x == 0 for x in v):
                raise ArrangementError("zero_normal", f"normal of {label} is zero")
        rows = tuple(linalg.integer_row(v) for v in self.normals)
        object.__setattr__(self, "_rows", rows)
        for i, j in combinations(range(len(rows)), 2):
            if linalg.rank([rows[i], rows[j]]) < 2:
                raise ArrangementError(
                    "proportional_normals",
                    f"{self.labels[i]} and {self.labels[j]} define the same hyperplane",
                )

    # -- basic data ---------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @property
    def rank(self) -> int:
        return self.rank_mask(self.full_mask)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ArrangementError("unknown_label", f"no hyperplane labelled {label!r}") from None

    def indices(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.index(lab) for lab in labels)

    def label_list(self, indices: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in indices]

    # -- matroid oracle -----------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        r = self._rank_cache.get(mask)
        if r is None:
            r = linalg.rank([self._rows[i] for i in indices_of(mask)])
            self._rank_cache[mask] = r
        return r

    def rank_of(self, t: Iterable[int]) -> int:
        return self.rank_mask(mask_of(t))

    def is_independent(self, t: Iterable[int]) -> bool:
        t = tuple(t)
        m = mask_of(t)
        return len(t) == bin(m).count("1") and self.rank_mask(m) == len(t)

    def closure_mask(self, mask: int) -> int:
        r = self.rank_mask(mask)
        out = mask
        for s in range(self.size):
            bit = 1 << s
            if not mask & bit and self.rank_mask(mask | bit) == r:
                out |= bit
        return out

    def closure(self, t: Iterable[int]) -> Flat:
        m = mask_of(t)
        return Flat(indices_of(self.closure_mask(m)), self.rank_mask(m))

    def circuits(self, max_size: int | None = None) -> list[tuple[int, ...]]:
        """Minimal dependent subsets of size <= ``max_size``, sorted lexicographically."""
        if max_size is None or max_size > self.rank + 1:
            max_size = self.rank + 1
        if max_size in self._circuit_cache:
            return list(self._circuit_cache[max_size])
        found: list[int] = []
        out: list[tuple[int, ...]] = []
        # a circuit has at most rank + 1 elements
        for k in range(1, min(max_size, self.rank + 1) + 1):
            for combo in combinations(range(self.size), k):
                m = mask_of(combo)
                if any(c & m == c for c in found):
                    continue
                if self.rank_mask(m) < k:
                    out.append(combo)
            found.extend(mask_of(c) for c in out[len(found):])
        self._circuit_cache[max_size] = tuple(sorted(out))
        return sorted(out)

    def circuit_dependency(self, circuit: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients ``lam`` with ``sum lam_j * normal_{c_j} = 0``, first entry positive.

        A circuit's normals satisfy exactly one linear relation up to scale.
        """
        c = tuple(circuit)
        m = [[self.normals[j][i] for j in c] for i in range(self.ambient_dim)]
        pivots = linalg.rref(m)
        pivot_cols = {col for _, col in pivots}
        free = [j for j in range(len(c)) if j not in pivot_cols]
        if len(free) != 1:
            raise ArrangementError("not_a_circuit", f"{c} is not a circuit")
        lam = [Fraction(0)] * len(c)
        lam[free[0]] = Fraction(1)
        for r, col in pivots:
            lam[col] = -m[r][free[0]]
        if lam[0] < 0:
            lam = [-x for x in lam]
        return tuple(lam)

    def broken_circuits(self) -> list[tuple[int, ...]]:
        return sorted({c[1:] for c in self.circuits()})

    def nbc_sets(self, p: int) -> list[tuple[int, ...]]:
        """All ``p``-subsets containing no broken circuit, in lexicographic order."""
        if p < 0:
            return []
        broken = [mask_of(b) for b in self.broken_circuits()]
        out: list[tuple[int, ...]] = []

        def extend(prefix: list[int], mask: int, start: int):
            if len(prefix) == p:
                out.append(tuple(prefix))
                return
            for s in range(start, self.size):
                m = mask | (1 << s)
                if any(b & m == b for b in broken):
                    continue
                prefix.append(s)
                extend(prefix, m, s + 1)
                prefix.pop()

        extend([], 0, 0)
        return out

    def is_nbc(self, t: Iterable[int]) -> bool:
        m = mask_of(t)
        return not any(mask_of(b) & m == mask_of(b) for b in self.broken_circuits())

    def connected_components(self) -> list[tuple[int, ...]]:
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits():
            for s in c[1:]:
                a, b = find(c[0]), find(s)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for s in range(self.size):
            groups.setdefault(find(s), []).append(s)
        return sorted(tuple(g) for g in groups.values())

    # -- serialisation ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "hyperplanes": [
                {"label": lab, "normal": [format_rational(x) for x in v]}
                for lab, v in zip(self.labels, self.normals)
            ],
        }


def parse_arrangement(text: str | dict, name: str = "") -> Arrangement:
    """Build an :class:`Arrangement` from its JSON document (string or decoded dict)."""
    if isinstance(text, str):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ArrangementError("malformed_document", str(exc)) from None
    else:
        doc = text
    if not isinstance(doc, dict) or "ambient_dim" not in doc or "hyperplanes" not in doc:
        raise ArrangementError("malformed_document", "expected keys ambient_dim, hyperplanes")
    dim = doc["ambient_dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ArrangementError("malformed_document", "ambient_dim must be an integer")
    labels, normals = [], []
    for h in doc["hyperplanes"]:
        if not isinstance(h, dict) or "label" not in h or "normal" not in h:
            raise ArrangementError("malformed_document", f"bad hyperplane entry {h!r}")
        labels.append(str(h["label"]))
        normals.append(tuple(parse_rational(x) for x in h["normal"]))
    return Arrangement(dim, tuple(labels), tuple(normals), name=name)


def braid(n: int) -> Arrangement:
    """Hyperplanes ``z_i - z_j = 0`` in C^n, lexicographic in ``(i, j)``, labelled ``Hij``."""
    if n < 2:
        raise ArrangementError("unknown_name", "braid arrangement needs n >= 2")
    labels, normals = [], []
    sep = "" if n < 10 else "_"
    for i, j in combinations(range(1, n + 1), 2):
        v = [Fraction(0)] * n
        v[i - 1], v[j - 1] = Fraction(1), Fraction(-1)
        labels.append(f"H{i}{sep}{j}")
        normals.append(tuple(v))
    return Arrangement(n, tuple(labels), tuple(normals), name=f"braid:{n}")


def generic(r: int, n: int, seed: int) -> Arrangement:
    """``n`` small-integer normals in Q^r with every ``r``-subset independent."""
    if not (n >= r >= 1):
        raise ArrangementError("unknown_name", "generic arrangement needs n >= r >= 1")
    rng = random.Random(seed)
    rows: list[tuple[int, ...]] = []
    tries = 0
    while len(rows) < n:
        tries += 1
        if tries > GENERIC_RETRY_CAP:
            raise ArrangementError("generic_failure", f"no generic family after {GENERIC_RETRY_CAP} tries")
        v = tuple(rng.randint(-5, 5) for _ in range(r))
        if not any(v):
            continue
        k = min(r - 1, len(rows))
        ok = all(linalg.rank([*(rows[i] for i in sub), v]) == k + 1
                 for sub in combinations(range(len(rows)), k))
        if r == 1 and rows:
            ok = False
        if ok:
            rows.append(v)
    labels = tuple(f"H{i + 1}" for i in range(n))
    normals = tuple(tuple(Fraction(x) for x in v) for v in rows)
    return Arrangement(r, labels, normals, name=f"generic:{r}:{n}:{seed}")


def named_arrangement(ident: str) -> Arrangement:
    parts = ident.split(":")
    try:
        if parts[0] == "braid" and len(parts) == 2:
            return braid(int(parts[1]))
        if parts[0] == "generic" and len(parts) == 4:
            return generic(int(parts[1]), int(parts[2]), int(parts[3]))
    except ValueError as exc:
        if isinstance(exc, ArrangementError):
            raise
        raise ArrangementError("unknown_name", f"bad parameters in {ident!r}") from None
    raise ArrangementError("unknown_name", f"unknown arrangement {ident!r}")


def direct_sum(a: Arrangement, b: Arrangement) -> Arrangement:
    """Product arrangement in the direct sum of the two ambient spaces."""
    zero_a = (Fraction(0),) * a.ambient_dim
    zero_b = (Fraction(0),) * b.ambient_dim
    normals = tuple(v + zero_b for v in a.normals) + tuple(zero_a + v for v in b.normals)
    labels = a.labels + b.labels
    return Arrangement(a.ambient_dim + b.ambient_dim, labels, normals,
                       name=f"({a.name})x({b.name})")


def subarrangement(arr: Arrangement, keep: Sequence[int]) -> Arrangement:
    keep = sorted(keep)
    return Arrangement(arr.ambient_dim, tuple(arr.labels[i] for i in keep),
                       tuple(arr.normals[i] for i in keep), name=f"{arr.name}|sub")
