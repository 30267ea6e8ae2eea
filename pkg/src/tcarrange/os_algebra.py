"""Orlik-Solomon algebras with integer coefficients, in two parities.

``ODD``: degree-one anticommuting generators (cohomology of a complex arrangement
complement).  ``EVEN``: commuting generators with ``e**2 = 0`` (the algebra for
codimension-three braid-type subspace arrangements, topological degree 2 each).

Elements are sparse maps from nbc monomials (sorted index tuples) to ints.
Reduction to the nbc basis:

* odd parity sums signed standard monomials over the flags of every ordering of
  the input (the flag decomposition);
* even parity rewrites broken circuits away using the circuit relations, because
  the odd expansion coefficients do not carry over once three or more generators
  interact.  Its relations take their signs from the real linear dependency of
  each circuit, so they need the realization, not just the matroid.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from . import kernels, linalg
from .arrangement import Arrangement, Flag, Flat, indices_of, mask_of

MAX_STRAIGHTEN_DEGREE = 10
MAX_ORACLE_GROUND_SET = 16

Monomial = tuple  # strictly increasing tuple of ground indices


class Parity(str, enum.Enum):
    ODD = "odd"
    EVEN = "even"

    @property
    def generator_degree(self) -> int:
        return 1 if self is Parity.ODD else 2


class AlgebraError(ValueError):
    pass


class ResourceError(RuntimeError):
    """A factorial or size guard was exceeded."""


def permutation_sign(seq: Sequence[int]) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


def merge_sign(left: Iterable[int], right: Iterable[int]) -> int:
    """Sign of sorting the concatenation of two disjoint increasing runs."""
    inv = 0
    right = tuple(right)
    for x in left:
        for y in right:
            if x > y:
                inv += 1
    return -1 if inv & 1 else 1


# -- flags -----------------------------------------------------------------


def flag_of(arr: Arrangement, t: Sequence[int]) -> Flag:
    """``i``-th flat is the closure of the last ``i`` entries of ``t``."""
    if not arr.is_independent(t):
        raise AlgebraError(f"flag of a dependent tuple {tuple(t)}")
    flats = []
    for i in range(1, len(t) + 1):
        suffix = t[len(t) - i:]
        flats.append(arr.closure(suffix))
    return Flag(tuple(flats))


def standard_monomial(arr: Arrangement, flag: Flag) -> Monomial | None:
    """The nbc monomial of a standard flag, or ``None`` when the flag is not standard."""
    picks = []
    prev: set[int] = set()
    for flat in flag.flats:
        diff = set(flat.indices) - prev
        picks.append(min(diff))
        prev = set(flat.indices)
    # picks[i] fills position p - i of the monomial, so they must decrease
    if any(picks[i + 1] >= picks[i] for i in range(len(picks) - 1)):
        return None
    return tuple(reversed(picks))


# -- elements --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: "OrlikSolomon"
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    @property
    def degree(self) -> int | None:
        degs = {len(m) for m in self.terms}
        if len(degs) > 1:
            raise AlgebraError("element is not homogeneous")
        return degs.pop() if degs else None

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.element(_add_terms(self.terms, other.terms, 1))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.element(_add_terms(self.terms, other.terms, -1))

    def __neg__(self):
        return self.algebra.element({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.algebra.element({m: c * other for m, c in self.terms.items()})
        return self.algebra.multiply(self, other)

    __rmul__ = lambda self, k: self * k  # noqa: E731 -- scalar on the left

    def coefficient(self, monomial: Iterable[int]) -> int:
        return self.terms.get(tuple(monomial), 0)

    def format(self) -> str:
        return format_terms(self.terms, lambda m: format_monomial(self.algebra.arr, m))

    def __repr__(self):
        return f"AlgebraElement({self.format()})"


def _add_terms(a: Mapping, b: Mapping, sign: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        c = out.get(k, 0) + sign * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def format_monomial(arr: Arrangement, m: Monomial) -> str:
    return ",".join(arr.labels[i] for i in m) if m else "1"


def format_terms(terms: Mapping, fmt) -> str:
    """Signed terms, highest monomial first: ``+1·H12,H23 −1·H12,H13``."""
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, reverse=True):
        c = terms[key]
        sign = "+" if c > 0 else "−"
        parts.append(f"{sign}{abs(c)}·{fmt(key)}")
    return " ".join(parts)


# -- the algebra ----------------------------------------------------------


class OrlikSolomon:
    """The Orlik-Solomon algebra of ``arr`` over Z in the given parity."""

    def __init__(self, arr: Arrangement, parity: Parity | str = Parity.ODD):
        self.arr = arr
        self.parity = Parity(parity)
        self._broken = [mask_of(b) for b in arr.broken_circuits()]
        # broken circuit mask -> the full circuit, sorted
        self._circuit_of = {mask_of(c[1:]): c for c in arr.circuits()}
        self._relations = {c: circuit_relation(arr, c, self.parity) for c in arr.circuits()}

    def __repr__(self):
        return f"OrlikSolomon({self.arr.name or 'arrangement'}, {self.parity.value})"

    def same_as(self, other: "OrlikSolomon") -> bool:
        return self.arr is other.arr and self.parity is other.parity

    # constructors
    def element(self, terms: Mapping[Monomial, int]) -> AlgebraElement:
        return AlgebraElement(self, {m: c for m, c in terms.items() if c})

    def one(self) -> AlgebraElement:
        return self.element({(): 1})

    def zero(self) -> AlgebraElement:
        return self.element({})

    def generator(self, s: int) -> AlgebraElement:
        return self.element({(s,): 1})

    def monomial(self, t: Sequence[int]) -> AlgebraElement:
        """The product ``e_{t_1} ... e_{t_p}`` in the given order, reduced."""
        return self.straighten(t)

    def basis(self, p: int) -> list[Monomial]:
        return self.arr.nbc_sets(p)

    def dimensions(self) -> list[int]:
        return [len(self.basis(p)) for p in range(self.arr.rank + 1)]

    # reduction
    def _is_nbc_mask(self, m: int) -> bool:
        return not any(b & m == b for b in self._broken)

    def straighten(self, t: Sequence[int], method: str | None = None) -> AlgebraElement:
        """Expand the ordered product ``e_{t_1} ... e_{t_p}`` in the nbc basis."""
        t = tuple(t)
        if len(set(t)) != len(t):
            raise AlgebraError(f"repeated index in {t}")
        if len(t) > MAX_STRAIGHTEN_DEGREE:
            raise ResourceError(
                f"straightening degree {len(t)} exceeds the guard {MAX_STRAIGHTEN_DEGREE}"
            )
        if not self.arr.is_independent(t):
            return self.zero()
        ordered = tuple(sorted(t))
        sign = permutation_sign(t) if self.parity is Parity.ODD else 1
        if method is None:
            method = "flags" if self.parity is Parity.ODD else "rewrite"
        if method == "flags":
            if self.parity is not Parity.ODD:
                raise AlgebraError("flag decomposition applies to odd parity only")
            terms = self._flag_terms(ordered)
        elif method == "rewrite":
            terms = self._rewrite(ordered, {})
        elif method == "naive":
            terms = self._flag_terms_naive(ordered)
        else:
            raise AlgebraError(f"unknown method {method!r}")
        return self.element({m: sign * c for m, c in terms.items()})

    def _flag_terms(self, ordered: Monomial) -> dict:
        p = len(ordered)
        closures = [0] * (1 << p)
        for local in range(1, 1 << p):
            closures[local] = self.arr.closure_mask(
                mask_of(ordered[q] for q in range(p) if local >> q & 1)
            )
        out: dict = {}
        for mask, sgn in kernels.flag_expansion(closures, ordered):
            m = indices_of(mask)
            out[m] = out.get(m, 0) + sgn
        return {m: c for m, c in out.items() if c}

    def _flag_terms_naive(self, ordered: Monomial) -> dict:
        """The flag decomposition summed over all orderings, without pruning."""
        out: dict = {}
        for perm in permutations(range(len(ordered))):
            sigma_t = [ordered[q] for q in perm]
            m = standard_monomial(self.arr, flag_of(self.arr, sigma_t))
            if m is not None:
                out[m] = out.get(m, 0) + permutation_sign(perm)
        return {m: c for m, c in out.items() if c}

    def _rewrite(self, u: Monomial, memo: dict) -> dict:
        """Reduce the sorted monomial ``u`` by trading broken circuits for smaller sets."""
        if u in memo:
            return memo[u]
        mu = mask_of(u)
        if not self.arr.is_independent(u):
            memo[u] = {}
            return memo[u]
        bc = next((b for b in self._broken if b & mu == b), None)
        if bc is None:
            memo[u] = {u: 1}
            return memo[u]
        circuit = self._circuit_of[bc]
        kappa = self._relations[circuit]
        c0 = circuit[0]
        rest = indices_of(mu & ~bc)
        broken = circuit[1:]
        out: dict = {}
        # kappa_0 e_broken + sum_{j>=1} kappa_j e_{C - c_j} = 0, kappa_0 = +-1
        for j in range(1, len(circuit)):
            cj = circuit[j]
            sign = -kappa[0] * kappa[j]
            new = indices_of((mu & ~(1 << cj)) | (1 << c0))
            if self.parity is Parity.ODD:
                part = circuit[:j] + circuit[j + 1:]
                sign *= merge_sign(broken, rest) * merge_sign(part, rest)
            for m, c in self._rewrite(new, memo).items():
                v = out.get(m, 0) + sign * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        memo[u] = out
        return out

    # multiplication
    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        if not (a.algebra.same_as(self) and b.algebra.same_as(self)):
            raise AlgebraError("operands belong to different algebras")
        out: dict = {}
        cache: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                if set(m1) & set(m2):
                    continue
                key = m1 + m2
                if key not in cache:
                    cache[key] = self.straighten(key).terms
                for m, c in cache[key].items():
                    v = out.get(m, 0) + c1 * c2 * c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
        return self.element(out)

    def parse_element(self, text: str) -> AlgebraElement:
        """Parse a comma-separated label list as the ordered product of generators."""
        labels = [s for s in text.split(",") if s.strip()]
        return self.straighten(self.arr.indices(s.strip() for s in labels))


def dimension(arr: Arrangement, p: int) -> int:
    return len(arr.nbc_sets(p))


# -- brute-force oracle -----------------------------------------------------


@dataclass
class OracleResult:
    degree: int
    dimension: int
    basis: list[Monomial]
    coordinates: dict  # squarefree monomial -> {nbc monomial: Fraction}
    nbc_is_basis: bool


def _product_sorted(x: Monomial, y: Monomial, parity: Parity):
    """``e_x * e_y`` as (sign, sorted monomial), or ``None`` when it vanishes."""
    if set(x) & set(y):
        return None
    sign = merge_sign(x, y) if parity is Parity.ODD else 1
    return sign, tuple(sorted(x + y))


def circuit_relation(arr: Arrangement, circuit: Sequence[int], parity: Parity) -> tuple[int, ...]:
    """Coefficients ``kappa_j`` of the relation ``sum_j kappa_j e_{C - c_j} = 0``.

    Odd parity: ``(-1)**j`` over the sorted circuit, the boundary of ``e_C``.
    Even parity: the sign of the circuit's linear dependency coefficient ``lam_j``.
    Reversing a normal flips ``e_H`` and ``lam_H`` together, so the relation is
    well defined; on a braid triangle it is ``e_ij e_ik - e_ij e_jk + e_ik e_jk``.
    """
    c = tuple(sorted(circuit))
    if Parity(parity) is Parity.ODD:
        return tuple(-1 if j & 1 else 1 for j in range(len(c)))
    return tuple(1 if x > 0 else -1 for x in arr.circuit_dependency(c))


def relation_vectors(arr: Arrangement, p: int, parity: Parity,
                     circuits: Iterable[Sequence[int]] | None = None):
    """Degree-``p`` spanning set of the relation ideal: ``r_C * e_M`` over circuits ``C``.

    ``r_C = sum_j kappa_j e_{C - c_j}`` (see :func:`circuit_relation`).  Each vector
    is a dict from sorted squarefree monomials to ints.
    """
    circuits = arr.circuits() if circuits is None else [tuple(sorted(c)) for c in circuits]
    rows = []
    for c in circuits:
        k = len(c)
        deg_m = p - (k - 1)
        if deg_m < 0:
            continue
        kappa = circuit_relation(arr, c, parity)
        for m in combinations(range(arr.size), deg_m):
            vec: dict = {}
            for j in range(k):
                part = c[:j] + c[j + 1:]
                prod = _product_sorted(part, m, parity)
                if prod is None:
                    continue
                s, mono = prod
                vec[mono] = vec.get(mono, 0) + kappa[j] * s
            vec = {a: b for a, b in vec.items() if b}
            if vec:
                rows.append(vec)
    return rows


def brute_force_oracle(arr: Arrangement, p: int, parity: Parity | str = Parity.ODD,
                       circuits: Iterable[Sequence[int]] | None = None) -> OracleResult:
    """Degree-``p`` quotient built by explicit row reduction over Q.

    Columns are all squarefree degree-``p`` monomials; rows the relation vectors.
    Non-nbc columns are tried as pivots first, so whenever the nbc monomials form a
    basis each other monomial reads off its nbc coordinates from its pivot row.
    ``circuits`` overrides the relation generators (defaults to all circuits).
    """
    parity = Parity(parity)
    if arr.size > MAX_ORACLE_GROUND_SET:
        raise ResourceError(f"oracle limited to {MAX_ORACLE_GROUND_SET} hyperplanes")
    monos = list(combinations(range(arr.size), p))
    col = {m: i for i, m in enumerate(monos)}
    nbc = set(arr.nbc_sets(p))
    rows = relation_vectors(arr, p, parity, circuits)
    matrix = []
    for vec in rows:
        row = [Fraction(0)] * len(monos)
        for m, c in vec.items():
            row[col[m]] = Fraction(c)
        matrix.append(row)
    order = [i for i, m in enumerate(monos) if m not in nbc] + \
            [i for i, m in enumerate(monos) if m in nbc]
    pivots = linalg.rref(matrix, order)
    dim = len(monos) - len(pivots)
    pivot_cols = {c: r for r, c in pivots}
    nbc_free = all(col[m] not in pivot_cols for m in nbc)
    coords: dict = {}
    basis = sorted(nbc)
    if nbc_free and dim == len(nbc):
        for m in monos:
            if m in nbc:
                coords[m] = {m: Fraction(1)}
                continue
            r = pivot_cols[col[m]]
            row = matrix[r]
            coords[m] = {b: -row[col[b]] for b in basis if row[col[b]] != 0}
    return OracleResult(p, dim, basis, coords, nbc_free and dim == len(nbc))
