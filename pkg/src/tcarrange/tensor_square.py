"""The graded tensor square ``A (x) A``, zero-divisors and their products.

A tensor element is a sparse map ``(left nbc monomial, right nbc monomial) -> int``.
Products carry the Koszul sign ``(-1)**(|v1| |u2|)`` computed from topological
degrees: generator degree 1 in odd parity, 2 in even parity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .arrangement import Arrangement
from .os_algebra import (
    AlgebraError,
    OrlikSolomon,
    Parity,
    ResourceError,
    format_monomial,
    format_terms,
)

MAX_SHUFFLE_SET = 20
DEFAULT_BUDGET = 10 ** 6

Pair = tuple  # (left monomial, right monomial)


@dataclass(frozen=True, eq=False)
class TensorElement:
    algebra: OrlikSolomon
    terms: Mapping[Pair, int] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TensorElement):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        return _element(self.algebra, _accumulate(dict(self.terms), other.terms, 1))

    def __sub__(self, other):
        return _element(self.algebra, _accumulate(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return _element(self.algebra, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return _element(self.algebra, {k: v * other for k, v in self.terms.items()})
        return tensor_multiply(self, other)

    def __rmul__(self, k: int):
        return self * k

    def bidegrees(self) -> set[tuple[int, int]]:
        return {(len(l), len(r)) for l, r in self.terms}

    def coefficient(self, left: Iterable[int], right: Iterable[int]) -> int:
        return self.terms.get((tuple(left), tuple(right)), 0)

    def sorted_terms(self) -> list[tuple[Pair, int]]:
        return sorted(self.terms.items())

    def format(self) -> str:
        arr = self.algebra.arr
        return format_terms(
            self.terms,
            lambda k: f"({format_monomial(arr, k[0])})⊗({format_monomial(arr, k[1])})",
        )

    def __repr__(self):
        return f"TensorElement({self.format()})"


def _element(algebra: OrlikSolomon, terms: Mapping) -> TensorElement:
    return TensorElement(algebra, {k: v for k, v in terms.items() if v})


def _accumulate(out: dict, terms: Mapping, scale: int) -> dict:
    for k, v in terms.items():
        c = out.get(k, 0) + scale * v
        if c:
            out[k] = c
        else:
            out.pop(k, None)
    return out


def unit(algebra: OrlikSolomon) -> TensorElement:
    return _element(algebra, {((), ()): 1})


def simple_tensor(algebra: OrlikSolomon, left: Sequence[int], right: Sequence[int]) -> TensorElement:
    """``m(left) (x) m(right)`` for ordered index lists, both sides reduced."""
    a = algebra.straighten(left)
    b = algebra.straighten(right)
    return _element(algebra, {(l, r): x * y for l, x in a.terms.items() for r, y in b.terms.items()})


def zero_divisor(algebra: OrlikSolomon, s: int) -> TensorElement:
    """``1 (x) e_s - e_s (x) 1``."""
    return _element(algebra, {((), (s,)): 1, ((s,), ()): -1})


def tensor_multiply(x: TensorElement, y: TensorElement) -> TensorElement:
    alg = x.algebra
    if not alg.same_as(y.algebra):
        raise AlgebraError("operands belong to different algebras")
    deg = alg.parity.generator_degree
    cache: dict = {}

    def product(a, b):
        if set(a) & set(b):
            return {}
        key = a + b
        if key not in cache:
            cache[key] = alg.straighten(key).terms
        return cache[key]

    out: dict = {}
    for (u1, v1), c1 in x.terms.items():
        for (u2, v2), c2 in y.terms.items():
            left = product(u1, u2)
            if not left:
                continue
            right = product(v1, v2)
            if not right:
                continue
            sign = -1 if (deg * len(v1) * deg * len(u2)) & 1 else 1
            k = sign * c1 * c2
            for l, a in left.items():
                for r, b in right.items():
                    key = (l, r)
                    v = out.get(key, 0) + k * a * b
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
    return _element(alg, out)


def bar_product_direct(algebra: OrlikSolomon, factors: Sequence[int]) -> TensorElement:
    """``prod zero_divisor(s)`` over ``factors``, multiplied left to right."""
    if not factors:
        raise AlgebraError("empty product of zero-divisors")
    acc = zero_divisor(algebra, factors[0])
    for s in factors[1:]:
        acc = tensor_multiply(acc, zero_divisor(algebra, s))
        if acc.is_zero():
            break
    return acc


@dataclass
class ShuffleTerm:
    left: tuple[int, ...]
    right: tuple[int, ...]
    coefficient: int


def shuffle_terms(arr: Arrangement, subset: Sequence[int]) -> list[ShuffleTerm]:
    """Signed simple tensors ``m(T) (x) m(T')`` over complementary independent pairs.

    ``T`` and ``T'`` keep the order of ``subset``; the sign is ``(-1)**|T|`` times the
    sign of the shuffle that moves ``T`` in front of ``T'``.
    """
    subset = tuple(subset)
    n = len(subset)
    out = []
    for mask in range(1 << n):
        t = tuple(subset[i] for i in range(n) if mask >> i & 1)
        tc = tuple(subset[i] for i in range(n) if not mask >> i & 1)
        if not (arr.is_independent(t) and arr.is_independent(tc)):
            continue
        # inversions: a complement element placed before a T element in ``subset``
        inv = 0
        seen_complement = 0
        for i in range(n):
            if mask >> i & 1:
                inv += seen_complement
            else:
                seen_complement += 1
        sign = (-1) ** len(t) * (-1 if inv & 1 else 1)
        out.append(ShuffleTerm(t, tc, sign))
    return out


def bar_product_shuffle(algebra: OrlikSolomon, subset: Sequence[int],
                        trace: list | None = None) -> TensorElement:
    """The product of the zero-divisors of ``subset`` via the shuffle expansion.

    Only meaningful for anticommuting generators.  ``trace``, when given, receives
    the unreduced :class:`ShuffleTerm` stream.
    """
    if algebra.parity is not Parity.ODD:
        raise AlgebraError("shuffle expansion is defined for odd parity only; use the direct product")
    subset = tuple(subset)
    if len(set(subset)) != len(subset):
        raise AlgebraError("shuffle expansion needs distinct hyperplanes")
    if len(subset) > MAX_SHUFFLE_SET:
        raise ResourceError(f"shuffle expansion limited to {MAX_SHUFFLE_SET} factors")
    if len(subset) > 2 * algebra.arr.rank:
        return _element(algebra, {})
    out: dict = {}
    for term in shuffle_terms(algebra.arr, subset):
        if trace is not None:
            trace.append(term)
        st = simple_tensor(algebra, term.left, term.right)
        _accumulate(out, st.terms, term.coefficient)
    return _element(algebra, out)


# -- nonvanishing certificates ------------------------------------------------


@dataclass
class Certificate:
    subset: tuple[int, ...]
    t1: tuple[int, ...]
    t2: tuple[int, ...]
    witness_left: tuple[int, ...]
    witness_right: tuple[int, ...]
    witness_coeff: int

    @property
    def size(self) -> int:
        return len(self.subset)

    def to_json(self, arr: Arrangement) -> dict:
        return {
            "subset": arr.label_list(self.subset),
            "T1": arr.label_list(self.t1),
            "T2": arr.label_list(self.t2),
            "witness": {
                "left": format_monomial(arr, self.witness_left),
                "right": format_monomial(arr, self.witness_right),
                "coeff": self.witness_coeff,
            },
        }


def satisfies_hypotheses(arr: Arrangement, t1: Sequence[int], t2: Sequence[int]) -> bool:
    """``T1`` independent and ``T2 + {s}`` independent for every ``s`` in ``T1 + T2``."""
    if set(t1) & set(t2) or not arr.is_independent(t1):
        return False
    s_all = set(t1) | set(t2)
    return all(arr.is_independent(set(t2) | {s}) for s in s_all)


def first_witness(pi: TensorElement):
    """Lexicographically first nonzero ``((left, right), coeff)`` of ``pi``."""
    (l, r), c = min(pi.terms.items())
    return l, r, c


def _search_split(arr: Arrangement, size1: int, size2: int, budget: list[int]):
    """Lexicographically first ``(T1, T2)`` of the given sizes meeting the hypotheses."""
    n = arr.size
    for t1 in combinations(range(n), size1):
        budget[0] -= 1
        if budget[0] < 0:
            return None
        if not arr.is_independent(t1):
            continue
        m1 = sum(1 << s for s in t1)
        rest = [s for s in range(n) if not m1 >> s & 1]

        def grow(t2: list[int], start: int):
            if len(t2) == size2:
                return tuple(t2)
            for k in range(start, len(rest)):
                budget[0] -= 1
                if budget[0] < 0:
                    return None
                cand = t2 + [rest[k]]
                if not arr.is_independent(cand):
                    continue
                closure = arr.closure_mask(sum(1 << s for s in cand))
                if any(closure >> s & 1 for s in t1):
                    continue
                found = grow(cand, k + 1)
                if found is not None:
                    return found
            return None

        t2 = grow([], 0)
        if t2 is not None:
            return t1, t2
    return None


def find_certificate(arr: Arrangement, budget: int = DEFAULT_BUDGET) -> Certificate | None:
    """Search for a split ``S' = T1 + T2`` with a provably nonzero zero-divisor product.

    Sizes are tried from ``|T1| = r, |T2| = r - 1`` downwards; each size class is
    searched lexicographically.  The product over ``S'`` (ground order) is then
    expanded and its first nonzero coefficient recorded as the witness.
    """
    r = arr.rank
    if r == 0:
        return None
    remaining = [budget]
    algebra = OrlikSolomon(arr, Parity.ODD)
    for total in range(2 * r - 1, 0, -1):
        for size1 in range(min(r, total), 0, -1):
            size2 = total - size1
            if size2 > r - 1 or size2 < 0:
                continue
            found = _search_split(arr, size1, size2, remaining)
            if remaining[0] < 0:
                return None
            if found is None:
                continue
            t1, t2 = found
            subset = tuple(sorted(t1 + t2))
            pi = bar_product_shuffle(algebra, subset)
            if pi.is_zero():  # cannot happen when the hypotheses hold
                raise AlgebraError(f"certificate {subset} expanded to zero")
            l, rr, c = first_witness(pi)
            return Certificate(subset, t1, t2, l, rr, c)
    return None


def verify_certificate(arr: Arrangement, cert: Certificate) -> bool:
    """Re-check hypotheses by independence tests and re-expand the product directly."""
    if tuple(sorted(cert.t1 + cert.t2)) != tuple(sorted(cert.subset)):
        return False
    if not satisfies_hypotheses(arr, cert.t1, cert.t2):
        return False
    pi = bar_product_direct(OrlikSolomon(arr, Parity.ODD), cert.subset)
    return pi.coefficient(cert.witness_left, cert.witness_right) == cert.witness_coeff != 0


# -- zero-divisor cup-length ------------------------------------------------------


@dataclass
class CupLength:
    length: int
    factors: tuple[int, ...]
    product: TensorElement | None
    exhaustive: bool  # False when the search budget ran out: ``length`` is then a lower bound
    certificate: Certificate | None = None
    method: str = ""

    def witness(self):
        return first_witness(self.product) if self.product is not None and self.product.terms else None


def zd_cup_length(arr: Arrangement, parity: Parity | str = Parity.ODD,
                  budget: int = DEFAULT_BUDGET) -> CupLength:
    """Longest nonzero product of generator zero-divisors, up to ``2 * rank`` factors.

    Odd parity: certificate first, then a lexicographic search over larger subsets
    (a product over a set is nonzero only if it is nonzero over every subset, so the
    search walks sizes downwards).  Two equal factors multiply to zero here.
    Even parity: ``prod (bar e_b)**2`` over the lexicographically first basis, which
    reaches ``2 * rank``, the top total degree of the tensor square.
    """
    parity = Parity(parity)
    r = arr.rank
    algebra = OrlikSolomon(arr, parity)
    if r == 0:
        return CupLength(0, (), None, True, method="empty arrangement")
    if parity is Parity.EVEN:
        basis: list[int] = []
        for s in range(arr.size):
            if arr.is_independent(basis + [s]):
                basis.append(s)
        factors = tuple(s for b in basis for s in (b, b))
        pi = bar_product_direct(algebra, factors)
        if pi.is_zero():
            raise AlgebraError("square product over a basis vanished")
        return CupLength(len(factors), factors, pi, True, method="squares over a basis")

    cert = find_certificate(arr, budget)
    best = cert.size if cert else 0
    factors = cert.subset if cert else ()
    product = bar_product_shuffle(algebra, factors) if cert else None
    if best >= 2 * r - 1:
        # products of 2r zero-divisors always vanish
        return CupLength(best, factors, product, True, cert, "certificate")
    evaluations = 0
    for k in range(min(2 * r - 1, arr.size), best, -1):
        for subset in combinations(range(arr.size), k):
            evaluations += 1
            if evaluations > budget:
                return CupLength(best, factors, product, False, cert, "certificate + partial search")
            pi = bar_product_shuffle(algebra, subset)
            if not pi.is_zero():
                return CupLength(k, subset, pi, True, cert, "exhaustive search")
    return CupLength(best, factors, product, True, cert, "certificate + exhaustive search")
