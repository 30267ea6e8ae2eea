from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcarrange.arrangement import braid, generic
from tcarrange.os_algebra import (AlgebraError, OrlikSolomon, Parity, ResourceError, brute_force_oracle,
                                  circuit_relation, dimension, flag_of, permutation_sign,
                                  standard_monomial)

from helpers import TEST_ARRANGEMENTS

BOTH = [Parity.ODD, Parity.EVEN]


def labels(arr, text):
    return arr.indices(text.split(","))


def test_flag_examples():
    arr = braid(3)
    f = flag_of(arr, labels(arr, "H12,H23"))
    assert [arr.label_list(x.indices) for x in f.flats] == [["H23"], ["H12", "H13", "H23"]]
    f = flag_of(arr, labels(arr, "H23,H12"))
    assert [arr.label_list(x.indices) for x in f.flats] == [["H12"], ["H12", "H13", "H23"]]
    assert [x.rank for x in f.flats] == [1, 2]
    assert flag_of(arr, (1,)).flats[0].indices == (1,)


def test_flag_of_rejects_dependent():
    arr = braid(3)
    with pytest.raises(AlgebraError):
        flag_of(arr, (0, 1, 2))


def test_standard_monomial_examples():
    arr = braid(3)
    assert standard_monomial(arr, flag_of(arr, labels(arr, "H12,H23"))) == labels(arr, "H12,H23")
    assert standard_monomial(arr, flag_of(arr, labels(arr, "H12,H13"))) == labels(arr, "H12,H13")
    # ({H12} < full) picks (H13, H12): out of order
    assert standard_monomial(arr, flag_of(arr, labels(arr, "H23,H12"))) is None


@pytest.mark.parametrize("parity", BOTH)
def test_straighten_examples(parity):
    alg = OrlikSolomon(braid(3), parity)
    arr = alg.arr
    assert alg.straighten(labels(arr, "H13,H23")).format() == "+1·H12,H23 −1·H12,H13"
    assert alg.straighten(labels(arr, "H12,H13")).format() == "+1·H12,H13"
    assert alg.straighten((0, 1, 2)).is_zero()
    assert alg.straighten(()).format() == "+1·1"


def test_straighten_guards():
    alg = OrlikSolomon(braid(6))
    with pytest.raises(AlgebraError):
        alg.straighten((0, 0))
    with pytest.raises(ResourceError):
        alg.straighten(tuple(range(11)))


@pytest.mark.parametrize("parity", BOTH)
def test_multiply_examples(parity):
    alg = OrlikSolomon(braid(3), parity)
    e = alg.generator
    assert (e(1) * e(2)).format() == "+1·H12,H23 −1·H12,H13"
    for s in range(3):
        assert (e(s) * e(s)).is_zero()


def test_dimension_examples():
    assert OrlikSolomon(braid(3)).dimensions() == [1, 3, 2]
    assert OrlikSolomon(braid(4)).dimensions() == [1, 6, 11, 6]
    assert dimension(generic(3, 5, 1), 0) == 1


def test_oracle_examples():
    arr = braid(3)
    res = brute_force_oracle(arr, 2)
    assert res.dimension == 2
    coords = res.coordinates[labels(arr, "H13,H23")]
    assert coords == {labels(arr, "H12,H13"): -1, labels(arr, "H12,H23"): 1}
    assert brute_force_oracle(braid(4), 3).dimension == 6
    free = generic(3, 3, 0)
    assert [brute_force_oracle(free, p).dimension for p in range(4)] == [1, 3, 3, 1]


@pytest.mark.parametrize("name", sorted(TEST_ARRANGEMENTS))
@pytest.mark.parametrize("parity", BOTH)
def test_oracle_equivalence(name, parity):
    arr = TEST_ARRANGEMENTS[name]()
    alg = OrlikSolomon(arr, parity)
    for p in range(arr.rank + 2):
        res = brute_force_oracle(arr, p, parity)
        assert res.nbc_is_basis
        for mono in combinations(range(arr.size), p):
            expected = {k: int(v) for k, v in res.coordinates.get(mono, {}).items() if v}
            assert dict(alg.straighten(mono).terms) == expected, mono


@pytest.mark.parametrize("n", [4, 5])
def test_even_relations_match_triangle_ideal(n):
    arr = braid(n)
    triangles = [c for c in arr.circuits() if len(c) == 3]
    alg = OrlikSolomon(arr, Parity.EVEN)
    for p in range(arr.rank + 1):
        res = brute_force_oracle(arr, p, Parity.EVEN, circuits=triangles)
        assert res.dimension == len(arr.nbc_sets(p))
        for mono in combinations(range(arr.size), p):
            expected = {k: int(v) for k, v in res.coordinates.get(mono, {}).items() if v}
            assert dict(alg.straighten(mono).terms) == expected


def test_braid_even_relation_is_three_term():
    arr = braid(3)
    # e12 e13 - e12 e23 + e13 e23
    assert circuit_relation(arr, (0, 1, 2), Parity.EVEN) == (1, -1, 1)


@pytest.mark.parametrize("name", ["braid:3", "braid:4", "generic:3:5:1"])
@pytest.mark.parametrize("parity", BOTH)
def test_section_property(name, parity):
    arr = TEST_ARRANGEMENTS[name]()
    alg = OrlikSolomon(arr, parity)
    for p in range(arr.rank + 1):
        for m in arr.nbc_sets(p):
            assert dict(alg.straighten(m).terms) == {m: 1}


@pytest.mark.parametrize("parity", BOTH)
def test_dependence_annihilation(test_arrangement, parity):
    arr = test_arrangement
    alg = OrlikSolomon(arr, parity)
    for k in range(2, arr.size + 1):
        for t in combinations(range(arr.size), k):
            if not arr.is_independent(t):
                assert alg.straighten(t).is_zero()


@pytest.mark.parametrize("parity", BOTH)
def test_circuit_identity(test_arrangement, parity):
    """Odd: alternating boundary.  Even: signs of the circuit's linear dependency."""
    arr = test_arrangement
    alg = OrlikSolomon(arr, parity)
    for c in arr.circuits():
        kappa = circuit_relation(arr, c, parity)
        total = alg.zero()
        for j, k in enumerate(kappa):
            total = total + alg.straighten(c[:j] + c[j + 1:]) * k
        assert total.is_zero(), c


@pytest.mark.parametrize("method", ["flags", "rewrite", "naive"])
def test_odd_methods_agree(method):
    arr = braid(4)
    alg = OrlikSolomon(arr, Parity.ODD)
    for p in range(arr.rank + 1):
        for t in combinations(range(arr.size), p):
            for perm in permutations(t):
                assert alg.straighten(perm, method) == alg.straighten(perm, "flags")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["braid:4", "generic:3:5:1", "braid3+line"]), st.randoms(use_true_random=False))
def test_sign_laws(name, rnd):
    arr = TEST_ARRANGEMENTS[name]()
    p = rnd.randint(0, arr.rank)
    t = tuple(rnd.sample(range(arr.size), p))
    perm = list(t)
    rnd.shuffle(perm)
    odd = OrlikSolomon(arr, Parity.ODD)
    even = OrlikSolomon(arr, Parity.EVEN)
    sgn = permutation_sign([t.index(x) for x in perm])
    assert odd.straighten(perm) == odd.straighten(t) * sgn
    assert even.straighten(perm) == even.straighten(t)


@pytest.mark.parametrize("parity", BOTH)
def test_multiply_associative_and_graded_commutative(parity):
    arr = braid(4)
    alg = OrlikSolomon(arr, parity)
    rng = random.Random(3)
    basis = [alg.element({m: 1}) for p in range(arr.rank + 1) for m in arr.nbc_sets(p)]
    for _ in range(200):
        a, b, c = (rng.choice(basis) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        da, db = a.degree or 0, b.degree or 0
        sign = -1 if parity is Parity.ODD and (da * db) % 2 else 1
        assert a * b == (b * a) * sign


def test_parse_and_format_round_trip():
    alg = OrlikSolomon(braid(3))
    x = alg.parse_element("H23,H13")
    assert x.format() == "−1·H12,H23 +1·H12,H13"
    assert alg.zero().format() == "0"


def test_element_algebra():
    alg = OrlikSolomon(braid(3))
    e = alg.generator
    assert e(0) - e(0) == 0
    assert (-e(0)).coefficient((0,)) == -1
    assert (e(0) + e(1)).degree == 1
    with pytest.raises(AlgebraError):
        (e(0) + alg.one()).degree
    other = OrlikSolomon(braid(3))
    with pytest.raises(AlgebraError):
        e(0) * other.generator(1)
