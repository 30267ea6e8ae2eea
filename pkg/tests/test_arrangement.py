from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations

import pytest

from tcarrange.arrangement import (Arrangement, ArrangementError, braid, generic, named_arrangement,
                                   parse_arrangement, parse_rational)
from tcarrange.os_algebra import Parity, brute_force_oracle

from helpers import braid3_plus_line


def doc(dim, normals, labels=None):
    labels = labels or [f"H{i + 1}" for i in range(len(normals))]
    return json.dumps({"ambient_dim": dim,
                       "hyperplanes": [{"label": l, "normal": n} for l, n in zip(labels, normals)]})


def test_parse_small_rank_two():
    arr = parse_arrangement(doc(2, [["1", "0"], ["0", "1"], ["1", "-1"]]))
    assert arr.rank == 2


def test_parse_braid_normals():
    arr = parse_arrangement(doc(3, [["1", "-1", "0"], ["1", "0", "-1"], ["0", "1", "-1"]]))
    assert arr.rank == 2


@pytest.mark.parametrize("normals,code", [
    ([["1", "0"], ["2", "0"]], "proportional_normals"),
    ([["0", "0"]], "zero_normal"),
    ([["1", "0", "0"]], "dimension_mismatch"),
    ([["1/x", "0"]], "malformed_rational"),
    ([["1/0", "1"]], "malformed_rational"),
])
def test_parse_errors_have_distinct_codes(normals, code):
    with pytest.raises(ArrangementError) as info:
        parse_arrangement(doc(2, normals))
    assert info.value.code == code


def test_duplicate_label_and_malformed_document():
    with pytest.raises(ArrangementError) as info:
        parse_arrangement(doc(2, [["1", "0"], ["0", "1"]], labels=["A", "A"]))
    assert info.value.code == "duplicate_label"
    with pytest.raises(ArrangementError) as info:
        parse_arrangement("{not json")
    assert info.value.code == "malformed_document"


def test_rational_grammar():
    assert parse_rational("-3/7") == Fraction(-3, 7)
    assert parse_rational("+4") == 4
    assert parse_rational(5) == 5


def test_json_round_trip():
    arr = generic(3, 5, 1)
    again = parse_arrangement(json.dumps(arr.to_json()))
    assert again.labels == arr.labels and again.normals == arr.normals


@pytest.mark.parametrize("ident,size,rank", [("braid:3", 3, 2), ("braid:4", 6, 3), ("generic:3:5:1", 5, 3)])
def test_named(ident, size, rank):
    arr = named_arrangement(ident)
    assert (arr.size, arr.rank) == (size, rank)


def test_generic_every_triple_independent_and_deterministic():
    arr = generic(3, 5, 1)
    assert all(arr.is_independent(t) for t in combinations(range(5), 3))
    assert generic(3, 5, 1).normals == arr.normals


@pytest.mark.parametrize("ident", ["braid:1", "tree:3", "generic:3:2:0", "braid:x"])
def test_named_errors(ident):
    with pytest.raises(ArrangementError):
        named_arrangement(ident)


def test_braid_order_and_labels():
    assert braid(4).labels == ("H12", "H13", "H14", "H23", "H24", "H34")
    with pytest.raises(ArrangementError) as info:
        braid(8)
    assert info.value.code == "too_large"


def test_independence_examples():
    arr = braid(3)
    assert arr.is_independent(arr.indices(["H12", "H13"]))
    assert not arr.is_independent(arr.indices(["H12", "H13", "H23"]))
    assert arr.is_independent([])


def test_closure_examples():
    arr = braid(3)
    f = arr.closure(arr.indices(["H13", "H23"]))
    assert arr.label_list(f.indices) == ["H12", "H13", "H23"] and f.rank == 2
    f = arr.closure(arr.indices(["H23"]))
    assert arr.label_list(f.indices) == ["H23"] and f.rank == 1
    f = arr.closure([])
    assert f.indices == () and f.rank == 0


def test_circuit_examples():
    assert braid(3).circuits() == [(0, 1, 2)]
    assert braid(2).circuits() == []
    g = generic(3, 5, 1)
    assert g.circuits(max_size=4) == list(combinations(range(5), 4))


def test_nbc_examples():
    arr = braid(3)
    assert arr.nbc_sets(2) == [(0, 1), (0, 2)]
    assert arr.nbc_sets(1) == [(0,), (1,), (2,)]
    assert len(braid(4).nbc_sets(3)) == 6


def test_component_examples():
    assert braid(3).connected_components() == [(0, 1, 2)]
    two = Arrangement(2, ("X", "Y"), ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
    assert two.connected_components() == [(0,), (1,)]
    assert braid3_plus_line().connected_components() == [(0, 1, 2), (3,)]


def test_rank_monotone_and_submodular(test_arrangement):
    arr = test_arrangement
    rng = random.Random(7)
    for _ in range(1000):
        a = rng.getrandbits(arr.size)
        b = rng.getrandbits(arr.size)
        ra, rb = arr.rank_mask(a), arr.rank_mask(b)
        assert arr.rank_mask(a | b) + arr.rank_mask(a & b) <= ra + rb
        assert arr.rank_mask(a | b) >= max(ra, rb)


def test_closure_idempotent_and_extensive(test_arrangement):
    arr = test_arrangement
    for k in range(arr.size + 1):
        for t in combinations(range(arr.size), k):
            c = arr.closure(t)
            assert set(t) <= set(c.indices)
            assert arr.closure(c.indices) == c
            assert c.rank == arr.rank_of(t)


def test_nbc_sets_independent_and_counted_by_oracle(test_arrangement):
    arr = test_arrangement
    for p in range(arr.rank + 1):
        sets = arr.nbc_sets(p)
        assert all(arr.is_independent(s) for s in sets)
        assert brute_force_oracle(arr, p, Parity.ODD).dimension == len(sets)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_braid_rank_and_certificate_family(n):
    arr = braid(n)
    assert arr.rank == n - 1
    t1 = arr.indices([f"H1{j}" for j in range(2, n + 1)])
    t2 = arr.indices([f"H2{k}" for k in range(3, n + 1)])
    assert arr.is_independent(t1)
    for s in t1 + t2:
        assert arr.is_independent(set(t2) | {s})


def test_components_stable_under_relabelling():
    arr = braid3_plus_line()
    perm = [3, 1, 0, 2]
    shuffled = Arrangement(arr.ambient_dim, tuple(arr.labels[i] for i in perm),
                           tuple(arr.normals[i] for i in perm))

    def named(a):
        return sorted(sorted(a.labels[i] for i in comp) for comp in a.connected_components())

    assert named(shuffled) == named(arr)
