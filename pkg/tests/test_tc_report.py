from __future__ import annotations

import json
from fractions import Fraction

import pytest

from tcarrange.arrangement import Arrangement, braid, generic, subarrangement
from tcarrange.os_algebra import Parity
from tcarrange.tc_report import (ReportError, dimension_connectivity_bound, lower_bound, report,
                                 upper_bounds)
from tcarrange.tensor_square import bar_product_direct, find_certificate
from tcarrange.os_algebra import OrlikSolomon

from helpers import braid3_plus_line


def single():
    return Arrangement(1, ("H",), ((Fraction(1),),), name="single")


def test_upper_bound_examples():
    assert upper_bounds(braid(3)).value == 4
    ub = upper_bounds(braid3_plus_line())
    assert ub.value == 5 and "product" in ub.provenance
    assert upper_bounds(single()).value == 2


@pytest.mark.parametrize("dim,conn,expected", [(2, 1, 3), (5, 0, 11), (0, 0, 1)])
def test_dimension_connectivity_examples(dim, conn, expected):
    assert dimension_connectivity_bound(dim, conn) == expected


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_dimension_bound_for_spatial_configurations(n):
    assert dimension_connectivity_bound(2 * (n - 1), 1) == 2 * n - 1


def test_dimension_bound_rejects_negative():
    with pytest.raises(ReportError):
        dimension_connectivity_bound(-1, 0)


def test_lower_bound_examples():
    assert lower_bound(braid(3), Parity.ODD)[0].value == 4
    assert lower_bound(single(), Parity.ODD)[0].value == 2
    for n in range(2, 6):
        assert lower_bound(braid(n), Parity.EVEN)[0].value == 2 * n - 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_config_plane(n):
    rep = report(f"config-plane:{n}")
    assert rep.exact == 2 * n - 2
    assert rep.projective_tc == 2 * n - 3
    assert len(rep.certificates) == 1 and len(rep.certificates[0]["subset"]) == 2 * n - 3


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_config_space_odd_m(n):
    rep = report(f"config-space:{n}:3")
    assert rep.exact == 2 * n - 1 and rep.parity == "even"


def test_config_space_even_m_is_bracket():
    rep = report("config-space:4:4")
    assert (rep.lower_bound, rep.upper_bound, rep.exact) == (6, 7, None)
    assert "TC ∈ [6, 7] (conjectural gap)" in rep.render()


def test_config_space_m2_matches_plane():
    assert report("config-space:4:2").exact == report("config-plane:4").exact


@pytest.mark.parametrize("mode", ["config-space:3:1", "config-plane:1", "config-plane:x", "torus:3", "arrangement-odd"])
def test_bad_modes(mode):
    with pytest.raises(ReportError):
        report(mode)


@pytest.mark.parametrize("r,seed", [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2)])
def test_generic_exact(r, seed):
    rep = report("arrangement-odd", generic(r, 2 * r - 1, seed))
    assert rep.exact == 2 * r and rep.projective_tc == 2 * r - 1


def test_product_arrangement_bracket():
    rep = report("arrangement-odd", braid3_plus_line())
    assert rep.upper_bound == 5 and rep.lower_bound == 5 and rep.exact == 5
    assert rep.projective_tc is None


def test_certificate_implies_exact():
    for arr in (braid(3), braid(4), generic(3, 5, 1), generic(2, 4, 0)):
        cert = find_certificate(arr)
        if cert is not None and cert.size == 2 * arr.rank - 1:
            rep = report("arrangement-odd", arr)
            assert rep.lower_bound == rep.upper_bound == 2 * arr.rank


def test_report_deterministic_bytes():
    a = report("arrangement-odd", braid(4)).dumps()
    b = report("arrangement-odd", braid(4)).dumps()
    assert a == b
    doc = json.loads(a)
    assert doc["ground_order"] == list(braid(4).labels)
    assert doc["lower_bound"]["provenance"] and doc["upper_bound"]["provenance"]


def test_deleting_hyperplane_does_not_grow_witness():
    big = braid(4)
    cert = find_certificate(braid(3))
    # braid:3 sits inside braid:4 on the first three labels H12, H13, H23
    sub = subarrangement(big, big.indices(["H12", "H13", "H23"]))
    small = OrlikSolomon(sub, Parity.ODD)
    full = OrlikSolomon(big, Parity.ODD)
    idx_big = big.indices([braid(3).labels[s] for s in cert.subset])
    assert not bar_product_direct(full, idx_big).is_zero()
    assert not bar_product_direct(small, cert.subset).is_zero()
    assert report("arrangement-odd", sub).lower_bound <= report("arrangement-odd", big).lower_bound
