"""Bounds on topological complexity, assembled into a report with certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .arrangement import Arrangement, braid
from .os_algebra import Parity, format_monomial
from .tensor_square import DEFAULT_BUDGET, CupLength, verify_certificate, zd_cup_length

RANK_BOUND = "rank bound: TC <= 2r for the complement of a central complex arrangement of rank r"
PRODUCT_BOUND = "product bound: TC <= 2r - k + 1 when the arrangement splits into k irreducible factors"
DIMENSION_BOUND = "dimension/connectivity bound: TC < (2 dim + 1)/(c + 1) + 1 for a c-connected complex"
CUP_LENGTH_BOUND = "zero-divisor cup-length bound: TC >= (longest nonzero product of zero-divisors) + 1"


class ReportError(ValueError):
    pass


@dataclass
class Bound:
    value: int
    provenance: str

    def to_json(self):
        return {"value": self.value, "provenance": self.provenance}


@dataclass
class TCReport:
    arrangement_id: str
    mode: str
    parity: str
    rank: int
    components: int
    lower: Bound
    upper: Bound
    ground_order: list[str]
    cup_length: dict
    certificates: list[dict] = field(default_factory=list)
    projective_tc: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def lower_bound(self) -> int:
        return self.lower.value

    @property
    def upper_bound(self) -> int:
        return self.upper.value

    @property
    def exact(self) -> int | None:
        return self.lower.value if self.lower.value == self.upper.value else None

    def to_json(self) -> dict:
        return {
            "arrangement_id": self.arrangement_id,
            "mode": self.mode,
            "parity": self.parity,
            "rank": self.rank,
            "components": self.components,
            "lower_bound": self.lower.to_json(),
            "upper_bound": self.upper.to_json(),
            "exact": self.exact,
            "projective_tc": self.projective_tc,
            "cup_length": self.cup_length,
            "certificates": self.certificates,
            "ground_order": self.ground_order,
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def render(self) -> str:
        lines = [f"{self.arrangement_id} ({self.mode}, {self.parity} parity, rank {self.rank})"]
        if self.exact is not None:
            lines.append(f"TC = {self.exact} (exact)")
        else:
            gap = " (conjectural gap)" if any("conjectur" in n for n in self.notes) else ""
            lines.append(f"TC ∈ [{self.lower.value}, {self.upper.value}]{gap}")
        lines.append(f"  lower {self.lower.value}: {self.lower.provenance}")
        lines.append(f"  upper {self.upper.value}: {self.upper.provenance}")
        if self.projective_tc is not None:
            lines.append(f"  projectivized complement: TC = {self.projective_tc}")
        cl = self.cup_length
        lines.append(f"  zero-divisor product of length {cl['length']} over {', '.join(cl['factors'])}")
        for cert in self.certificates:
            w = cert["witness"]
            lines.append(
                f"  certificate T1={{{','.join(cert['T1'])}}} T2={{{','.join(cert['T2'])}}}"
                f" witness {w['coeff']:+d}·({w['left']})⊗({w['right']})"
            )
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines) + "\n"


def upper_bounds(arr: Arrangement) -> Bound:
    """``min(2r, 2r - k + 1)`` over the ``k`` connected components of the matroid."""
    r = arr.rank
    k = len(arr.connected_components())
    if k > 1:
        return Bound(2 * r - k + 1, PRODUCT_BOUND)
    return Bound(2 * r, RANK_BOUND)


def dimension_connectivity_bound(dim: int, conn: int) -> int:
    """Largest integer strictly below ``(2 dim + 1)/(conn + 1) + 1``."""
    if dim < 0 or conn < 0:
        raise ReportError("dimension and connectivity must be non-negative")
    return ceil(Fraction(2 * dim + 1, conn + 1) + 1) - 1


def lower_bound(arr: Arrangement, parity: Parity | str = Parity.ODD,
                budget: int = DEFAULT_BUDGET) -> tuple[Bound, CupLength]:
    cl = zd_cup_length(arr, parity, budget)
    prov = CUP_LENGTH_BOUND
    if not cl.exhaustive:
        prov += " (search budget exhausted: cup-length is a lower estimate)"
    return Bound(cl.length + 1, prov), cl


def _cup_json(arr: Arrangement, cl: CupLength) -> dict:
    w = cl.witness()
    return {
        "length": cl.length,
        "factors": arr.label_list(cl.factors),
        "method": cl.method,
        "exhaustive": cl.exhaustive,
        "witness": None if w is None else {
            "left": format_monomial(arr, w[0]),
            "right": format_monomial(arr, w[1]),
            "coeff": w[2],
        },
    }


def _arrangement_report(arr: Arrangement, mode: str, budget: int) -> TCReport:
    upper = upper_bounds(arr)
    lower, cl = lower_bound(arr, Parity.ODD, budget)
    certs = []
    projective = None
    r = arr.rank
    if cl.certificate is not None:
        if not verify_certificate(arr, cl.certificate):
            raise ReportError("certificate failed re-verification")
        certs.append(cl.certificate.to_json(arr))
        if cl.certificate.size == 2 * r - 1:
            projective = 2 * r - 1
    return TCReport(
        arrangement_id=arr.name or "arrangement",
        mode=mode,
        parity=Parity.ODD.value,
        rank=r,
        components=len(arr.connected_components()),
        lower=lower,
        upper=upper,
        ground_order=list(arr.labels),
        cup_length=_cup_json(arr, cl),
        certificates=certs,
        projective_tc=projective,
    )


def report(mode: str, arr: Arrangement | None = None, budget: int = DEFAULT_BUDGET) -> TCReport:
    """Assemble a report.

    ``mode`` is ``arrangement-odd`` (needs ``arr``), ``config-plane:n`` or
    ``config-space:n:m`` (ordered configurations of ``n`` points in R^m).
    """
    parts = mode.split(":")
    try:
        if parts[0] == "arrangement-odd" and len(parts) == 1:
            if arr is None:
                raise ReportError("arrangement-odd mode needs an arrangement")
            return _arrangement_report(arr, mode, budget)
        if parts[0] == "config-plane" and len(parts) == 2:
            n = int(parts[1])
            return _plane_report(n, budget)
        if parts[0] == "config-space" and len(parts) == 3:
            return _space_report(int(parts[1]), int(parts[2]), budget)
    except ValueError as exc:
        if isinstance(exc, ReportError):
            raise
        raise ReportError(f"bad mode parameters in {mode!r}") from None
    raise ReportError(f"unsupported mode {mode!r}")


def _plane_report(n: int, budget: int) -> TCReport:
    if n < 2:
        raise ReportError("configuration spaces need n >= 2")
    rep = _arrangement_report(braid(n), f"config-plane:{n}", budget)
    rep.arrangement_id = f"C_{n}(R^2)"
    return rep


def _space_report(n: int, m: int, budget: int) -> TCReport:
    if n < 2:
        raise ReportError("configuration spaces need n >= 2")
    if m < 2:
        raise ReportError("the configuration space of points on a line is disconnected")
    if m == 2:
        rep = _plane_report(n, budget)
        rep.mode = f"config-space:{n}:2"
        return rep
    arr = braid(n)
    dim = (m - 1) * (n - 1)
    conn = m - 2
    upper = Bound(dimension_connectivity_bound(dim, conn),
                  f"{DIMENSION_BOUND} (dim {dim}, {conn}-connected)")
    notes = [f"cohomology generators in degree {m - 1}; the braid matroid carries the intersection lattice"]
    if m % 2 == 1:
        parity = Parity.EVEN
        lower, cl = lower_bound(arr, parity, budget)
    else:
        parity = Parity.ODD
        lower, cl = lower_bound(arr, parity, budget)
        notes.append("conjectural gap: for even m the value is 2n-2 or 2n-1; only the bracket is certified")
    certs = [cl.certificate.to_json(arr)] if cl.certificate is not None else []
    return TCReport(
        arrangement_id=f"C_{n}(R^{m})",
        mode=f"config-space:{n}:{m}",
        parity=parity.value,
        rank=arr.rank,
        components=len(arr.connected_components()),
        lower=lower,
        upper=upper,
        ground_order=list(arr.labels),
        cup_length=_cup_json(arr, cl),
        certificates=certs,
        notes=notes,
    )
