"""Pairing dimensions between tangle components and the knot Floer homology of
(2, 2t+1)-cables, computed three independent ways.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .segments import SegmentDecomposition, check_decomposition, tau_of

THEORIES = ("HF", "Kh")


class AnalysisError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two routes to the same number disagree; this is an implementation bug."""


@dataclass(frozen=True)
class CurveDescriptor:
    kind: str  # "r", "s" or "sbar"
    param: int

    def __post_init__(self):
        if self.kind not in ("r", "s", "sbar"):
            raise AnalysisError(f"unknown curve kind {self.kind!r}")
        if self.kind != "r" and (self.param <= 0 or self.param % 2):
            raise AnalysisError(f"{self.kind}-curve length must be even and positive, got {self.param}")

    def __str__(self):
        return f"{self.kind}[{self.param}]"


_DESCRIPTOR = re.compile(r"^\s*(r|s|sbar)\s*\[\s*(-?\d+)\s*\]\s*$")


def parse_descriptor(text: str) -> CurveDescriptor:
    """Read ``r[7]``, ``s[2]`` or ``sbar[4]``."""
    m = _DESCRIPTOR.match(text)
    if not m:
        raise AnalysisError(f"cannot read curve descriptor {text!r}; expected e.g. r[7] or s[2]")
    return CurveDescriptor(m.group(1), int(m.group(2)))


def floer_dim(theory: str, left, right) -> int:
    """Dimension of the Lagrangian Floer homology of two curves in the 4-punctured sphere."""
    if theory not in THEORIES:
        raise AnalysisError(f"unknown theory {theory!r}; choose HF or Kh")
    left = parse_descriptor(left) if isinstance(left, str) else left
    right = parse_descriptor(right) if isinstance(right, str) else right
    if left.kind != "r":
        left, right = right, left
    if left.kind != "r":
        raise AnalysisError(f"unsupported pairing {left} with {right}: one curve must be rational")
    if right.kind == "r":
        if left.param != right.param:
            return 2 * abs(left.param - right.param)
        return 4 if theory == "Kh" else 2
    if right.kind == "sbar" and theory == "Kh":
        raise AnalysisError("unsupported pairing: sbar-curves are not covered in Khovanov theory")
    return 2 * right.param


def _torsion(dec: SegmentDecomposition) -> list[int]:
    return dec.torsion_orders()


def _pairing_route(dec: SegmentDecomposition, t: int) -> int:
    from .curves import fast_double

    rational = CurveDescriptor("r", 2 * t + 1)
    total = 0
    for comp in fast_double(dec.ungraded()):
        total += floer_dim("HF", rational, CurveDescriptor(comp.kind, comp.param))
    if total % 2:
        raise ConsistencyError(f"pairing total {total} is odd")
    return total // 2


def _closed_form(dec: SegmentDecomposition, t: int) -> int:
    d = len(dec)
    ls = _torsion(dec)
    mean = Fraction(sum(ls), len(ls)) if ls else Fraction(0)
    value = 2 * (d - 1) * mean + abs(2 * t + 1 - 4 * tau_of(dec))
    if value.denominator != 1:
        raise ConsistencyError(f"closed form gave the non-integer {value}")
    return int(value)


def cable_segment_counts(dec: SegmentDecomposition, t: int) -> dict:
    """Number of segments of the cable contributed by each segment of the knot."""
    check_decomposition(dec)
    tau = tau_of(dec)
    per_segment = []
    for seg in dec:
        if seg.kind == "d":
            # floor(|(2t+1)/2 - 2 tau|) pairs u_1, v_1 plus one segment
            n = 1 + 2 * int(abs(Fraction(2 * t + 1, 2) - 2 * tau))
        else:
            n = 2 * seg.param
        per_segment.append((seg.ungraded().render(), n))
    total = sum(n for _, n in per_segment)
    closed = _closed_form(dec, t)
    if total != closed:
        raise ConsistencyError(f"segment count {total} disagrees with the closed form {closed}")
    return {"per_segment": per_segment, "total": total}


def cable_hfk_dim(dec: SegmentDecomposition, t: int) -> int:
    check_decomposition(dec)
    pairing = _pairing_route(dec, t)
    closed = _closed_form(dec, t)
    if pairing != closed:
        raise ConsistencyError(f"pairing route gives {pairing}, closed form gives {closed}")
    return pairing


def cable_bounds(d: int, l_max: int, tau: int, t: int) -> tuple[int, int]:
    if d < 1:
        raise AnalysisError("d must be at least 1")
    return 2 * d - 1, 2 * (d - 1) * l_max + abs(2 * t + 1 - 4 * tau)


def khovanov_cable_lower_bound(d: int, theta2: int, t: int) -> int:
    if d < 1:
        raise AnalysisError("d must be at least 1")
    return 2 * d * d - 2 + abs(2 * t + 1 - 2 * theta2)


def cable_summary(dec: SegmentDecomposition, t: int) -> dict:
    """Dimension, bounds and the segment-count cross-check for one cable."""
    dim = cable_hfk_dim(dec, t)
    counts = cable_segment_counts(dec, t)
    if counts["total"] != dim:
        raise ConsistencyError(f"segment count {counts['total']} disagrees with dimension {dim}")
    lower, upper = cable_bounds(len(dec), max(_torsion(dec), default=1), tau_of(dec), t)
    return {"dim": dim, "lower": lower, "upper": upper, "segment_counts": counts}
