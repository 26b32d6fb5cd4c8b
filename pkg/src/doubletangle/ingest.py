"""Reading knot data: full CFD complexes, segment lists, or HFK^- torsion data.

Documents are single JSON objects.  Half-integers are written as strings
such as ``"3/2"`` (plain integers are also accepted).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import TORUS
from .complex import Generator, TypeDComplex, validate
from .segments import CurveSegment, SegmentDecomposition, fmt_rational

TIERS = ("cfd", "segments", "hfk_minus")


class IngestError(ValueError):
    """Malformed input document.  ``kind`` is "syntax" or "semantic"."""

    def __init__(self, msg: str, kind: str = "semantic", line: int | None = None, col: int | None = None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(f"{kind} error{where}: {msg}")
        self.kind = kind
        self.line = line
        self.col = col


@dataclass(frozen=True)
class HfkMinusData:
    tau: int
    torsion_orders: tuple[int, ...]

    def __post_init__(self):
        if any(l <= 0 for l in self.torsion_orders):
            raise IngestError("torsion orders must be positive")
        object.__setattr__(self, "torsion_orders", tuple(sorted(self.torsion_orders)))


@dataclass
class KnotInput:
    name: str
    tier: str
    payload: object

    def __eq__(self, other):
        if not isinstance(other, KnotInput):
            return NotImplemented
        return (self.name, self.tier, self.payload) == (other.name, other.tier, other.payload)


# -- parsing ------------------------------------------------------------------


def _rational(value, what: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise IngestError(f"{what}: expected an integer or a \"p/q\" string, got {value!r}")
    try:
        f = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise IngestError(f"{what}: cannot read {value!r} as a rational", "syntax") from None
    if f.denominator not in (1, 2):
        raise IngestError(f"{what}: {value!r} is not a half-integer")
    return f


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise IngestError(f"{what}: expected an integer, got {value!r}")
    return value


def _need(obj: dict, key: str, what: str):
    if key not in obj:
        raise IngestError(f"{what}: missing key {key!r}")
    return obj[key]


def f2_rank(rows: list[list[int]]) -> int:
    rows = [int("".join(str(v & 1) for v in r) or "0", 2) for r in rows]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if pivot == 0:
            break
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if r >> top & 1 else r for r in rows]
    return rank


def _matrix_dim(m, what: str) -> int:
    if not isinstance(m, list) or not m or any(not isinstance(r, list) or len(r) != len(m) for r in m):
        raise IngestError(f"{what}: local system matrix must be a non-empty square list of lists")
    if any(v not in (0, 1) for r in m for v in r):
        raise IngestError(f"{what}: matrix entries must be 0 or 1")
    if f2_rank(m) != len(m):
        raise IngestError(f"{what}: local system matrix is not invertible over F_2")
    return len(m)


def _parse_cfd(doc: dict) -> TypeDComplex:
    c = TypeDComplex("A")
    for i, g in enumerate(_need(doc, "generators", "cfd")):
        what = f"generator #{i}"
        gid = _need(g, "id", what)
        idem = _need(g, "idem", what)
        if idem not in TORUS.vertices:
            raise IngestError(f"{what}: unknown idempotent {idem!r}")
        grading = None
        if "delta" in g or "alex" in g:
            grading = (_rational(_need(g, "delta", what), what), _rational(_need(g, "alex", what), what))
        try:
            c.add_generator(Generator(str(gid), idem, grading))
        except ValueError as exc:
            raise IngestError(f"{what}: {exc}") from None
    for i, a in enumerate(_need(doc, "arrows", "cfd")):
        src, tgt = _need(a, "from", f"arrow #{i}"), _need(a, "to", f"arrow #{i}")
        what = f"arrow #{i} {src}->{tgt}"
        labels = _need(a, "labels", what)
        if not isinstance(labels, list) or not labels:
            raise IngestError(f"{what}: labels must be a non-empty list")
        for lab in labels:
            if not isinstance(lab, str) or not TORUS.is_basis(lab):
                raise IngestError(f"{what}: unknown label {lab!r}", "syntax")
        if src not in c.generators or tgt not in c.generators:
            raise IngestError(f"{what}: endpoint is not a declared generator")
        for lab in labels:
            c.add_arrow(src, tgt, lab)
        dim = 1
        if "dim" in a:
            dim = _int(a["dim"], what)
            if dim < 1:
                raise IngestError(f"{what}: local system dimension must be positive")
        if "matrix" in a:
            mdim = _matrix_dim(a["matrix"], what)
            if "dim" in a and mdim != dim:
                raise IngestError(f"{what}: dim {dim} disagrees with a {mdim}x{mdim} matrix")
            dim = mdim
        if dim != 1:
            c.local_dims[(src, tgt)] = dim
    problems = validate(c)
    if problems:
        raise IngestError("; ".join(problems))
    return c


def _parse_segments(doc: dict) -> SegmentDecomposition:
    segs = []
    for i, s in enumerate(_need(doc, "segments", "segments")):
        what = f"segment #{i}"
        kind = _need(s, "kind", what)
        if kind not in ("u", "v", "d"):
            raise IngestError(f"{what}: unknown kind {kind!r}", "syntax")
        param = _int(_need(s, "param", what), what)
        shift = None
        if "delta" in s or "alex" in s:
            shift = (_rational(_need(s, "delta", what), what), _rational(_need(s, "alex", what), what))
        if kind == "d" and shift is not None and any(shift):
            raise IngestError(f"{what}: d-segments require delta = alex = 0")
        try:
            segs.append(CurveSegment(kind, param, shift))
        except ValueError as exc:
            raise IngestError(f"{what}: {exc}") from None
    graded = bool(segs) and all(s.graded for s in segs)
    if any(s.graded for s in segs if s.kind != "d") and not graded:
        raise IngestError("either every segment carries a grading or none does")
    return SegmentDecomposition(segs, graded=graded)


def _parse_hfk(doc: dict) -> HfkMinusData:
    tau = _int(_need(doc, "tau", "hfk_minus"), "tau")
    torsion = _need(doc, "torsion", "hfk_minus")
    if not isinstance(torsion, list):
        raise IngestError("torsion must be a list of positive integers")
    return HfkMinusData(tau, tuple(_int(l, "torsion") for l in torsion))


def parse(text: str | bytes) -> KnotInput:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestError(f"input is not UTF-8: {exc}", "syntax") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError(exc.msg, "syntax", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise IngestError("top level must be a JSON object", "syntax")
    name = str(doc.get("name", "unnamed"))
    tier = _need(doc, "tier", "document")
    if tier == "cfd":
        payload = _parse_cfd(doc)
    elif tier == "segments":
        payload = _parse_segments(doc)
    elif tier == "hfk_minus":
        payload = _parse_hfk(doc)
    else:
        raise IngestError(f"unknown tier {tier!r}", "syntax")
    return KnotInput(name, tier, payload)


# -- rendering ----------------------------------------------------------------


def cfd_document(c: TypeDComplex) -> dict:
    gens = []
    for g in c.generators.values():
        d = {"id": g.name, "idem": g.idem}
        if g.grading is not None:
            for key, v in zip(("delta", "alex", "alex2"), g.grading):
                d[key] = fmt_rational(v)
        gens.append(d)
    arrows = []
    for (s, t) in sorted(c.diff):
        a = {"from": s, "to": t, "labels": sorted(c.diff[(s, t)])}
        if c.local_dims.get((s, t), 1) != 1:
            a["dim"] = c.local_dims[(s, t)]
        arrows.append(a)
    return {"generators": gens, "arrows": arrows}


def segments_document(dec: SegmentDecomposition) -> dict:
    out = []
    for s in dec:
        d = {"kind": s.kind, "param": s.param}
        if dec.graded:
            r, a = s.shift if s.shift is not None else (0, 0)
            d.update(delta=fmt_rational(r), alex=fmt_rational(a))
        out.append(d)
    return {"segments": out}


def to_document(inp: KnotInput) -> dict:
    doc = {"name": inp.name, "tier": inp.tier}
    if inp.tier == "cfd":
        doc.update(cfd_document(inp.payload))
    elif inp.tier == "segments":
        doc.update(segments_document(inp.payload))
    else:
        doc.update(tau=inp.payload.tau, torsion=list(inp.payload.torsion_orders))
    return doc


def render(inp: KnotInput) -> str:
    return json.dumps(to_document(inp), indent=2, ensure_ascii=False) + "\n"


# -- built-in knots -------------------------------------------------------------


def _cfd(gens, arrows) -> TypeDComplex:
    c = TypeDComplex("A")
    for name, grading in gens:
        idem = "dot" if grading is not None else "circ"
        if grading is not None:
            grading = tuple(Fraction(x) for x in grading)
        c.add_generator(Generator(name, idem, grading))
    for s, t, lab in arrows:
        c.add_arrow(s, t, lab)
    return c


def _unknot() -> TypeDComplex:
    return _cfd([("x", (0, 0))], [("x", "x", "s12")])


def _trefoil() -> TypeDComplex:
    return _cfd(
        [("x1", (1, 1)), ("x3", (1, 0)), ("x5", (1, -1)),
         ("c1", None), ("c2", None), ("c3", None), ("c4", None)],
        [("x1", "c1", "s1"), ("c2", "x1", "s2"), ("x3", "c2", "s3"), ("x3", "c3", "s1"),
         ("c4", "c1", "s23"), ("x5", "c4", "s3"), ("x5", "c3", "s123")],
    )


def _segs(items) -> SegmentDecomposition:
    segs = []
    for kind, param, *shift in items:
        segs.append(CurveSegment(kind, param, tuple(Fraction(x) for x in shift) if shift else (0, 0)))
    return SegmentDecomposition(segs, graded=True)


def _figure8() -> SegmentDecomposition:
    return _segs([
        ("d", 0),
        ("u", 1, "1/2", "1/2"), ("u", 1, "1/2", "-1/2"),
        ("v", 1, "1/2", "-1/2"), ("v", 1, "1/2", "1/2"),
    ])


def _torus_3_4() -> SegmentDecomposition:
    return _segs([
        ("d", 6),
        ("u", 1, "7/2", "5/2"), ("u", 2, 3, -1),
        ("v", 1, "7/2", "-5/2"), ("v", 2, 3, 1),
    ])


BUILTINS = {
    "unknot": ("cfd", _unknot),
    "trefoil": ("cfd", _trefoil),
    "figure8": ("segments", _figure8),
    "torus_3_4": ("segments", _torus_3_4),
}


def builtin_knot(name: str) -> KnotInput:
    try:
        tier, make = BUILTINS[name]
    except KeyError:
        raise IngestError(f"unknown built-in knot {name!r}; choose from {sorted(BUILTINS)}") from None
    return KnotInput(name, tier, make())


def _pairing_complex(i: int) -> TypeDComplex:
    if i == 0:
        return _ungraded([("x", "dot")], [("x", "x", "s12")])
    if i == 1:
        return _ungraded([("x", "dot"), ("o", "circ")], [("x", "o", "s123"), ("o", "x", "s2")])
    if i == -2:
        return _ungraded(
            [("x", "dot"), ("o1", "circ"), ("o2", "circ")],
            [("x", "o1", "s1"), ("x", "o2", "s3"), ("o2", "o1", "s23")],
        )
    raise IngestError(f"no test complex for i = {i}; available: 0, 1, -2")


def _ungraded(gens, arrows) -> TypeDComplex:
    c = TypeDComplex("A", [Generator(n, idem) for n, idem in gens])
    for s, t, lab in arrows:
        c.add_arrow(s, t, lab)
    return c


TEST_PAIRING_INDICES = (0, 1, -2)


def pairing_fixture(i: int) -> KnotInput:
    """Complement of the unknot with framing i, as used in the pairing fixtures."""
    return KnotInput(f"T{i}", "cfd", _pairing_complex(i))
