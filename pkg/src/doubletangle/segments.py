"""Curve segments of a knot complement: splitting a loop-type complex over A at
its bullet generators and classifying the pieces as u_l, v_l or d_k.

Every segment has a left end L and a right end R, both bullets, joined by a
chain of circle generators linked by s23 arrows that run from the L side
towards the R side.  The unshifted gradings of L and R (the anchors) are
produced by :func:`anchors`; a shift ``(r, s)`` is added to both.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .complex import (
    Generator, TypeDComplex, connected_components, require_valid,
)

h = Fraction(1, 2)

KIND_ORDER = {"d": 0, "u": 1, "v": 2}


class SegmentError(ValueError):
    """A piece did not match any template, or the structure theorem failed."""


def as_rational(x) -> Fraction:
    f = Fraction(x)
    if f.denominator not in (1, 2):
        raise ValueError(f"{x!r} is not a half-integer")
    return f


def fmt_rational(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class CurveSegment:
    kind: str
    param: int
    shift: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        if self.kind not in KIND_ORDER:
            raise SegmentError(f"unknown segment kind {self.kind!r}")
        if self.kind == "d":
            if self.param % 2:
                raise SegmentError(f"d-segment slope must be even, got {self.param}")
            if self.shift is not None and any(self.shift):
                raise SegmentError("d-segments carry no grading shift")
        elif self.param <= 0:
            raise SegmentError(f"{self.kind}-segment length must be positive, got {self.param}")
        if self.shift is not None:
            object.__setattr__(self, "shift", tuple(as_rational(x) for x in self.shift))

    @property
    def graded(self) -> bool:
        return self.shift is not None

    def sort_key(self):
        return (KIND_ORDER[self.kind], self.param, self.shift or ())

    def render(self) -> str:
        head = f"{self.kind}[{self.param}]"
        if self.kind == "d" or self.shift is None:
            return head
        r, s = self.shift
        return f"{head} d={fmt_rational(r)} a={fmt_rational(s)}"

    def ungraded(self) -> "CurveSegment":
        return CurveSegment(self.kind, self.param)


@dataclass(frozen=True)
class SegmentDecomposition:
    segments: tuple[CurveSegment, ...]
    graded: bool

    def __init__(self, segments, graded: bool | None = None):
        segs = tuple(sorted(segments, key=CurveSegment.sort_key))
        if graded is None:
            graded = bool(segs) and all(s.graded for s in segs)
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "graded", graded)

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def render(self) -> str:
        return "\n".join(s.render() for s in self.segments)

    def ungraded(self) -> "SegmentDecomposition":
        return SegmentDecomposition([s.ungraded() for s in self.segments], graded=False)

    def torsion_orders(self) -> list[int]:
        return sorted(s.param for s in self.segments if s.kind == "u")


def decomposition_problems(dec: SegmentDecomposition) -> list[str]:
    """Check the structure theorem counts; empty list when all hold."""
    problems = []
    ds = [s for s in dec if s.kind == "d"]
    if len(ds) != 1:
        problems.append(f"expected exactly one d-segment, found {len(ds)}")
    us = Counter(s.param for s in dec if s.kind == "u")
    vs = Counter(s.param for s in dec if s.kind == "v")
    for l in sorted(set(us) | set(vs)):
        if us[l] != vs[l]:
            problems.append(f"length {l}: {us[l]} u-segments but {vs[l]} v-segments")
    if dec.graded:
        if any(not s.graded for s in dec):
            problems.append("graded decomposition contains ungraded segments")
        else:
            gu = Counter((s.param, s.shift[0], s.shift[1]) for s in dec if s.kind == "u")
            gv = Counter((s.param, s.shift[0], -s.shift[1]) for s in dec if s.kind == "v")
            if gu != gv:
                diff = (gu - gv) + (gv - gu)
                problems.append(f"graded u/v symmetry fails on {sorted(diff)}")
    return problems


def check_decomposition(dec: SegmentDecomposition) -> SegmentDecomposition:
    problems = decomposition_problems(dec)
    if problems:
        raise SegmentError("; ".join(problems))
    return dec


def tau_of(dec: SegmentDecomposition) -> int:
    (d,) = [s for s in dec if s.kind == "d"]
    return d.param // 2


# -- templates ----------------------------------------------------------------


def anchors(kind: str, param: int) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Unshifted (delta, A) of the L and R bullets."""
    if kind == "d":
        l = abs(param)
        if param > 0:
            return (l * h, -l * h), (l * h, l * h)
        if param < 0:
            return (-l * h, -l * h), (-l * h, l * h)
        return (Fraction(0), Fraction(0)), (Fraction(0), Fraction(0))
    l = param
    if kind == "u":
        return (l * h - 1, -l * h), (-l * h, l * h)
    return (-l * h, -l * h), (l * h - 1, l * h)


def _end_arrows(kind: str, param: int) -> tuple[tuple[str, str], tuple[str, str]]:
    """(direction, label) of the arrow at L and at R; direction relative to the bullet."""
    if kind == "u":
        return ("out", "s3"), ("in", "s2")
    if kind == "v":
        return ("out", "s123"), ("out", "s1")
    if param > 0:
        return ("out", "s3"), ("out", "s1")
    if param < 0:
        return ("out", "s123"), ("in", "s2")
    return ("in", "s12"), ("out", "s12")


# an end is of type P if its arrow is out s1, s12 or s123, and Q otherwise
END_TYPE = {("out", "s1"): "P", ("out", "s12"): "P", ("out", "s123"): "P",
            ("out", "s3"): "Q", ("in", "s2"): "Q", ("in", "s12"): "Q"}

SIGNATURES = {
    (("out", "s3"), ("in", "s2")): ("u", 1),
    (("out", "s123"), ("out", "s1")): ("v", 1),
    (("out", "s3"), ("out", "s1")): ("d", 1),
    (("out", "s123"), ("in", "s2")): ("d", -1),
}


def segment_template(seg: CurveSegment) -> TypeDComplex:
    """Complex with bullets ``L``, ``R`` and circles ``o1 .. ol`` (L side first)."""
    gl = gr = None
    if seg.shift is not None:
        al, ar = anchors(seg.kind, seg.param)
        gl = (al[0] + seg.shift[0], al[1] + seg.shift[1])
        gr = (ar[0] + seg.shift[0], ar[1] + seg.shift[1])
    c = TypeDComplex("A", [Generator("L", "dot", gl), Generator("R", "dot", gr)])
    if seg.kind == "d" and seg.param == 0:
        c.add_arrow("R", "L", "s12")
        return c
    n = abs(seg.param)
    circles = [f"o{i}" for i in range(1, n + 1)]
    for o in circles:
        c.add_generator(Generator(o, "circ"))
    for a, b in zip(circles, circles[1:]):
        c.add_arrow(a, b, "s23")
    (ld, ll), (rd, rl) = _end_arrows(seg.kind, seg.param)
    c.add_arrow("L", circles[0], ll)
    if rd == "out":
        c.add_arrow("R", circles[-1], rl)
    else:
        c.add_arrow(circles[-1], "R", rl)
    return c


# -- splitting and classification ---------------------------------------------


def curve_dimension(c: TypeDComplex) -> int:
    dims = set(c.local_dims.values()) - {1}
    if len(dims) > 1:
        raise SegmentError(f"conflicting local system dimensions {sorted(dims)} on one curve")
    return dims.pop() if dims else 1


def split_at_bullets(c: TypeDComplex) -> list[TypeDComplex]:
    """Cut at every bullet generator; pieces repeat once per local-system dimension."""
    if c.algebra.name != "A":
        raise SegmentError("splitting needs a complex over the torus algebra")
    for n in c.generators:
        k = c.arrow_ends(n)
        if k != 2:
            raise SegmentError(f"not loop-type: generator {n} has {k} arrow ends")
    pieces = []
    for curve in connected_components(c):
        mult = curve_dimension(curve)
        out = TypeDComplex("A")
        used: dict[str, int] = {}

        def end(x: str) -> str:
            g = curve.generators[x]
            if g.idem != "dot":
                if x not in out.generators:
                    out.add_generator(g)
                return x
            k = used.get(x, 0)
            used[x] = k + 1
            name = f"{x}{'+-'[k]}"
            out.add_generator(Generator(name, "dot", g.grading))
            return name

        for s, t, b in curve.arrows():
            out.add_arrow(end(s), end(t), b)
        for comp in connected_components(out):
            pieces.extend([comp] * mult)
    return pieces


def _bullet_end(piece: TypeDComplex, x: str) -> tuple[str, str]:
    out = piece.outgoing(x)
    inc = piece.incoming(x)
    if len(out) + len(inc) != 1:
        raise SegmentError(f"bullet {x} is not a segment endpoint")
    if out:
        (lab,) = out.values()
        direction = "out"
    else:
        (lab,) = inc.values()
        direction = "in"
    if len(lab) != 1:
        raise SegmentError(f"bullet {x} carries a sum label")
    return direction, next(iter(lab))


def classify_segment(piece: TypeDComplex) -> CurveSegment:
    bullets = [n for n, g in piece.generators.items() if g.idem == "dot"]
    circles = [n for n, g in piece.generators.items() if g.idem == "circ"]
    if len(bullets) != 2:
        raise SegmentError(f"segment must have two bullet ends, found {len(bullets)}")
    ends = {x: _bullet_end(piece, x) for x in bullets}
    if not circles:
        x, y = bullets
        if ends[x] == ("out", "s12") and ends[y] == ("in", "s12"):
            left, right = y, x
        elif ends[y] == ("out", "s12") and ends[x] == ("in", "s12"):
            left, right = x, y
        else:
            raise SegmentError(f"unmatched arrow signature {sorted(ends.values())}")
        kind, param = "d", 0
    else:
        match = None
        for left, right in (bullets, bullets[::-1]):
            key = (ends[left], ends[right])
            if key in SIGNATURES:
                match = SIGNATURES[key]
                break
        if match is None:
            raise SegmentError(f"unmatched arrow signature {sorted(ends.values())}")
        kind, sign = match
        # walk the s23 chain from the L side
        (cur,) = piece.outgoing(left) if ends[left][0] == "out" else ()
        seen = [cur]
        while True:
            nxt = [t for t, lab in piece.outgoing(cur).items() if t in circles]
            if not nxt:
                break
            (t,) = nxt
            if piece.label(cur, t) != frozenset({"s23"}):
                raise SegmentError(f"interior arrow {cur} -> {t} is not s23")
            cur = t
            seen.append(cur)
        if len(seen) != len(circles):
            raise SegmentError("circle generators do not form a single s23 chain")
        rd, _ = ends[right]
        if (rd == "out" and cur not in piece.outgoing(right)) or (rd == "in" and right not in piece.outgoing(cur)):
            raise SegmentError("R end is not attached to the last circle of the chain")
        param = sign * len(seen)
        if kind == "d" and param % 2:
            raise SegmentError(f"d-segment with odd slope {param}")
    gl = piece.generators[left].grading
    gr = piece.generators[right].grading
    if (gl is None) != (gr is None):
        raise SegmentError("only one end of the segment is graded")
    shift = None
    if gl is not None:
        al, ar = anchors(kind, param)
        shift = (gl[0] - al[0], gl[1] - al[1])
        if shift != (gr[0] - ar[0], gr[1] - ar[1]):
            raise SegmentError(
                f"grading mismatch on {kind}[{param}]: ends give shifts {shift} and "
                f"{(gr[0] - ar[0], gr[1] - ar[1])}"
            )
        if kind == "d" and any(shift):
            raise SegmentError(f"d-segment with nonzero shift {shift}")
    return CurveSegment(kind, param, shift)


def decompose(inp) -> SegmentDecomposition:
    """Segment decomposition of any input tier; the structure theorem is checked."""
    tier = inp.tier
    if tier == "cfd":
        c = inp.payload
        require_valid(c)
        pieces = split_at_bullets(c)
        graded = any(g.grading is not None for g in c.generators.values())
        dec = SegmentDecomposition([classify_segment(p) for p in pieces], graded=graded)
    elif tier == "segments":
        dec = inp.payload
    elif tier == "hfk_minus":
        data = inp.payload
        segs = [CurveSegment("d", 2 * data.tau)]
        for l in data.torsion_orders:
            segs += [CurveSegment("u", l), CurveSegment("v", l)]
        dec = SegmentDecomposition(segs, graded=False)
    else:
        raise SegmentError(f"unknown input tier {tier!r}")
    return check_decomposition(dec)


# -- gluing segments into a complex -------------------------------------------


def segment_ends(seg: CurveSegment):
    """[(side, end type, grading or None)] for the L and R ends."""
    al, ar = anchors(seg.kind, seg.param)
    el, er = _end_arrows(seg.kind, seg.param)
    out = []
    for side, anchor, e in (("L", al, el), ("R", ar, er)):
        g = None
        if seg.shift is not None:
            g = (anchor[0] + seg.shift[0], anchor[1] + seg.shift[1])
        out.append((side, END_TYPE[e], g))
    return out


def cfd_from_segments(dec: SegmentDecomposition, rng: random.Random | None = None) -> TypeDComplex:
    """Glue segment templates into a loop-type complex over A.

    Each bullet joins one P end and one Q end of equal grading; the pairing
    among equal gradings is shuffled with ``rng`` (identity order if None).
    """
    p_ends: dict = {}
    q_ends: dict = {}
    for i, seg in enumerate(dec):
        for side, typ, g in segment_ends(seg):
            key = g if dec.graded else None
            (p_ends if typ == "P" else q_ends).setdefault(key, []).append((i, side))
    if set(p_ends) != set(q_ends) or any(len(p_ends[k]) != len(q_ends[k]) for k in p_ends):
        raise SegmentError("segment ends cannot be paired into bullets")
    bullet_of = {}
    grading_of = {}
    n = 0
    for key in sorted(p_ends, key=lambda k: k or ()):
        ps, qs = p_ends[key], list(q_ends[key])
        if rng is not None:
            rng.shuffle(qs)
        for p, q in zip(ps, qs):
            name = f"x{n}"
            n += 1
            bullet_of[p] = bullet_of[q] = name
            grading_of[name] = key
    c = TypeDComplex("A")
    for name in sorted(grading_of, key=lambda s: int(s[1:])):
        c.add_generator(Generator(name, "dot", grading_of[name]))
    for i, seg in enumerate(dec):
        t = segment_template(seg)

        def rename(x, i=i):
            return bullet_of[(i, x)] if x in ("L", "R") else f"o{i}_{x[1:]}"

        for g in t.generators.values():
            if g.idem == "circ":
                c.add_generator(Generator(rename(g.name), "circ"))
        for s, tt, b in t.arrows():
            c.add_arrow(rename(s), rename(tt), b)
    return c


def _box(a: int, b: int, base: tuple[Fraction, Fraction]) -> list[CurveSegment]:
    # loop u_a (L->R), v_b (R->L), u_a (R->L), v_b (L->R) starting at u_a.L = base
    d0, a0 = base
    return [
        CurveSegment("u", a, (d0 + 1 - a * h, a0 + a * h)),
        CurveSegment("u", a, (d0 + 2 - a * h - b, a0 + a * h - b)),
        CurveSegment("v", b, (d0 + 2 - a - b * h, a0 + a - b * h)),
        CurveSegment("v", b, (d0 + 1 - b * h, a0 - b * h)),
    ]


def _staircase(tau: int, steps: list[int]) -> list[CurveSegment]:
    # walk from the P end of d_{2tau} through alternating segments, all R -> L
    segs = [CurveSegment("d", 2 * tau, (0, 0))]
    _, (d, a) = anchors("d", 2 * tau)
    first = "u" if tau >= 0 else "v"
    other = "v" if first == "u" else "u"
    for i, l in enumerate(steps):
        kind = first if i % 2 == 0 else other
        _, ar = anchors(kind, l)
        segs.append(CurveSegment(kind, l, (d - ar[0], a - ar[1])))
        if kind == "u":
            d, a = d + l - 1, a - l
        else:
            d, a = d + 1 - l, a - l
    return segs


def _palindrome(total: int, max_len: int, rng: random.Random) -> list[int]:
    # palindromic composition of 2*total with parts <= max_len and even length
    half = []
    left = total
    while left:
        p = rng.randint(1, min(left, max_len))
        half.append(p)
        left -= p
    return half + half[::-1]


def random_decomposition(
    rng: random.Random, max_len: int = 5, max_segments: int = 21, max_tau: int = 4
) -> SegmentDecomposition:
    """A random graded decomposition obeying the structure theorem and gluable into a loop.

    Built from a symmetric staircase around the d-segment plus closed boxes
    that are either self-conjugate or added in conjugate pairs.
    """
    tau = rng.randint(-max_tau, max_tau)
    steps = _palindrome(abs(tau), max_len, rng)
    while 1 + len(steps) > max_segments:
        steps = _palindrome(abs(tau), max_len, rng)
    segs = _staircase(tau, steps)
    while len(segs) + 4 <= max_segments and rng.random() < 0.7:
        d0 = Fraction(rng.randint(-3, 3))
        if len(segs) + 8 <= max_segments and rng.random() < 0.5:
            a, b = rng.randint(1, max_len), rng.randint(1, max_len)
            a0 = Fraction(rng.randint(-3, 3))
            # conjugate pair: box(a, b) at (d0, a0) with box(b, a) at (d0, -a0)
            segs += _box(a, b, (d0, a0)) + _box(b, a, (d0, -a0))
        else:
            a = rng.randint(1, max_len)
            segs += _box(a, a, (d0, Fraction(0)))
    dec = SegmentDecomposition(segs, graded=True)
    return check_decomposition(dec)
