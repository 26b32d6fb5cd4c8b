"""Components of the tangle invariant over B: templates, recognition, and the
direct segment-to-curve correspondence.

Every template except ``r[0]`` has ``4l + 2`` generators: a top ``T`` and a
bottom ``B`` in idempotent a or c, and two chains of ``2l`` generators in
idempotents b and d.  Going up a chain, each p12 or q21 arrow raises both
Alexander gradings by one.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .complex import Generator, TypeDComplex
from .segments import SegmentDecomposition, check_decomposition, fmt_rational

h = Fraction(1, 2)

KIND_ORDER = {"r": 0, "s": 1, "sbar": 2}


class CurveError(ValueError):
    """A component matched no template, or a multicurve broke the structure theorem."""


@dataclass(frozen=True)
class TangleCurve:
    kind: str
    param: int
    shift: tuple[Fraction, Fraction, Fraction] | None = None
    local_dim: int = 1

    def __post_init__(self):
        if self.kind not in KIND_ORDER:
            raise CurveError(f"unknown curve kind {self.kind!r}")
        if self.param % 2:
            raise CurveError(f"{self.kind}-curve parameter must be even, got {self.param}")
        if self.kind == "r":
            if self.shift is not None and any(self.shift):
                raise CurveError("rational components carry no grading shift")
            object.__setattr__(self, "shift", None)
        elif self.param <= 0:
            raise CurveError(f"{self.kind}-curve length must be positive, got {self.param}")
        if self.shift is not None:
            object.__setattr__(self, "shift", tuple(Fraction(x) for x in self.shift))

    def sort_key(self):
        return (KIND_ORDER[self.kind], self.param, self.shift or ())

    def render(self) -> str:
        head = f"{self.kind}[{self.param}]"
        if self.kind == "r" or self.shift is None:
            return head
        r, a1, a2 = (fmt_rational(x) for x in self.shift)
        return f"{head} d={r} a1={a1} a2={a2}"


@dataclass(frozen=True)
class Multicurve:
    components: tuple[TangleCurve, ...]
    graded: bool

    def __init__(self, components, graded: bool | None = None):
        comps = tuple(sorted(components, key=TangleCurve.sort_key))
        if graded is None:
            graded = bool(comps) and all(c.shift is not None for c in comps if c.kind != "r")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "graded", graded)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def render(self) -> str:
        return "\n".join(c.render() for c in self.components)


def multicurve_problems(m: Multicurve) -> list[str]:
    problems = []
    rs = [c for c in m if c.kind == "r"]
    if len(rs) != 1:
        problems.append(f"expected exactly one rational component, found {len(rs)}")
    s = Counter(c.param for c in m if c.kind == "s")
    sb = Counter(c.param for c in m if c.kind == "sbar")
    for l in sorted(set(s) | set(sb)):
        if s[l] != sb[l]:
            problems.append(f"length {l}: {s[l]} s-components but {sb[l]} sbar-components")
    if m.graded:
        special = [c for c in m if c.kind != "r"]
        if any(c.shift is None for c in special):
            problems.append("graded multicurve contains ungraded components")
        else:
            for c in special:
                if c.shift[1] != c.shift[2]:
                    problems.append(f"{c.render()}: Alexander shifts differ")
            gs = Counter((c.param,) + c.shift for c in special if c.kind == "s")
            gb = Counter((c.param, c.shift[0], -c.shift[1], -c.shift[2]) for c in special if c.kind == "sbar")
            if gs != gb:
                diff = (gs - gb) + (gb - gs)
                problems.append(f"graded s/sbar symmetry fails on {sorted(diff)}")
    return problems


def check_multicurve(m: Multicurve) -> Multicurve:
    problems = multicurve_problems(m)
    if problems:
        raise CurveError("; ".join(problems))
    return m


# -- templates ------------------------------------------------------------------

# (top idem, arrows at top, top delta, bottom idem, arrows at bottom, bottom delta, chain delta)
# arrows at the top are (label, direction) with direction relative to T
_ENDS = {
    "s": ("a", (("q1", "in"), ("p2", "in")), 0, "a", (("q2", "out"), ("p1", "out")), -1, -h),
    "sbar": ("c", (("q4", "out"), ("p3", "out")), -1, "c", (("q214", "out"), ("p123", "out")), 0, -h),
    "r-": ("a", (("q1", "in"), ("p2", "in")), 0, "c", (("q214", "out"), ("p123", "out")), 0, -h),
    "r+": ("c", (("q4", "out"), ("p3", "out")), 0, "a", (("q2", "out"), ("p1", "out")), 0, h),
}


def _variant(kind: str, param: int) -> str:
    if kind != "r":
        return kind
    return "r+" if param > 0 else "r-"


def template(kind: str, param: int, shift=None) -> TypeDComplex:
    """Graded complex of a curve component; ``shift=None`` gives an ungraded copy."""
    TangleCurve(kind, param, None)  # validates kind and parameter
    graded = shift is not None
    shift = tuple(Fraction(x) for x in (shift or (0, 0, 0)))

    def gen(name, idem, d, a1, a2):
        g = (d + shift[0], a1 + shift[1], a2 + shift[2]) if graded else None
        return Generator(name, idem, g)

    c = TypeDComplex("B")
    if kind == "r" and param == 0:
        c.add_generator(gen("a", "a", 0, 0, 0))
        c.add_generator(gen("c", "c", 0, 0, 0))
        c.add_arrow("c", "a", "p23")
        c.add_arrow("c", "a", "q14")
        return c
    l = abs(param) // 2
    top_idem, top_arrows, top_d, bot_idem, bot_arrows, bot_d, chain_d = _ENDS[_variant(kind, param)]
    c.add_generator(gen("T", top_idem, top_d, l, l))
    c.add_generator(gen("B", bot_idem, bot_d, -l, -l))
    chains = []
    for j, (first, a0) in enumerate((("b", (-l, 1 - l)), ("d", (1 - l, -l))), start=1):
        names = []
        idem = first
        for i in range(2 * l):
            name = f"h{j}_{i}"
            c.add_generator(gen(name, idem, chain_d, a0[0] + i, a0[1] + i))
            if names:
                c.add_arrow(names[-1], name, "p12" if idem == "d" else "q21")
            names.append(name)
            idem = "d" if idem == "b" else "b"
        chains.append(names)
    for (lab, direction), chain in zip(top_arrows, chains):
        if direction == "in":
            c.add_arrow(chain[-1], "T", lab)
        else:
            c.add_arrow("T", chain[-1], lab)
    for (lab, _), chain in zip(bot_arrows, chains):
        c.add_arrow("B", chain[0], lab)
    return c


# -- recognition --------------------------------------------------------------


def _top_grading(kind: str, param: int) -> tuple[int, int, int]:
    """Unshifted grading of the top generator (generator ``a`` for r[0])."""
    if kind == "r" and param == 0:
        return (0, 0, 0)
    l = abs(param) // 2
    return (_ENDS[_variant(kind, param)][2], l, l)


def _incidence(c: TypeDComplex) -> dict[str, dict[tuple[str, str], str]]:
    """Per generator: (direction, basic label) -> neighbour; raises if a key repeats."""
    out: dict[str, dict[tuple[str, str], str]] = {n: {} for n in c.generators}
    for (s, t), lab in c.diff.items():
        for b in lab:
            for x, key, other in ((s, ("out", b), t), (t, ("in", b), s)):
                if key in out[x]:
                    raise CurveError(f"generator {x} has two {key} arrows")
                out[x][key] = other
    return out


def _isomorphic(c: TypeDComplex, t: TypeDComplex, start_c: str, start_t: str) -> bool:
    """Lockstep traversal matching neighbours by (direction, label), then full comparison."""
    if len(c.generators) != len(t.generators):
        return False
    try:
        inc_c = _incidence(c)
    except CurveError:
        return False
    inc_t = _incidence(t)
    mapping = {start_c: start_t}
    stack = [start_c]
    while stack:
        x = stack.pop()
        ic, it = inc_c[x], inc_t[mapping[x]]
        if ic.keys() != it.keys():
            return False
        for key, y in ic.items():
            ty = it[key]
            if y in mapping:
                if mapping[y] != ty:
                    return False
            else:
                mapping[y] = ty
                stack.append(y)
    if len(mapping) != len(c.generators) or len(set(mapping.values())) != len(mapping):
        return False
    for x, y in mapping.items():
        gx, gy = c.generators[x], t.generators[y]
        if gx.idem != gy.idem or gx.grading != gy.grading:
            return False
    renamed = {(mapping[s], mapping[u]): lab for (s, u), lab in c.diff.items()}
    return renamed == t.diff


def recognize(piece: TypeDComplex) -> TangleCurve:
    """Identify a reduced connected component over B with a template."""
    if piece.algebra.name != "B":
        raise CurveError("recognition needs a complex over the peculiar algebra")
    # a match with a (valid) template also certifies d^2 = 0 and the gradings
    n = len(piece.generators)
    ends = [x for x, g in piece.generators.items() if g.idem in ("a", "c")]
    if len(ends) != 2:
        raise CurveError(f"unrecognized component: {len(ends)} generators in idempotents a and c")
    idems = sorted(piece.generators[x].idem for x in ends)
    if n == 2:
        kind, param = "r", 0
        top = next(x for x in ends if piece.generators[x].idem == "a")
        t_top = "a"
    else:
        if (n - 2) % 4:
            raise CurveError(f"unrecognized component: {n} generators")
        l = (n - 2) // 4
        if idems == ["a", "a"]:
            kind, param = "s", 2 * l
            top = next((x for x in ends if not piece.outgoing(x)), None)
        elif idems == ["c", "c"]:
            kind, param = "sbar", 2 * l
            tops = [x for x in ends if {next(iter(v)) for v in piece.outgoing(x).values()} <= {"q4", "p3"}]
            top = tops[0] if len(tops) == 1 else None
        else:
            a_gen = next(x for x in ends if piece.generators[x].idem == "a")
            c_gen = next(x for x in ends if piece.generators[x].idem == "c")
            if piece.outgoing(a_gen):
                kind, param, top = "r", 2 * l, c_gen
            else:
                kind, param, top = "r", -2 * l, a_gen
        if top is None:
            raise CurveError("unrecognized component: cannot locate the top generator")
        t_top = "T"
    shift = None
    g = piece.generators[top].grading
    graded = g is not None
    if graded:
        shift = tuple(x - y for x, y in zip(g, _top_grading(kind, param)))
        if kind == "r" and any(shift):
            raise CurveError(f"rational component r[{param}] with nonzero shift {shift}")
    if not _isomorphic(piece, template(kind, param, shift), top, t_top):
        raise CurveError(f"unrecognized component: does not match the {kind}[{param}] template")
    return TangleCurve(kind, param, shift)


# -- the direct correspondence --------------------------------------------------


def fast_double(dec: SegmentDecomposition) -> Multicurve:
    check_decomposition(dec)
    comps = []
    for seg in dec:
        if seg.kind == "d":
            comps.append(TangleCurve("r", 2 * seg.param))
            continue
        shift = None
        if dec.graded:
            r, s = seg.shift
            shift = (r + s, 2 * s, 2 * s) if seg.kind == "u" else (r - s, 2 * s, 2 * s)
        comps.append(TangleCurve("s" if seg.kind == "u" else "sbar", 2 * seg.param, shift))
    return check_multicurve(Multicurve(comps, graded=dec.graded))


@dataclass(frozen=True)
class Verdict:
    fast: Multicurve
    oracle: Multicurve

    @property
    def equal(self) -> bool:
        return self.fast == self.oracle

    def diff(self) -> list[str]:
        f, o = Counter(self.fast.components), Counter(self.oracle.components)
        out = [f"- fast only: {c.render()}" for c in sorted(f - o, key=TangleCurve.sort_key)]
        out += [f"+ oracle only: {c.render()}" for c in sorted(o - f, key=TangleCurve.sort_key)]
        if self.fast.graded != self.oracle.graded:
            out.append(f"graded: fast {self.fast.graded}, oracle {self.oracle.graded}")
        return out

    def render(self) -> str:
        return "equal" if self.equal else "differ\n" + "\n".join(self.diff())


def verify_main_theorem(inp) -> Verdict:
    from .doubling import double_via_oracle
    from .segments import decompose

    if inp.tier != "cfd":
        raise CurveError("verification needs a cfd-tier input")
    return Verdict(fast_double(decompose(inp)), double_via_oracle(inp))
