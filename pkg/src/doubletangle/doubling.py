"""The doubling bimodule Y and the box tensor product CFD(X_K) ⊠ Y.

Y is a type AD bimodule with left algebra A and right algebra B.  An action
``(y, alpha, eta, y2)`` reads: feeding the A-element ``alpha`` into ``y``
outputs ``eta (x) y2``.  ``alpha=None`` marks the input-free part of the
differential; ``eta="1"`` is the identity of the right idempotent.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .algebra import PECULIAR, TORUS
from .complex import (
    ComplexError, Generator, TypeDComplex, cancel_identity_arrows, connected_components,
    disjoint_union, doubled, validate,
)
from .curves import Multicurve, recognize
from .ingest import cfd_document
from .segments import curve_dimension

# generator -> (left vertex in A, right vertex in B)
GENERATORS = {
    "c": ("dot", "c"), "a": ("dot", "a"), "b": ("dot", "b"), "b'": ("dot", "b"),
    "B": ("circ", "b"), "D": ("circ", "d"), "B'": ("circ", "b"), "D'": ("circ", "d"),
}

ACTIONS = (
    ("c", "s1", "p3", "B"),
    ("b", "s1", "1", "B'"),
    ("c", None, "q214", "b"),
    ("a", None, "q2", "b'"),
    ("D", None, "q21", "B"),
    ("D'", None, "q21", "B'"),
    ("a", "s3", "p1", "D"),
    ("b'", "s3", "p12", "D'"),
    ("B", "s23", "p12", "D"),
    ("B'", "s23", "p12", "D'"),
    ("B", "s2", "p2", "a"),
    ("B'", "s2", "1", "b'"),
    ("c", "s12", "p23", "a"),
    ("c", "s12", "q14", "a"),
    ("b", "s12", "1", "b'"),
    ("c", "s123", "p123", "D"),
    ("b", "s123", "p12", "D'"),
    ("c", "s1", "q4", "D'"),
    ("D'", "s2", "q1", "a"),
)


class DoublingError(ValueError):
    def __init__(self, stage: str, msg: str):
        super().__init__(f"[{stage}] {msg}")
        self.stage = stage


def _output(y: str, eta: str) -> str:
    return PECULIAR.idempotent_of(GENERATORS[y][1]) if eta == "1" else eta


def bimodule_problems() -> list[str]:
    problems = []
    for y, alpha, eta, y2 in ACTIONS:
        (l1, r1), (l2, r2) = GENERATORS[y], GENERATORS[y2]
        if alpha is None:
            if l1 != l2:
                problems.append(f"{(y, alpha, eta, y2)}: input-free action changes the left idempotent")
        elif TORUS.endpoints(alpha) != (l1, l2):
            problems.append(f"{(y, alpha, eta, y2)}: input runs {TORUS.endpoints(alpha)}, expected {(l1, l2)}")
        out = _output(y, eta)
        if not PECULIAR.is_basis(out) or PECULIAR.endpoints(out) != (r1, r2):
            problems.append(f"{(y, alpha, eta, y2)}: output does not run {r1}->{r2}")
    return problems


_problems = bimodule_problems()
if _problems:
    raise RuntimeError("doubling bimodule is malformed: " + "; ".join(_problems))

_FREE = [(y, _output(y, eta), y2) for y, alpha, eta, y2 in ACTIONS if alpha is None]
_BY_INPUT: dict[str, list[tuple[str, str, str]]] = {}
for _y, _alpha, _eta, _y2 in ACTIONS:
    if _alpha is not None:
        _BY_INPUT.setdefault(_alpha, []).append((_y, _output(_y, _eta), _y2))


def pair_name(x: str, y: str) -> str:
    return f"{x}⊗{y}"


@dataclass
class BoxProduct:
    complex: TypeDComplex
    pairs: dict[str, tuple[str, str]]
    source: TypeDComplex


def box_tensor(cfd: TypeDComplex) -> BoxProduct:
    if cfd.algebra.name != "A":
        raise DoublingError("box", "input must be a complex over the torus algebra")
    problems = validate(cfd)
    if problems:
        raise DoublingError("box", "invalid input complex: " + "; ".join(problems[:3]))
    for s, t, b in cfd.arrows():
        if TORUS.is_idempotent(b):
            raise DoublingError("box", f"arrow {s} -> {t} is labelled by an idempotent; reduce the input first")
    out = TypeDComplex("B")
    pairs = {}
    for x, gx in cfd.generators.items():
        for y, (left, right) in GENERATORS.items():
            if left == gx.idem:
                name = pair_name(x, y)
                out.add_generator(Generator(name, right))
                pairs[name] = (x, y)
    for x, gx in cfd.generators.items():
        for y, eta, y2 in _FREE:
            if GENERATORS[y][0] == gx.idem:
                out.add_arrow(pair_name(x, y), pair_name(x, y2), eta)
    for s, t, alpha in cfd.arrows():
        for y, eta, y2 in _BY_INPUT.get(alpha, ()):
            out.add_arrow(pair_name(s, y), pair_name(t, y2), eta)
    return BoxProduct(out, pairs, cfd)


def seed_and_propagate_gradings(p: BoxProduct) -> TypeDComplex:
    """Grade the box product from the bullet gradings of the input."""
    c = p.complex.copy()
    # propagate doubled (integer) gradings
    known: dict[str, tuple[int, int, int]] = {}
    for name, (x, y) in p.pairs.items():
        g = p.source.generators[x].grading
        if p.source.generators[x].idem != "dot" or y not in ("a", "c"):
            continue
        if g is None:
            raise DoublingError("grading", f"bullet {x} carries no grading")
        m, n = doubled(g)
        known[name] = (m + n if y == "a" else m - n, 2 * n, 2 * n)
    adj: dict[str, list[tuple[str, str, bool]]] = {n: [] for n in c.generators}
    for s, t, b in c.arrows():
        adj[s].append((t, b, True))
        adj[t].append((s, b, False))
    queue = deque(sorted(known))
    while queue:
        x = queue.popleft()
        gx = known[x]
        for y, b, forward in adj[x]:
            gl = PECULIAR.doubled_grading(b)
            if forward:
                # x -> y labelled b: delta(y) = delta(x) + 1 - delta(b), A(y) = A(x) - A(b)
                gy = (gx[0] + 2 - gl[0], gx[1] - gl[1], gx[2] - gl[2])
            else:
                gy = (gx[0] - 2 + gl[0], gx[1] + gl[1], gx[2] + gl[2])
            if y in known:
                if known[y] != gy:
                    raise DoublingError(
                        "grading", f"inconsistent input gradings at {y}: "
                        f"{_halves(known[y])} versus {_halves(gy)}"
                    )
            else:
                known[y] = gy
                queue.append(y)
    missing = sorted(set(c.generators) - set(known))
    if missing:
        raise DoublingError("grading", f"disconnected seed: no grading reaches {missing[:5]}")
    c.generators = {n: Generator(n, g.idem, _halves(known[n])) for n, g in c.generators.items()}
    return c


def _halves(g: tuple[int, ...]) -> tuple[Fraction, ...]:
    return tuple(Fraction(x, 2) for x in g)


def expand_local_systems(cfd: TypeDComplex) -> TypeDComplex:
    """Replace each curve of local-system dimension n by n parallel copies."""
    if not cfd.local_dims:
        return cfd
    parts, prefixes = [], []
    for i, comp in enumerate(connected_components(cfd)):
        n = curve_dimension(comp)
        comp = comp.copy()
        comp.local_dims = {}
        for k in range(n):
            parts.append(comp)
            prefixes.append(f"{i}.{k}:")
    return disjoint_union(parts, prefixes)


def reduced_product(cfd: TypeDComplex, trace: dict | None = None) -> TypeDComplex:
    """Box product, graded when the input is, with identity arrows cancelled.

    If ``trace`` is a dict it receives the intermediate complexes under the
    keys "box", "graded" and "reduced".
    """
    trace = {} if trace is None else trace
    cfd = expand_local_systems(cfd)
    p = box_tensor(cfd)
    trace["box"] = p.complex
    c = seed_and_propagate_gradings(p) if cfd.is_graded() else p.complex
    trace["graded"] = c
    problems = validate(c)
    if problems:
        raise DoublingError("box", "output is not a valid graded complex: " + "; ".join(problems[:3]))
    try:
        trace["reduced"] = cancel_identity_arrows(c, check=False)
    except ComplexError as exc:
        raise DoublingError("cancel", str(exc)) from None
    return trace["reduced"]


def double_via_oracle(inp, trace: dict | None = None) -> Multicurve:
    """Box tensor, grade, reduce, split and recognise; ``trace`` as in :func:`reduced_product`."""
    if inp.tier != "cfd":
        raise DoublingError("input", "the oracle needs a cfd-tier input")
    reduced = reduced_product(inp.payload, trace)
    comps = []
    for piece in connected_components(reduced):
        try:
            comps.append(recognize(piece))
        except ValueError as exc:
            raise DoublingError("recognize", str(exc)) from None
    return Multicurve(comps, graded=inp.payload.is_graded())


def dump_box_product(p: BoxProduct) -> str:
    """The box product in the cfd JSON layout, for debugging."""
    doc = {"name": "box product", "tier": "cfd", "algebra": "B"}
    doc.update(cfd_document(p.complex))
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
