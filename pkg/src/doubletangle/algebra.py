"""Exact arithmetic in the torus algebra A and the peculiar algebra B over F_2.

Both algebras are path algebras of small quivers modulo monomial relations,
so every basis element is a path and the product of two basis elements is
either another basis element or zero.  Products are read right to left:
``x * y`` means "first y, then x", like composition of morphisms.

Elements are frozensets of basis names (F_2 coefficients); addition is
symmetric difference.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable

Element = frozenset  # frozenset[str]

ZERO: Element = frozenset()


class AlgebraError(ValueError):
    """Raised for malformed algebra elements or mixed-algebra operations."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    delta: Fraction = Fraction(0)
    alex: tuple[int, ...] = ()


@dataclass
class QuiverAlgebra:
    """A finite-dimensional monomial quiver algebra over F_2.

    ``paths`` maps every non-idempotent basis name to its arrows in traversal
    order; ``sigma12 = sigma2 sigma1`` is stored as ``("s1", "s2")``.
    """

    name: str
    idempotents: dict[str, str]  # basis name -> vertex
    arrows: dict[str, Arrow]
    paths: dict[str, tuple[str, ...]]
    relations: tuple[tuple[str, str], ...]  # forbidden consecutive (first, second)
    basis: tuple[str, ...] = field(init=False)
    _by_path: dict[tuple[str, ...], str] = field(init=False, repr=False)
    _table: dict[tuple[str, str], str | None] = field(init=False, repr=False)
    _ends: dict[str, tuple[str, str]] = field(init=False, repr=False)
    _vertex_idem: dict[str, str] = field(init=False, repr=False)
    _gradings: dict[str, tuple[Fraction, ...]] = field(init=False, repr=False)
    _doubled: dict[str, tuple[int, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.basis = tuple(self.idempotents) + tuple(self.paths)
        self._vertex_idem = {v: name for name, v in self.idempotents.items()}
        self._by_path = {p: name for name, p in self.paths.items()}
        self._ends = {name: (v, v) for name, v in self.idempotents.items()}
        for name, path in self.paths.items():
            self._ends[name] = (self.arrows[path[0]].source, self.arrows[path[-1]].target)
        self._check_closure()
        self._table = {(x, y): self._basic_product(x, y) for x, y in product(self.basis, repeat=2)}
        self._gradings = {name: self._grading(name) for name in self.basis}
        self._doubled = {name: tuple(int(2 * x) for x in g) for name, g in self._gradings.items()}

    # -- construction helpers -------------------------------------------------

    def _nonzero_path(self, path: tuple[str, ...]) -> bool:
        for a, b in zip(path, path[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                return False
            if (a, b) in self.relations:
                return False
        return True

    def _check_closure(self) -> None:
        # every composable path avoiding the relations must be a basis element
        found = set()
        frontier = [(a,) for a in self.arrows]
        while frontier:
            nxt = []
            for path in frontier:
                if not self._nonzero_path(path):
                    continue
                found.add(path)
                for a in self.arrows:
                    nxt.append(path + (a,))
            frontier = nxt
        if found != set(self.paths.values()):
            raise AlgebraError(
                f"{self.name}: basis paths do not match the relations "
                f"(missing {sorted(found - set(self.paths.values()))}, "
                f"extra {sorted(set(self.paths.values()) - found)})"
            )

    def _basic_product(self, x: str, y: str) -> str | None:
        xs, xt = self._ends[x]
        ys, yt = self._ends[y]
        if xs != yt:
            return None
        if x in self.idempotents:
            return y
        if y in self.idempotents:
            return x
        return self._by_path.get(self.paths[y] + self.paths[x])

    # -- public API -----------------------------------------------------------

    def element(self, names: Iterable[str] | str) -> Element:
        if isinstance(names, str):
            names = [names]
        out: set[str] = set()
        for n in names:
            if n not in self._ends:
                raise AlgebraError(f"unknown basis element {n!r} of algebra {self.name}")
            out ^= {n}
        return frozenset(out)

    def is_basis(self, name: str) -> bool:
        return name in self._ends

    def is_idempotent(self, name: str) -> bool:
        return name in self.idempotents

    def idempotent_of(self, vertex: str) -> str:
        return self._vertex_idem[vertex]

    def vertex_of(self, idempotent: str) -> str:
        return self.idempotents[idempotent]

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.idempotents.values())

    def endpoints(self, name: str) -> tuple[str, str]:
        """Return the (source, target) quiver vertices of a basis element."""
        try:
            return self._ends[name]
        except KeyError:
            raise AlgebraError(f"unknown basis element {name!r} of algebra {self.name}") from None

    def basic_product(self, x: str, y: str) -> str | None:
        return self._table[(x, y)]

    def multiply(self, x: Element, y: Element) -> Element:
        for n in x | y:
            if n not in self._ends:
                raise AlgebraError(f"{n!r} is not an element of algebra {self.name}")
        out: set[str] = set()
        for a in x:
            for b in y:
                c = self._table[(a, b)]
                if c is not None:
                    out ^= {c}
        return frozenset(out)

    def path_length(self, name: str) -> int:
        return 0 if name in self.idempotents else len(self.paths[name])

    def grading(self, name: str) -> tuple[Fraction, ...]:
        """(delta, A...) of a nonzero basis element; additive under products."""
        try:
            return self._gradings[name]
        except KeyError:
            raise AlgebraError(f"unknown basis element {name!r} of algebra {self.name}") from None

    def doubled_grading(self, name: str) -> tuple[int, ...]:
        """``2 * grading(name)`` as plain integers, for hot loops."""
        return self._doubled[name]

    def _grading(self, name: str) -> tuple[Fraction, ...]:
        if name in self.idempotents:
            n = len(next(iter(self.arrows.values())).alex)
            return (Fraction(0),) + (Fraction(0),) * n
        if name not in self.paths:
            raise AlgebraError(f"unknown basis element {name!r} of algebra {self.name}")
        arrows = [self.arrows[a] for a in self.paths[name]]
        delta = sum((a.delta for a in arrows), Fraction(0))
        alex = tuple(Fraction(sum(col)) for col in zip(*(a.alex for a in arrows)))
        return (delta,) + alex


def _torus() -> QuiverAlgebra:
    h = Fraction(1, 2)
    return QuiverAlgebra(
        name="A",
        idempotents={"i_dot": "dot", "i_circ": "circ"},
        arrows={
            "s1": Arrow("s1", "dot", "circ", h, (0,)),
            "s2": Arrow("s2", "circ", "dot", h, (0,)),
            "s3": Arrow("s3", "dot", "circ", h, (0,)),
        },
        paths={
            "s1": ("s1",),
            "s2": ("s2",),
            "s3": ("s3",),
            "s12": ("s1", "s2"),
            "s23": ("s2", "s3"),
            "s123": ("s1", "s2", "s3"),
        },
        # sigma1 sigma2 = 0 means "s2 then s1" vanishes; likewise s3 then s2
        relations=(("s2", "s1"), ("s3", "s2")),
    )


def _peculiar() -> QuiverAlgebra:
    h = Fraction(1, 2)
    return QuiverAlgebra(
        name="B",
        idempotents={"i_a": "a", "i_b": "b", "i_c": "c", "i_d": "d"},
        arrows={
            "p1": Arrow("p1", "a", "d", h, (-1, 0)),
            "q1": Arrow("q1", "d", "a", h, (-1, 0)),
            "p2": Arrow("p2", "b", "a", h, (0, -1)),
            "q2": Arrow("q2", "a", "b", h, (0, -1)),
            "p3": Arrow("p3", "c", "b", h, (0, 1)),
            "q4": Arrow("q4", "c", "d", h, (1, 0)),
        },
        paths={
            "p1": ("p1",),
            "p2": ("p2",),
            "p3": ("p3",),
            "q1": ("q1",),
            "q2": ("q2",),
            "q4": ("q4",),
            "p12": ("p2", "p1"),
            "p23": ("p3", "p2"),
            "q21": ("q1", "q2"),
            "q14": ("q4", "q1"),
            "p123": ("p3", "p2", "p1"),
            "q214": ("q4", "q1", "q2"),
        },
        # p_i q_i = 0 = q_i p_i for i = 1, 2
        relations=(("q1", "p1"), ("p1", "q1"), ("q2", "p2"), ("p2", "q2")),
    )


TORUS = _torus()
PECULIAR = _peculiar()

ALGEBRAS = {"A": TORUS, "B": PECULIAR}


def get_algebra(alg: str | QuiverAlgebra) -> QuiverAlgebra:
    if isinstance(alg, QuiverAlgebra):
        return alg
    try:
        return ALGEBRAS[alg]
    except KeyError:
        raise AlgebraError(f"unknown algebra {alg!r}") from None


def multiply(alg: str | QuiverAlgebra, x: Element, y: Element) -> Element:
    """F_2-bilinear product ``x * y`` (y first, then x)."""
    return get_algebra(alg).multiply(x, y)


def grading_B(x: str | Element) -> tuple[Fraction, tuple[Fraction, Fraction]]:
    """Return ``(delta, (A1, A2))`` for a nonzero basis element of B."""
    if not isinstance(x, str):
        if len(x) != 1:
            raise AlgebraError("grading is only defined for a single nonzero basis element")
        (x,) = x
    if not x:
        raise AlgebraError("the zero element has no grading")
    g = PECULIAR.grading(x)
    return g[0], (g[1], g[2])


def idempotents_of(alg: str | QuiverAlgebra, name: str) -> tuple[str, str]:
    """Source and target idempotents of a basis element."""
    a = get_algebra(alg)
    s, t = a.endpoints(name)
    return a.idempotent_of(s), a.idempotent_of(t)
