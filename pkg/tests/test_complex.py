import random

import pytest
from hypothesis import given, settings, strategies as st

from doubletangle.algebra import PECULIAR
from doubletangle.complex import (
    ComplexError, Generator, TypeDComplex, cancel_identity_arrows, connected_components,
    disjoint_union, identity_arrows, validate,
)
from doubletangle.curves import recognize, template
from doubletangle.doubling import reduced_product
from doubletangle.ingest import builtin_knot


def test_trefoil_cfd_is_valid():
    assert validate(builtin_knot("trefoil").payload) == []


def test_two_step_loop_violates_d_squared():
    c = TypeDComplex("A", [Generator("x", "dot"), Generator("y", "circ")],
                     [("x", "y", "s1"), ("y", "x", "s2")])
    problems = validate(c)
    assert any("d^2" in p and "s12" in p for p in problems)


def test_grading_violation_is_reported():
    c = template("s", 2, (0, 0, 0))
    g = c.generators["T"]
    c.generators["T"] = Generator("T", g.idem, (g.grading[0], g.grading[1] + 1, g.grading[2]))
    assert any("grading violation" in p for p in validate(c))


def test_idempotent_mismatch_is_reported():
    c = TypeDComplex("B", [Generator("x", "a"), Generator("y", "b")], [("x", "y", "p1")])
    assert any("idempotent mismatch" in p for p in validate(c))


def test_bullet_only_gradings_over_A():
    c = TypeDComplex("A", [Generator("o", "circ", (0, 0))])
    assert any("non-bullet" in p for p in validate(c))


def test_identity_self_arrow_is_invalid():
    c = TypeDComplex("B", [Generator("x", "a")], [("x", "x", "i_a")])
    assert validate(c)


def test_f2_cancellation_on_insertion():
    c = TypeDComplex("B", [Generator("c", "c"), Generator("a", "a")])
    c.add_arrow("c", "a", "p23")
    c.add_arrow("c", "a", "p23")
    assert c.n_arrows() == 0


def test_components_of_trefoil_output():
    reduced = reduced_product(builtin_knot("trefoil").payload)
    assert len(connected_components(reduced)) == 3


def test_components_edge_cases():
    assert connected_components(TypeDComplex("B")) == []
    r0 = template("r", 0)
    two = disjoint_union([r0, r0])
    comps = connected_components(two)
    assert len(comps) == 2
    assert [min(c.generators) for c in comps] == sorted(min(c.generators) for c in comps)


def test_unknot_pairing_cancels_to_r0():
    c = TypeDComplex("B", [Generator(n, i) for n, i in [("c", "c"), ("a", "a"), ("b", "b"), ("b'", "b")]])
    c.add_arrow("c", "a", "p23")
    c.add_arrow("c", "a", "q14")
    c.add_arrow("c", "b", "q214")
    c.add_arrow("a", "b'", "q2")
    c.add_arrow("b", "b'", "i_b")
    out = cancel_identity_arrows(c)
    assert sorted(out.generators) == ["a", "c"]
    assert out.diff == {("c", "a"): frozenset({"p23", "q14"})}


def test_no_identity_arrows_is_fixed_point():
    t = template("s", 4, (1, 2, 2))
    assert cancel_identity_arrows(t) == t


def test_zigzag_composition():
    c = TypeDComplex("B", [Generator("w", "c"), Generator("u", "d"), Generator("v", "d"), Generator("z", "b")])
    c.add_arrow("w", "v", "q4")
    c.add_arrow("u", "v", "i_d")
    c.add_arrow("u", "z", "q21")
    assert validate(c) == []
    out = cancel_identity_arrows(c)
    assert len(out) == 2
    assert out.diff == {("w", "z"): frozenset({"q214"})}
    assert validate(out) == []


def test_cancellation_refuses_invalid_input():
    c = TypeDComplex("A", [Generator("x", "dot"), Generator("y", "circ")],
                     [("x", "y", "s1"), ("y", "x", "s2")])
    with pytest.raises(ComplexError):
        cancel_identity_arrows(c)


# -- random small complexes over B -----------------------------------------------


def random_valid_complex(rng, max_gens=6, tries=200):
    """Rejection-sample a valid complex over B with at least one identity arrow."""
    vertices = PECULIAR.vertices
    for _ in range(tries):
        n = rng.randint(2, max_gens)
        gens = [Generator(f"g{i}", rng.choice(vertices)) for i in range(n)]
        c = TypeDComplex("B", gens)
        for _ in range(rng.randint(1, 2 * n)):
            x, y = rng.sample(gens, 2)
            labels = [b for b in PECULIAR.basis if PECULIAR.endpoints(b) == (x.idem, y.idem)]
            if labels:
                c.add_arrow(x.name, y.name, rng.choice(labels))
        if identity_arrows(c) and not validate(c):
            return c
    return None


def idempotent_homology(c):
    """dim H of the complex with every non-idempotent label set to zero, per vertex.

    This is invariant under homotopy equivalence, so it serves as an
    independent check on cancellation.
    """
    out = {}
    for v in PECULIAR.vertices:
        names = [n for n, g in c.generators.items() if g.idem == v]
        idx = {n: i for i, n in enumerate(names)}
        rows = []
        for n in names:
            row = 0
            for t, lab in c.outgoing(n).items():
                if t in idx and PECULIAR.idempotent_of(v) in lab:
                    row |= 1 << idx[t]
            rows.append(row)
        rank = 0
        rows = [r for r in rows if r]
        while rows:
            p = max(rows)
            rows.remove(p)
            top = p.bit_length() - 1
            rows = [r ^ p if r >> top & 1 else r for r in rows]
            rows = [r for r in rows if r]
            rank += 1
        out[v] = len(names) - 2 * rank
    return out


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_cancellation_preserves_validity_and_homology(seed):
    c = random_valid_complex(random.Random(seed))
    if c is None:
        return
    before = idempotent_homology(c)
    out = cancel_identity_arrows(c)
    assert validate(out) == []
    assert not identity_arrows(out)
    assert (len(c) - len(out)) % 2 == 0 and len(out) < len(c)
    assert idempotent_homology(out) == before
    assert cancel_identity_arrows(out) == out


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_cancellation_order_does_not_change_recognised_curves(seed):
    from randomized import random_knot
    from doubletangle.doubling import box_tensor, seed_and_propagate_gradings

    inp, _ = random_knot(seed)
    graded = seed_and_propagate_gradings(box_tensor(inp.payload))
    rng = random.Random(seed)
    default = cancel_identity_arrows(graded)
    shuffled = cancel_identity_arrows(graded, choose=rng.choice)

    def curves(c):
        return sorted(recognize(p).render() for p in connected_components(c))

    assert curves(default) == curves(shuffled)
