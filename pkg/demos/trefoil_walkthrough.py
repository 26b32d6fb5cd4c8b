"""Follow the trefoil through every stage of the doubling computation.

Run with ``python demos/trefoil_walkthrough.py``.
"""
from doubletangle.curves import fast_double, verify_main_theorem
from doubletangle.doubling import double_via_oracle
from doubletangle.ingest import builtin_knot
from doubletangle.segments import decompose


def main():
    inp = builtin_knot("trefoil")
    cfd = inp.payload
    print(f"input: {inp.name}, {len(cfd.generators)} generators, {cfd.n_arrows()} arrows")

    dec = decompose(inp)
    print("\ncurve segments of the knot:")
    print(dec.render())

    trace = {}
    oracle = double_via_oracle(inp, trace)
    box, reduced = trace["box"], trace["reduced"]
    print(f"\nbox product: {len(box.generators)} generators, {box.n_arrows()} arrows")
    print(f"after cancelling identity arrows: {len(reduced.generators)} generators")

    print("\nmulticurve from the oracle:")
    print(oracle.render())
    print("\nmulticurve from the segment rule:")
    print(fast_double(dec).render())

    print("\nagree:", verify_main_theorem(inp).equal)


if __name__ == "__main__":
    main()
