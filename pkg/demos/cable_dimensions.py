"""Tabulate knot Floer dimensions of (2, 2t+1)-cables next to their bounds.

Run with ``python demos/cable_dimensions.py``.
"""
from doubletangle.analysis import cable_summary
from doubletangle.ingest import BUILTINS, builtin_knot
from doubletangle.segments import decompose


def main():
    print(f"{'knot':<10} {'t':>3} {'dim':>5} {'lower':>6} {'upper':>6}")
    for name in BUILTINS:
        dec = decompose(builtin_knot(name))
        for t in range(-3, 4):
            s = cable_summary(dec, t)
            print(f"{name:<10} {t:>3} {s['dim']:>5} {s['lower']:>6} {s['upper']:>6}")


if __name__ == "__main__":
    main()
