"""Check the segment rule against the oracle on random inputs.

Run with ``python demos/random_verification.py [count] [seed]``.
"""
import random
import sys

from doubletangle.curves import verify_main_theorem
from doubletangle.ingest import KnotInput
from doubletangle.segments import cfd_from_segments, random_decomposition


def main(count=50, seed=0):
    rng = random.Random(seed)
    failures = 0
    for k in range(count):
        dec = random_decomposition(rng)
        inp = KnotInput(f"random-{k}", "cfd", cfd_from_segments(dec, rng))
        v = verify_main_theorem(inp)
        if not v.equal:
            failures += 1
            print(f"{inp.name}: MISMATCH")
            print(v.render())
        elif k < 3:
            print(f"{inp.name}: {len(dec)} segments, {len(inp.payload.generators)} generators -> "
                  f"{len(v.fast)} curves")
    print(f"\n{count - failures}/{count} random inputs agree")
    return 1 if failures else 0


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    sys.exit(main(*args))
