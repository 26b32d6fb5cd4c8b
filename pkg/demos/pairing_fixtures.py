"""Double the three small test complexes and show which rational curve each becomes.

Run with ``python demos/pairing_fixtures.py``.
"""
from doubletangle.doubling import double_via_oracle
from doubletangle.ingest import TEST_PAIRING_INDICES, pairing_fixture


def main():
    for i in TEST_PAIRING_INDICES:
        inp = pairing_fixture(i)
        c = inp.payload
        arrows = ", ".join(f"{s}->{t} {b}" for s, t, b in c.arrows())
        print(f"i={i:>2}  arrows: {arrows}")
        print(f"      doubled: {double_via_oracle(inp).render()}")


if __name__ == "__main__":
    main()
