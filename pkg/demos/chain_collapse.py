"""Collapse a telescoping sum down the chain quiver, one mutation at a time.

On the chain quiver 0 -> 1 -> ... -> n-1 (both endpoints frozen), the sum
X_0 + X_{0,1} + ... + X_{0..n-2} loses one term at every mutation of the
interior path 1, 2, ..., n-2 until a single variable is left, while the full
product monomial X_{0..n-1} ends up supported on the two frozen endpoints.
"""

from qcluster.scenarios import an_chain
from qcluster.seeds import quiver_edges
from qcluster.transport import transport_step


def main():
    sc = an_chain(5)
    print(f"seed: {sc.seed!r}   chain {sc.chain}   path {sc.path}")
    print("edges:", ", ".join(f"{i}->{j}" for i, j, _ in quiver_edges(sc.seed)))
    print()

    tele, full = sc.telescoping, sc.full_monomial
    print(f"start   telescope {tele.term_count()} terms: {tele!r}")
    print(f"        full monomial:                {full!r}")
    for k in sc.path:
        tele = transport_step(tele, k)
        full = transport_step(full, k)
        print(f"mu_{k}    telescope {tele.term_count()} terms: {tele!r}")
        print(f"        full monomial:                {full!r}")
    print()
    print("the telescope is now the single variable on the frozen head, and")
    print("the product monomial sits on the two frozen endpoints.")


if __name__ == "__main__":
    main()
