"""A short walk through Post's lattice with the clone tools.

Run with ``python3 demos/post_lattice_tour.py``.
"""

from __future__ import annotations

from clonekit import Basis, NamedClone, base_of, classify_prop, identify, member
from clonekit.clones import join
from clonekit.boolfn import named


def main() -> None:
    # Which clone does a handful of connectives generate?
    for names in (["nimp"], ["and", "or"], ["maj", "not"], ["xor", "top"], ["imp"]):
        print(f"{', '.join(names):>12} generates {identify(Basis.of(*names))}")

    # Implication alone cannot produce falsity, but it does give disjunction.
    imp = Basis.of("imp")
    print("\nor in [imp]? ", member(named("or"), imp))
    print("bot in [imp]?", member(named("bot"), imp))

    # Joins climb the lattice: monotone plus negation is everything.
    print("\nM joined with N2 =", join(NamedClone("M"), NamedClone("N2")))
    print("standard base of S1n at n=3:", base_of(NamedClone("S1n", 3)))

    # The same clone answers several complexity questions at once.
    print()
    for problem in ("SAT", "TAUT", "COUNT", "IMPLICATION"):
        v = classify_prop(problem, ["and", "or", "top", "bot"])
        print(f"{problem:>12}: {v.klass} ({v.completeness})")


if __name__ == "__main__":
    main()
