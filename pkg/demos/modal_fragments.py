"""Defined modal operators, model checking, Clos, and modal teaching."""

from __future__ import annotations

from clonekit.modal import chain, clos, define, expand, mc, measure_modal, parse_modal
from clonekit.modal_teaching import prefix_form, teach_modal, verify_unique_modal
from clonekit.syntax import Var, show


def main() -> None:
    gamma = define("gamma", "dia x & dia ~x", ["and", "not"])
    phi = Var("p")
    for n in range(1, 6):
        phi = gamma(phi)
        folded = measure_modal(phi)
        flat = measure_modal(expand(phi))
        print(f"n={n}: defined-operator size {folded.tree}, expanded size {flat.tree}")

    M = chain(2, {1: ["p"]})
    print("\nchain 0→1→2 with p at 1:")
    print("  ◇p at 0 =", mc(M, "0", parse_modal("dia p")))
    print("  ◇◇p at 0 =", mc(M, "0", parse_modal("dia dia p")))

    for logic in ("K", "Verum", "GL"):
        print(f"\nClos over {logic} for (◇□, V2):", clos(logic, "dia,box", "V2").to_json())

    target = parse_modal("~box dia ~p", ["not"])
    print("\nprefix form of ¬□◇¬p:", prefix_form(target))
    ts = teach_modal(target)
    print("teaching set size:", len(ts), "labels", [e.label for e in ts])
    print("verification:", verify_unique_modal(target, ts).to_json())
    print("expanded target:", show(expand(target)))


if __name__ == "__main__":
    main()
