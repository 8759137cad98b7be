"""Teaching sets, membership-query learning and the parity lower bound."""

from __future__ import annotations

from clonekit.proplogic import parse, truth_table
from clonekit.syntax import show
from clonekit.teaching import (learn_mq_detail, parity_lower_bound, table_oracle, teach_prop,
                               verify_unique)

MON = ["and", "or", "top", "bot"]


def describe(example) -> str:
    on = "".join(k for k, v in example.payload.items() if v) or "∅"
    return f"{on}:{example.label}"


def main() -> None:
    phi = parse("(p & q) | r", MON)
    ts = teach_prop(phi, MON, "pqr")
    print("teaching set for (p∧q)∨r:", ", ".join(describe(e) for e in ts))
    print("  verified:", verify_unique(phi, ts, MON, "pqr").status)

    # drop one example and a rival formula slips through
    partial = list(ts)[1:]
    v = verify_unique(phi, partial, MON, "pqr")
    print("  without the first example:", v.status, "rival table", v.witness[1].literal)

    hidden = truth_table(parse("p ^ r ^ top(p)", ["xor", "top"]), "pqr")
    r = learn_mq_detail(["xor", "top"], "pqr", table_oracle(hidden, "pqr"))
    print("\nlearned", show(r.formula), "with", r.queries, "queries")

    out = parity_lower_bound("pqrs", [])
    print("\nwith no examples, two odd parities still fit:", out.witnesses)


if __name__ == "__main__":
    main()
