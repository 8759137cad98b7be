"""Satisfiability and model counting with the polynomial cases dispatched by clone.

Each tractable case only *evaluates* the formula on a handful of
assignments; which assignments suffice is dictated by the clone the basis
generates.  Anything else falls back to a bit-sliced exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .clones import Basis, NamedClone, as_basis, contains, identify
from .config import BRUTE_VAR_CAP, DEGREE_CAP
from .errors import TooManyVariables, UnboundVariable
from .proplogic import Formula, bitsliced, evaluate, sorted_vars, variables

_L, _D, _M, _R1 = NamedClone("L"), NamedClone("D"), NamedClone("M"), NamedClone("R1")
_E, _V = NamedClone("E"), NamedClone("V")


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    method: str
    witness: dict[str, int] | None = field(default=None)

    @property
    def status(self) -> str:
        return "Satisfiable" if self.satisfiable else "Unsatisfiable"

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "method": self.method}
        if self.witness is not None:
            out["witness"] = dict(self.witness)
        return out


def _point(props: Sequence[str], ones: Iterable[str]) -> dict[str, int]:
    on = set(ones)
    return {p: int(p in on) for p in props}


def _brute_table(phi: Formula, props: Sequence[str], var_cap: int) -> int:
    if len(props) > var_cap:
        raise TooManyVariables(f"{len(props)} variables exceed the brute-force cap {var_cap}",
                               variables=len(props), cap=var_cap)
    return bitsliced(phi, props)


def solve_sat(phi: Formula, B: Basis | Iterable, var_cap: int = BRUTE_VAR_CAP,
              degree_cap: int = DEGREE_CAP) -> SatResult:
    c = identify(as_basis(B), degree_cap)
    props = sorted_vars(phi)
    if contains(_L, c):
        zero = _point(props, ())
        if evaluate(phi, zero):
            return SatResult(True, "affine", zero)
        for p in props:
            unit = _point(props, (p,))
            if evaluate(phi, unit):
                return SatResult(True, "affine", unit)
        return SatResult(False, "affine")
    if contains(_D, c):
        one = _point(props, props)
        if evaluate(phi, one):
            return SatResult(True, "self-dual", one)
        return SatResult(True, "self-dual", _point(props, ()))
    if contains(_M, c):
        one = _point(props, props)
        if evaluate(phi, one):
            return SatResult(True, "monotone", one)
        return SatResult(False, "monotone")
    if contains(_R1, c):
        return SatResult(True, "top-reproducing", _point(props, props))
    table = _brute_table(phi, props, var_cap)
    if not table:
        return SatResult(False, "brute")
    low = (table & -table).bit_length() - 1
    return SatResult(True, "brute", {p: (low >> k) & 1 for k, p in enumerate(props)})


def count_models_detail(phi: Formula, B: Basis | Iterable, props: Sequence[str],
                        var_cap: int = BRUTE_VAR_CAP,
                        degree_cap: int = DEGREE_CAP) -> tuple[int, str]:
    props = list(props)
    missing = variables(phi) - set(props)
    if missing:
        raise UnboundVariable(f"variables {sorted(missing)} not among the props")
    n = len(props)
    c = identify(as_basis(B), degree_cap)
    ev = lambda ones: evaluate(phi, _point(props, ones))  # noqa: E731
    if contains(_E, c):
        if not ev(props):
            return 0, "conjunction"
        if ev(()):
            return 1 << n, "conjunction"
        fixed = [p for p in props if not ev([q for q in props if q != p])]
        return 1 << (n - len(fixed)), "conjunction"
    if contains(_V, c):
        if ev(()):
            return 1 << n, "disjunction"
        if not ev(props):
            return 0, "disjunction"
        free = [p for p in props if ev((p,))]
        return (1 << n) - (1 << (n - len(free))), "disjunction"
    if contains(_L, c):
        c0 = ev(())
        if any(ev((p,)) != c0 for p in props):
            return 1 << (n - 1), "affine"
        return (1 << n if c0 else 0), "affine"
    if contains(_D, c):
        return 1 << (n - 1), "self-dual"
    return _brute_table(phi, props, var_cap).bit_count(), "brute"


def count_models(phi: Formula, B: Basis | Iterable, props: Sequence[str],
                 var_cap: int = BRUTE_VAR_CAP, degree_cap: int = DEGREE_CAP) -> int:
    return count_models_detail(phi, B, props, var_cap, degree_cap)[0]
