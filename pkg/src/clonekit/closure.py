"""Saturation of a basis at a fixed arity.

At arity ``n`` a function is a ``2**n``-bit truth table, which fits one
``uint64`` for ``n <= 6``.  Starting from the ``n`` projections, every basis
function is applied to every tuple of known tables until nothing new
appears.  Application is bit-parallel: a basis function ``g`` is expanded
into its minterms and each minterm becomes an AND of the argument tables
(or their complements), so one numpy expression evaluates ``g`` on a whole
grid of argument tuples at once.

The iteration is semi-naive: each round only looks at tuples containing at
least one table discovered in the previous round.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .boolfn import BoolFn, full_mask, projection
from .config import ARITY_CAP, CLOSURE_BUDGET
from .errors import ArityOutOfRange, BudgetExceeded

_CHUNK = 1 << 21  # max tuples evaluated per numpy expression
WORK_BUDGET = 1 << 27  # max argument tuples evaluated by one saturation


def _apply_grid(g: BoolFn, pools: list[np.ndarray], mask: np.uint64) -> np.ndarray:
    """Evaluate ``g`` on the cartesian product of ``pools``; returns a flat array."""
    m = g.arity
    shaped = []
    for k, pool in enumerate(pools):
        shape = [1] * m
        shape[k] = pool.size
        shaped.append(pool.reshape(shape))
    ones = g.table.bit_count()
    use_on = 2 * ones <= g.size
    acc = None
    for idx in range(g.size):
        if g.at(idx) != use_on:
            continue
        term = None
        for k in range(m):
            lit = shaped[k] if (idx >> k) & 1 else ~shaped[k]
            term = lit if term is None else term & lit
        acc = term if acc is None else acc | term
    out_shape = tuple(p.size for p in pools)
    if acc is None:
        acc = np.zeros(out_shape, dtype=np.uint64)
    acc = np.broadcast_to(acc, out_shape)
    if not use_on:
        acc = ~acc
    return (acc & mask).ravel()


def _apply_all(g: BoolFn, pools: list[np.ndarray], mask: np.uint64) -> Iterable[np.ndarray]:
    rest = 1
    for p in pools[1:]:
        rest *= p.size
    step = max(1, _CHUNK // max(rest, 1))
    head = pools[0]
    for start in range(0, head.size, step):
        yield np.unique(_apply_grid(g, [head[start:start + step]] + pools[1:], mask))


def _key(basis: Iterable[BoolFn]) -> tuple[BoolFn, ...]:
    return tuple(sorted(set(basis)))


class _Saturation:
    def __init__(self, basis: tuple[BoolFn, ...], n: int, budget: int, work: int = WORK_BUDGET):
        if not 1 <= n <= ARITY_CAP:
            raise ArityOutOfRange(f"closure arity {n} outside 1..{ARITY_CAP}")
        self.basis = basis
        self.n = n
        self.budget = budget
        self.work_left = work
        self.mask = np.uint64(full_mask(n))
        self.maximum = 1 << (1 << n)
        proj = sorted({projection(n, k).table for k in range(n)})
        self.old = np.zeros(0, dtype=np.uint64)
        self.frontier = np.array(proj, dtype=np.uint64)
        self._check_budget()

    def _check_budget(self):
        size = self.old.size + self.frontier.size
        if size > self.budget:
            raise BudgetExceeded(
                f"closure at arity {self.n} exceeded {self.budget} functions",
                arity=self.n, budget=self.budget,
            )

    @property
    def done(self) -> bool:
        return self.frontier.size == 0 or self.old.size + self.frontier.size == self.maximum

    def known(self) -> np.ndarray:
        return np.union1d(self.old, self.frontier)

    def step(self) -> np.ndarray:
        everything = np.union1d(self.old, self.frontier)
        produced = []
        for g in self.basis:
            m = g.arity
            for j in range(m):
                pools = [self.old] * j + [self.frontier] + [everything] * (m - j - 1)
                if any(p.size == 0 for p in pools):
                    continue
                tuples = 1
                for p in pools:
                    tuples *= p.size
                self.work_left -= tuples
                if self.work_left < 0:
                    raise BudgetExceeded(
                        f"closure at arity {self.n} needs more than {WORK_BUDGET} tuple evaluations",
                        arity=self.n, budget=self.budget,
                    )
                produced.extend(_apply_all(g, pools, self.mask))
        if produced:
            new = np.setdiff1d(np.unique(np.concatenate(produced)), everything, assume_unique=True)
        else:
            new = np.zeros(0, dtype=np.uint64)
        self.old, self.frontier = everything, new
        self._check_budget()
        return new


_DONE: dict[tuple[tuple[BoolFn, ...], int], np.ndarray] = {}
_AND, _NOT = 0b1000, 0b01


def _complete(key: tuple[BoolFn, ...]) -> bool:
    """True when the basis generates ``and`` and ``not`` (hence every function).

    Decided by the unary and binary closures, which are tiny.
    """
    if not key:
        return False
    return bool(np.any(closure_tables(key, 2) == _AND)) and bool(np.any(closure_tables(key, 1) == _NOT))


def closure_tables(basis: Iterable[BoolFn], n: int, budget: int = CLOSURE_BUDGET) -> np.ndarray:
    """Sorted read-only array of the ``n``-ary tables in the generated clone."""
    key = _key(basis)
    hit = _DONE.get((key, n))
    if hit is None and n >= 3 and _complete(key):
        size = 1 << (1 << n)
        if size > budget:
            raise BudgetExceeded(
                f"closure at arity {n} has {size} functions, over the budget {budget}",
                arity=n, budget=budget,
            )
        hit = np.arange(size, dtype=np.uint64)
        hit.setflags(write=False)
        _DONE[(key, n)] = hit
    if hit is None:
        sat = _Saturation(key, n, budget)
        while not sat.done:
            sat.step()
        hit = sat.known()
        hit.setflags(write=False)
        _DONE[(key, n)] = hit
    if hit.size > budget:
        raise BudgetExceeded(
            f"closure at arity {n} exceeded {budget} functions", arity=n, budget=budget
        )
    return hit


def reaches(basis: Iterable[BoolFn], target: BoolFn, budget: int = CLOSURE_BUDGET) -> bool:
    """Decide ``target in <basis>`` by saturating at its arity, stopping early on success."""
    key = _key(basis)
    n = target.arity
    t = np.uint64(target.table)
    hit = _DONE.get((key, n))
    if hit is not None and hit.size <= budget:
        return bool(np.any(hit == t))
    if n >= 3 and _complete(key):
        return True
    sat = _Saturation(key, n, budget)
    if np.any(sat.frontier == t):
        return True
    while not sat.done:
        new = sat.step()
        if new.size and np.any(new == t):
            return True
    known = sat.known()
    known.setflags(write=False)
    _DONE[(key, n)] = known
    return False
