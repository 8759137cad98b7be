"""Boolean clones, complexity verdicts for operator fragments, and teaching sets.

The most used entry points are re-exported here; the submodules hold the rest.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .boolfn import BoolFn, make, named, parse_literal, threshold
from .classifier import Problem, Verdict, classify_modal, classify_prop
from .clones import (Basis, NamedClone, base_of, clone, close_at_arity, contains, identify, in_clone,
                     leq, member)
from .config import Config
from .errors import ClonekitError
from .modal import KripkeModel, PointedModel, SimpleFragment, clos, mc, parse_modal
from .modal_teaching import teach_modal, verify_unique_modal
from .proplogic import evaluate, measure, parse, truth_table
from .reductions import pc_reduce, verify_pc
from .solvers import count_models, solve_sat
from .teaching import (LabeledExample, TeachingSet, fits, learn_mq, parity_lower_bound, teach_prop,
                       verify_unique)

__all__ = [
    "Basis", "BoolFn", "ClonekitError", "Config", "KripkeModel", "LabeledExample", "NamedClone",
    "PointedModel", "Problem", "SimpleFragment", "TeachingSet", "Verdict", "base_of", "classify_modal",
    "classify_prop", "clone", "clos", "close_at_arity", "contains", "count_models", "evaluate", "fits",
    "identify", "in_clone", "learn_mq", "leq", "make", "mc", "measure", "member", "named",
    "parity_lower_bound", "parse", "parse_literal", "parse_modal", "pc_reduce", "solve_sat",
    "teach_modal", "teach_prop", "threshold", "truth_table", "verify_pc", "verify_unique",
    "verify_unique_modal",
]
