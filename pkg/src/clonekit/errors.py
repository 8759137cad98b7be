"""Exception hierarchy.

Every domain error carries a stable ``code`` string; the command line
tool prints it in its JSON error object and exits with status 1.
"""

from __future__ import annotations


class ClonekitError(Exception):
    code = "ClonekitError"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_json(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_jsonable(x) for x in v]
    return str(v)


def _make(name: str, doc: str) -> type[ClonekitError]:
    return type(name, (ClonekitError,), {"code": name, "__doc__": doc})


ArityOutOfRange = _make("ArityOutOfRange", "Arity below 1 or above the configured cap.")
TableLengthMismatch = _make("TableLengthMismatch", "Truth table does not have 2**arity entries.")
UnknownName = _make("UnknownName", "Name not present in the function or clone catalog.")
BadThresholdParams = _make("BadThresholdParams", "Threshold T^n_m needs n >= m >= 1.")
ArityMismatch = _make("ArityMismatch", "Wrong number of arguments for a function.")
BudgetExceeded = _make("BudgetExceeded", "A closure grew past the configured size budget.")
DegreeCapExceeded = _make("DegreeCapExceeded", "Separation degree above the configured cap.")
InternalInconsistency = _make("InternalInconsistency", "A self-check failed; this is a bug.")
FormulaSyntaxError = _make("SyntaxError", "Formula text does not match the grammar.")
UndeclaredConnective = _make("UndeclaredConnective", "Connective used but not in the basis.")
UnboundVariable = _make("UnboundVariable", "Assignment lacks a variable of the formula.")
TooManyVariables = _make("TooManyVariables", "Brute force refused above the variable cap.")
UnsupportedLogic = _make("UnsupportedLogic", "Logic outside the supported catalog.")
BadModalSet = _make("BadModalSet", "Modal operator set unsuitable for the problem.")
BadProblem = _make("BadProblem", "Unknown problem tag or wrong problem kind.")
TypeCUnsupported = _make("TypeCUnsupported", "Containment for type C logics is not decided.")
ModalSetMismatch = _make("ModalSetMismatch", "Simple fragments use different modal sets.")
UnknownWorld = _make("UnknownWorld", "World not present in the model.")
BadModel = _make("BadModel", "Malformed Kripke model.")
KindMismatch = _make("KindMismatch", "Propositional formula against a modal example or vice versa.")
FragmentNotTeachable = _make("FragmentNotTeachable", "No finite teaching construction applies.")
PropCapExceeded = _make("PropCapExceeded", "Too many variables for exhaustive verification.")
NotLearnable = _make("NotLearnable", "Fragment outside the membership-query learnable families.")
OracleInconsistent = _make("OracleInconsistent", "Oracle answers fit no function of the family.")
Inconsistent = _make("Inconsistent", "No odd parity function fits the examples.")
NotInFragment = _make("NotInFragment", "Formula is outside the required fragment.")
BoundTooSmall = _make("BoundTooSmall", "Enumeration bound below depth + 1.")
NotInSourceFragment = _make("NotInSourceFragment", "Formula is outside the reduction's source fragment.")
ConfigError = _make("ConfigError", "Invalid configuration value.")
