"""Command line entry point.

Every subcommand prints one JSON document on stdout.  Exit status is 0 on
success, 1 when the library raises a domain error (the JSON then holds an
``error`` object with a stable ``code``), and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .boolfn import CATALOG_NAMES, make, parse_literal
from .classifier import MODAL_PROBLEMS, Problem, classify_modal, classify_prop
from .clones import (Basis, all_named, clone, covering_edges, identify_report, lattice_dot,
                     leq, lookup, member, parse_basis)
from .config import Config
from .errors import ClonekitError
from .modal import (KripkeModel, PointedModel, SimpleFragment, clos, mc, measure_modal, parse_modal,
                    simple_complete, simple_leq)
from .modal_teaching import teach_modal, verify_unique_modal
from .proplogic import expressible, measure, parse
from .reductions import KINDS, chain_map, pc_reduce, verify_pc
from .solvers import count_models_detail, solve_sat
from .syntax import variables
from .teaching import LabeledExample, learn_mq_detail, table_oracle, teach_prop, verify_unique

SCHEMA_PATH = Path(__file__).with_name("schemas.json")


def schema_for(command: str) -> dict:
    """Standalone JSON schema for a subcommand's output (``"error"`` for the error object)."""
    data = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))
    body = data["$defs"]["error"] if command == "error" else data["commands"][command]
    return {**body, "$defs": data["$defs"]}


class InputError(ClonekitError):
    """Unreadable or malformed input file."""

    code = "InputError"


def _catalog_basis() -> Basis:
    return Basis.of(*(n for n in CATALOG_NAMES if n != "threshold"))


def _basis(text: str | None) -> Basis:
    return _catalog_basis() if text is None else parse_basis(text)


def _props(text: str | None, fallback: Sequence[str]) -> list[str]:
    if not text:
        return sorted(fallback)
    return [p.strip() for p in text.split(",") if p.strip()]


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _function(text: str):
    text = text.strip()
    return parse_literal(text) if ":" in text else lookup(text)


# -- handlers -------------------------------------------------------------------

def cmd_clone_id(a, cfg: Config) -> dict:
    rep = identify_report(parse_basis(a.basis), cfg.degree_cap, cfg.closure_budget)
    out = {"clone": rep.clone.to_json()}
    if not rep.closure_confirmed:
        out["unconfirmed"] = True  # a closure check ran out of budget
    return out


def cmd_clone_member(a, cfg: Config) -> dict:
    f = _function(a.function)
    return {"member": member(f, parse_basis(a.basis), cfg.closure_budget), "function": f.literal}


def cmd_clone_leq(a, cfg: Config) -> dict:
    return {"leq": leq(parse_basis(a.left), parse_basis(a.right), cfg.closure_budget)}


def cmd_clone_dot(a, cfg: Config) -> dict | str:
    dot = lattice_dot(cfg.degree_cap)
    if a.json:
        return {"dot": dot, "nodes": len(all_named(cfg.degree_cap)),
                "edges": len(covering_edges(cfg.degree_cap))}
    return dot


def _classify_one(problem: str, basis: str, modal: str | None, logic: str | None, cfg: Config) -> dict:
    p = Problem.parse(problem)
    if p in MODAL_PROBLEMS:
        return classify_modal(p, modal or "", parse_basis(basis), logic or "K", cfg.degree_cap).to_json()
    return classify_prop(p, parse_basis(basis), cfg.degree_cap).to_json()


def cmd_classify(a, cfg: Config) -> dict:
    if a.batch:
        items = _read_json(a.batch)
        if not isinstance(items, list):
            raise InputError("a batch file holds a JSON array of {problem, basis, modal?, logic?}")
        results = []
        for it in items:
            try:
                results.append(_classify_one(it["problem"], it.get("basis", ""), it.get("modal"),
                                             it.get("logic"), cfg))
            except ClonekitError as exc:
                results.append({"error": exc.to_json()})
            except (KeyError, TypeError) as exc:
                results.append({"error": InputError(f"bad batch item: {exc}").to_json()})
        return {"results": results}
    if a.problem is None:
        raise _Usage("classify needs --problem (or --batch FILE)")
    return _classify_one(a.problem, a.basis or "", a.modal, a.logic, cfg)


def cmd_sat(a, cfg: Config) -> dict:
    B = parse_basis(a.basis)
    return solve_sat(parse(a.formula, B), B, cfg.brute_var_cap, cfg.degree_cap).to_json()


def cmd_count(a, cfg: Config) -> dict:
    B = parse_basis(a.basis)
    phi = parse(a.formula, B)
    from .syntax import variables
    props = _props(a.props, variables(phi))
    count, method = count_models_detail(phi, B, props, cfg.brute_var_cap, cfg.degree_cap)
    return {"count": count, "method": method, "props": props}


def cmd_express(a, cfg: Config) -> dict:
    phi = parse(a.formula, _basis(a.source))
    return {"expressible": expressible(phi, parse_basis(a.basis), cfg.closure_budget)}


def cmd_measure(a, cfg: Config) -> dict:
    B = _basis(a.basis)
    if a.modal:
        size = measure_modal(parse_modal(a.formula, B))
    else:
        size = measure(parse(a.formula, B))
    return {"tree": size.tree, "dag": size.dag}


def _examples(path: str) -> list[LabeledExample]:
    data = _read_json(path)
    if isinstance(data, dict) and "examples" in data:
        data = data["examples"]
    if not isinstance(data, list):
        raise InputError("examples file holds a JSON array of {assignment|model, label}")
    try:
        return [LabeledExample.from_json(d) for d in data]
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed example: {exc}") from exc


def cmd_teach_make(a, cfg: Config) -> dict:
    if a.modal:
        B = _basis(a.basis or "not,top,bot")
        phi = parse_modal(a.formula, B)
        ts = teach_modal(phi, _props(a.prop, []) or None)
    else:
        B = parse_basis(a.basis)
        phi = parse(a.formula, B)
        ts = teach_prop(phi, B, _props(a.prop, variables(phi)), cfg.degree_cap)
    return {"examples": ts.to_json(), "method": ts.method, "prop": list(ts.prop), "size": len(ts)}


def cmd_teach_verify(a, cfg: Config) -> dict:
    exs = _examples(a.examples)
    if a.modal:
        phi = parse_modal(a.formula, _basis(a.basis or "not,top,bot"))
        frag = [o.strip() for o in a.fragment.split(",")] if a.fragment else None
        return verify_unique_modal(phi, exs, frag, _props(a.prop, []) or None, a.bound).to_json()
    B = parse_basis(a.basis)
    phi = parse(a.formula, B)
    from .syntax import variables
    return verify_unique(phi, exs, B, _props(a.prop, variables(phi)), cfg.closure_budget).to_json()


def cmd_learn(a, cfg: Config) -> dict:
    data = _read_json(a.oracle_file)
    try:
        prop = data.get("prop") or _props(a.prop, [])
        table = data["table"]
    except (AttributeError, KeyError) as exc:
        raise InputError("oracle file holds {\"prop\": [...], \"table\": \"n:hex\" | [bits]}") from exc
    if not prop:
        raise InputError("the oracle needs a variable list (prop)")
    if isinstance(table, str):
        f = parse_literal(table)
    else:
        f = make(len(prop), table)
    if f.arity != len(prop):
        raise InputError(f"table arity {f.arity} does not match {len(prop)} variables")
    return learn_mq_detail(parse_basis(a.basis), prop, table_oracle(f, prop), cfg.degree_cap).to_json()


def cmd_reduce_make(a, cfg: Config) -> dict:
    phi = parse(a.formula, _basis(a.basis))
    return pc_reduce(a.kind, phi, _props(a.prop, []) or None).to_json()


def cmd_reduce_verify(a, cfg: Config) -> dict:
    h = None
    if a.mutate:
        if not a.kind.startswith("modal"):
            raise _Usage("--mutate applies to the modal kinds only")
        h = chain_map([f"p{i}" for i in range(a.n)], shift=1)
    return verify_pc(a.kind, a.n, a.bound, h).to_json()


def cmd_modal_mc(a, cfg: Config) -> dict:
    M = _model_text(a.model) if a.model.lstrip().startswith("{") else _model_data(_read_json(a.model))
    phi = parse_modal(a.formula, _basis(a.basis))
    world = a.world if a.world is not None else (M.world if isinstance(M, PointedModel) else None)
    if world is None:
        raise InputError("no world given: use --world or a pointed model")
    model = M.model if isinstance(M, PointedModel) else M
    return {"value": mc(model, world, phi), "world": str(world)}


def _model_text(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"inline model is not valid JSON: {exc}") from exc
    return _model_data(data)


def _model_data(data: Any):
    if not isinstance(data, dict):
        raise InputError("a model is a JSON object with worlds, rel, val and optionally point")
    return PointedModel.from_json(data) if "point" in data else KripkeModel.from_json(data)


def cmd_modal_clos(a, cfg: Config) -> dict:
    return clos(a.logic, a.modal, clone(a.clone), cfg.degree_cap).to_json()


def cmd_modal_leq(a, cfg: Config) -> dict:
    F1 = SimpleFragment.of(a.modal, parse_basis(a.left))
    F2 = SimpleFragment.of(a.modal, parse_basis(a.right))
    return {"leq": simple_leq(F1, F2, a.logic, cfg.degree_cap)}


def cmd_modal_complete(a, cfg: Config) -> dict:
    return {"complete": simple_complete(SimpleFragment.of(a.modal, parse_basis(a.basis)), a.logic,
                                        cfg.degree_cap)}


# -- parser ---------------------------------------------------------------------

class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--config", help="JSON file with default limits")
    for name in ("arity-cap", "degree-cap", "closure-budget", "brute-var-cap",
                 "modal-depth-bound", "modal-model-bound"):
        common.add_argument(f"--{name}", type=int, default=None)

    p = _Parser(prog="clonekit", description="Boolean clones, fragment complexity and teaching.")
    p.add_argument("--version", action="version", version=f"clonekit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name: str, fn: Callable, help: str):
        q = parent.add_parser(name, parents=[common], help=help, description=help)
        q.set_defaults(handler=fn)
        return q

    cl = sub.add_parser("clone", help="clone identification and containment").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = leaf(cl, "id", cmd_clone_id, "name the clone generated by a basis")
    q.add_argument("--basis", required=True)
    q = leaf(cl, "member", cmd_clone_member, "is a function in the clone of a basis")
    q.add_argument("--function", "--fn", required=True, help="catalog name or arity:hex literal")
    q.add_argument("--basis", required=True)
    q = leaf(cl, "leq", cmd_clone_leq, "is [left] contained in [right]")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q = leaf(cl, "lattice-dot", cmd_clone_dot, "the named lattice as a DOT digraph")
    q.add_argument("--json", action="store_true", help="wrap the DOT text in JSON")

    q = leaf(sub, "classify", cmd_classify, "complexity verdict for a problem and basis")
    q.add_argument("--problem")
    q.add_argument("--basis", default="")
    q.add_argument("--modal", help="modal operators, e.g. dia,box")
    q.add_argument("--logic", help="modal logic (K, KD, T, K4, S4, S5, K_omega)")
    q.add_argument("--batch", help="JSON array of classification requests")

    q = leaf(sub, "sat", cmd_sat, "satisfiability with the dispatching solver")
    q.add_argument("--formula", required=True)
    q.add_argument("--basis", required=True)
    q = leaf(sub, "count", cmd_count, "number of satisfying assignments")
    q.add_argument("--formula", required=True)
    q.add_argument("--basis", required=True)
    q.add_argument("--props", help="variable list (default: the formula's variables)")
    q = leaf(sub, "express", cmd_express, "is the formula expressible over a basis")
    q.add_argument("--formula", required=True)
    q.add_argument("--basis", required=True, help="target basis")
    q.add_argument("--source", help="connectives the formula is written in (default: catalog)")
    q = leaf(sub, "measure", cmd_measure, "tree and DAG size")
    q.add_argument("--formula", required=True)
    q.add_argument("--basis")
    q.add_argument("--modal", action="store_true")

    tc = sub.add_parser("teach", help="teaching sets").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, fn, text in (("make", cmd_teach_make, "build a teaching set"),
                           ("verify", cmd_teach_verify, "check that examples single out a formula")):
        q = leaf(tc, name, fn, text)
        q.add_argument("--formula", required=True)
        q.add_argument("--basis")
        q.add_argument("--prop")
        q.add_argument("--modal", action="store_true")
        if name == "verify":
            q.add_argument("--examples", required=True)
            q.add_argument("--fragment", help="modal fragment operators, e.g. dia,box,not,top")
            q.add_argument("--bound", type=int)

    q = leaf(sub, "learn", cmd_learn, "exact learning from membership queries")
    q.add_argument("--basis", required=True)
    q.add_argument("--oracle-file", required=True)
    q.add_argument("--prop")

    rd = sub.add_parser("reduce", help="concept-class reductions").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = leaf(rd, "make", cmd_reduce_make, "image of a formula under a reduction")
    q.add_argument("--kind", required=True, choices=KINDS)
    q.add_argument("--formula", required=True)
    q.add_argument("--basis")
    q.add_argument("--prop")
    q = leaf(rd, "verify", cmd_reduce_verify, "brute-force check of both reduction conditions")
    q.add_argument("--kind", required=True, choices=KINDS)
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--bound", type=int, default=4, help="max worlds for the modal kinds")
    q.add_argument("--mutate", action="store_true", help="use a deliberately broken example map")

    md = sub.add_parser("modal", help="modal fragments").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = leaf(md, "mc", cmd_modal_mc, "model checking")
    q.add_argument("--model", required=True, help="model JSON file (or inline JSON)")
    q.add_argument("--formula", required=True)
    q.add_argument("--world")
    q.add_argument("--basis")
    q = leaf(md, "clos", cmd_modal_clos, "Clos for a logic, modal set and clone")
    q.add_argument("--logic", required=True)
    q.add_argument("--modal", required=True)
    q.add_argument("--clone", required=True)
    q = leaf(md, "leq", cmd_modal_leq, "containment of simple fragments")
    q.add_argument("--logic", default="K")
    q.add_argument("--modal", required=True)
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q = leaf(md, "complete", cmd_modal_complete, "is a simple fragment expressively complete")
    q.add_argument("--logic", default="K")
    q.add_argument("--modal", required=True)
    q.add_argument("--basis", required=True)
    return p


def _config(a) -> Config:
    cfg = Config.from_file(a.config) if a.config else Config()
    return cfg.updated(**{k: getattr(a, k) for k in ("arity_cap", "degree_cap", "closure_budget",
                                                     "brute_var_cap", "modal_depth_bound",
                                                     "modal_model_bound")})


def command_name(a) -> str:
    return " ".join(x for x in (a.command, getattr(a, "action", None)) if x)


def _render_pretty(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(x, ensure_ascii=False)}" for x in obj)
    return f"{pad}{obj}"


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = a.handler(a, _config(a))
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"clonekit: error: {exc}", file=sys.stderr)
        return 2
    except ClonekitError as exc:
        out.write(json.dumps({"error": exc.to_json()}, ensure_ascii=False) + "\n")
        return 1
    if isinstance(result, str):
        out.write(result)
    elif a.pretty:
        out.write(_render_pretty(result) + "\n")
    else:
        out.write(json.dumps(result, ensure_ascii=False) + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
