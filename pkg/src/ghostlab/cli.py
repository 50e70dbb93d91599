"""Command-line front end.

Exit status: 0 on success, 1 when a verification or audit fails, 2 on invalid
input, 3 when a scan exceeds its budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .age import classify, find_junior_ghost, junior_sweep, junior_witness
from .counting import boundary_degrees_prime, fiber_audit, forgetful_degree
from .dot import to_dot
from .errors import AuditError, BudgetExceeded, ValidationError
from .ghosts import SymmetricFunction, default_budget, ghost_group, is_ghost
from .graph import DualGraph, betti1, total_genus, validate
from .level import MultiplicityCochain, contraction_tower, prime_factors, valuation
from .singularity import CurveAnnotations, classify_point
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _read_json(path: str, what: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValidationError(f"{what} file {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what} file {path}: invalid JSON ({exc})") from exc


def load_graph(args) -> tuple[DualGraph, dict]:
    if not args.graph:
        raise ValidationError("--graph is required")
    data = _read_json(args.graph, "graph")
    try:
        graph = validate(DualGraph.from_dict(data))
    except ValidationError as exc:
        raise ValidationError(f"{args.graph}: {exc}") from exc
    return graph, data


def load_multiplicity(args, graph: DualGraph, graph_data: dict) -> MultiplicityCochain:
    """From ``--multiplicity``, else from a ``multiplicity`` block in the graph file."""
    if args.multiplicity:
        data, where = _read_json(args.multiplicity, "multiplicity"), args.multiplicity
    elif "multiplicity" in graph_data:
        data, where = graph_data["multiplicity"], args.graph
    else:
        raise ValidationError("--multiplicity is required (the graph file carries none)")
    try:
        M = MultiplicityCochain.from_dict(graph, data)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    if args.level is not None and args.level != M.level:
        raise ValidationError(f"--level {args.level} disagrees with multiplicity level {M.level}")
    return M


def load_annotations(args) -> CurveAnnotations:
    if not args.annotations:
        return CurveAnnotations()
    return CurveAnnotations.from_dict(_read_json(args.annotations, "annotations"))


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


def _require_level(args) -> int:
    if args.level is None:
        raise ValidationError("--level is required")
    if args.level < 1:
        raise ValidationError("--level must be positive")
    return args.level


# -- verbs -------------------------------------------------------------------------------


def _group_dict(graph, M) -> dict:
    G = ghost_group(graph, M)
    return {"level": M.level, "order": G.order, "divisors": G.elementary_divisors,
            "exponents": {str(p): list(a) for p, a in G.exponents.items()},
            "generators": [{"order": a.order, "age": frac(classify(a).age), **a.to_dict()}
                           for a in G.generators]}


def cmd_ghosts(args) -> tuple[dict, str]:
    graph, data = load_graph(args)
    M = load_multiplicity(args, graph, data)
    out = _group_dict(graph, M)
    text = [f"order {out['order']}", f"divisors {out['divisors']}"]
    for g in out["generators"]:
        vals = ",".join(str(v) for v in g["values"].values())
        text.append(f"generator order {g['order']} age {g['age']}: ({vals})")
    return out, "\n".join(text)


def cmd_analyze(args) -> tuple[dict, str]:
    graph, data = load_graph(args)
    M = load_multiplicity(args, graph, data)
    nu = valuation(M)
    towers = {}
    for p, _ in prime_factors(M.level):
        t = contraction_tower(M, p)
        towers[str(p)] = {"vertex_counts": list(t.vertex_counts), "total": t.total_vertices}
    report = classify_point(graph, M, load_annotations(args), _budget(args))
    out = {"vertices": graph.n_vertices, "edges": graph.n_edges, "betti1": betti1(graph),
           "genus": total_genus(graph),
           "valuation": {str(p): [None if x == float("inf") else x for x in v]
                         for p, v in nu.values.items()},
           "towers": towers, "ghosts": _group_dict(graph, M),
           "classification": report.to_dict()}
    text = [f"vertices {graph.n_vertices}, edges {graph.n_edges}, b1 {out['betti1']}, "
            f"genus {out['genus']}"]
    for p, t in towers.items():
        text.append(f"tower p={p}: vertex counts {tuple(t['vertex_counts'])}, total {t['total']}")
    text.append(f"ghost group order {out['ghosts']['order']}, divisors {out['ghosts']['divisors']}")
    text.append(f"verdict {report.verdict} ({', '.join(report.reasons) or 'no reasons'})")
    return out, "\n".join(text)


def cmd_age(args) -> tuple[dict, str]:
    graph, data = load_graph(args)
    M = load_multiplicity(args, graph, data)
    if not args.element:
        raise ValidationError("--element is required")
    a = SymmetricFunction.from_dict(graph, _read_json(args.element, "element"))
    if a.level != M.level:
        raise ValidationError(f"element level {a.level} differs from multiplicity level {M.level}")
    rep = classify(a)
    ghost = is_ghost(a, M)
    out = {"age": frac(rep.age), "verdict": rep.verdict, "is_ghost": ghost}
    suffix = "" if ghost else " (not a ghost)"
    return out, f"{frac(rep.age)} {rep.verdict}{suffix}"


def cmd_classify(args) -> tuple[dict, str]:
    graph, data = load_graph(args)
    M = load_multiplicity(args, graph, data)
    report = classify_point(graph, M, load_annotations(args), _budget(args))
    text = f"{report.verdict}: {', '.join(report.reasons) or 'no reasons'}"
    if not report.complete:
        text += " (junior search incomplete: budget exceeded)"
    return report.to_dict(), text


def cmd_hunt(args) -> tuple[dict, str]:
    if args.graph:
        graph, data = load_graph(args)
        M = load_multiplicity(args, graph, data)
        rep = find_junior_ghost(graph, M, _budget(args))
        if rep is None:
            return {"witness": None}, "no junior ghost"
        return ({"witness": rep.element.to_dict(), "age": frac(rep.age)},
                f"junior ghost {rep.element.values} age {frac(rep.age)}")
    level = _require_level(args)
    report = junior_sweep(level, args.max_edges, args.max_vertices, _budget(args))
    s = report.summary()
    text = (f"level {level}: {s['graphs']} graphs, {s['instances']} instances, "
            f"{s['witnesses']} with junior ghosts, {s['skipped']} skipped")
    if s["max_age_below_1"] is not None:
        text += f", largest junior age {s['max_age_below_1']}"
    return report.to_dict(), text


def cmd_witness(args) -> tuple[dict, str]:
    level = _require_level(args)
    inst = junior_witness(level)
    if inst is None:
        return {"level": level, "witness": None}, "none exists"
    age = classify(inst.element).age
    out = {"level": level, "graph": inst.graph.to_dict(), "multiplicity": inst.M.to_dict(),
           "element": inst.element.to_dict(), "age": frac(age)}
    return out, (f"{inst.name}: M={inst.M.values} a={inst.element.values} "
                 f"age {frac(age)} junior")


def cmd_fiber(args) -> tuple[dict, str]:
    graph, _ = load_graph(args)
    level = _require_level(args)
    if level ** betti1(graph) > _budget(args):
        raise BudgetExceeded(f"budget exceeded: {level ** betti1(graph)} multiplicity cochains")
    audit = fiber_audit(graph, level)
    text = [f"M={r.M.values}: {r.components} components of length {r.length}" for r in audit.rows]
    text.append(f"total {audit.total} = {level}^{2 * audit.genus}")
    return audit.to_dict(), "\n".join(text)


def cmd_degrees(args) -> tuple[dict, str]:
    level = _require_level(args)
    if args.genus is None:
        raise ValidationError("--genus is required")
    deg = forgetful_degree(args.genus, level)
    out = {"genus": args.genus, "level": level, "degree": frac(deg), "boundary": []}
    text = [f"deg f = {frac(deg)}"]
    for i in range(1, (args.genus + 1) // 2):
        t = boundary_degrees_prime(args.genus, level, i)
        out["boundary"].append(t.to_dict())
        text.append(f"i={i}: " + ", ".join(frac(x) for x in t.reducible)
                    + f" (sum {frac(t.reducible_sum)})")
        if t.irreducible is not None and i == 1:
            text.append("irreducible: " + ", ".join(frac(x) for x in t.irreducible)
                        + f" (weighted sum {frac(t.irreducible_weighted_sum)})")
    return out, "\n".join(text)


def cmd_verify(args) -> tuple[dict, str]:
    results = run_suite(args.suite)
    out = {"suite": args.suite, "passed": sum(r.ok for r in results), "total": len(results),
           "results": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    text = [f"{'PASS' if r.ok else 'FAIL'} {r.name}" + ("" if r.ok else f": {r.detail}")
            for r in results]
    text.append(f"{out['passed']}/{out['total']} checks passed")
    return out, "\n".join(text)


VERBS = {"analyze": cmd_analyze, "ghosts": cmd_ghosts, "age": cmd_age, "classify": cmd_classify,
         "hunt-junior": cmd_hunt, "witness": cmd_witness, "fiber": cmd_fiber,
         "degrees": cmd_degrees, "verify": cmd_verify}
DOT_VERBS = {"analyze", "ghosts"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghostlab", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=sorted(VERBS))
    parser.add_argument("--graph", help="graph JSON file")
    parser.add_argument("--multiplicity", help="multiplicity JSON file")
    parser.add_argument("--element", help="symmetric function JSON file")
    parser.add_argument("--annotations", help="curve annotation JSON file")
    parser.add_argument("--level", type=int)
    parser.add_argument("--genus", type=int, help="genus for the degrees verb")
    parser.add_argument("--max-edges", type=int, default=5)
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--budget", type=int)
    parser.add_argument("--suite", default="paper-examples", choices=sorted(SUITES))
    parser.add_argument("--format", default="text", choices=["text", "json", "dot"])
    parser.add_argument("--emit-dot", metavar="PATH", help="also write the towers as DOT")
    return parser


def _dot_for(args) -> str:
    graph, data = load_graph(args)
    return to_dot(graph, load_multiplicity(args, graph, data))


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.format == "dot":
            if args.verb not in DOT_VERBS:
                raise ValidationError(f"--format dot is only available for {sorted(DOT_VERBS)}")
            stdout.write(_dot_for(args))
            return EXIT_OK
        out, text = VERBS[args.verb](args)
        if args.emit_dot:
            Path(args.emit_dot).write_text(_dot_for(args))
    except ValidationError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except BudgetExceeded as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except AuditError as exc:
        stderr.write(f"audit failure: {exc}\n")
        return EXIT_FAIL
    if args.format == "json":
        stdout.write(json.dumps(out, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(text + "\n")
    if args.verb == "verify" and out["passed"] != out["total"]:
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
