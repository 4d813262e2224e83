"""Command line front end with JSON output.

Every subcommand prints exactly one JSON document to standard output and
exits 0 on success, 2 on usage errors, 3 on domain errors, and 4 when a
theorem violation fires.  Error documents carry a machine readable
``reason`` so scripts never parse prose.  Output is byte-identical across
repeated runs with the same arguments and seed: no timestamps, sorted
keys, deterministic orderings throughout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .acceptance import DEFAULT_SEED, SCHEMA_VERSION, rational_nilpotent_witness, run_all
from .algebra import (
    default_polarization,
    element_from_json,
    generated_subalgebra,
    is_rational,
)
from .cmfield import (
    Orientation,
    enumerate_orientations,
    field_from_json,
    field_to_json,
    grading_vector,
    oriented_to_json,
    validate_orientation,
)
from .errors import CMHodgeError, TheoremViolationError, UsageError
from .graphs import is_block_system, support_graph
from .verifiers import escape_verdict, nondegeneracy_verdict, rigidity_verdict


def _read_json_file(path):
    if not os.path.exists(path):
        raise UsageError(f"file not found: {path}", reason="missing-file")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path} is not valid JSON: {exc}", reason="bad-json")


def _parse_inline_or_file(text):
    """Inline JSON when the argument looks like an object, else a file path."""
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"inline JSON is invalid: {exc}", reason="bad-json")
    return _read_json_file(text)


def _load_galois(args):
    if getattr(args, "conductor", None) is not None:
        return field_from_json({"flavor": "cyclotomic", "conductor": args.conductor})
    if getattr(args, "abstract_file", None):
        return field_from_json(_read_json_file(args.abstract_file))
    raise UsageError("give either --conductor or --abstract-file")


def _load_oriented(args):
    galois = _load_galois(args)
    obj = _parse_inline_or_file(args.orientation)
    if "weight" not in obj:
        if args.weight is None:
            raise UsageError("give --weight or include 'weight' in the orientation")
        obj = dict(obj, weight=args.weight)
    elif args.weight is not None and args.weight != obj["weight"]:
        raise UsageError(
            f"--weight {args.weight} contradicts the orientation's weight {obj['weight']}"
        )
    orientation = Orientation.from_json(obj, labels=galois.labels)
    return validate_orientation(galois, orientation)


def _parse_hodge(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"--hodge wants a comma list of integers, got {text!r}")


def _emit(payload, args):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    out_path = getattr(args, "output", None)
    if out_path:
        base = os.environ.get("CMHODGE_OUTPUT_DIR", "")
        if base and not os.path.isabs(out_path):
            out_path = os.path.join(base, out_path)
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _envelope(command, result):
    return {"schema_version": SCHEMA_VERSION, "command": command, "result": result}


# -- subcommand bodies --------------------------------------------------


def _cmd_field(args):
    galois = _load_galois(args)
    return _envelope(
        "field",
        {
            "field": field_to_json(galois),
            "embeddings": len(galois.labels),
            "pairs": len(galois.labels) // 2,
            "group_order": galois.group_order,
        },
    )


def _cmd_orient_enumerate(args):
    galois = _load_galois(args)
    hodge = _parse_hodge(args.hodge)
    orientations = enumerate_orientations(galois, args.weight, hodge)
    return _envelope(
        "orient-enumerate",
        {
            "count": len(orientations),
            "weight": args.weight,
            "hodge_numbers": list(hodge),
            "orientations": [o.to_json() for o in orientations],
        },
    )


def _cmd_grading(args):
    field = _load_oriented(args)
    return _envelope(
        "grading",
        {"field": oriented_to_json(field), "grading": grading_vector(field).to_json()},
    )


def _cmd_nondeg(args):
    field = _load_oriented(args)
    return _envelope("nondeg", nondegeneracy_verdict(field).to_json())


def _cmd_partition(args):
    element = element_from_json(_read_json_file(args.element))
    field = element.field
    graph, partition = support_graph(element)
    verdict = is_block_system(field, partition)
    return _envelope(
        "partition",
        {
            "rational": is_rational(field, element),
            "support_graph": graph.to_json(),
            "partition": partition.to_json(),
            "block_verdict": verdict.to_json(),
        },
    )


def _cmd_closure(args):
    elements = [element_from_json(_read_json_file(path)) for path in args.element]
    field = elements[0].field
    seeds = list(elements)
    if args.with_cartan:
        from .algebra import cartan_elements

        seeds = cartan_elements(field, elements[0].pol) + seeds
    dim, basis = generated_subalgebra(seeds)
    n = field.n
    return _envelope(
        "closure",
        {
            "seeds": len(seeds),
            "dimension": dim,
            "ambient_dimension": n * (2 * n + 1),
            "basis_supports": [[list(ij) for ij in b.support()] for b in basis],
        },
    )


def _cmd_escape(args):
    if args.element:
        element = element_from_json(_read_json_file(args.element))
        field = element.field
        pol = element.pol
    else:
        field = _load_oriented(args)
        pol = default_polarization(field)
        element = rational_nilpotent_witness(field, pol)
    return _envelope("escape", escape_verdict(field, pol, element))


def _cmd_rigidity(args):
    field = _load_oriented(args)
    return _envelope("rigidity", rigidity_verdict(field))


def _cmd_selftest(args):
    return run_all(args.seed)


# -- wiring -------------------------------------------------------------


def _add_field_args(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--conductor", type=int, help="cyclotomic conductor m")
    group.add_argument(
        "--abstract-file", help="JSON file describing an abstract CM field"
    )


def _add_orientation_args(sub):
    _add_field_args(sub)
    sub.add_argument("--weight", type=int, help="odd weight n")
    sub.add_argument(
        "--orientation",
        required=True,
        help="orientation as inline JSON or a file path",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cmhodge",
        description="exact verification of oriented CM Hodge structure claims",
    )
    parser.add_argument(
        "--output",
        help="also write the JSON document to this file "
        "(relative paths resolve under $CMHODGE_OUTPUT_DIR)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("field", help="describe a CM field")
    _add_field_args(sub)
    sub.set_defaults(fn=_cmd_field)

    orient = commands.add_parser("orient", help="orientation tooling")
    orient_sub = orient.add_subparsers(dest="orient_command", required=True)
    sub = orient_sub.add_parser("enumerate", help="list all orientations")
    _add_field_args(sub)
    sub.add_argument("--weight", type=int, required=True)
    sub.add_argument("--hodge", required=True, help="comma list, e.g. 1,2,2,1")
    sub.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker count for sweeps (results are order-deterministic; "
        "the current implementation runs sequentially)",
    )
    sub.set_defaults(fn=_cmd_orient_enumerate)

    sub = commands.add_parser("grading", help="emit the grading vector")
    _add_orientation_args(sub)
    sub.set_defaults(fn=_cmd_grading)

    sub = commands.add_parser("nondeg", help="orbit-rank nondegeneracy report")
    _add_orientation_args(sub)
    sub.set_defaults(fn=_cmd_nondeg)

    sub = commands.add_parser(
        "partition", help="support graph, partition and block verdict of an element"
    )
    sub.add_argument("--element", required=True, help="element JSON file")
    sub.set_defaults(fn=_cmd_partition)

    sub = commands.add_parser(
        "closure", help="dimension of the bracket closure of seed elements"
    )
    sub.add_argument(
        "--element",
        action="append",
        required=True,
        help="element JSON file (repeatable)",
    )
    sub.add_argument(
        "--with-cartan",
        action="store_true",
        help="also seed with the diagonal basis elements",
    )
    sub.set_defaults(fn=_cmd_closure)

    sub = commands.add_parser("escape", help="deep-nilpotent escape verdict")
    group = sub.add_mutually_exclusive_group(required=False)
    group.add_argument("--element", help="element JSON file with the nilpotent")
    sub.add_argument("--conductor", type=int, help="cyclotomic conductor m")
    sub.add_argument("--abstract-file", help="abstract CM field JSON file")
    sub.add_argument("--weight", type=int)
    sub.add_argument(
        "--orientation", help="orientation (used when no --element is given)"
    )
    sub.set_defaults(fn=_cmd_escape)

    sub = commands.add_parser("rigidity", help="horizontal rigidity verdict")
    _add_orientation_args(sub)
    sub.set_defaults(fn=_cmd_rigidity)

    sub = commands.add_parser("selftest", help="run the full acceptance suite")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "escape" and not args.element and not args.orientation:
            raise UsageError("escape needs --element, or field flags plus --orientation")
        payload = args.fn(args)
    except TheoremViolationError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "error": {"reason": exc.reason, "message": str(exc)}}, args)
        return 4
    except UsageError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "error": {"reason": exc.reason, "message": str(exc)}}, args)
        return 2
    except CMHodgeError as exc:
        _emit({"schema_version": SCHEMA_VERSION, "error": {"reason": exc.reason, "message": str(exc)}}, args)
        return 3
    _emit(payload, args)
    return 0


if __name__ == "__main__":  # pragma: no cover - exercised via python -m
    sys.exit(main())
