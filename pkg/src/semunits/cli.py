"""Command line interface.

Store files ending in ``.trig`` are read and written as TriG, everything else
as JSON interchange documents. Failures print one JSON object on stderr and
exit with status 2; ``validate`` exits with 1 when the store is invalid.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .errors import SemUnitError, UnknownFixture
from .io.config import Config, atomic_write, load_config
from .io.interchange import dumps, load_store, save_store
from .io.trig import export_trig, import_trig
from .query import ask, question_from_dict
from .schemas import _term_to_json
from .store import LayeredStore
from .terms import Iri, compact

EXIT_INVALID = 1
EXIT_ERROR = 2


def read_store(path: str, config: Config | None = None) -> LayeredStore:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".trig"):
        return import_trig(text, config.base if config else None, config.resource_base if config else None)
    return load_store(text, config)


def serialize_store(store: LayeredStore, path: str | None, fmt: str | None = None) -> str:
    fmt = fmt or ("trig" if path and path.endswith(".trig") else "json")
    return export_trig(store) if fmt == "trig" else save_store(store)


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _json(obj, out=None) -> None:
    _emit(dumps(obj), out)


# subcommands --------------------------------------------------------------

def cmd_validate(args, cfg) -> int:
    from .validation import structural_report
    report = structural_report(read_store(args.file, cfg))
    _json(report)
    return 0 if report["valid"] else EXIT_INVALID


def cmd_ingest(args, cfg) -> int:
    store = read_store(args.file, cfg)
    _emit(serialize_store(store, args.output, args.format), args.output)
    return 0


def cmd_export(args, cfg) -> int:
    _emit(export_trig(read_store(args.store, cfg)), args.output)
    return 0


def cmd_fixture(args, cfg) -> int:
    from .fixtures import FIXTURES
    if args.name not in FIXTURES:
        raise UnknownFixture(f"unknown fixture {args.name!r}; choose from {', '.join(sorted(FIXTURES))}")
    store = FIXTURES[args.name]().store
    _emit(serialize_store(store, args.output, args.format), args.output)
    return 0


def _load_question(store, path):
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(doc, dict) and set(doc) == {"gupri"}:
        return store.questions[Iri(doc["gupri"])]
    return question_from_dict(doc, store.prefix_map)


def cmd_query(args, cfg) -> int:
    store = read_store(args.store, cfg)
    q = _load_question(store, args.question)
    result = ask(store, q)
    if isinstance(result, bool):
        _json({"mode": "Boolean", "answer": result})
        return 0
    p = store.prefix_map
    rows = [{"values": {r: _term_to_json(v, p) for r, v in row.values if v is not None},
             "units": [str(u) for u in row.units]} for row in result]
    _json({"mode": "Bindings", "rows": rows})
    return 0


def cmd_translate(args, cfg) -> int:
    from .owl.bridge import translate_store
    store = read_store(args.store, cfg)
    routes = ("direct", "collection") if args.route == "both" else (args.route,)
    doc = translate_store(store, args.framework, routes=routes)
    text = doc.to_functional()
    if args.report:
        atomic_write(args.report, dumps(doc.report()))
    if args.json:
        _json({"ontology": text, "report": doc.report()}, args.output)
    else:
        _emit(text, args.output)
    return 0


def cmd_reason(args, cfg) -> int:
    from .reasoner import apply_prototypical_defaults, argue, export_program
    store = read_store(args.store, cfg)
    p = store.prefix_map
    if args.program:
        _emit(export_program(store), args.output)
        return 0
    out = {"store_hash": store.content_hash()}
    if args.defaults or not args.argue:
        out["defaults"] = [f.to_dict(p) for f in apply_prototypical_defaults(store)]
    if args.argue or not args.defaults:
        out["arguments"] = [a.to_dict(p) for a in argue(store)]
    _json(out, args.output)
    return 0


def cmd_render(args, cfg) -> int:
    from .render import dynamic_label, dynamic_mind_map
    store = read_store(args.store, cfg)
    g = Iri(args.gupri)
    if args.dot:
        _emit(dynamic_mind_map(store, g), args.output)
    else:
        _emit(dynamic_label(store, g) + "\n", args.output)
    return 0


def cmd_stats(args, cfg) -> int:
    store = read_store(args.store, cfg)
    p = store.prefix_map
    kinds = Counter(compact(k, p) for u in store.units() for k in u.kinds)
    frameworks = Counter(u.metadata.logic_framework for u in store.statement_units())
    _json({
        "units": len(store.units()),
        "statement_units": len(store.statement_units()),
        "compound_units": len(store.units()) - len(store.statement_units()),
        "data_triples": len(store.all_data_triples()),
        "units_layer_triples": len(store.units_layer()),
        "questions": len(store.questions),
        "by_kind": dict(sorted(kinds.items())),
        "by_logic_framework": dict(sorted(frameworks.items())),
    })
    return 0


# parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semunits", description="Semantic-units knowledge graph tools.")
    parser.add_argument("--config", help="config file (default: $SEMUNIT_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("validate", cmd_validate, "check partition and structural requirements")
    sp.add_argument("file")

    sp = add("ingest", cmd_ingest, "build a store from an interchange document")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.add_argument("--format", choices=("json", "trig"))

    sp = add("query", cmd_query, "answer a question unit")
    sp.add_argument("store")
    sp.add_argument("question")

    sp = add("translate", cmd_translate, "translate statement units into OWL functional syntax")
    sp.add_argument("store")
    sp.add_argument("--framework", choices=("OWL-DL", "FOL", "LogicProgram", "None"))
    sp.add_argument("--route", choices=("direct", "collection", "both"), default="both")
    sp.add_argument("--report", help="write the translation and skip report as JSON to this file")
    sp.add_argument("--json", action="store_true", help="print ontology and report as one JSON object")
    sp.add_argument("-o", "--output")

    sp = add("reason", cmd_reason, "list inferences from defaults and argument units")
    sp.add_argument("store")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--defaults", action="store_true")
    mode.add_argument("--argue", action="store_true")
    mode.add_argument("--program", action="store_true", help="print the generated logic program")
    sp.add_argument("-o", "--output")

    sp = add("render", cmd_render, "dynamic label or DOT mind map of a unit")
    sp.add_argument("store")
    sp.add_argument("gupri")
    how = sp.add_mutually_exclusive_group()
    how.add_argument("--label", action="store_true", default=True)
    how.add_argument("--dot", action="store_true")
    sp.add_argument("-o", "--output")

    sp = add("stats", cmd_stats, "unit counts by kind")
    sp.add_argument("store")

    sp = add("export", cmd_export, "export a store as TriG")
    sp.add_argument("store")
    sp.add_argument("-o", "--output")

    sp = add("fixture", cmd_fixture, "write one of the built-in example stores")
    sp.add_argument("name")
    sp.add_argument("-o", "--output")
    sp.add_argument("--format", choices=("json", "trig"))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except SemUnitError as exc:
        err = exc.to_dict()
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
