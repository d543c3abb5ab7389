"""Interchange documents, configuration, TriG parsing and the command line."""
from __future__ import annotations

import json
import os

import pytest

from semunits import fixtures as F
from semunits.cli import main
from semunits.errors import BlankNodeRejected, CycleDetected, PreconditionError, ParseError, UnknownUnit
from semunits.io.config import ENV_VAR, atomic_write, load_config
from semunits.io.interchange import load_store, save_store, store_from_dict, store_to_dict
from semunits.io.trig import export_trig, format_term, import_trig
from semunits.query import TypedVariable, derive_question, question_to_dict, register_question, underspecify
from semunits.render import dynamic_label
from semunits.terms import Literal
from semunits.validation import structural_report


# JSON interchange -----------------------------------------------------------

@pytest.mark.parametrize("name", sorted(F.FIXTURES))
def test_json_round_trip_keeps_content(name):
    store = F.FIXTURES[name]().store
    text = save_store(store)
    again = load_store(text)
    assert again.content_hash() == store.content_hash()
    assert save_store(again) == text


def test_questions_survive_json(apples):
    s = apples.store
    q = register_question(s, derive_question(s, apples["weightX"]))
    again = load_store(save_store(s))
    assert again.questions[q.gupri] == q


BUILD = [
    {"op": "class", "iri": "obo:NCBITaxon_8867", "label": "swan"},
    {"op": "class", "iri": "obo:PATO_0000323", "label": "white"},
    {"op": "identify", "ref": "anton", "label": "Swan Anton", "category": "NamedIndividual",
     "class": "obo:NCBITaxon_8867"},
    {"op": "identify", "ref": "white", "label": "some white", "category": "SomeInstance",
     "class": "obo:PATO_0000323"},
    {"op": "statement", "ref": "fact", "schema": "has-quality", "subject": "@anton", "objects": ["@white"]},
    {"op": "negate", "unit": "@fact"},
]


def test_build_operations_replay():
    store = store_from_dict({"build": BUILD})
    (fact,) = [u for u in store.statement_units() if u.metadata.schema_id and u.metadata.schema_id.endswith("quality")]
    assert dynamic_label(store, fact.gupri) == "Swan Anton is not white"
    assert structural_report(store)["valid"]


def test_build_errors_name_the_step():
    with pytest.raises(PreconditionError) as exc:
        store_from_dict({"build": [{"op": "teleport"}]})
    assert exc.value.to_dict()["step"] == 0
    with pytest.raises(UnknownUnit):
        store_from_dict({"build": [{"op": "negate", "unit": "@nothing"}]})


def test_dangling_and_cyclic_documents_are_rejected():
    doc = store_to_dict(F.item_fixture().store)
    item = next(u for u in doc["units"] if u.get("associations"))
    item["associations"].append([item["associations"][0][0], "https://kg.example/su/ghost-0001"])
    with pytest.raises(UnknownUnit):
        store_from_dict(doc)

    doc = store_to_dict(F.antenna_fixture().store)
    group = next(u for u in doc["units"] if u["gupri"].endswith("item-group-unit-0001"))
    member = next(u for u in doc["units"] if u["gupri"] == group["associations"][0][1])
    member["associations"].append([group["associations"][0][0], group["gupri"]])
    with pytest.raises(CycleDetected):
        store_from_dict(doc)


# configuration --------------------------------------------------------------

def test_config_defaults_and_environment(tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert load_config().path is None
    cfg_file = tmp_path / "cfg.json"
    cfg_file.write_text(json.dumps({"prefixes": {"ex": "https://ex.org/"}, "base": "https://ex.org/su/",
                                    "default_logic_framework": "FOL"}))
    monkeypatch.setenv(ENV_VAR, str(cfg_file))
    cfg = load_config()
    assert (cfg.base, cfg.default_logic_framework, cfg.prefixes["ex"]) == ("https://ex.org/su/", "FOL",
                                                                           "https://ex.org/")
    store = store_from_dict({"build": BUILD[:3]}, cfg)
    assert all(str(u.gupri).startswith("https://ex.org/su/") for u in store.units())


def test_config_rejects_unknown_framework(tmp_path):
    from semunits.errors import InvalidSchema
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"default_logic_framework": "Magic"}))
    with pytest.raises(InvalidSchema):
        load_config(bad)


def test_atomic_write_replaces_whole_file(tmp_path):
    target = tmp_path / "out.txt"
    target.write_text("old contents that are longer")
    atomic_write(target, "new")
    assert target.read_text() == "new"
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]


# TriG -----------------------------------------------------------------------

@pytest.mark.parametrize("text", [
    "<https://ex.org/g> { <https://ex.org/a> <https://ex.org/b> }",
    "<https://ex.org/g> { <https://ex.org/a> <https://ex.org/b> \"open .\n}",
    "nope:g { }",
])
def test_trig_syntax_errors(text):
    with pytest.raises(ParseError):
        import_trig(text)


def test_trig_blank_node_in_subject_position():
    with pytest.raises(BlankNodeRejected) as exc:
        import_trig("<https://ex.org/g> {\n_:x <https://ex.org/b> <https://ex.org/c> .\n}\n")
    assert exc.value.line == 2


def test_trig_literal_escapes_round_trip(weight):
    s = weight.store
    assert import_trig(export_trig(s)).content_hash() == s.content_hash()
    assert format_term(Literal('say "hi"\n'), {}) == '"say \\"hi\\"\\n"'


# structural validation ------------------------------------------------------

def test_structural_report_for_fixtures():
    for name, build in F.FIXTURES.items():
        report = structural_report(build().store)
        if name == "mixed-framework":
            assert report["checks"]["typed_instantiation"], name
        else:
            assert report["valid"], (name, report)


# command line ---------------------------------------------------------------

@pytest.fixture
def swan_file(tmp_path):
    assert main(["fixture", "swans", "-o", str(tmp_path / "swans.json")]) == 0
    return tmp_path / "swans.json"


def test_fixture_writes_both_formats(tmp_path):
    assert main(["fixture", "weight", "-o", str(tmp_path / "w.trig")]) == 0
    assert main(["fixture", "weight", "-o", str(tmp_path / "w.json")]) == 0
    a = load_store((tmp_path / "w.json").read_text())
    b = import_trig((tmp_path / "w.trig").read_text())
    assert a.content_hash() == b.content_hash()


def test_validate_exit_codes(tmp_path, swan_file, capsys):
    assert main(["validate", str(swan_file)]) == 0
    assert json.loads(capsys.readouterr().out)["valid"] is True
    mixed = tmp_path / "mixed.json"
    main(["fixture", "mixed-framework", "-o", str(mixed)])
    assert main(["validate", str(mixed)]) == 1


def test_ingest_and_export(tmp_path, swan_file):
    out = tmp_path / "copy.trig"
    assert main(["ingest", str(swan_file), "-o", str(out)]) == 0
    exported = tmp_path / "again.trig"
    assert main(["export", str(out), "-o", str(exported)]) == 0
    assert exported.read_text() == out.read_text()


def test_query_command(tmp_path, capsys):
    store_path = tmp_path / "apples.json"
    main(["fixture", "three-apples", "-o", str(store_path)])
    capsys.readouterr()
    f = F.three_apples_fixture()
    q = underspecify(derive_question(f.store, f["weightX"]), "subject", TypedVariable(), f.store)
    qpath = tmp_path / "q.json"
    qpath.write_text(json.dumps(question_to_dict(q, f.store.prefix_map)))
    assert main(["query", str(store_path), str(qpath)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mode"] == "Bindings"
    assert [r["values"]["subject"] for r in out["rows"]] == [str(f["appleX"])]


def test_reason_command(tmp_path, capsys):
    path = tmp_path / "args.json"
    main(["fixture", "arguments", "-o", str(path)])
    capsys.readouterr()
    assert main(["reason", str(path), "--argue"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert "defaults" not in out and len(out["arguments"]) == 4
    assert main(["reason", str(path), "--program"]) == 0
    assert ":-" in capsys.readouterr().out


def test_render_command(swan_file, capsys):
    f = F.swan_fixture()
    capsys.readouterr()
    assert main(["render", str(swan_file), str(f["antonWhite"])]) == 0
    assert capsys.readouterr().out == "Swan Anton is white\n"
    assert main(["render", str(swan_file), str(f["antonWhite"]), "--dot"]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_stats_command(swan_file, capsys):
    capsys.readouterr()
    assert main(["stats", str(swan_file)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["units"] == out["statement_units"] + out["compound_units"]
    assert out["by_logic_framework"] == {"OWL-DL": out["statement_units"]}


def test_translate_report_file(tmp_path, swan_file, capsys):
    report = tmp_path / "report.json"
    capsys.readouterr()
    assert main(["translate", str(swan_file), "--report", str(report)]) == 0
    assert capsys.readouterr().out.startswith("Prefix(")
    assert json.loads(report.read_text())["axiom_count"] > 0


def test_errors_exit_2_with_json_on_stderr(tmp_path, swan_file, capsys):
    capsys.readouterr()
    assert main(["render", str(swan_file), "https://kg.example/su/nothing-0001"]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "unknown-unit"
    assert main(["stats", str(tmp_path / "missing.json")]) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "FileNotFoundError"
    bad = tmp_path / "bad.trig"
    bad.write_text("<https://ex.org/g> { _:b <https://ex.org/p> <https://ex.org/o> . }")
    assert main(["validate", str(bad)]) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "blank-node-rejected"
    assert main(["fixture", "unicorn"]) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "unknown-fixture"


def test_cli_reads_config_from_environment(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"default_logic_framework": "Nope"}))
    monkeypatch.setenv(ENV_VAR, str(cfg))
    path = tmp_path / "w.json"
    assert main(["fixture", "weight", "-o", str(path)]) == 2
    assert json.loads(capsys.readouterr().err)["error"] == "invalid-schema"
    assert not os.path.exists(path)
