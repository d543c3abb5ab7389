"""Regenerate the files under tests/golden/.

Run ``python tests/make_goldens.py`` only after an intended output change,
then review the diff before committing it.
"""
from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from semunits import fixtures as F  # noqa: E402
from semunits.owl import axioms as A  # noqa: E402
from semunits.owl.bridge import translate_store, translate_unit  # noqa: E402
from semunits.render import dynamic_label, dynamic_mind_map  # noqa: E402

from conftest import GOLDEN  # noqa: E402
from test_acceptance import _label_cases  # noqa: E402


def outputs() -> dict:
    sw = F.swan_fixture()
    out = {
        "every_swan.ofn": "\n".join(sorted(A.render_axiom(a, sw.store.prefix_map)
                                           for a in translate_unit(sw.store, sw["everySwanIdent"]))) + "\n",
        "cardinality.ofn": translate_store(F.cardinality_fixture().store).to_functional(),
    }
    for name, (store, target) in _label_cases().items():
        out[name] = dynamic_label(store, target) + "\n"
    w, item = F.weight_fixture(), F.item_fixture()
    out["dot_weight.dot"] = dynamic_mind_map(w.store, w["weight"])
    out["dot_item.dot"] = dynamic_mind_map(item.store, item["item"])
    return out


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, text in outputs().items():
        (GOLDEN / name).write_text(text, encoding="utf-8")
        print(f"wrote {name}")
