"""Configuration files and atomic writes.

Config is a JSON object::

    {"prefixes": {"ex": "https://example.org/"},
     "base": "https://kg.example/su/",
     "resource_base": "https://kg.example/res/",
     "default_logic_framework": "OWL-DL",
     "schema_paths": ["schemas.json"],
     "profile_paths": ["profiles.json"]}

Relative template paths resolve against the config file's directory. The
``SEMUNIT_CONFIG`` environment variable names the config file when no path
is passed explicitly.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .. import vocab as V
from ..errors import InvalidSchema
from ..store import DEFAULT_BASE, DEFAULT_RESOURCE_BASE, LOGIC_FRAMEWORKS

ENV_VAR = "SEMUNIT_CONFIG"


@dataclass
class Config:
    prefixes: dict = field(default_factory=lambda: dict(V.DEFAULT_PREFIXES))
    base: str = DEFAULT_BASE
    resource_base: str = DEFAULT_RESOURCE_BASE
    default_logic_framework: str = "OWL-DL"
    schemas: list = field(default_factory=list)
    profiles: list = field(default_factory=list)
    path: Path | None = None


def _list_doc(path: Path, key: str) -> list:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return doc[key] if isinstance(doc, dict) else doc


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Read the config at ``path``, or at $SEMUNIT_CONFIG, or return defaults."""
    from .interchange import profile_from_dict
    from ..schemas import schema_from_dict

    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise InvalidSchema(f"config {path} must be a JSON object")
    cfg = Config(path=path)
    cfg.prefixes.update(doc.get("prefixes", {}))
    cfg.base = doc.get("base", cfg.base)
    cfg.resource_base = doc.get("resource_base", cfg.resource_base)
    cfg.default_logic_framework = doc.get("default_logic_framework", cfg.default_logic_framework)
    if cfg.default_logic_framework not in LOGIC_FRAMEWORKS:
        raise InvalidSchema(f"unknown logic framework {cfg.default_logic_framework!r} in {path}")
    here = path.parent
    for p in doc.get("schema_paths", ()):
        cfg.schemas += [schema_from_dict(d, cfg.prefixes) for d in _list_doc(here / p, "schemas")]
    for p in doc.get("profile_paths", ()):
        cfg.profiles += [profile_from_dict(d, cfg.prefixes) for d in _list_doc(here / p, "profiles")]
    return cfg


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
