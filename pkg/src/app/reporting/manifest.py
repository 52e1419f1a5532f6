"""Run manifests written next to every command's outputs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class RunManifest(BaseModel):
    """Everything needed to repeat a command: its fully resolved options and paths.

    No timestamps or host details are recorded, so repeating a run rewrites
    the manifest byte for byte.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str
    version: str
    seeds: dict[str, int] = Field(default_factory=dict)
    config: dict[str, Any] = Field(default_factory=dict)
    inputs: dict[str, str] = Field(default_factory=dict)
    outputs: dict[str, str] = Field(default_factory=dict)

    def file_name(self) -> str:
        return f"{self.command}.manifest.json"


def manifest_json(manifest: RunManifest) -> str:
    return json.dumps(manifest.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def write_manifest(manifest: RunManifest, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / manifest.file_name()
    path.write_text(manifest_json(manifest), encoding="utf-8")
    return path


def load_manifest(path: str | Path) -> RunManifest:
    with Path(path).open("r", encoding="utf-8") as handle:
        return RunManifest.model_validate(json.load(handle))


__all__ = ["RunManifest", "manifest_json", "write_manifest", "load_manifest"]
