"""Report tables and run manifests."""

from .manifest import RunManifest, load_manifest, manifest_json, write_manifest
from .tables import (
    MISSING_TEXT,
    RAW_AUTOMARKER,
    curve_frame,
    decision_frame,
    gradcheck_frame,
    level_frame,
    release_frame,
    render_text,
    sweep_frame,
    to_csv_text,
    write_csv,
    write_text,
)

__all__ = [
    "RunManifest",
    "manifest_json",
    "write_manifest",
    "load_manifest",
    "MISSING_TEXT",
    "RAW_AUTOMARKER",
    "sweep_frame",
    "release_frame",
    "decision_frame",
    "level_frame",
    "curve_frame",
    "gradcheck_frame",
    "to_csv_text",
    "write_csv",
    "render_text",
    "write_text",
]
