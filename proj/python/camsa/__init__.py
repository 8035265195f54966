"""Python access to the CAMSA scoring engine."""

import json
from pathlib import Path

from ._camsa import (
    CamsaError,
    point_in_polygon,
    segments_intersect,
    time_score_from_frames,
    time_score_from_seconds,
)
from . import _camsa

__all__ = [
    "CamsaError",
    "aggregate",
    "point_in_polygon",
    "score_bundle",
    "segments_intersect",
    "synthesize",
    "time_score_from_frames",
    "time_score_from_seconds",
]


def score_bundle(manifest, config=None):
    """Score a run bundle manifest and return the report as a dict."""
    text = json.dumps(config) if config else ""
    return json.loads(_camsa.score_bundle(Path(manifest), text))


def synthesize(script, out_dir):
    """Generate a synthetic run from a script dict; returns the manifest path."""
    return Path(_camsa.synthesize(json.dumps(script), Path(out_dir)))


def aggregate(rows):
    """Average (label, actions, time_score) rows per label."""
    return json.loads(_camsa.aggregate([(r[0], list(r[1]), float(r[2])) for r in rows]))
