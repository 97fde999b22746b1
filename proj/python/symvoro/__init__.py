"""Curved tiles from Voronoi diagrams of symmetric line sites."""

import json

from . import _core
from ._core import MAX_RESOLUTION, PipelineError, SceneError, groups, set_worker_count, worker_count

__all__ = [
    "MAX_RESOLUTION",
    "PipelineError",
    "SceneError",
    "groups",
    "normalize_scene",
    "set_worker_count",
    "survey",
    "tessellate",
    "worker_count",
]


def _scene_text(scene):
    return scene if isinstance(scene, str) else json.dumps(scene)


def normalize_scene(scene):
    """Validate a scene (dict or JSON text) and return it as a dict with defaults filled in."""
    return json.loads(_core.normalize_scene(_scene_text(scene)))


def tessellate(scene, geometry=True):
    """Run the pipeline on a scene.

    Returns a dict with ``png`` (bytes), ``svg`` (str), ``report`` (dict),
    ``labels`` (int32 array, row 0 at the top) and ``timing_ms``.
    """
    out = _core.tessellate(_scene_text(scene), geometry)
    out["report"] = json.loads(out["report"])
    return out


def survey(groups=(), trials=20, seed=1, resolution=512, cells=2):
    """Random-stroke survey of curved and straight boundary arcs per group."""
    return _core.survey(list(groups), trials, seed, resolution, cells)
