"""Marker-driven AR interaction engine.

Composes marker poses with user translate/rotate/scale gestures,
resolves the marker orientation so screen drags stay consistent from
every side, picks model parts with contextual info, and replays or
serves deterministic pose traces in place of a camera tracker.
"""

from .engine import (
    Axis,
    Command,
    EngineConfig,
    EventKind,
    FrameOutput,
    InputEvent,
    InteractionMode,
    MarkerPose,
    Session,
    SessionModes,
    TransformState,
    ViewMode,
    apply_touch_delta,
    compose_model_matrix,
)
from .math3d import Mat4, Vec3
from .orientation import (
    OrientationQuadrant,
    OrientationState,
    camera_position_object_space,
    marker_orientation_deg,
    quantize_orientation,
    remap_translation,
)
from .scene import Part, PartsRegistry, PickCamera, Ray, UiMessage, load_model, load_registry, pick, screen_to_world_ray, select_part
from .tracker import OrbitScript, PoseSample, generate_orbit_trace, load_pose_trace, orbit_pose, save_pose_trace

__all__ = [
    "Axis", "Command", "EngineConfig", "EventKind", "FrameOutput", "InputEvent",
    "InteractionMode", "MarkerPose", "Session", "SessionModes", "TransformState",
    "ViewMode", "apply_touch_delta", "compose_model_matrix",
    "Mat4", "Vec3",
    "OrientationQuadrant", "OrientationState", "camera_position_object_space",
    "marker_orientation_deg", "quantize_orientation", "remap_translation",
    "Part", "PartsRegistry", "PickCamera", "Ray", "UiMessage",
    "load_model", "load_registry", "pick", "screen_to_world_ray", "select_part",
    "OrbitScript", "PoseSample", "generate_orbit_trace", "load_pose_trace",
    "orbit_pose", "save_pose_trace",
]
