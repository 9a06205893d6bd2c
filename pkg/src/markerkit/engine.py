"""Interaction session: event queue, transform state, and frame composition.

Each frame the session drains its input queue, applies commands and
gestures to the accumulated transform state, and composes the final
model matrix from the current (or frozen) marker pose:

    model = pose . T(user translation, y/z slots swapped)
                 . R(90deg, X)                  (marker/model frame fix)
                 . Rx . Ry . Rz (user rotations)
                 . S(user scale)

The marker coordinate frame has Z along the marker normal while the
model frame treats Y as up; the fixed 90-degree X rotation plus the
y/z swap of the translation slots reconcile the two, so a user "up"
translation lifts the model off the marker plane.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum, auto

from . import scene
from .math3d import Mat4, SingularMatrixError, Vec3
from .orientation import (
    OrientationQuadrant,
    OrientationState,
    marker_orientation_deg,
    remap_translation,
)

SCALE_MIN = 0.3
SCALE_MAX = 5.0
MAX_QUEUE = 1024

FRAME_CONVERSION = Mat4.rotation(90.0, Vec3(1.0, 0.0, 0.0))


class QueueFullError(RuntimeError):
    """Input queue hit its bound; the consumer has stalled."""


class NoPoseYetError(RuntimeError):
    """Inspection mode needs at least one previously seen visible pose."""


class EventParseError(ValueError):
    """Malformed event-trace line; carries the 1-based line number."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class EventKind(Enum):
    TOUCH_DOWN = auto()
    TOUCH_MOVE = auto()
    TOUCH_UP = auto()
    TAP = auto()
    PINCH_SCALE = auto()
    COMMAND = auto()


class Command(Enum):
    SET_MODE_TRANSLATE = auto()
    SET_MODE_ROTATE = auto()
    SET_AXIS_X = auto()
    SET_AXIS_Y = auto()
    SET_AXIS_Z = auto()
    RESET = auto()
    TOGGLE_VIEW_MODE = auto()
    TOGGLE_GIZMO = auto()


class InteractionMode(Enum):
    TRANSLATE = auto()
    ROTATE = auto()


class ViewMode(Enum):
    TRACKING = auto()
    INSPECTION = auto()


class Axis(Enum):
    X = 0
    Y = 1
    Z = 2


@dataclass(frozen=True)
class InputEvent:
    """One queued UI event. Touch kinds carry pixels, pinch an absolute
    scale factor (1.0 = original size), COMMAND a Command value."""

    kind: EventKind
    x: float = 0.0
    y: float = 0.0
    scale_factor: float = 1.0
    command: Command | None = None

    def __post_init__(self):
        if self.kind is EventKind.PINCH_SCALE and self.scale_factor <= 0.0:
            raise ValueError(f"pinch scale factor must be > 0, got {self.scale_factor}")
        if self.kind is EventKind.COMMAND and self.command is None:
            raise ValueError("COMMAND event needs a command")

    @classmethod
    def touch_down(cls, x: float, y: float) -> InputEvent:
        return cls(EventKind.TOUCH_DOWN, x=x, y=y)

    @classmethod
    def touch_move(cls, x: float, y: float) -> InputEvent:
        return cls(EventKind.TOUCH_MOVE, x=x, y=y)

    @classmethod
    def touch_up(cls, x: float, y: float) -> InputEvent:
        return cls(EventKind.TOUCH_UP, x=x, y=y)

    @classmethod
    def tap(cls, x: float, y: float) -> InputEvent:
        return cls(EventKind.TAP, x=x, y=y)

    @classmethod
    def pinch(cls, scale_factor: float) -> InputEvent:
        return cls(EventKind.PINCH_SCALE, scale_factor=scale_factor)

    @classmethod
    def of_command(cls, command: Command) -> InputEvent:
        return cls(EventKind.COMMAND, command=command)


@dataclass(frozen=True)
class TransformState:
    """Accumulated user transforms; scale is absolute and clamped."""

    cum_translation: Vec3 = field(default_factory=Vec3)
    cum_rotation_deg: Vec3 = field(default_factory=Vec3)
    scale: float = 1.0


@dataclass
class SessionModes:
    interaction: InteractionMode = InteractionMode.TRANSLATE
    view: ViewMode = ViewMode.TRACKING
    axis: Axis = Axis.X
    gizmo_visible: bool = True


@dataclass(frozen=True)
class MarkerPose:
    """Object-to-camera pose of the tracked marker for one frame."""

    matrix: Mat4
    visible: bool = True
    timestamp_ms: int = 0


@dataclass(frozen=True)
class FrameOutput:
    model_matrix: Mat4
    orientation: OrientationQuadrant
    quantized_angle_deg: float
    events: tuple[scene.UiMessage, ...]
    marker_visible: bool


@dataclass(frozen=True)
class EngineConfig:
    viewport_w: float = 800.0
    viewport_h: float = 600.0
    fov_y_deg: float = 60.0
    translate_gain: float = 0.5  # world units per pixel
    rotate_gain: float = 0.5  # degrees per pixel
    pick_max_dist: float = scene.DEFAULT_MAX_PICK_DIST


def clamp_scale(factor: float) -> float:
    return max(SCALE_MIN, min(SCALE_MAX, factor))


def compose_model_matrix(pose: Mat4, state: TransformState) -> Mat4:
    """Final model matrix for a marker pose and accumulated transforms.

    The translation is applied in the marker frame with the y and z
    slots swapped (user y is height, marker z is the normal); the
    cum_rotation vector applies per axis, X then Y then Z, after the
    frame-conversion rotation; scale comes last.
    """
    c = state.cum_translation
    m = pose @ Mat4.translation(c.x, c.z, c.y) @ FRAME_CONVERSION
    r = state.cum_rotation_deg
    if r.x != 0.0:
        m = m @ Mat4.rotation(r.x, Vec3(1.0, 0.0, 0.0))
    if r.y != 0.0:
        m = m @ Mat4.rotation(r.y, Vec3(0.0, 1.0, 0.0))
    if r.z != 0.0:
        m = m @ Mat4.rotation(r.z, Vec3(0.0, 0.0, 1.0))
    if state.scale != 1.0:
        m = m @ Mat4.scaling(state.scale)
    return m


_AXIS_VECTORS = {
    Axis.X: Vec3(1.0, 0.0, 0.0),
    Axis.Y: Vec3(0.0, 1.0, 0.0),
    Axis.Z: Vec3(0.0, 0.0, 1.0),
}


def apply_touch_delta(state: TransformState, modes: SessionModes,
                      quadrant: OrientationQuadrant, dx_px: float, dy_px: float,
                      translate_gain: float = 0.5,
                      rotate_gain: float = 0.5) -> TransformState:
    """Fold one touch-move delta into the transform state.

    Translation: the active axis moves by the horizontal delta (X and Z
    axes) or the negated vertical delta (Y axis, so screen-up is
    world-up), scaled by the gain, then remapped by the orientation
    quadrant. Rotation: the horizontal delta turns into degrees about
    the active axis; no quadrant remap applies to rotations.
    """
    if modes.interaction is InteractionMode.TRANSLATE:
        amount = (dx_px if modes.axis in (Axis.X, Axis.Z) else -dy_px) * translate_gain
        delta = remap_translation(_AXIS_VECTORS[modes.axis] * amount, quadrant)
        return replace(state, cum_translation=state.cum_translation + delta)

    amount = dx_px * rotate_gain
    r = state.cum_rotation_deg
    if modes.axis is Axis.X:
        r = Vec3(r.x + amount, r.y, r.z)
    elif modes.axis is Axis.Y:
        r = Vec3(r.x, r.y + amount, r.z)
    else:
        r = Vec3(r.x, r.y, r.z + amount)
    return replace(state, cum_rotation_deg=r)


class Session:
    """One interactive session: an event queue feeding a frame loop.

    Exactly one producer may enqueue_event while one consumer runs
    step_frame; the queue is the only shared state (deque append and
    popleft are atomic). Everything else belongs to the consumer.
    """

    def __init__(self, config: EngineConfig | None = None,
                 parts: list[scene.Part] | None = None,
                 registry: scene.PartsRegistry | None = None):
        self.config = config or EngineConfig()
        self.parts = parts if parts is not None else []
        self.registry = registry or scene.PartsRegistry()
        self.state = TransformState()
        self.modes = SessionModes()
        self.orientation_state = OrientationState()
        self.camera = scene.PickCamera(self.config.viewport_w, self.config.viewport_h,
                                       self.config.fov_y_deg)
        self._queue: deque[InputEvent] = deque()
        self._last_touch: tuple[float, float] | None = None
        self._last_visible_pose: Mat4 | None = None
        self._frozen_pose: Mat4 | None = None
        self._last_model_matrix: Mat4 = Mat4.identity()

    # -- producer side -------------------------------------------------

    def enqueue_event(self, event: InputEvent) -> None:
        """Append an event FIFO; raises QueueFullError beyond 1024."""
        if len(self._queue) >= MAX_QUEUE:
            raise QueueFullError(f"input queue exceeded {MAX_QUEUE} events")
        self._queue.append(event)

    # -- consumer side -------------------------------------------------

    def set_view_mode(self, mode: ViewMode) -> None:
        """Switch tracking/inspection; same-mode calls are no-ops.

        Entering inspection freezes a copy of the last visible pose and
        raises NoPoseYetError when none has been seen.
        """
        if mode is self.modes.view:
            return
        if mode is ViewMode.INSPECTION:
            if self._last_visible_pose is None:
                raise NoPoseYetError("no visible pose seen yet")
            self._frozen_pose = self._last_visible_pose
        else:
            self._frozen_pose = None
        self.modes.view = mode

    def step_frame(self, pose: MarkerPose) -> FrameOutput:
        """Process one frame: orientation, queued input, composition.

        In tracking mode the orientation quadrant is recomputed from the
        incoming pose before events are applied, so a drag in the same
        frame already uses the fresh quadrant; in inspection mode the
        quadrant stays latched. Frames whose marker is not visible (in
        tracking mode) never alter the transform state: touch moves,
        pinches, resets and taps are inert, while mode/axis/view/gizmo
        commands still apply. Degenerate (non-invertible) poses are
        treated as invisible. step_frame itself never raises.
        """
        tracking = self.modes.view is ViewMode.TRACKING
        pose_usable = pose.visible
        if tracking and pose_usable:
            try:
                marker_orientation_deg(pose.matrix, self.orientation_state)
            except SingularMatrixError:
                pose_usable = False
            else:
                self._last_visible_pose = pose.matrix

        interactive = not tracking or pose_usable
        messages: list[scene.UiMessage] = []
        while self._queue:
            event = self._queue.popleft()
            self._handle_event(event, pose, interactive, messages)
            interactive = self.modes.view is not ViewMode.TRACKING or pose_usable

        if self.modes.view is ViewMode.INSPECTION:
            model_matrix = compose_model_matrix(self._frozen_pose, self.state)
            marker_visible = True
        elif pose_usable:
            model_matrix = compose_model_matrix(pose.matrix, self.state)
            marker_visible = True
        else:
            model_matrix = self._last_model_matrix
            marker_visible = False
        self._last_model_matrix = model_matrix

        quadrant = self.orientation_state.last_quadrant
        return FrameOutput(model_matrix=model_matrix,
                           orientation=quadrant,
                           quantized_angle_deg=quadrant.angle_deg,
                           events=tuple(messages),
                           marker_visible=marker_visible)

    def _handle_event(self, event: InputEvent, pose: MarkerPose,
                      interactive: bool, messages: list[scene.UiMessage]) -> None:
        kind = event.kind
        if kind is EventKind.COMMAND:
            self._handle_command(event.command, interactive)
        elif kind is EventKind.TOUCH_DOWN:
            self._last_touch = (event.x, event.y)
        elif kind is EventKind.TOUCH_UP:
            self._last_touch = None
        elif kind is EventKind.TOUCH_MOVE:
            if self._last_touch is not None and interactive:
                dx = event.x - self._last_touch[0]
                dy = event.y - self._last_touch[1]
                self.state = apply_touch_delta(
                    self.state, self.modes, self.orientation_state.last_quadrant,
                    dx, dy, self.config.translate_gain, self.config.rotate_gain)
            self._last_touch = (event.x, event.y)
        elif kind is EventKind.PINCH_SCALE:
            if interactive:
                self.state = replace(self.state, scale=clamp_scale(event.scale_factor))
        elif kind is EventKind.TAP:
            if interactive and self.parts:
                self._handle_tap(event, pose, messages)

    def _handle_command(self, command: Command, interactive: bool) -> None:
        if command is Command.SET_MODE_TRANSLATE:
            self.modes.interaction = InteractionMode.TRANSLATE
        elif command is Command.SET_MODE_ROTATE:
            self.modes.interaction = InteractionMode.ROTATE
        elif command is Command.SET_AXIS_X:
            self.modes.axis = Axis.X
        elif command is Command.SET_AXIS_Y:
            self.modes.axis = Axis.Y
        elif command is Command.SET_AXIS_Z:
            self.modes.axis = Axis.Z
        elif command is Command.TOGGLE_GIZMO:
            self.modes.gizmo_visible = not self.modes.gizmo_visible
        elif command is Command.RESET:
            if interactive:
                self.state = TransformState()
        elif command is Command.TOGGLE_VIEW_MODE:
            target = (ViewMode.INSPECTION if self.modes.view is ViewMode.TRACKING
                      else ViewMode.TRACKING)
            try:
                self.set_view_mode(target)
            except NoPoseYetError:
                pass  # nothing to inspect yet; stay in tracking

    def _handle_tap(self, event: InputEvent, pose: MarkerPose,
                    messages: list[scene.UiMessage]) -> None:
        try:
            ray = scene.screen_to_world_ray(self.camera, event.x, event.y)
        except scene.OutOfViewportError:
            return
        base = self._frozen_pose if self.modes.view is ViewMode.INSPECTION else pose.matrix
        matrix = compose_model_matrix(base, self.state)
        hit = scene.pick(ray, self.parts, matrix, self.config.pick_max_dist)
        if hit is not None:
            messages.extend(scene.select_part(self.parts, self.registry, hit[0]))


# -- event trace files -------------------------------------------------

_COMMAND_NAMES = {c.name: c for c in Command}


def parse_event_line(path: str, line_no: int, line: str) -> tuple[int, InputEvent]:
    """Parse one `<timestamp_ms> <KIND> [args...]` trace line."""
    tokens = line.split()
    try:
        ts = int(tokens[0])
    except ValueError:
        raise EventParseError(path, line_no, f"bad timestamp '{tokens[0]}'") from None
    return ts, parse_event(path, line_no, tokens[1:])


def parse_event(path: str, line_no: int, tokens: list[str]) -> InputEvent:
    """Parse an event from its tokens (kind plus arguments)."""
    if not tokens:
        raise EventParseError(path, line_no, "missing event kind")
    kind = tokens[0]
    args = tokens[1:]
    if kind in ("TOUCH_DOWN", "TOUCH_MOVE", "TOUCH_UP", "TAP"):
        if len(args) != 2:
            raise EventParseError(path, line_no, f"{kind} needs x and y")
        try:
            x, y = float(args[0]), float(args[1])
        except ValueError:
            raise EventParseError(path, line_no, f"non-numeric coordinates {args}") from None
        return InputEvent(EventKind[kind], x=x, y=y)
    if kind == "PINCH_SCALE":
        if len(args) != 1:
            raise EventParseError(path, line_no, "PINCH_SCALE needs one factor")
        try:
            factor = float(args[0])
        except ValueError:
            raise EventParseError(path, line_no, f"non-numeric factor '{args[0]}'") from None
        if factor <= 0.0:
            raise EventParseError(path, line_no, f"scale factor must be > 0, got {factor}")
        return InputEvent(EventKind.PINCH_SCALE, scale_factor=factor)
    if kind == "COMMAND":
        if len(args) != 1 or args[0] not in _COMMAND_NAMES:
            raise EventParseError(path, line_no, f"unknown command {args}")
        return InputEvent(EventKind.COMMAND, command=_COMMAND_NAMES[args[0]])
    raise EventParseError(path, line_no, f"unknown event kind '{kind}'")


def load_event_trace(path: str) -> list[tuple[int, InputEvent]]:
    """Read a timestamped event trace; blank lines and # comments skipped."""
    events: list[tuple[int, InputEvent]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            events.append(parse_event_line(path, line_no, line))
    return events
