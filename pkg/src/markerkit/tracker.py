"""Deterministic pose sources: scripted camera orbits and trace files.

The live camera tracker is replaced by synthetic object-to-camera poses.
An orbit script moves a virtual camera on a circle around the marker at
a fixed height, always looking at the marker center with the marker
normal as the reference up direction. Pose traces serialize sampled
poses losslessly for replay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .math3d import Mat4, Vec3


class TraceParseError(ValueError):
    """Malformed pose-trace file; carries the 1-based line number."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class OutOfRangeError(ValueError):
    """Sample time outside the script duration."""


@dataclass(frozen=True)
class PoseSample:
    timestamp_ms: int
    visible: bool
    matrix: Mat4 | None = None


@dataclass(frozen=True)
class OrbitScript:
    """Camera circling the marker.

    At azimuth phi (degrees, growing with time) the camera sits at
    (radius*sin(phi), radius*cos(phi), height) in marker coordinates, so
    the extracted marker orientation starts at 180 degrees for phi=0 and
    follows 180+phi. Dropout intervals simulate tracking loss:
    start_ms <= t < end_ms yields an invisible sample.
    """

    radius: float
    height: float = 0.0
    angular_speed_deg_s: float = 90.0
    fps: float = 30.0
    duration_s: float = 4.0
    dropout_intervals: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.radius <= 0.0:
            raise ValueError("orbit radius must be > 0")
        if self.fps <= 0.0:
            raise ValueError("fps must be > 0")
        if self.duration_s < 0.0:
            raise ValueError("duration must be >= 0")
        duration_ms = self.duration_s * 1000.0
        for start, end in self.dropout_intervals:
            if not (0 <= start <= end <= duration_ms):
                raise ValueError(f"dropout ({start}, {end}) outside the script duration")

    def frame_count(self) -> int:
        return int(self.duration_s * self.fps + 1e-9)

    def frame_timestamps_ms(self) -> list[int]:
        return [round(k * 1000.0 / self.fps) for k in range(self.frame_count())]


def orbit_pose(script: OrbitScript, t_ms: int) -> PoseSample:
    """Object-to-camera pose of the orbiting camera at time t_ms.

    Raises OutOfRangeError outside [0, duration].
    """
    if not 0 <= t_ms <= script.duration_s * 1000.0:
        raise OutOfRangeError(f"t={t_ms}ms outside 0..{script.duration_s * 1000.0:.0f}ms")
    for start, end in script.dropout_intervals:
        if start <= t_ms < end:
            return PoseSample(t_ms, visible=False)

    phi = math.radians(script.angular_speed_deg_s * (t_ms / 1000.0))
    eye = Vec3(script.radius * math.sin(phi), script.radius * math.cos(phi), script.height)
    fwd = (-eye).normalize()
    up = Vec3(0.0, 0.0, 1.0)  # marker normal
    side = fwd.cross(up).normalize()
    cam_up = side.cross(fwd)
    # Rows side / cam_up / -fwd rotate marker space into camera space.
    matrix = Mat4((
        side.x, cam_up.x, -fwd.x, 0.0,
        side.y, cam_up.y, -fwd.y, 0.0,
        side.z, cam_up.z, -fwd.z, 0.0,
        -side.dot(eye), -cam_up.dot(eye), fwd.dot(eye), 1.0,
    ))
    return PoseSample(t_ms, visible=True, matrix=matrix)


def generate_orbit_trace(script: OrbitScript) -> list[PoseSample]:
    """All samples of the script, one per frame at the script fps."""
    return [orbit_pose(script, t) for t in script.frame_timestamps_ms()]


def save_pose_trace(path: str, samples: list[PoseSample]) -> None:
    """Write samples as text, one per line, losslessly (17 significant digits).

    Raises ValueError for an empty sample list.
    """
    if not samples:
        raise ValueError("refusing to write an empty pose trace")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for s in samples:
            if s.visible:
                scalars = " ".join(f"{v:.17g}" for v in s.matrix.m)
                fh.write(f"{s.timestamp_ms} POSE {scalars}\n")
            else:
                fh.write(f"{s.timestamp_ms} LOST\n")


def load_pose_trace(path: str) -> list[PoseSample]:
    """Read a pose trace written by save_pose_trace.

    Raises TraceParseError on malformed lines, unknown keywords,
    decreasing timestamps, or an empty file.
    """
    samples: list[PoseSample] = []
    last_ts: int | None = None
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            tokens = raw.split()
            if not tokens:
                continue
            try:
                ts = int(tokens[0])
            except ValueError:
                raise TraceParseError(path, line_no, f"bad timestamp '{tokens[0]}'") from None
            if last_ts is not None and ts < last_ts:
                raise TraceParseError(path, line_no, f"timestamp {ts} decreases")
            last_ts = ts
            if len(tokens) < 2:
                raise TraceParseError(path, line_no, "missing sample kind")
            kind = tokens[1]
            if kind == "LOST":
                samples.append(PoseSample(ts, visible=False))
            elif kind == "POSE":
                if len(tokens) != 18:
                    raise TraceParseError(path, line_no, "POSE needs 16 scalars")
                try:
                    matrix = Mat4(float(t) for t in tokens[2:])
                except ValueError:
                    raise TraceParseError(path, line_no, "non-numeric matrix element") from None
                samples.append(PoseSample(ts, visible=True, matrix=matrix))
            else:
                raise TraceParseError(path, line_no, f"unknown sample kind '{kind}'")
    if not samples:
        raise TraceParseError(path, 1, "empty pose trace")
    return samples
