"""Command line entry points: trace replay, orientation tables, live server.

Exit codes: 0 success, 2 file/flag parse errors, 3 engine errors,
4 port already in use.
"""

from __future__ import annotations

import argparse
import sys

from . import scene, tracker
from .engine import (
    EngineConfig,
    EventParseError,
    FrameOutput,
    MarkerPose,
    QueueFullError,
    Session,
    TransformState,
    load_event_trace,
)
from .math3d import Mat4
from .orientation import OrientationState, marker_orientation_deg, quantize_orientation

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ENGINE = 3
EXIT_PORT = 4

_PARSE_ERRORS = (tracker.TraceParseError, EventParseError, scene.ModelParseError,
                 scene.EmptyModelError, FileNotFoundError, IsADirectoryError)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def format_frame_line(index: int, timestamp_ms: int, out: FrameOutput,
                      state: TransformState) -> str:
    """One replay-log record: comma-separated, scalars at 17 significant
    digits, UI messages joined by ';' in the final field ('-' if none)."""
    fields = [str(index), str(timestamp_ms), "1" if out.marker_visible else "0",
              _fmt(out.quantized_angle_deg), out.orientation.name]
    fields.extend(_fmt(v) for v in out.model_matrix.m)
    c, r = state.cum_translation, state.cum_rotation_deg
    fields.extend(_fmt(v) for v in (c.x, c.y, c.z, r.x, r.y, r.z, state.scale))
    if out.events:
        rendered = [m.kind if m.kind == "CANCEL" else f"{m.kind} {m.text}" for m in out.events]
        fields.append(";".join(rendered))
    else:
        fields.append("-")
    return ",".join(fields)


def run_replay(pose_samples: list[tracker.PoseSample],
               events: list[tuple[int, object]],
               session: Session) -> list[str]:
    """Feed traces through a session, one frame per pose sample.

    Events are delivered to the first frame whose timestamp is >= their
    own; events dated after the last frame are dropped.
    """
    lines = []
    next_event = 0
    for index, sample in enumerate(pose_samples):
        while next_event < len(events) and events[next_event][0] <= sample.timestamp_ms:
            session.enqueue_event(events[next_event][1])
            next_event += 1
        pose = MarkerPose(sample.matrix if sample.visible else Mat4.identity(),
                          sample.visible, sample.timestamp_ms)
        out = session.step_frame(pose)
        lines.append(format_frame_line(index, sample.timestamp_ms, out, session.state))
    return lines


def _session_from_args(args) -> Session:
    parts = scene.load_model(args.model) if args.model else None
    registry = scene.load_registry(args.registry) if args.registry else None
    config = EngineConfig(viewport_w=args.viewport_w, viewport_h=args.viewport_h,
                          fov_y_deg=args.fov, translate_gain=args.translate_gain,
                          rotate_gain=args.rotate_gain)
    return Session(config, parts, registry)


def _write_lines(path: str | None, lines: list[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.writelines(line + "\n" for line in lines)
    else:
        for line in lines:
            print(line)


def cmd_replay(args) -> int:
    try:
        samples = tracker.load_pose_trace(args.pose_trace)
        events = load_event_trace(args.events) if args.events else []
        session = _session_from_args(args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        lines = run_replay(samples, events, session)
    except QueueFullError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    _write_lines(args.out, lines)
    return EXIT_OK


def _orbit_from_args(args) -> tracker.OrbitScript:
    return tracker.OrbitScript(radius=args.orbit_radius, height=args.orbit_height,
                               angular_speed_deg_s=args.angular_speed,
                               fps=args.fps, duration_s=args.duration)


def cmd_orient(args) -> int:
    try:
        script = _orbit_from_args(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    state = OrientationState()
    lines = []
    for sample in tracker.generate_orbit_trace(script):
        if not sample.visible:
            continue
        angle = marker_orientation_deg(sample.matrix, state)
        quadrant = quantize_orientation(angle)
        lines.append(f"{sample.timestamp_ms},{_fmt(angle)},{quadrant.name}")
    _write_lines(args.out, lines)
    return EXIT_OK


def cmd_serve(args) -> int:
    try:
        parts = scene.load_model(args.model) if args.model else []
        registry = scene.load_registry(args.registry) if args.registry else None
        samples = tracker.load_pose_trace(args.pose_trace) if args.pose_trace else None
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if samples is None:
        try:
            samples = tracker.generate_orbit_trace(_orbit_from_args(args))
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    if not samples:
        print("error: pose source is empty (zero-duration orbit?)", file=sys.stderr)
        return EXIT_PARSE
    config = EngineConfig(viewport_w=args.viewport_w, viewport_h=args.viewport_h,
                          fov_y_deg=args.fov, translate_gain=args.translate_gain,
                          rotate_gain=args.rotate_gain)

    from .server import run_server

    try:
        run_server(args.host, args.port, parts, registry, samples, args.fps, config)
    except OSError as exc:
        print(f"error: cannot bind port {args.port}: {exc}", file=sys.stderr)
        return EXIT_PORT
    return EXIT_OK


def _add_orbit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--orbit-radius", type=float, default=60.0, help="camera orbit radius")
    p.add_argument("--orbit-height", type=float, default=40.0, help="camera height above marker")
    p.add_argument("--angular-speed", type=float, default=90.0, help="orbit speed, degrees/s")
    p.add_argument("--fps", type=float, default=30.0, help="frames per second")
    p.add_argument("--duration", type=float, default=4.0, help="orbit duration, seconds")


def _add_session_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", help="OBJ model file")
    p.add_argument("--registry", help="parts registry file")
    p.add_argument("--translate-gain", type=float, default=0.5)
    p.add_argument("--rotate-gain", type=float, default=0.5)
    p.add_argument("--viewport-w", type=float, default=800.0)
    p.add_argument("--viewport-h", type=float, default=600.0)
    p.add_argument("--fov", type=float, default=60.0, help="vertical field of view, degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="markerkit",
                                     description="Marker-driven AR interaction engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_replay = sub.add_parser("replay", help="replay pose and event traces to a frame log")
    p_replay.add_argument("--pose-trace", required=True, help="pose trace file")
    p_replay.add_argument("--events", help="event trace file")
    p_replay.add_argument("--out", help="log output path (default stdout)")
    _add_session_flags(p_replay)
    p_replay.set_defaults(func=cmd_replay)

    p_orient = sub.add_parser("orient", help="tabulate orbit orientation angles")
    _add_orbit_flags(p_orient)
    p_orient.add_argument("--out", help="output path (default stdout)")
    p_orient.set_defaults(func=cmd_orient)

    p_serve = sub.add_parser("serve", help="serve live viewer sessions over websockets")
    p_serve.add_argument("--port", type=int, default=8787)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--pose-trace", help="pose trace to loop (default: orbit flags)")
    _add_orbit_flags(p_serve)
    _add_session_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
