"""Live session server: one engine session per websocket connection.

Wire protocol (text frames, one line per frame/message):

  server -> viewer on connect:
      MODEL <part_count>
      PART <name> <triangle_count>     (then one T line per triangle)
      T <x1> <y1> <z1> <x2> <y2> <z2> <x3> <y3> <z3>
  server -> viewer per frame:
      FRAME <ts> <visible 0|1> <quadrant> <16 model matrix scalars> <scale>
      MSG CANCEL | MSG INFO <text>     (selection feedback)
  viewer -> server:
      event-trace grammar without the timestamp, e.g. "TOUCH_MOVE 412 305",
      "PINCH_SCALE 1.25", "COMMAND RESET"; timestamps are assigned here.

The network reader is the queue's producer, the frame ticker its
consumer; sessions on different connections are fully independent.
"""

from __future__ import annotations

import itertools
import logging
import threading
import time

from websockets.sync.server import serve as ws_serve

from . import scene
from .engine import EngineConfig, EventParseError, MarkerPose, QueueFullError, Session, parse_event
from .math3d import Mat4
from .tracker import PoseSample

log = logging.getLogger(__name__)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def model_preamble(parts: list[scene.Part]) -> list[str]:
    lines = [f"MODEL {len(parts)}"]
    for part in parts:
        lines.append(f"PART {part.name} {len(part.triangles)}")
        for v0, v1, v2 in part.triangles:
            coords = (v0.x, v0.y, v0.z, v1.x, v1.y, v1.z, v2.x, v2.y, v2.z)
            lines.append("T " + " ".join(_fmt(c) for c in coords))
    return lines


def frame_message(timestamp_ms: int, session: Session, out) -> str:
    scalars = " ".join(_fmt(v) for v in out.model_matrix.m)
    visible = "1" if out.marker_visible else "0"
    return (f"FRAME {timestamp_ms} {visible} {out.orientation.name} "
            f"{scalars} {_fmt(session.state.scale)}")


def message_lines(out) -> list[str]:
    return [f"MSG {m.kind}" if m.kind == "CANCEL" else f"MSG {m.kind} {m.text}"
            for m in out.events]


class _Connection:
    """Session plumbing for one websocket client."""

    def __init__(self, ws, parts, registry, samples, fps, config):
        # Each connection gets its own Part objects: selection state is
        # per session. Triangle lists are immutable and shared.
        own_parts = [scene.Part(p.name, p.triangles, p.pickable) for p in parts]
        self.ws = ws
        self.session = Session(config, own_parts, registry)
        self.samples = samples
        self.fps = fps
        self.stop = threading.Event()

    def read_events(self) -> None:
        try:
            for message in self.ws:
                tokens = message.split()
                try:
                    event = parse_event("<socket>", 0, tokens)
                    self.session.enqueue_event(event)
                except (EventParseError, QueueFullError) as exc:
                    log.warning("dropping client event %r: %s", message, exc)
        except Exception:
            pass
        finally:
            self.stop.set()

    def run(self) -> None:
        reader = threading.Thread(target=self.read_events, daemon=True)
        reader.start()
        try:
            for line in model_preamble(self.session.parts):
                self.ws.send(line)
            frame_interval = 1.0 / self.fps
            clock = 0
            for sample in itertools.cycle(self.samples):
                if self.stop.is_set():
                    break
                pose = MarkerPose(sample.matrix if sample.visible else Mat4.identity(),
                                  sample.visible, clock)
                out = self.session.step_frame(pose)
                self.ws.send(frame_message(clock, self.session, out))
                for line in message_lines(out):
                    self.ws.send(line)
                clock += round(1000.0 / self.fps)
                time.sleep(frame_interval)
        except Exception:
            pass  # client went away; the session dies with the connection
        finally:
            self.stop.set()


def run_server(host: str, port: int, parts: list[scene.Part],
               registry: scene.PartsRegistry | None,
               samples: list[PoseSample], fps: float,
               config: EngineConfig | None = None,
               ready: threading.Event | None = None) -> None:
    """Serve sessions until interrupted. Raises OSError if the port is taken."""
    registry = registry or scene.PartsRegistry()
    config = config or EngineConfig()

    def handler(ws):
        _Connection(ws, parts, registry, samples, fps, config).run()

    with ws_serve(handler, host, port) as server:
        log.info("serving on ws://%s:%d", host, port)
        if ready is not None:
            ready.set()
        server.serve_forever()
