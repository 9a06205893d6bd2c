"""Part-level model geometry, screen-ray picking, and the parts registry.

A model is a flat list of named triangle-mesh parts loaded from a small
OBJ subset. A tap resolves to a pick ray, the nearest intersected
pickable part is selected, its registry offset is applied as a visual
highlight, and the registry's info text is emitted as UI messages.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .math3d import Mat4, Vec3

log = logging.getLogger(__name__)

Triangle = tuple[Vec3, Vec3, Vec3]

DEFAULT_MAX_PICK_DIST = 10000.0
RAY_EPS = 1e-9
BARY_EPS = 1e-12
TIE_EPS = 1e-9


class ModelParseError(ValueError):
    """Malformed model or registry file; carries the 1-based line number."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class EmptyModelError(ValueError):
    """Model file contains no faces."""


class OutOfViewportError(ValueError):
    """Pixel coordinates outside the camera viewport."""


class UnknownPartError(KeyError):
    """Selection refers to a part name the model does not contain."""


@dataclass
class Part:
    """Named sub-mesh of the model, in model space."""

    name: str
    triangles: list[Triangle]
    pickable: bool = True
    highlight_offset: Vec3 = field(default_factory=Vec3)
    offset_applied: bool = False


@dataclass(frozen=True)
class RegistryEntry:
    """Info text and highlight offset for one part; text None means NONE."""

    info_text: str | None
    offset: Vec3


NONE_ENTRY = RegistryEntry(None, Vec3(0.0, 0.0, 0.0))


class PartsRegistry:
    """Lookup from part name to info text and highlight offset.

    Unknown names resolve to the NONE sentinel entry, never an error.
    """

    def __init__(self, entries: dict[str, RegistryEntry] | None = None):
        self.entries: dict[str, RegistryEntry] = dict(entries or {})

    def lookup(self, name: str) -> RegistryEntry:
        return self.entries.get(name, NONE_ENTRY)


@dataclass(frozen=True)
class PickCamera:
    """Pinhole camera used to turn pixels into pick rays.

    view_matrix maps world to camera coordinates; the camera looks down
    its local -Z axis, +X right, +Y up, screen y grows downward.
    """

    viewport_w: float
    viewport_h: float
    fov_y_deg: float
    position: Vec3 = field(default_factory=Vec3)
    view_matrix: Mat4 = field(default_factory=Mat4.identity)

    def __post_init__(self):
        if self.viewport_w <= 0 or self.viewport_h <= 0:
            raise ValueError("viewport dimensions must be positive")
        if not 0.0 < self.fov_y_deg < 180.0:
            raise ValueError("fov_y_deg must be in (0, 180)")


@dataclass(frozen=True)
class Ray:
    origin: Vec3
    direction: Vec3  # unit length


class UiMessageKind:
    CANCEL = "CANCEL"
    INFO = "INFO"


@dataclass(frozen=True)
class UiMessage:
    """Message to the info textbox: CANCEL clears it, INFO replaces it."""

    kind: str
    text: str = ""

    @classmethod
    def cancel(cls) -> UiMessage:
        return cls(UiMessageKind.CANCEL)

    @classmethod
    def info(cls, text: str) -> UiMessage:
        return cls(UiMessageKind.INFO, text)


def load_model(path: str) -> list[Part]:
    """Load an OBJ-subset model into named parts.

    Supports v, f and g/o statements; faces with more than three
    vertices are fan-triangulated. Faces seen before any group statement
    belong to a part named ``default``. Unknown statements (vn, vt,
    usemtl, comments, ...) are skipped. Raises ModelParseError with the
    offending line number, or EmptyModelError when no face survives.
    """
    vertices: list[Vec3] = []
    parts: list[Part] = []
    by_name: dict[str, Part] = {}
    current: Part | None = None

    def part_for(name: str) -> Part:
        p = by_name.get(name)
        if p is None:
            p = Part(name, [])
            by_name[name] = p
            parts.append(p)
        return p

    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            tokens = raw.split("#", 1)[0].split()
            if not tokens:
                continue
            keyword, args = tokens[0], tokens[1:]
            if keyword == "v":
                if len(args) < 3:
                    raise ModelParseError(path, line_no, "vertex needs 3 coordinates")
                try:
                    vertices.append(Vec3(float(args[0]), float(args[1]), float(args[2])))
                except ValueError:
                    raise ModelParseError(path, line_no, "non-numeric vertex coordinate") from None
            elif keyword in ("g", "o"):
                name = args[0] if args else "default"
                current = part_for(name)
            elif keyword == "f":
                if len(args) < 3:
                    raise ModelParseError(path, line_no, "face needs at least 3 vertices")
                corners = []
                for ref in args:
                    idx_text = ref.split("/", 1)[0]
                    try:
                        idx = int(idx_text)
                    except ValueError:
                        raise ModelParseError(path, line_no, f"bad vertex reference '{ref}'") from None
                    if idx > 0:
                        idx -= 1
                    elif idx < 0:
                        idx += len(vertices)
                    else:
                        raise ModelParseError(path, line_no, "vertex index 0 is not allowed")
                    if not 0 <= idx < len(vertices):
                        raise ModelParseError(path, line_no, f"vertex index {ref} out of range")
                    corners.append(vertices[idx])
                if current is None:
                    current = part_for("default")
                for i in range(1, len(corners) - 1):
                    current.triangles.append((corners[0], corners[i], corners[i + 1]))
            # everything else (vn, vt, s, usemtl, mtllib, ...) is ignored

    parts = [p for p in parts if p.triangles]
    if not parts:
        raise EmptyModelError(f"{path}: no faces found")
    return parts


def load_registry(path: str) -> PartsRegistry:
    """Parse the parts-registry file.

    One entry per line, ``name|dx dy dz|info text``; ``#`` starts a
    comment line, blank lines are skipped. Duplicate names keep the last
    entry and log a warning. Raises ModelParseError on malformed lines.
    """
    entries: dict[str, RegistryEntry] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("|", 2)
            if len(fields) != 3:
                raise ModelParseError(path, line_no, "expected name|dx dy dz|info text")
            name = fields[0].strip()
            if not name:
                raise ModelParseError(path, line_no, "empty part name")
            offset_tokens = fields[1].split()
            if len(offset_tokens) != 3:
                raise ModelParseError(path, line_no, "offset needs exactly 3 numbers")
            try:
                offset = Vec3(*(float(t) for t in offset_tokens))
            except ValueError:
                raise ModelParseError(path, line_no, "non-numeric offset") from None
            if name in entries:
                log.warning("%s:%d: duplicate registry entry for %r, keeping the last one",
                            path, line_no, name)
            entries[name] = RegistryEntry(fields[2], offset)
    return PartsRegistry(entries)


def screen_to_world_ray(cam: PickCamera, x: float, y: float) -> Ray:
    """Ray from the camera through a viewport pixel.

    (x, y) are screen coordinates with y growing downward; the viewport
    center maps onto the view axis. Raises OutOfViewportError when the
    point lies outside [0, w] x [0, h].
    """
    if not (0.0 <= x <= cam.viewport_w and 0.0 <= y <= cam.viewport_h):
        raise OutOfViewportError(f"({x}, {y}) outside {cam.viewport_w}x{cam.viewport_h} viewport")
    tan_half = math.tan(math.radians(cam.fov_y_deg) / 2.0)
    aspect = cam.viewport_w / cam.viewport_h
    cx = (2.0 * x / cam.viewport_w - 1.0) * tan_half * aspect
    cy = (1.0 - 2.0 * y / cam.viewport_h) * tan_half
    d_cam = Vec3(cx, cy, -1.0)
    # Rotation rows of view_matrix map world->camera; multiply by the
    # transpose (columns) to move the direction back into world space.
    v = cam.view_matrix
    d_world = Vec3(
        v.at(0, 0) * d_cam.x + v.at(1, 0) * d_cam.y + v.at(2, 0) * d_cam.z,
        v.at(0, 1) * d_cam.x + v.at(1, 1) * d_cam.y + v.at(2, 1) * d_cam.z,
        v.at(0, 2) * d_cam.x + v.at(1, 2) * d_cam.y + v.at(2, 2) * d_cam.z,
    )
    return Ray(cam.position, d_world.normalize())


def _intersect_triangle(origin: Vec3, direction: Vec3, tri: Triangle) -> float | None:
    """Moller-Trumbore distance along the ray, or None.

    Front and back faces both count and barycentric bounds carry a tiny
    slack so hits exactly on an edge or vertex register.
    """
    v0, v1, v2 = tri
    e1 = v1 - v0
    e2 = v2 - v0
    pvec = direction.cross(e2)
    det = e1.dot(pvec)
    if abs(det) < RAY_EPS:
        return None
    inv_det = 1.0 / det
    tvec = origin - v0
    u = tvec.dot(pvec) * inv_det
    if u < -BARY_EPS or u > 1.0 + BARY_EPS:
        return None
    qvec = tvec.cross(e1)
    v = direction.dot(qvec) * inv_det
    if v < -BARY_EPS or u + v > 1.0 + BARY_EPS:
        return None
    t = e2.dot(qvec) * inv_det
    return t if t > 0.0 else None


def part_world_triangles(part: Part, model_matrix: Mat4):
    """Part triangles transformed into the pick ray's space.

    The highlight offset, when applied, shifts the part in its local
    model frame before the model matrix.
    """
    offset = part.highlight_offset if part.offset_applied else None
    for v0, v1, v2 in part.triangles:
        if offset is not None:
            v0, v1, v2 = v0 + offset, v1 + offset, v2 + offset
        yield (model_matrix.transform_point(v0),
               model_matrix.transform_point(v1),
               model_matrix.transform_point(v2))


def pick(ray: Ray, parts: list[Part], model_matrix: Mat4,
         max_dist: float = DEFAULT_MAX_PICK_DIST) -> tuple[str, float] | None:
    """Nearest pickable part hit by the ray, as (name, distance).

    Only hits with 0 < distance <= max_dist count. When two parts are
    hit within 1e-9 of each other, the one earlier in the part list
    wins. Returns None when nothing is hit.
    """
    best: tuple[str, float] | None = None
    for part in parts:
        if not part.pickable:
            continue
        nearest: float | None = None
        for tri in part_world_triangles(part, model_matrix):
            t = _intersect_triangle(ray.origin, ray.direction, tri)
            if t is not None and t <= max_dist and (nearest is None or t < nearest):
                nearest = t
        if nearest is not None and (best is None or nearest < best[1] - TIE_EPS):
            best = (part.name, nearest)
    return best


def select_part(parts: list[Part], registry: PartsRegistry, name: str) -> list[UiMessage]:
    """Make the named part the highlighted selection.

    Clears the previous selection, applies the registry offset to the
    new one (zero offset when the registry has no entry), and returns
    the UI messages: [CANCEL, INFO(text)] for a registered part, nothing
    otherwise. Raises UnknownPartError when the model has no such part.
    """
    target = next((p for p in parts if p.name == name), None)
    if target is None:
        raise UnknownPartError(name)
    for p in parts:
        p.offset_applied = False
    entry = registry.lookup(name)
    target.highlight_offset = entry.offset
    target.offset_applied = True
    if entry.info_text is None:
        return []
    return [UiMessage.cancel(), UiMessage.info(entry.info_text)]
