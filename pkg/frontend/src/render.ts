// Canvas renderer: wireframe-with-flat-fill over a grid ground plane.
//
// The streamed matrix maps model space into camera space (camera at the
// origin looking down -Z); the projection here mirrors the server's
// pick camera (same viewport and vertical fov), so what sits under the
// cursor on screen is what a TAP at that pixel picks. The grid, marker
// rectangle and axis gizmo are drawn in the model's marker plane (y=0),
// which rides along with user transforms since the protocol streams
// only the composed matrix.

import type { FramePayload, Mat16 } from "./protocol.js";
import type { ViewerState } from "./viewer.js";

export interface ViewCamera {
  width: number;
  height: number;
  fovYDeg: number;
}

type Vec3 = [number, number, number];
type Projected = { x: number; y: number; depth: number };

export function transformPoint(m: Mat16, v: Vec3): Vec3 {
  return [
    m[0] * v[0] + m[4] * v[1] + m[8] * v[2] + m[12],
    m[1] * v[0] + m[5] * v[1] + m[9] * v[2] + m[13],
    m[2] * v[0] + m[6] * v[1] + m[10] * v[2] + m[14],
  ];
}

/** Camera-space point -> canvas pixel; null when at/behind the eye plane. */
export function projectCameraPoint(p: Vec3, cam: ViewCamera): Projected | null {
  const z = p[2];
  if (z >= -1e-6) return null;
  const f = cam.height / 2 / Math.tan((cam.fovYDeg * Math.PI) / 360);
  return { x: cam.width / 2 + (f * p[0]) / -z, y: cam.height / 2 - (f * p[1]) / -z, depth: -z };
}

export function projectModelPoint(m: Mat16, v: Vec3, cam: ViewCamera): Projected | null {
  return projectCameraPoint(transformPoint(m, v), cam);
}

const PART_COLORS = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                     "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ab"];

function colorFor(index: number): string {
  return PART_COLORS[index % PART_COLORS.length];
}

function shade(hex: string, factor: number): string {
  const n = parseInt(hex.slice(1), 16);
  const ch = (v: number) => Math.max(0, Math.min(255, Math.round(v * factor)));
  return `rgb(${ch(n >> 16)},${ch((n >> 8) & 255)},${ch(n & 255)})`;
}

interface Face {
  points: Projected[];
  depth: number;
  fill: string;
}

export function renderScene(ctx: CanvasRenderingContext2D, state: ViewerState,
                            cam: ViewCamera): void {
  ctx.fillStyle = "#14161a";
  ctx.fillRect(0, 0, cam.width, cam.height);

  const frame = state.currentFrame;
  if (frame === null) {
    return;
  }
  if (!frame.visible) {
    ctx.fillStyle = "#8a8f98";
    ctx.font = "14px system-ui, sans-serif";
    ctx.fillText("marker lost", 16, cam.height - 16);
    return;
  }

  drawGrid(ctx, frame, cam);
  drawMarkerQuad(ctx, frame, cam);
  drawParts(ctx, state, frame, cam);
  if (state.controls.gizmoVisible) drawGizmo(ctx, frame, cam);
}

function line3(ctx: CanvasRenderingContext2D, m: Mat16, a: Vec3, b: Vec3,
               cam: ViewCamera): void {
  const pa = projectModelPoint(m, a, cam);
  const pb = projectModelPoint(m, b, cam);
  if (!pa || !pb) return;
  ctx.beginPath();
  ctx.moveTo(pa.x, pa.y);
  ctx.lineTo(pb.x, pb.y);
  ctx.stroke();
}

function drawGrid(ctx: CanvasRenderingContext2D, frame: FramePayload, cam: ViewCamera): void {
  const m = frame.matrix;
  const extent = 80;
  const step = 20;
  ctx.strokeStyle = "#262b33";
  ctx.lineWidth = 1;
  for (let i = -extent; i <= extent; i += step) {
    line3(ctx, m, [i, 0, -extent], [i, 0, extent], cam);
    line3(ctx, m, [-extent, 0, i], [extent, 0, i], cam);
  }
}

function drawMarkerQuad(ctx: CanvasRenderingContext2D, frame: FramePayload,
                        cam: ViewCamera): void {
  const m = frame.matrix;
  const s = 36;
  const corners: Vec3[] = [[-s, 0, -s], [s, 0, -s], [s, 0, s], [-s, 0, s]];
  const pts = corners.map((c) => projectModelPoint(m, c, cam));
  if (pts.some((p) => p === null)) return;
  ctx.beginPath();
  pts.forEach((p, i) => (i === 0 ? ctx.moveTo(p!.x, p!.y) : ctx.lineTo(p!.x, p!.y)));
  ctx.closePath();
  ctx.fillStyle = "rgba(70, 80, 95, 0.35)";
  ctx.fill();
  ctx.strokeStyle = "#55606e";
  ctx.stroke();
  // notch toward -z so the marker's own orientation reads on screen
  ctx.strokeStyle = "#8fa3bd";
  line3(ctx, m, [0, 0, 0], [0, 0, -s], cam);
}

function drawParts(ctx: CanvasRenderingContext2D, state: ViewerState,
                   frame: FramePayload, cam: ViewCamera): void {
  const faces: Face[] = [];
  let index = 0;
  for (const part of state.parts.values()) {
    const base = colorFor(index++);
    for (const t of part.triangles) {
      const cps: Vec3[] = [
        transformPoint(frame.matrix, [t[0], t[1], t[2]]),
        transformPoint(frame.matrix, [t[3], t[4], t[5]]),
        transformPoint(frame.matrix, [t[6], t[7], t[8]]),
      ];
      const pts = cps.map((p) => projectCameraPoint(p, cam));
      if (pts.some((p) => p === null)) continue;
      // flat shade from the camera-space normal's view-axis component
      const u: Vec3 = [cps[1][0] - cps[0][0], cps[1][1] - cps[0][1], cps[1][2] - cps[0][2]];
      const v: Vec3 = [cps[2][0] - cps[0][0], cps[2][1] - cps[0][1], cps[2][2] - cps[0][2]];
      const nz = u[0] * v[1] - u[1] * v[0];
      const nlen = Math.hypot(
        u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], nz) || 1;
      const lum = 0.55 + 0.45 * Math.abs(nz / nlen);
      faces.push({
        points: pts as Projected[],
        depth: (pts[0]!.depth + pts[1]!.depth + pts[2]!.depth) / 3,
        fill: shade(base, lum),
      });
    }
  }
  faces.sort((a, b) => b.depth - a.depth); // painter's order, far first
  for (const face of faces) {
    ctx.beginPath();
    ctx.moveTo(face.points[0].x, face.points[0].y);
    ctx.lineTo(face.points[1].x, face.points[1].y);
    ctx.lineTo(face.points[2].x, face.points[2].y);
    ctx.closePath();
    ctx.fillStyle = face.fill;
    ctx.fill();
    ctx.strokeStyle = "rgba(10, 12, 15, 0.6)";
    ctx.lineWidth = 0.5;
    ctx.stroke();
  }
}

function drawGizmo(ctx: CanvasRenderingContext2D, frame: FramePayload, cam: ViewCamera): void {
  const m = frame.matrix;
  const axes: Array<[Vec3, string, string]> = [
    [[50, 0, 0], "#e15759", "X"],
    [[0, 50, 0], "#59a14f", "Y"],
    [[0, 0, 50], "#4e79a7", "Z"],
  ];
  ctx.lineWidth = 2;
  ctx.font = "12px system-ui, sans-serif";
  for (const [tip, color, label] of axes) {
    ctx.strokeStyle = color;
    line3(ctx, m, [0, 0, 0], tip, cam);
    const p = projectModelPoint(m, tip, cam);
    if (p) {
      ctx.fillStyle = color;
      ctx.fillText(label, p.x + 4, p.y - 4);
    }
  }
}
