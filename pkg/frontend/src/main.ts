// DOM bootstrap: canvas, toolbar, info textbox, connection banner.

import { GestureMapper } from "./gestures.js";
import type { CommandName } from "./protocol.js";
import { renderScene, type ViewCamera } from "./render.js";
import { Viewer, type SocketLike } from "./viewer.js";

function domSocket(url: string): SocketLike {
  const ws = new WebSocket(url);
  const like: SocketLike = {
    send: (data) => ws.send(data),
    close: () => ws.close(),
    onopen: null,
    onmessage: null,
    onclose: null,
    onerror: null,
  };
  ws.onopen = () => like.onopen?.();
  ws.onmessage = (ev) => like.onmessage?.({ data: ev.data });
  ws.onclose = () => like.onclose?.();
  ws.onerror = () => like.onerror?.();
  return like;
}

const CAMERA: ViewCamera = { width: 800, height: 600, fovYDeg: 60 };

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

const canvas = el<HTMLCanvasElement>("scene");
canvas.width = CAMERA.width;
canvas.height = CAMERA.height;
const ctx = canvas.getContext("2d")!;

const infoBox = el<HTMLDivElement>("info-box");
const banner = el<HTMLDivElement>("banner");
const bannerText = el<HTMLSpanElement>("banner-text");
const status = el<HTMLDivElement>("status");

const url = new URLSearchParams(location.search).get("ws")
  ?? `ws://${location.hostname || "127.0.0.1"}:8787`;

const viewer = new Viewer(domSocket);
const gestures = new GestureMapper((line) => viewer.sendLine(line));

let renderQueued = false;
viewer.onchange = () => {
  if (renderQueued) return;
  renderQueued = true;
  requestAnimationFrame(() => {
    renderQueued = false;
    renderScene(ctx, viewer.state, CAMERA);
    syncHud();
  });
};

function syncHud(): void {
  const s = viewer.state;
  infoBox.textContent = s.infoText ?? "";
  infoBox.style.display = s.infoText === null ? "none" : "block";
  banner.style.display = s.connected ? "none" : "flex";
  bannerText.textContent = s.connected ? "" : (s.lastError ?? "connecting...");
  const f = s.currentFrame;
  status.textContent = f
    ? `${s.controls.view} | ${s.controls.interaction} / axis ${s.controls.axis}`
      + ` | ${f.quadrant} | scale ${f.scale.toFixed(2)}${f.visible ? "" : " | marker lost"}`
    : "waiting for frames";
  for (const button of document.querySelectorAll<HTMLButtonElement>("[data-command]")) {
    const cmd = button.dataset.command!;
    const active =
      (cmd === "SET_MODE_TRANSLATE" && s.controls.interaction === "TRANSLATE")
      || (cmd === "SET_MODE_ROTATE" && s.controls.interaction === "ROTATE")
      || (cmd === "TOGGLE_VIEW_MODE" && s.controls.view === "INSPECTION")
      || (cmd === "TOGGLE_GIZMO" && s.controls.gizmoVisible);
    button.classList.toggle("active", active);
  }
}

function canvasPoint(event: PointerEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  return [
    ((event.clientX - rect.left) / rect.width) * CAMERA.width,
    ((event.clientY - rect.top) / rect.height) * CAMERA.height,
  ];
}

const pointers = new Map<number, [number, number]>();

canvas.addEventListener("pointerdown", (event) => {
  canvas.setPointerCapture(event.pointerId);
  const p = canvasPoint(event);
  pointers.set(event.pointerId, p);
  if (pointers.size === 1) {
    gestures.pointerDown(p[0], p[1]);
  } else if (pointers.size === 2) {
    gestures.pinchStart(pinchDistance());
  }
});

canvas.addEventListener("pointermove", (event) => {
  if (!pointers.has(event.pointerId)) return;
  pointers.set(event.pointerId, canvasPoint(event));
  if (pointers.size === 1) {
    const p = canvasPoint(event);
    gestures.pointerMove(p[0], p[1]);
  } else if (pointers.size === 2) {
    gestures.pinchMove(pinchDistance());
  }
});

canvas.addEventListener("pointerup", (event) => {
  const p = canvasPoint(event);
  if (pointers.size === 1) gestures.pointerUp(p[0], p[1]);
  pointers.delete(event.pointerId);
});

canvas.addEventListener("pointercancel", (event) => pointers.delete(event.pointerId));

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  gestures.wheel(event.deltaY);
}, { passive: false });

function pinchDistance(): number {
  const [a, b] = [...pointers.values()];
  return Math.hypot(a[0] - b[0], a[1] - b[1]);
}

for (const button of document.querySelectorAll<HTMLButtonElement>("[data-command]")) {
  button.addEventListener("click", () => {
    gestures.command(button.dataset.command as CommandName);
    syncHud();
  });
}

el<HTMLSelectElement>("axis-select").addEventListener("change", (event) => {
  const axis = (event.target as HTMLSelectElement).value as "X" | "Y" | "Z";
  gestures.command(`SET_AXIS_${axis}` as CommandName);
  syncHud();
});

el<HTMLButtonElement>("retry").addEventListener("click", () => viewer.retry());

viewer.connect(url);
syncHud();
