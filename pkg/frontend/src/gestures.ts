// Pointer/wheel/toolbar input -> outbound event lines.
//
// A press that moves less than the tap slop is a TAP; anything longer
// becomes TOUCH_DOWN / TOUCH_MOVE* / TOUCH_UP. The wheel emulates the
// two-finger pinch with a multiplicative step per notch; both paths
// emit absolute PINCH_SCALE factors (1.0 = original size) clamped to
// the engine's [0.3, 5.0] range so the local factor cannot drift.

import { commandLine, pinchLine, touchLine, type CommandName } from "./protocol.js";

export const TAP_SLOP_PX = 5;
export const WHEEL_STEP = 1.1;
export const SCALE_MIN = 0.3;
export const SCALE_MAX = 5.0;

const clampScale = (v: number) => Math.min(SCALE_MAX, Math.max(SCALE_MIN, v));

export class GestureMapper {
  private anchor: { x: number; y: number } | null = null;
  private dragging = false;
  private scale = 1.0;
  private pinchBase = 1.0;
  private pinchStartDist = 0;

  constructor(private readonly send: (line: string) => void) {}

  get currentScale(): number {
    return this.scale;
  }

  pointerDown(x: number, y: number): void {
    this.anchor = { x, y };
    this.dragging = false;
  }

  pointerMove(x: number, y: number): void {
    if (!this.anchor) return;
    if (!this.dragging) {
      if (Math.hypot(x - this.anchor.x, y - this.anchor.y) < TAP_SLOP_PX) return;
      this.send(touchLine("TOUCH_DOWN", this.anchor.x, this.anchor.y));
      this.dragging = true;
    }
    this.send(touchLine("TOUCH_MOVE", x, y));
  }

  pointerUp(x: number, y: number): void {
    if (!this.anchor) return;
    if (this.dragging) {
      this.send(touchLine("TOUCH_UP", x, y));
    } else {
      this.send(touchLine("TAP", this.anchor.x, this.anchor.y));
    }
    this.anchor = null;
    this.dragging = false;
  }

  /** Browser wheel: negative deltaY (scroll up) zooms in one step. */
  wheel(deltaY: number): void {
    if (deltaY === 0) return;
    this.scale = clampScale(deltaY < 0 ? this.scale * WHEEL_STEP : this.scale / WHEEL_STEP);
    this.send(pinchLine(this.scale));
  }

  /** Two-finger pinch; distances in pixels. */
  pinchStart(distance: number): void {
    this.pinchBase = this.scale;
    this.pinchStartDist = distance;
  }

  pinchMove(distance: number): void {
    if (this.pinchStartDist <= 0) return;
    this.scale = clampScale(this.pinchBase * (distance / this.pinchStartDist));
    this.send(pinchLine(this.scale));
  }

  command(name: CommandName): void {
    if (name === "RESET") this.scale = 1.0;
    this.send(commandLine(name));
  }
}
