import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { GestureMapper, SCALE_MAX, SCALE_MIN } from "../src/gestures.js";
import type { CommandName } from "../src/protocol.js";

function mapper() {
  const lines: string[] = [];
  const g = new GestureMapper((line) => lines.push(line));
  return { g, lines };
}

describe("drag synthesis", () => {
  it("emits DOWN, MOVE*, UP in order for a three-sample drag", () => {
    const { g, lines } = mapper();
    g.pointerDown(400, 300);
    g.pointerMove(500, 300);
    g.pointerMove(520, 280);
    g.pointerUp(520, 280);
    expect(lines).toEqual([
      "TOUCH_DOWN 400 300",
      "TOUCH_MOVE 500 300",
      "TOUCH_MOVE 520 280",
      "TOUCH_UP 520 280",
    ]);
  });

  it("treats sub-slop presses as TAP at the press point", () => {
    const { g, lines } = mapper();
    g.pointerDown(392, 246);
    g.pointerMove(393, 247);
    g.pointerUp(393, 247);
    expect(lines).toEqual(["TAP 392 246"]);
  });

  it("rounds fractional canvas coordinates", () => {
    const { g, lines } = mapper();
    g.pointerDown(100.4, 200.6);
    g.pointerMove(150.3, 210.8);
    g.pointerUp(150.3, 210.8);
    expect(lines).toEqual([
      "TOUCH_DOWN 100 201",
      "TOUCH_MOVE 150 211",
      "TOUCH_UP 150 211",
    ]);
  });

  it("ignores moves with no active pointer", () => {
    const { g, lines } = mapper();
    g.pointerMove(10, 10);
    g.pointerUp(10, 10);
    expect(lines).toEqual([]);
  });
});

describe("wheel pinch", () => {
  it("three notches up from 1.0 reach 1.331", () => {
    const { g, lines } = mapper();
    g.wheel(-53);
    g.wheel(-53);
    g.wheel(-53);
    expect(g.currentScale).toBeCloseTo(1.331, 9);
    expect(lines[2]).toMatch(/^PINCH_SCALE 1\.331/);
  });

  it("clamps at both ends of the scale range", () => {
    const { g } = mapper();
    for (let i = 0; i < 40; i++) g.wheel(+1);
    expect(g.currentScale).toBe(SCALE_MIN);
    for (let i = 0; i < 80; i++) g.wheel(-1);
    expect(g.currentScale).toBe(SCALE_MAX);
  });

  it("emits absolute factors, not deltas", () => {
    const { g, lines } = mapper();
    g.wheel(-1);
    g.wheel(-1);
    expect(lines).toEqual(["PINCH_SCALE 1.1", "PINCH_SCALE 1.2100000000000002"]);
  });
});

describe("two-finger pinch", () => {
  it("scales by the distance ratio against the gesture-start scale", () => {
    const { g, lines } = mapper();
    g.pinchStart(100);
    g.pinchMove(150);
    expect(g.currentScale).toBeCloseTo(1.5, 12);
    g.pinchMove(50);
    expect(g.currentScale).toBeCloseTo(0.5, 12);
    expect(lines).toHaveLength(2);
    expect(lines[0]).toMatch(/^PINCH_SCALE /);
  });
});

describe("toolbar commands", () => {
  it("maps the axis dropdown to SET_AXIS commands", () => {
    const { g, lines } = mapper();
    g.command("SET_AXIS_Z");
    expect(lines).toEqual(["COMMAND SET_AXIS_Z"]);
  });

  it("reset returns the local scale factor to 1", () => {
    const { g } = mapper();
    g.wheel(-1);
    g.command("RESET");
    expect(g.currentScale).toBe(1.0);
  });
});

describe("conformance fixture", () => {
  it("reproduces the shared outbound-event fixture byte for byte", () => {
    const { g, lines } = mapper();
    // canonical scripted session; the engine-side test parses the same file
    g.pointerDown(400, 300);
    g.pointerMove(403, 302); // below tap slop: silent
    g.pointerMove(500, 300);
    g.pointerMove(520, 280);
    g.pointerUp(520, 280);
    g.pointerDown(392, 246);
    g.pointerUp(393, 247);
    g.wheel(-53);
    g.wheel(-53);
    g.wheel(-53);
    g.wheel(+53);
    g.pinchStart(100);
    g.pinchMove(150);
    g.pinchMove(40);
    const commands: CommandName[] = [
      "SET_MODE_ROTATE", "SET_AXIS_Z", "RESET", "TOGGLE_VIEW_MODE",
      "TOGGLE_GIZMO", "SET_MODE_TRANSLATE", "SET_AXIS_X", "SET_AXIS_Y",
    ];
    for (const c of commands) g.command(c);
    g.pointerDown(100.4, 200.6);
    g.pointerMove(150.3, 210.8);
    g.pointerUp(150.3, 210.8);

    const fixture = readFileSync(
      fileURLToPath(new URL("./fixtures/outbound_events.txt", import.meta.url)),
      "utf-8").trimEnd().split("\n");
    expect(lines).toEqual(fixture);
  });
});
