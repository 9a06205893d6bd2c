// Session wire protocol: line-oriented text messages over a websocket.
//
// server -> viewer:
//   MODEL <part_count>
//   PART <name> <triangle_count>     followed by that many T lines
//   T <9 floats>                     one triangle, model space
//   FRAME <ts> <visible 0|1> <quadrant> <16 matrix floats> <scale>
//   MSG CANCEL | MSG INFO <text>
// viewer -> server: event lines without timestamps, e.g. "TOUCH_MOVE 412 305".

export type Mat16 = number[]; // 16 entries, column-major, column 3 = translation

export interface PartMesh {
  name: string;
  triangles: number[][]; // 9 floats per triangle
}

export interface FramePayload {
  ts: number;
  visible: boolean;
  quadrant: string;
  matrix: Mat16;
  scale: number;
}

export type ServerEvent =
  | { kind: "model"; parts: PartMesh[] }
  | { kind: "frame"; frame: FramePayload }
  | { kind: "msg-cancel" }
  | { kind: "msg-info"; text: string }
  | { kind: "ignored"; line: string };

export class ProtocolError extends Error {}

/** Stateful line decoder; MODEL preambles span several lines. */
export class LineDecoder {
  private parts: PartMesh[] = [];
  private expectedParts = 0;
  private current: PartMesh | null = null;
  private expectedTriangles = 0;
  private inModel = false;

  feed(line: string): ServerEvent | null {
    const tokens = line.split(/\s+/).filter((t) => t.length > 0);
    if (tokens.length === 0) return null;

    if (this.inModel) return this.feedModel(line, tokens);

    switch (tokens[0]) {
      case "MODEL": {
        this.expectedParts = intOf(tokens[1], line);
        this.parts = [];
        this.current = null;
        this.inModel = this.expectedParts > 0;
        return this.inModel ? null : { kind: "model", parts: [] };
      }
      case "FRAME":
        return { kind: "frame", frame: parseFrame(tokens, line) };
      case "MSG": {
        if (tokens[1] === "CANCEL") return { kind: "msg-cancel" };
        if (tokens[1] === "INFO") {
          return { kind: "msg-info", text: line.slice(line.indexOf("INFO") + 5) };
        }
        throw new ProtocolError(`unknown MSG kind in: ${line}`);
      }
      default:
        return { kind: "ignored", line };
    }
  }

  private feedModel(line: string, tokens: string[]): ServerEvent | null {
    if (tokens[0] === "PART") {
      if (this.current && this.current.triangles.length < this.expectedTriangles) {
        throw new ProtocolError(`PART before previous mesh completed: ${line}`);
      }
      this.current = { name: tokens[1], triangles: [] };
      this.expectedTriangles = intOf(tokens[2], line);
      this.parts.push(this.current);
    } else if (tokens[0] === "T") {
      if (!this.current) throw new ProtocolError(`T line outside a PART: ${line}`);
      if (tokens.length !== 10) throw new ProtocolError(`T needs 9 floats: ${line}`);
      this.current.triangles.push(tokens.slice(1).map((t) => floatOf(t, line)));
    } else {
      throw new ProtocolError(`unexpected line inside MODEL block: ${line}`);
    }
    const complete =
      this.parts.length === this.expectedParts &&
      this.current !== null &&
      this.current.triangles.length === this.expectedTriangles;
    if (complete) {
      this.inModel = false;
      return { kind: "model", parts: this.parts };
    }
    return null;
  }
}

function parseFrame(tokens: string[], line: string): FramePayload {
  if (tokens.length !== 21) throw new ProtocolError(`FRAME needs 20 fields: ${line}`);
  return {
    ts: intOf(tokens[1], line),
    visible: tokens[2] === "1",
    quadrant: tokens[3],
    matrix: tokens.slice(4, 20).map((t) => floatOf(t, line)),
    scale: floatOf(tokens[20], line),
  };
}

function intOf(token: string | undefined, line: string): number {
  const v = Number(token);
  if (token === undefined || !Number.isInteger(v)) {
    throw new ProtocolError(`bad integer '${token}' in: ${line}`);
  }
  return v;
}

function floatOf(token: string, line: string): number {
  const v = Number(token);
  if (Number.isNaN(v)) throw new ProtocolError(`bad float '${token}' in: ${line}`);
  return v;
}

// -- outbound event lines (engine event-trace grammar, no timestamp) ----

export type CommandName =
  | "SET_MODE_TRANSLATE"
  | "SET_MODE_ROTATE"
  | "SET_AXIS_X"
  | "SET_AXIS_Y"
  | "SET_AXIS_Z"
  | "RESET"
  | "TOGGLE_VIEW_MODE"
  | "TOGGLE_GIZMO";

export function touchLine(kind: "TOUCH_DOWN" | "TOUCH_MOVE" | "TOUCH_UP" | "TAP",
                          x: number, y: number): string {
  return `${kind} ${Math.round(x)} ${Math.round(y)}`;
}

export function pinchLine(factor: number): string {
  return `PINCH_SCALE ${factor}`;
}

export function commandLine(command: CommandName): string {
  return `COMMAND ${command}`;
}
