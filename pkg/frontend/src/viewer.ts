// Connection + session state: the single source the renderer draws from.

import { LineDecoder, type FramePayload, type PartMesh, type ServerEvent } from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onmessage: ((event: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface Controls {
  interaction: "TRANSLATE" | "ROTATE";
  axis: "X" | "Y" | "Z";
  view: "TRACKING" | "INSPECTION";
  gizmoVisible: boolean;
}

export interface ViewerState {
  connected: boolean;
  parts: Map<string, PartMesh>;
  currentFrame: FramePayload | null;
  infoText: string | null;
  controls: Controls;
  lastError: string | null;
}

export const defaultControls = (): Controls => ({
  interaction: "TRANSLATE",
  axis: "X",
  view: "TRACKING",
  gizmoVisible: true,
});

export class Viewer {
  readonly state: ViewerState = {
    connected: false,
    parts: new Map(),
    currentFrame: null,
    infoText: null,
    controls: defaultControls(),
    lastError: null,
  };

  onchange: (() => void) | null = null;

  private socket: SocketLike | null = null;
  private decoder = new LineDecoder();
  private url = "";

  constructor(private readonly makeSocket: SocketFactory) {}

  connect(url: string): void {
    this.url = url;
    this.decoder = new LineDecoder();
    this.state.lastError = null;
    try {
      this.socket = this.makeSocket(url);
    } catch (err) {
      this.state.connected = false;
      this.state.lastError = String(err);
      this.notify();
      return;
    }
    this.socket.onopen = () => {
      this.state.connected = true;
      this.state.lastError = null;
      this.notify();
    };
    this.socket.onmessage = (event) => this.handleLine(String(event.data));
    this.socket.onclose = () => {
      this.state.connected = false;
      if (this.state.lastError === null) this.state.lastError = "connection closed";
      this.notify();
    };
    this.socket.onerror = () => {
      this.state.lastError = "connection failed";
    };
  }

  retry(): void {
    if (this.url) this.connect(this.url);
  }

  handleLine(line: string): void {
    let event: ServerEvent | null;
    try {
      event = this.decoder.feed(line);
    } catch (err) {
      this.state.lastError = String(err);
      this.notify();
      return;
    }
    if (event === null || event.kind === "ignored") return;
    this.apply(event);
    this.notify();
  }

  private apply(event: ServerEvent): void {
    switch (event.kind) {
      case "model":
        this.state.parts = new Map(event.parts.map((p) => [p.name, p]));
        break;
      case "frame": {
        const current = this.state.currentFrame;
        // latest frame wins; an out-of-order (stale) frame is dropped
        if (current === null || event.frame.ts >= current.ts) {
          this.state.currentFrame = event.frame;
        }
        break;
      }
      case "msg-cancel":
        this.state.infoText = null;
        break;
      case "msg-info":
        this.state.infoText = event.text;
        break;
    }
  }

  /** Send one outbound event line; mirrors toolbar state locally. */
  sendLine(line: string): void {
    if (this.socket && this.state.connected) this.socket.send(line);
    this.mirrorControls(line);
  }

  private mirrorControls(line: string): void {
    const c = this.state.controls;
    switch (line) {
      case "COMMAND SET_MODE_TRANSLATE": c.interaction = "TRANSLATE"; break;
      case "COMMAND SET_MODE_ROTATE": c.interaction = "ROTATE"; break;
      case "COMMAND SET_AXIS_X": c.axis = "X"; break;
      case "COMMAND SET_AXIS_Y": c.axis = "Y"; break;
      case "COMMAND SET_AXIS_Z": c.axis = "Z"; break;
      case "COMMAND TOGGLE_VIEW_MODE":
        c.view = c.view === "TRACKING" ? "INSPECTION" : "TRACKING";
        break;
      case "COMMAND TOGGLE_GIZMO": c.gizmoVisible = !c.gizmoVisible; break;
    }
  }

  disconnect(): void {
    this.socket?.close();
    this.socket = null;
  }

  private notify(): void {
    this.onchange?.();
  }
}
