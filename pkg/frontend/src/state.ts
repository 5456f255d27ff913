// Session mirror: the UI renders only what the wire delivered.

import { FeedbackMessage, parseServerFrame, ServerFrame } from "./protocol.js";

export interface LogEntry {
  kind: "warning" | "error" | "emergency" | "info";
  text: string;
  seq: number | null;
}

export interface UiSessionState {
  connected: boolean;
  alphabet: string[];
  last: FeedbackMessage | null;
  trail: Array<{ x_m: number; y_m: number }>;
  log: LogEntry[];
  malformed: number;
}

export const MAX_LOG = 200;
export const MAX_TRAIL = 2000;

export function initialState(): UiSessionState {
  return { connected: false, alphabet: [], last: null, trail: [], log: [], malformed: 0 };
}

function pushLog(state: UiSessionState, entry: LogEntry): void {
  state.log.push(entry);
  if (state.log.length > MAX_LOG) {
    state.log.splice(0, state.log.length - MAX_LOG);
  }
}

/** Apply one raw wire frame; malformed frames land in the log, never throw. */
export function applyFrame(state: UiSessionState, raw: string): UiSessionState {
  let frame: ServerFrame;
  try {
    frame = parseServerFrame(raw);
  } catch (err) {
    state.malformed += 1;
    pushLog(state, { kind: "error", text: String(err), seq: null });
    return state;
  }
  if (frame.type === "hello") {
    state.alphabet = frame.alphabet;
    pushLog(state, { kind: "info", text: `connected: ${frame.alphabet.length} gestures`, seq: null });
    return state;
  }
  state.last = frame;
  state.trail.push({ x_m: frame.auv.x_m, y_m: frame.auv.y_m });
  if (state.trail.length > MAX_TRAIL) {
    state.trail.splice(0, state.trail.length - MAX_TRAIL);
  }
  if (frame.type === "warning" || frame.type === "error" || frame.type === "emergency") {
    pushLog(state, { kind: frame.type, text: frame.detail, seq: frame.seq });
  }
  return state;
}

export function setConnected(state: UiSessionState, connected: boolean): UiSessionState {
  state.connected = connected;
  if (!connected) {
    pushLog(state, { kind: "warning", text: "disconnected; retrying", seq: null });
  }
  return state;
}

export function phaseOf(state: UiSessionState): string {
  return state.last ? state.last.phase : "DISCONNECTED";
}

export function approvalPending(state: UiSessionState): boolean {
  return state.last !== null && state.last.phase === "AWAITING_APPROVAL";
}

export function emergencyActive(state: UiSessionState): boolean {
  return state.last !== null && state.last.phase === "EMERGENCY";
}
