// Wire protocol types shared with the feedback service.

export interface CommandRow {
  index: number;
  text: string;
  status: "queued" | "running" | "done";
}

export interface AuvPose {
  x_m: number;
  y_m: number;
  z_m: number;
  heading_rad: number;
}

export type MessageType =
  | "state"
  | "warning"
  | "approval_request"
  | "progress"
  | "error"
  | "emergency";

export interface FeedbackMessage {
  type: MessageType;
  phase: string;
  pending_tokens: string[];
  commands: CommandRow[];
  auv: AuvPose;
  detail: string;
  seq: number;
}

export interface HelloFrame {
  type: "hello";
  alphabet: string[];
  actions: string[];
}

export type ServerFrame = HelloFrame | FeedbackMessage;

export interface TabletAction {
  type: "gesture" | "approve" | "abort" | "reset";
  token?: string;
}

const MESSAGE_TYPES: ReadonlySet<string> = new Set([
  "state",
  "warning",
  "approval_request",
  "progress",
  "error",
  "emergency",
]);

export function parseServerFrame(raw: string): ServerFrame {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    throw new Error(`malformed frame: ${raw.slice(0, 80)}`);
  }
  if (typeof doc !== "object" || doc === null) {
    throw new Error("frame is not an object");
  }
  const obj = doc as Record<string, unknown>;
  if (obj.type === "hello") {
    if (!Array.isArray(obj.alphabet) || !obj.alphabet.every((t) => typeof t === "string")) {
      throw new Error("hello frame without alphabet");
    }
    return { type: "hello", alphabet: obj.alphabet as string[], actions: (obj.actions as string[]) ?? [] };
  }
  if (typeof obj.type !== "string" || !MESSAGE_TYPES.has(obj.type)) {
    throw new Error(`unknown frame type: ${String(obj.type)}`);
  }
  if (typeof obj.phase !== "string" || typeof obj.seq !== "number") {
    throw new Error("feedback frame missing phase/seq");
  }
  return {
    type: obj.type as MessageType,
    phase: obj.phase,
    pending_tokens: (obj.pending_tokens as string[]) ?? [],
    commands: (obj.commands as CommandRow[]) ?? [],
    auv: (obj.auv as AuvPose) ?? { x_m: 0, y_m: 0, z_m: 0, heading_rad: 0 },
    detail: typeof obj.detail === "string" ? obj.detail : "",
    seq: obj.seq,
  };
}

export function encodeAction(action: TabletAction): string {
  if (action.type === "gesture") {
    return JSON.stringify({ type: "gesture", token: action.token });
  }
  return JSON.stringify({ type: action.type });
}
