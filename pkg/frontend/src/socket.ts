// Reconnecting tablet socket with exponential backoff.

export type WebSocketLike = {
  onopen: ((ev?: unknown) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  send(data: string): void;
  close(): void;
};

export type WebSocketCtor = new (url: string) => WebSocketLike;

export interface SocketCallbacks {
  onFrame(raw: string): void;
  onStatus(connected: boolean): void;
}

export const BACKOFF_BASE_MS = 500;
export const BACKOFF_MAX_MS = 8000;

export class TabletSocket {
  private ws: WebSocketLike | null = null;
  private open = false;
  private attempts = 0;
  private closed = false;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly url: string,
    private readonly callbacks: SocketCallbacks,
    private readonly ctor: WebSocketCtor = (globalThis as { WebSocket?: WebSocketCtor })
      .WebSocket as WebSocketCtor,
  ) {
    if (!this.ctor) {
      throw new Error("no WebSocket implementation available");
    }
  }

  connect(): void {
    if (this.closed) return;
    const ws = new this.ctor(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.attempts = 0;
      this.open = true;
      this.callbacks.onStatus(true);
    };
    ws.onmessage = (ev) => this.callbacks.onFrame(String(ev.data));
    ws.onerror = () => {
      /* onclose follows and schedules the retry */
    };
    ws.onclose = () => {
      if (this.ws !== ws) return;
      this.ws = null;
      this.open = false;
      this.callbacks.onStatus(false);
      this.scheduleReconnect();
    };
  }

  nextDelayMs(): number {
    return Math.min(BACKOFF_BASE_MS * 2 ** this.attempts, BACKOFF_MAX_MS);
  }

  private scheduleReconnect(): void {
    if (this.closed) return;
    const delay = this.nextDelayMs();
    this.attempts += 1;
    this.timer = setTimeout(() => this.connect(), delay);
  }

  send(data: string): boolean {
    if (!this.open || this.ws === null) return false;
    try {
      this.ws.send(data);
      return true;
    } catch {
      return false;
    }
  }

  get connected(): boolean {
    return this.open;
  }

  close(): void {
    this.closed = true;
    if (this.timer !== null) clearTimeout(this.timer);
    if (this.ws !== null) this.ws.close();
    this.ws = null;
    this.open = false;
  }
}
