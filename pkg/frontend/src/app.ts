// Tablet application: socket in, state mirror, DOM out.

import { encodeAction, TabletAction } from "./protocol.js";
import { TabletSocket, WebSocketCtor } from "./socket.js";
import { applyFrame, initialState, setConnected, UiSessionState } from "./state.js";
import { grabRefs, render, renderPalette, ViewRefs } from "./view.js";

export class TabletApp {
  readonly state: UiSessionState = initialState();
  readonly refs: ViewRefs;
  readonly socket: TabletSocket;

  constructor(doc: Document, url: string, wsCtor?: WebSocketCtor) {
    this.refs = grabRefs(doc);
    this.socket = new TabletSocket(
      url,
      {
        onFrame: (raw) => this.onFrame(raw),
        onStatus: (connected) => this.onStatus(connected),
      },
      wsCtor,
    );
    this.refs.approveBtn.addEventListener("click", () => this.send({ type: "approve" }));
    this.refs.abortBtn.addEventListener("click", () => this.send({ type: "abort" }));
    this.refs.resetBtn.addEventListener("click", () => this.send({ type: "reset" }));
    render(this.refs, this.state);
  }

  start(): void {
    this.socket.connect();
  }

  stop(): void {
    this.socket.close();
  }

  /** One frame per user interaction; no-op while disconnected. */
  send(action: TabletAction): boolean {
    if (action.type === "approve" && this.refs.approveBtn.disabled) return false;
    return this.socket.send(encodeAction(action));
  }

  private onFrame(raw: string): void {
    const hadAlphabet = this.state.alphabet.length > 0;
    applyFrame(this.state, raw);
    if (!hadAlphabet && this.state.alphabet.length > 0) {
      renderPalette(this.refs, this.state.alphabet, (token) =>
        this.send({ type: "gesture", token }),
      );
    }
    render(this.refs, this.state);
  }

  private onStatus(connected: boolean): void {
    setConnected(this.state, connected);
    render(this.refs, this.state);
  }
}
