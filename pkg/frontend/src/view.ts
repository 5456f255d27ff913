// DOM rendering: a pure mirror of UiSessionState onto the page.

import { TabletAction } from "./protocol.js";
import { approvalPending, emergencyActive, phaseOf, UiSessionState } from "./state.js";

export interface ViewRefs {
  phaseBanner: HTMLElement;
  connection: HTMLElement;
  palette: HTMLElement;
  pendingStrip: HTMLElement;
  commandList: HTMLElement;
  depthReadout: HTMLElement;
  detailLine: HTMLElement;
  warningLog: HTMLElement;
  approvalModal: HTMLElement;
  approveBtn: HTMLButtonElement;
  abortBtn: HTMLButtonElement;
  resetBtn: HTMLButtonElement;
  emergencyBanner: HTMLElement;
  plot: HTMLCanvasElement;
}

export function grabRefs(doc: Document): ViewRefs {
  const get = (id: string) => {
    const el = doc.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el;
  };
  return {
    phaseBanner: get("phase-banner"),
    connection: get("connection"),
    palette: get("palette"),
    pendingStrip: get("pending-strip"),
    commandList: get("command-list"),
    depthReadout: get("depth-readout"),
    detailLine: get("detail-line"),
    warningLog: get("warning-log"),
    approvalModal: get("approval-modal"),
    approveBtn: get("approve-btn") as HTMLButtonElement,
    abortBtn: get("abort-btn") as HTMLButtonElement,
    resetBtn: get("reset-btn") as HTMLButtonElement,
    emergencyBanner: get("emergency-banner"),
    plot: get("plot") as HTMLCanvasElement,
  };
}

/** Rebuild the gesture palette from the alphabet served at handshake. */
export function renderPalette(
  refs: ViewRefs,
  alphabet: string[],
  onGesture: (token: string) => void,
): void {
  refs.palette.textContent = "";
  const doc = refs.palette.ownerDocument;
  for (const mnemonic of alphabet) {
    const btn = doc.createElement("button");
    btn.className = "gesture";
    btn.dataset.token = mnemonic;
    btn.textContent = mnemonic;
    btn.addEventListener("click", () => onGesture(mnemonic));
    refs.palette.appendChild(btn);
  }
}

function renderCommands(refs: ViewRefs, state: UiSessionState): void {
  refs.commandList.textContent = "";
  const doc = refs.commandList.ownerDocument;
  const rows = state.last ? state.last.commands : [];
  for (const row of rows) {
    const li = doc.createElement("li");
    li.className = `command ${row.status}`;
    li.textContent = `${row.index + 1}. ${row.text} [${row.status}]`;
    refs.commandList.appendChild(li);
  }
}

function renderLog(refs: ViewRefs, state: UiSessionState): void {
  refs.warningLog.textContent = "";
  const doc = refs.warningLog.ownerDocument;
  for (const entry of state.log.slice(-50)) {
    const li = doc.createElement("li");
    li.className = `log-${entry.kind}`;
    li.textContent = entry.seq === null ? entry.text : `#${entry.seq} ${entry.text}`;
    refs.warningLog.appendChild(li);
  }
  refs.warningLog.scrollTop = refs.warningLog.scrollHeight;
}

function renderPlot(refs: ViewRefs, state: UiSessionState): void {
  const ctx = refs.plot.getContext && refs.plot.getContext("2d");
  if (!ctx) return; // headless test DOMs have no 2d context
  const w = refs.plot.width;
  const h = refs.plot.height;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#355";
  ctx.strokeRect(0.5, 0.5, w - 1, h - 1);
  if (!state.last) return;
  const pts = state.trail;
  const xs = pts.map((p) => p.x_m);
  const ys = pts.map((p) => p.y_m);
  const minX = Math.min(0, ...xs) - 1;
  const maxX = Math.max(1, ...xs) + 1;
  const minY = Math.min(0, ...ys) - 1;
  const maxY = Math.max(1, ...ys) + 1;
  const sx = (x: number) => ((x - minX) / (maxX - minX)) * (w - 10) + 5;
  const sy = (y: number) => h - (((y - minY) / (maxY - minY)) * (h - 10) + 5);
  ctx.strokeStyle = "#7fd";
  ctx.beginPath();
  pts.forEach((p, i) => (i === 0 ? ctx.moveTo(sx(p.x_m), sy(p.y_m)) : ctx.lineTo(sx(p.x_m), sy(p.y_m))));
  ctx.stroke();
  const pose = state.last.auv;
  ctx.fillStyle = "#fe6";
  ctx.beginPath();
  ctx.arc(sx(pose.x_m), sy(pose.y_m), 4, 0, 2 * Math.PI);
  ctx.fill();
}

/** Mirror the whole session state onto the page. */
export function render(refs: ViewRefs, state: UiSessionState): void {
  const phase = phaseOf(state);
  refs.phaseBanner.textContent = phase;
  refs.phaseBanner.className = `phase phase-${phase.toLowerCase()}`;
  refs.connection.textContent = state.connected ? "connected" : "disconnected";
  refs.connection.className = state.connected ? "conn-ok" : "conn-bad";

  refs.pendingStrip.textContent = state.last
    ? state.last.pending_tokens.join(" ")
    : "";
  refs.detailLine.textContent = state.last ? state.last.detail : "";
  refs.depthReadout.textContent = state.last
    ? `depth ${state.last.auv.z_m.toFixed(2)} m`
    : "depth - m";

  renderCommands(refs, state);
  renderLog(refs, state);
  renderPlot(refs, state);

  const modalOn = approvalPending(state) && state.connected;
  refs.approvalModal.classList.toggle("visible", modalOn);
  refs.approveBtn.disabled = !modalOn;
  refs.abortBtn.disabled = !state.connected;
  refs.resetBtn.disabled = !state.connected;
  refs.emergencyBanner.classList.toggle("visible", emergencyActive(state));

  for (const btn of Array.from(refs.palette.querySelectorAll("button"))) {
    (btn as HTMLButtonElement).disabled = !state.connected;
  }
}

export function actionForGesture(token: string): TabletAction {
  return { type: "gesture", token };
}
