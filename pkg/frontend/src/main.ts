// Browser entry point: connect to the feedback service that served us.

import { TabletApp } from "./app.js";

const proto = location.protocol === "https:" ? "wss" : "ws";
const app = new TabletApp(document, `${proto}://${location.host}/ws`);
app.start();

declare global {
  interface Window {
    tabletApp: TabletApp;
  }
}
window.tabletApp = app; // handy for debugging from the console
