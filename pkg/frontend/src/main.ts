import { App } from "./app";

// base URL for the game service; override with ?server=... or a global
const params = new URLSearchParams(window.location.search);
const serverUrl =
  (window as { COXROOT_SERVER?: string }).COXROOT_SERVER ??
  params.get("server") ??
  "http://127.0.0.1:8733";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const app = new App({ serverUrl, root });
app.prefill(
  {
    n: 2,
    entries: [
      { i: 1, j: 2, value: "-1" },
      { i: 2, j: 1, value: "-1" },
    ],
    labels: ["1", "2"],
  },
  "1,1",
);

// reachable from the devtools console
(window as { coxrootApp?: App }).coxrootApp = app;
