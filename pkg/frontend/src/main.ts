/** Bootstrap: build the page chrome, reattach to the session in the URL
 * hash if present, otherwise wait for the user to start one. */

import { SessionApi } from "./api.js";
import { AppElements, ExplorerApp } from "./app.js";

const PRESETS: Record<string, unknown> = {
  A2: { quiver: { n: 2, m: 2, arrows: [[1, 2, 1]] } },
  A3: { quiver: { n: 3, m: 3, arrows: [[1, 2, 1], [2, 3, 1]] } },
  "A2 with frozen row": { quiver: { n: 2, m: 3, arrows: [[1, 2, 1], [3, 1, 1]] } },
  "A2 y-seed": { yseed: { n: 2, m: 2, arrows: [[2, 1, 1]] } },
};

function el<T extends HTMLElement>(tag: string, className?: string): T {
  const node = document.createElement(tag) as T;
  if (className) {
    node.className = className;
  }
  return node;
}

export function mount(root: HTMLElement, api: SessionApi): ExplorerApp {
  const controls = el<HTMLDivElement>("div", "controls");
  const picker = el<HTMLSelectElement>("select");
  for (const name of Object.keys(PRESETS)) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    picker.appendChild(opt);
  }
  const startButton = el<HTMLButtonElement>("button");
  startButton.textContent = "new session";
  const undoButton = el<HTMLButtonElement>("button");
  undoButton.textContent = "undo";
  controls.append(picker, startButton, undoButton);

  const status = el<HTMLDivElement>("div", "status");
  const breadcrumb = el<HTMLDivElement>("div", "breadcrumb-box");
  const canvas = el<HTMLDivElement>("div", "canvas-box");
  const panel = el<HTMLDivElement>("div", "panel-box");
  root.append(controls, status, breadcrumb, canvas, panel);

  const els: AppElements = { canvas, panel, breadcrumb, status, undoButton };
  const app = new ExplorerApp(api, els);

  startButton.addEventListener("click", () => {
    void app.start(PRESETS[picker.value]);
  });

  const existing = window.location.hash.replace(/^#/, "");
  if (existing) {
    void app.attach(existing).catch(() => {
      window.location.hash = "";
    });
  }
  return app;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mount(document.getElementById("app")!, new SessionApi(""));
}
