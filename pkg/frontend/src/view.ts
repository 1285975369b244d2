/** Pure DOM construction from server state. No algebra happens here: every
 * polynomial string is inserted verbatim from the session JSON. */

import { SessionStateJson } from "./api.js";
import { layoutGraph, Point } from "./layout.js";

export const SVG_NS = "http://www.w3.org/2000/svg";

export interface ViewConfig {
  width: number;
  height: number;
  radius: number;
}

export const DEFAULT_VIEW: ViewConfig = { width: 640, height: 480, radius: 16 };

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) {
    el.setAttribute(k, v);
  }
  return el;
}

export function quiverPositions(
  state: SessionStateJson,
  config: ViewConfig = DEFAULT_VIEW,
): Point[] {
  const edges: [number, number][] = (state.quiver?.arrows ?? []).map(
    ([s, t]) => [s - 1, t - 1],
  );
  return layoutGraph(state.m, edges, {
    width: config.width,
    height: config.height,
    radius: config.radius,
    seed: 42,
  });
}

/** Build the SVG quiver picture: shaded circles for mutable vertices, hollow
 * squares for frozen ones, arrows with multiplicity labels. */
export function renderQuiver(
  state: SessionStateJson,
  onVertexClick: (vertex: number) => void,
  config: ViewConfig = DEFAULT_VIEW,
): SVGSVGElement {
  const svg = svgEl("svg", {
    width: String(config.width),
    height: String(config.height),
    viewBox: `0 0 ${config.width} ${config.height}`,
    class: "quiver-canvas",
  }) as SVGSVGElement;
  const defs = svgEl("defs", {});
  const marker = svgEl("marker", {
    id: "arrowhead",
    markerWidth: "10",
    markerHeight: "8",
    refX: "9",
    refY: "4",
    orient: "auto",
  });
  marker.appendChild(svgEl("path", { d: "M0,0 L10,4 L0,8 z", fill: "#444" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const pts = quiverPositions(state, config);
  const r = config.radius;

  for (const [s, t, mult] of state.quiver?.arrows ?? []) {
    const a = pts[s - 1];
    const b = pts[t - 1];
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.sqrt(dx * dx + dy * dy) || 1;
    const x1 = a.x + (dx / d) * r;
    const y1 = a.y + (dy / d) * r;
    const x2 = b.x - (dx / d) * (r + 4);
    const y2 = b.y - (dy / d) * (r + 4);
    svg.appendChild(
      svgEl("line", {
        x1: String(x1),
        y1: String(y1),
        x2: String(x2),
        y2: String(y2),
        stroke: "#444",
        "stroke-width": "1.5",
        "marker-end": "url(#arrowhead)",
        class: "arrow",
        "data-arrow": `${s}-${t}`,
      }),
    );
    if (mult > 1) {
      const label = svgEl("text", {
        x: String((a.x + b.x) / 2 + 6),
        y: String((a.y + b.y) / 2 - 6),
        class: "arrow-mult",
        "font-size": "11",
      });
      label.textContent = `x${mult}`;
      svg.appendChild(label);
    }
  }

  for (let v = 1; v <= state.m; v++) {
    const frozen = v > state.n;
    const p = pts[v - 1];
    const group = svgEl("g", {
      class: frozen ? "vertex frozen" : "vertex mutable",
      "data-vertex": String(v),
    });
    if (frozen) {
      group.appendChild(
        svgEl("rect", {
          x: String(p.x - r),
          y: String(p.y - r),
          width: String(2 * r),
          height: String(2 * r),
          fill: "white",
          stroke: "#222",
          "stroke-width": "1.5",
        }),
      );
    } else {
      group.appendChild(
        svgEl("circle", {
          cx: String(p.x),
          cy: String(p.y),
          r: String(r),
          fill: "#9aa7b1",
          stroke: "#222",
          "stroke-width": "1.5",
        }),
      );
    }
    const label = svgEl("text", {
      x: String(p.x),
      y: String(p.y + 4),
      "text-anchor": "middle",
      "font-size": "12",
      class: "vertex-label",
    });
    label.textContent = String(v);
    group.appendChild(label);
    group.addEventListener("click", () => onVertexClick(v));
    svg.appendChild(group);
  }
  return svg;
}

/** Variable panel: one row per cluster (or y) entry, strings verbatim. */
export function renderVariables(state: SessionStateJson): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "variables";
  const title = document.createElement("h3");
  title.textContent = state.mode === "yseed" ? "y-variables" : "cluster variables";
  panel.appendChild(title);
  const list = document.createElement("ol");
  const values = state.mode === "yseed" ? state.y ?? [] : state.cluster ?? [];
  values.forEach((value, i) => {
    const item = document.createElement("li");
    item.className = "variable";
    item.dataset.vertex = String(i + 1);
    item.textContent = value;
    list.appendChild(item);
  });
  panel.appendChild(list);
  if (state.mode === "seed" && state.frozen && state.frozen.length) {
    const frozen = document.createElement("p");
    frozen.className = "frozen-names";
    frozen.textContent = `frozen: ${state.frozen.join(", ")}`;
    panel.appendChild(frozen);
  }
  return panel;
}

/** History breadcrumb, e.g. "start → μ1 → μ2". */
export function renderBreadcrumb(state: SessionStateJson): HTMLElement {
  const nav = document.createElement("nav");
  nav.className = "breadcrumb";
  const parts = ["start", ...state.history.map((k) => `μ${k}`)];
  nav.textContent = parts.join(" → ");
  return nav;
}

/** The return badge appears only after at least one mutation. */
export function renderBadge(state: SessionStateJson): HTMLElement | null {
  if (!state.returns_to_initial_up_to_relabeling || state.history.length === 0) {
    return null;
  }
  const badge = document.createElement("span");
  badge.className = "badge returned";
  badge.textContent = "returned to initial (relabeled)";
  return badge;
}
