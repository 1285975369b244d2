/** Deterministic force-directed placement.
 *
 * A seeded PRNG plus a fixed iteration schedule make layouts reproducible
 * for snapshot tests; a final separation pass guarantees that no two vertex
 * glyphs overlap.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  radius: number; // glyph radius; separation keeps centers >= 2*radius + gap
  seed: number;
  iterations?: number;
}

/** mulberry32: tiny deterministic PRNG. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutGraph(
  n: number,
  edges: [number, number][],
  opts: LayoutOptions,
): Point[] {
  const iterations = opts.iterations ?? 150;
  const rand = mulberry32(opts.seed);
  const cx = opts.width / 2;
  const cy = opts.height / 2;
  const ring = Math.min(opts.width, opts.height) / 2 - opts.radius * 2;
  const pts: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / Math.max(n, 1) + rand() * 0.2;
    pts.push({
      x: cx + ring * 0.7 * Math.cos(angle) + rand() * 4,
      y: cy + ring * 0.7 * Math.sin(angle) + rand() * 4,
    });
  }
  const ideal = Math.max(60, ring / Math.max(1, Math.sqrt(n)));
  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const fx = new Array<number>(n).fill(0);
    const fy = new Array<number>(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pts[i].x - pts[j].x;
        let dy = pts[i].y - pts[j].y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // deterministic tie-break for coincident points
          dx = 0.01 * (i - j);
          dy = 0.017 * (i + 1);
          d2 = dx * dx + dy * dy;
        }
        const rep = (ideal * ideal) / d2;
        fx[i] += dx * rep * 0.02;
        fy[i] += dy * rep * 0.02;
        fx[j] -= dx * rep * 0.02;
        fy[j] -= dy * rep * 0.02;
      }
    }
    for (const [s, t] of edges) {
      const dx = pts[t].x - pts[s].x;
      const dy = pts[t].y - pts[s].y;
      const d = Math.sqrt(dx * dx + dy * dy) || 1;
      const pull = ((d - ideal) / d) * 0.05;
      fx[s] += dx * pull;
      fy[s] += dy * pull;
      fx[t] -= dx * pull;
      fy[t] -= dy * pull;
    }
    for (let i = 0; i < n; i++) {
      fx[i] += (cx - pts[i].x) * 0.005;
      fy[i] += (cy - pts[i].y) * 0.005;
      pts[i].x += fx[i] * cooling;
      pts[i].y += fy[i] * cooling;
    }
  }
  separate(pts, 2 * opts.radius + 6);
  clamp(pts, opts);
  separate(pts, 2 * opts.radius + 6);
  return pts;
}

/** Push overlapping pairs apart until all centers are at least minDist apart. */
function separate(pts: Point[], minDist: number): void {
  for (let pass = 0; pass < 400; pass++) {
    let moved = false;
    for (let i = 0; i < pts.length; i++) {
      for (let j = i + 1; j < pts.length; j++) {
        let dx = pts[j].x - pts[i].x;
        let dy = pts[j].y - pts[i].y;
        let d = Math.sqrt(dx * dx + dy * dy);
        if (d < 1e-6) {
          dx = 0.5 * (j - i);
          dy = 0.3;
          d = Math.sqrt(dx * dx + dy * dy);
        }
        if (d < minDist) {
          const push = (minDist - d) / (2 * d);
          pts[i].x -= dx * push;
          pts[i].y -= dy * push;
          pts[j].x += dx * push;
          pts[j].y += dy * push;
          moved = true;
        }
      }
    }
    if (!moved) {
      return;
    }
  }
}

function clamp(pts: Point[], opts: LayoutOptions): void {
  const pad = opts.radius + 4;
  for (const p of pts) {
    p.x = Math.min(Math.max(p.x, pad), opts.width - pad);
    p.y = Math.min(Math.max(p.y, pad), opts.height - pad);
  }
}
