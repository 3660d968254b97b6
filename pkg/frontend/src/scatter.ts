/** Scatter-plot geometry and rendering for the projected dataset.
 *
 * The geometry helpers are pure so they can be tested without a DOM; the
 * render function builds plain SVG elements.
 */

import type { ProjectedPoint } from "./api.js";

export interface Transform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/**
 * Map data coordinates into a width x height viewport, preserving aspect
 * ratio and centering, with the given margin on every side.  Degenerate
 * extents (a single point, or all points collinear on one axis) still get
 * a finite transform.
 */
export function fitTransform(
  points: { xy: [number, number] }[],
  width: number,
  height: number,
  margin: number,
): Transform {
  if (points.length === 0) {
    return { scale: 1, offsetX: width / 2, offsetY: height / 2 };
  }
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    minX = Math.min(minX, p.xy[0]);
    maxX = Math.max(maxX, p.xy[0]);
    minY = Math.min(minY, p.xy[1]);
    maxY = Math.max(maxY, p.xy[1]);
  }
  const spanX = maxX - minX;
  const spanY = maxY - minY;
  const innerW = width - 2 * margin;
  const innerH = height - 2 * margin;
  const scaleX = spanX > 0 ? innerW / spanX : Infinity;
  const scaleY = spanY > 0 ? innerH / spanY : Infinity;
  let scale = Math.min(scaleX, scaleY);
  if (!Number.isFinite(scale)) {
    scale = 1;
  }
  const midX = (minX + maxX) / 2;
  const midY = (minY + maxY) / 2;
  return {
    scale,
    offsetX: width / 2 - midX * scale,
    // flip y so larger data values render higher
    offsetY: height / 2 + midY * scale,
  };
}

export function toScreen(t: Transform, xy: [number, number]): [number, number] {
  return [xy[0] * t.scale + t.offsetX, -xy[1] * t.scale + t.offsetY];
}

/** Stable, well-separated color for a group index (golden-angle hues). */
export function colorFor(group: number): string {
  const hue = (group * 137.508) % 360;
  return `hsl(${hue.toFixed(1)}, 62%, 52%)`;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ScatterOptions {
  width: number;
  height: number;
  margin: number;
  /** group index per instance id; defaults to the projection's groups */
  groupOf?: (id: number) => number;
  highlight?: [number, number] | null;
}

export function renderScatter(
  svg: SVGSVGElement,
  points: ProjectedPoint[],
  options: ScatterOptions,
): void {
  const { width, height, margin } = options;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  while (svg.firstChild) {
    svg.removeChild(svg.firstChild);
  }
  const t = fitTransform(points, width, height, margin);
  const highlighted = new Set(options.highlight ?? []);

  if (options.highlight) {
    const [aId, bId] = options.highlight;
    const a = points.find((p) => p.id === aId);
    const b = points.find((p) => p.id === bId);
    if (a && b) {
      const [x1, y1] = toScreen(t, a.xy);
      const [x2, y2] = toScreen(t, b.xy);
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(x1));
      line.setAttribute("y1", String(y1));
      line.setAttribute("x2", String(x2));
      line.setAttribute("y2", String(y2));
      line.setAttribute("class", "pair-line");
      svg.appendChild(line);
    }
  }

  for (const p of points) {
    const [cx, cy] = toScreen(t, p.xy);
    const group = options.groupOf ? options.groupOf(p.id) : p.super_instance;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(cx));
    circle.setAttribute("cy", String(cy));
    circle.setAttribute("fill", colorFor(group));
    if (highlighted.has(p.id)) {
      circle.setAttribute("r", "7");
      circle.setAttribute("class", "point highlighted");
    } else {
      circle.setAttribute("r", "3.5");
      circle.setAttribute("class", "point");
    }
    svg.appendChild(circle);
  }
}
