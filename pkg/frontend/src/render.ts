// SVG rendering of layout bundles. Shapes carrying an element id become
// clickable; everything else is inert background. The client never decides
// what a click means: highlight state always comes from the server and is
// applied verbatim via applyHighlight.

import type { LayoutBundle, Shape } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
export const HIGHLIGHT_CLASS = "hl";

function setAttrs(el: SVGElement, attrs: Record<string, string | number | null>): void {
  for (const [key, value] of Object.entries(attrs)) {
    if (value !== null) {
      el.setAttribute(key, String(value));
    }
  }
}

function shapeNode(shape: Shape): SVGElement {
  switch (shape.kind) {
    case "rect": {
      const el = document.createElementNS(SVG_NS, "rect");
      setAttrs(el, {
        x: shape.x,
        y: shape.y,
        width: shape.w,
        height: shape.h,
        fill: shape.fill ?? "none",
        stroke: shape.stroke,
        "stroke-width": shape.strokeWidth,
      });
      return el;
    }
    case "circle": {
      const el = document.createElementNS(SVG_NS, "circle");
      setAttrs(el, {
        cx: shape.cx,
        cy: shape.cy,
        r: shape.r,
        fill: shape.fill ?? "none",
        stroke: shape.stroke,
        "stroke-width": shape.strokeWidth,
      });
      return el;
    }
    case "text": {
      const el = document.createElementNS(SVG_NS, "text");
      setAttrs(el, {
        x: shape.x,
        y: shape.y,
        "font-size": shape.size,
        "text-anchor": shape.anchor,
        fill: shape.fill,
        "pointer-events": "none",
      });
      el.textContent = shape.text;
      return el;
    }
    case "polyline": {
      const el = document.createElementNS(SVG_NS, "polyline");
      setAttrs(el, {
        points: shape.points.map(([x, y]) => `${x},${y}`).join(" "),
        fill: "none",
        stroke: shape.stroke,
        "stroke-width": shape.strokeWidth,
        class: shape.cls,
      });
      return el;
    }
  }
}

export interface RenderedBundle {
  svg: SVGSVGElement;
  /** element id -> its clickable SVG node */
  elements: Map<string, SVGElement>;
}

/**
 * Draw a bundle into a host element at native bundle coordinates; the
 * viewBox makes the drawing scale with the viewport without changing which
 * element a shape belongs to.
 */
export function renderBundle(
  host: HTMLElement,
  bundle: LayoutBundle,
  onElementClick: (element: string) => void,
): RenderedBundle {
  if (bundle.format !== "layout-bundle/1") {
    throw new Error(`unsupported bundle format: ${bundle.format}`);
  }
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${bundle.bounds.width} ${bundle.bounds.height}`);
  svg.setAttribute("preserveAspectRatio", "xMidYMid meet");
  svg.style.width = "100%";
  svg.style.height = "100%";

  const elements = new Map<string, SVGElement>();
  for (const shape of bundle.shapes) {
    const node = shapeNode(shape);
    if (shape.element) {
      node.setAttribute("data-element", shape.element);
      node.style.cursor = "pointer";
      const element = shape.element;
      node.addEventListener("click", () => onElementClick(element));
      elements.set(element, node);
    }
    svg.appendChild(node);
  }
  host.replaceChildren(svg);
  return { svg, elements };
}

/** Repaint highlight state exactly as the server returned it. */
export function applyHighlight(rendered: RenderedBundle, highlight: string[]): void {
  const wanted = new Set(highlight);
  for (const [element, node] of rendered.elements) {
    if (wanted.has(element)) {
      node.classList.add(HIGHLIGHT_CLASS);
    } else {
      node.classList.remove(HIGHLIGHT_CLASS);
    }
  }
}

/** The element ids currently shown as highlighted, sorted. */
export function currentHighlight(rendered: RenderedBundle): string[] {
  const ids: string[] = [];
  for (const [element, node] of rendered.elements) {
    if (node.classList.contains(HIGHLIGHT_CLASS)) {
      ids.push(element);
    }
  }
  return ids.sort();
}
