// Wire types shared with the trial service; field names are fixed in
// docs/formats.md and docs/api.md of the main package.

export interface Bounds {
  width: number;
  height: number;
}

export interface RectShape {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string | null;
  stroke: string | null;
  strokeWidth: number | null;
  element: string | null;
  role: string;
}

export interface CircleShape {
  kind: "circle";
  cx: number;
  cy: number;
  r: number;
  fill: string | null;
  stroke: string | null;
  strokeWidth: number | null;
  element: string | null;
  role: string;
}

export interface TextShapeJson {
  kind: "text";
  x: number;
  y: number;
  text: string;
  size: number;
  fill: string;
  anchor: string;
  element: string | null;
  role: string;
  labelFor: string | null;
}

export interface PolylineShape {
  kind: "polyline";
  points: [number, number][];
  stroke: string;
  strokeWidth: number;
  element: string | null;
  role: string;
  cls: string;
}

export type Shape = RectShape | CircleShape | TextShapeJson | PolylineShape;

export interface LayoutBundle {
  format: string;
  depiction: string;
  bounds: Bounds;
  style: Record<string, unknown>;
  markers: Record<string, string>;
  shapes: Shape[];
}

export interface NextTrialResponse {
  done?: boolean;
  trialId: string;
  participant: string;
  index: number;
  session: number;
  depiction: string;
  practice: boolean;
  timeoutSeconds: number;
  markers: Record<string, string>;
  bundle: LayoutBundle;
  highlight: string[];
}

export interface ClickResponse {
  result: "extended" | "backtracked" | "rejected" | "completed";
  reason: string | null;
  status: "active" | "completed" | "timed-out";
  highlight: string[];
  elapsedMs: number;
}

export interface ApiError {
  error: string;
}
