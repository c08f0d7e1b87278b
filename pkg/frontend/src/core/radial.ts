// Circular latent diagram state: 32 radial vertices, one per latent
// dimension, drawn as a closed polygon so the line chart has no
// terminal discontinuity. Radius maps to the latent value linearly.

export const VERTEX_COUNT = 32;
export const VALUE_MIN = -4;
export const VALUE_MAX = 4;

export interface RadialGeometry {
  centerX: number;
  centerY: number;
  innerRadius: number;
  outerRadius: number;
}

export interface Point {
  x: number;
  y: number;
}

export function clampValue(value: number): number {
  return Math.min(VALUE_MAX, Math.max(VALUE_MIN, value));
}

export function valueToRadius(value: number, geom: RadialGeometry): number {
  const t = (clampValue(value) - VALUE_MIN) / (VALUE_MAX - VALUE_MIN);
  return geom.innerRadius + t * (geom.outerRadius - geom.innerRadius);
}

export function radiusToValue(radius: number, geom: RadialGeometry): number {
  const t = (radius - geom.innerRadius) / (geom.outerRadius - geom.innerRadius);
  return clampValue(VALUE_MIN + t * (VALUE_MAX - VALUE_MIN));
}

export function vertexAngle(index: number): number {
  return (index / VERTEX_COUNT) * 2 * Math.PI - Math.PI / 2;
}

export function vertexPosition(
  values: number[],
  index: number,
  geom: RadialGeometry,
): Point {
  const radius = valueToRadius(values[index], geom);
  const angle = vertexAngle(index);
  return {
    x: geom.centerX + radius * Math.cos(angle),
    y: geom.centerY + radius * Math.sin(angle),
  };
}

// Closed outline: the first vertex is repeated at the end.
export function polygonPoints(values: number[], geom: RadialGeometry): Point[] {
  const points = values.map((_, i) => vertexPosition(values, i, geom));
  points.push(points[0]);
  return points;
}

export function withValue(values: number[], index: number, value: number): number[] {
  const next = values.slice();
  next[index] = clampValue(value);
  return next;
}

// The vertex whose angular sector contains the pointer, for hit testing.
export function nearestVertex(
  pointerX: number,
  pointerY: number,
  geom: RadialGeometry,
): number {
  const angle = Math.atan2(pointerY - geom.centerY, pointerX - geom.centerX);
  const turns = (angle + Math.PI / 2) / (2 * Math.PI);
  const index = Math.round(turns * VERTEX_COUNT);
  return ((index % VERTEX_COUNT) + VERTEX_COUNT) % VERTEX_COUNT;
}

export function pointerRadius(
  pointerX: number,
  pointerY: number,
  geom: RadialGeometry,
): number {
  return Math.hypot(pointerX - geom.centerX, pointerY - geom.centerY);
}
