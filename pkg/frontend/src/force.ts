/** Deterministic force-directed placement for the mention network.
 *
 * Fixed iteration count, seeded initial positions (hash of the account
 * name on a circle), pairwise repulsion, spring attraction along edges,
 * and gentle centering. Same input, same layout.
 */

import type { NetworkEdge, NetworkNode } from "./types.js";

export interface PlacedNode {
  account: string;
  x: number;
  y: number;
  radius: number;
  degree: number;
  component: number;
}

function hashAngle(name: string): number {
  let hash = 2166136261;
  for (let i = 0; i < name.length; i++) {
    hash = (hash ^ name.charCodeAt(i)) * 16777619;
    hash >>>= 0;
  }
  return (hash % 3600) / 3600 * 2 * Math.PI;
}

export function forceLayout(
  nodes: readonly NetworkNode[],
  edges: readonly NetworkEdge[],
  width: number,
  height: number,
  iterations = 120,
): PlacedNode[] {
  if (nodes.length === 0) {
    return [];
  }
  const maxDegree = Math.max(1, ...nodes.map((n) => n.weighted_degree));
  const minSide = Math.min(width, height);
  const baseRadius = minSide / 30;

  const xs: number[] = [];
  const ys: number[] = [];
  const radii: number[] = [];
  const index = new Map<string, number>();
  nodes.forEach((node, i) => {
    const angle = hashAngle(node.account);
    const ring = 0.25 + 0.15 * ((i * 7919) % 13) / 13;
    xs.push(width / 2 + Math.cos(angle) * minSide * ring);
    ys.push(height / 2 + Math.sin(angle) * minSide * ring);
    radii.push(
      baseRadius * (0.6 + Math.sqrt(node.weighted_degree / maxDegree)),
    );
    index.set(node.account, i);
  });

  const springs = edges
    .map((edge) => ({
      a: index.get(edge.source),
      b: index.get(edge.target),
      weight: edge.weight,
    }))
    .filter((s): s is { a: number; b: number; weight: number } =>
      s.a !== undefined && s.b !== undefined,
    );

  const repulsion = minSide * minSide / Math.max(12, nodes.length * 2);
  const springLength = minSide / 5;

  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const fx = new Array<number>(nodes.length).fill(0);
    const fy = new Array<number>(nodes.length).fill(0);

    for (let i = 0; i < nodes.length; i++) {
      for (let j = i + 1; j < nodes.length; j++) {
        let dx = xs[i] - xs[j];
        let dy = ys[i] - ys[j];
        let distSq = dx * dx + dy * dy;
        if (distSq < 1e-6) {
          // deterministic nudge for coincident points
          dx = 0.733 * ((i + 1) % 3 === 0 ? -1 : 1);
          dy = 0.421;
          distSq = dx * dx + dy * dy;
        }
        const force = repulsion / distSq;
        const dist = Math.sqrt(distSq);
        fx[i] += (dx / dist) * force;
        fy[i] += (dy / dist) * force;
        fx[j] -= (dx / dist) * force;
        fy[j] -= (dy / dist) * force;
      }
    }

    for (const spring of springs) {
      const dx = xs[spring.b] - xs[spring.a];
      const dy = ys[spring.b] - ys[spring.a];
      const dist = Math.max(1e-3, Math.hypot(dx, dy));
      const pull = ((dist - springLength) / dist) * 0.06 * Math.min(4, spring.weight);
      fx[spring.a] += dx * pull;
      fy[spring.a] += dy * pull;
      fx[spring.b] -= dx * pull;
      fy[spring.b] -= dy * pull;
    }

    for (let i = 0; i < nodes.length; i++) {
      fx[i] += (width / 2 - xs[i]) * 0.01;
      fy[i] += (height / 2 - ys[i]) * 0.01;
      const cap = minSide * 0.08 * cooling + 0.5;
      const magnitude = Math.hypot(fx[i], fy[i]);
      const scale = magnitude > cap ? cap / magnitude : 1;
      xs[i] += fx[i] * scale;
      ys[i] += fy[i] * scale;
      xs[i] = Math.max(radii[i], Math.min(width - radii[i], xs[i]));
      ys[i] = Math.max(radii[i], Math.min(height - radii[i], ys[i]));
    }
  }

  return nodes.map((node, i) => ({
    account: node.account,
    x: xs[i],
    y: ys[i],
    radius: radii[i],
    degree: node.weighted_degree,
    component: node.component,
  }));
}
